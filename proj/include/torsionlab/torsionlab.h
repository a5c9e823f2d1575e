#ifndef TORSIONLAB_H
#define TORSIONLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define TL_API __declspec(dllexport)
#else
#define TL_API __attribute__((visibility("default")))
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_PARSE = 1,
  TL_ERR_NON_CHAIN_COMPLEX = 2,
  TL_ERR_BAD_REPRESENTATION = 3,
  TL_ERR_NOT_ACYCLIC_PRESET = 4,
  TL_ERR_SHAPE_MISMATCH = 5,
  TL_ERR_CONVERGENCE = 6,
  TL_ERR_NOT_INVERTIBLE = 7,
  TL_ERR_NOT_AN_EIGENVALUE = 8,
  TL_ERR_NOT_ACYCLIC = 9,
  TL_ERR_PIVOT = 10,
  TL_ERR_STEP_TOO_LARGE = 11,
  TL_ERR_POLE_AT_ONE = 12,
  TL_ERR_POLE_HIT = 13,
  TL_ERR_QUADRATURE = 14,
  TL_ERR_BAD_PARAMETER = 15,
  TL_ERR_UNSUPPORTED_PARTITION = 16,
  TL_ERR_NULL_ARGUMENT = 17,
  TL_ERR_INTERNAL = 18
} tl_status;

/* A finite twisted chain complex. */
typedef struct tl_complex tl_complex;
/* A closed or boundary spectral model. */
typedef struct tl_model tl_model;

TL_API const char* tl_version(void);
TL_API const char* tl_status_name(tl_status status);
/* Message of the last failure on this thread; empty after success. */
TL_API const char* tl_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
TL_API void tl_string_free(char* s);

TL_API tl_status tl_complex_from_json(const char* json, tl_complex** out);
/* name: circle | torus2 | interval | point. */
TL_API tl_status tl_complex_from_preset(const char* name, double theta, double alpha, double beta,
                                        int rank, int allow_non_acyclic, tl_complex** out);
TL_API void tl_complex_free(tl_complex* complex);
TL_API tl_status tl_complex_to_json(const tl_complex* complex, char** json);
/* Always TL_OK for a built complex; the JSON report carries the residuals. */
TL_API tl_status tl_complex_validate(const tl_complex* complex, char** report_json);
/* beta_spec: 1 | k | lin:l,m | comma list.
   metric_spec: identity | random[:spread] | scaled:h0,h1,... */
TL_API tl_status tl_complex_torsion(const tl_complex* complex, const char* beta_spec,
                                    const char* metric_spec, uint64_t seed, char** report_json);

/* spec_json keys: model (circle | torus | sphere2 | point | interval | cylinder),
   L, theta, rank, n, R, condition. */
TL_API tl_status tl_model_create(const char* spec_json, tl_model** out);
TL_API void tl_model_free(tl_model* model);
TL_API int tl_model_dimension(const tl_model* model);
TL_API tl_status tl_model_zeta(const tl_model* model, int degree, double s_re, double s_im,
                               int with_derivative, char** report_json);
TL_API tl_status tl_model_torsion(const tl_model* model, const char* beta_spec, char** report_json);
/* Closed models: duality and alternating-sum identities.
   Boundary models: the relative/absolute sign law on the same geometry. */
TL_API tl_status tl_model_identities(const tl_model* model, double tolerance, char** report_json);

/* spec_json keys: geometry (interval | cylinder), R, L, split, condition, rank. */
TL_API tl_status tl_gluing_check(const char* spec_json, double tolerance, char** report_json);

/* suite: combinatorial | variation | closed-spectral | boundary | all.
   tolerance <= 0 keeps the per-case defaults. */
TL_API tl_status tl_verify(const char* suite, double tolerance, uint64_t seed, char** report_json,
                           int* all_passed);

/* format: json | csv | pretty. */
TL_API tl_status tl_render(const char* report_json, const char* format, char** out);

TL_API tl_status tl_set_quadrature_eps(double eps);
TL_API double tl_quadrature_eps(void);

#ifdef __cplusplus
}
#endif

#endif
