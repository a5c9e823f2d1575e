#include "torsionlab/torsion.hpp"

#include "torsionlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace torsionlab {

namespace {

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void require_acyclic(const std::vector<int>& b) {
  for (size_t k = 0; k < b.size(); ++k)
    if (b[k] != 0)
      throw Error(ErrorCode::NotAcyclic, "homology in degree " + std::to_string(k) +
                                             " has dimension " + std::to_string(b[k]));
}

double parse_real(const std::string& token) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "bad number '" + token + "' in beta spec");
  }
  if (pos != token.size()) throw Error(ErrorCode::ParseError, "bad number '" + token + "'");
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

/// Rows chosen by full-pivot elimination of a full-column-rank matrix, plus
/// log|det| of the square minor on those rows.
struct PivotMinor {
  std::vector<int> rows;
  double log_abs_det = 0.0;
};

PivotMinor full_pivot_minor(Matrix w, int degree) {
  const int m = static_cast<int>(w.rows());
  const int r = static_cast<int>(w.cols());
  const double scale = std::max(1.0, max_abs(w));
  std::vector<bool> row_used(static_cast<size_t>(m), false), col_used(static_cast<size_t>(r), false);
  PivotMinor out;
  for (int step = 0; step < r; ++step) {
    int pr = -1, pc = -1;
    double best = -1.0;
    for (int i = 0; i < m; ++i) {
      if (row_used[static_cast<size_t>(i)]) continue;
      for (int j = 0; j < r; ++j) {
        if (col_used[static_cast<size_t>(j)]) continue;
        if (std::abs(w(i, j)) > best) {
          best = std::abs(w(i, j));
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= 1e-10 * scale)
      throw Error(ErrorCode::PivotFailure,
                  "boundary matrix of degree " + std::to_string(degree) +
                      " is rank deficient on the selected cells (complex not acyclic)");
    row_used[static_cast<size_t>(pr)] = true;
    col_used[static_cast<size_t>(pc)] = true;
    out.rows.push_back(pr);
    out.log_abs_det += std::log(best);
    for (int i = 0; i < m; ++i) {
      if (row_used[static_cast<size_t>(i)]) continue;
      const double f = w(i, pc) / w(pr, pc);
      if (f != 0.0) w.row(i) -= f * w.row(pr);
    }
  }
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

}  // namespace

BetaWeight BetaWeight::ones(int n) { return {std::vector<double>(static_cast<size_t>(n + 1), 1.0)}; }

BetaWeight BetaWeight::degree(int n) {
  BetaWeight b{std::vector<double>(static_cast<size_t>(n + 1))};
  std::iota(b.values.begin(), b.values.end(), 0.0);
  return b;
}

BetaWeight BetaWeight::linear(int n, double lambda, double mu) {
  BetaWeight b{std::vector<double>(static_cast<size_t>(n + 1))};
  for (int k = 0; k <= n; ++k) b.values[static_cast<size_t>(k)] = lambda + mu * k;
  return b;
}

BetaWeight parse_beta(const std::string& spec, int n) {
  if (spec == "1" || spec == "one") return BetaWeight::ones(n);
  if (spec == "k") return BetaWeight::degree(n);
  if (spec.rfind("lin:", 0) == 0) {
    const auto parts = split_commas(spec.substr(4));
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "lin: expects two numbers");
    return BetaWeight::linear(n, parse_real(parts[0]), parse_real(parts[1]));
  }
  const auto parts = split_commas(spec);
  if (parts.size() != static_cast<size_t>(n + 1))
    throw Error(ErrorCode::ParseError, "beta list needs " + std::to_string(n + 1) +
                                           " entries, got " + std::to_string(parts.size()));
  BetaWeight b;
  for (const auto& p : parts) b.values.push_back(parse_real(p));
  return b;
}

BetaClassification classify_beta(const BetaWeight& beta) {
  BetaClassification c;
  const int len = beta.size();
  c.lambda = len > 0 ? beta[0] : 0.0;
  c.mu = len > 1 ? beta[1] - beta[0] : 0.0;
  bool ok = true;
  for (int k = 1; k + 1 < len; ++k) {
    const double second = beta[k + 1] - 2.0 * beta[k] + beta[k - 1];
    c.residual.push_back(second);
    if (!(std::abs(second) <= 1e-12)) ok = false;
  }
  c.satisfies_recurrence = ok;
  return c;
}

double generalized_log_torsion(const std::vector<double>& per_degree, const BetaWeight& beta) {
  if (per_degree.size() != beta.values.size())
    throw Error(ErrorCode::ShapeMismatch, "beta length does not match the number of degrees");
  double sum = 0.0;
  for (size_t k = 0; k < per_degree.size(); ++k)
    sum += sign_pow(static_cast<int>(k) + 1) * beta.values[k] * per_degree[k];
  return 0.5 * sum;
}

double log_reidemeister(const TwistedComplex& complex, const ChainMetric& metric) {
  std::vector<double> traces;
  for (int k = 0; k <= complex.dimension(); ++k) {
    const SpectralData spec = eigendecompose(laplacian(complex, metric, k), metric[k]);
    if (spec.kernel_dim != 0)
      throw Error(ErrorCode::NotAcyclic, "homology in degree " + std::to_string(k) +
                                             " has dimension " + std::to_string(spec.kernel_dim));
    traces.push_back(tr_log(spec));
  }
  return generalized_log_torsion(traces, BetaWeight::degree(complex.dimension()));
}

double determinant_oracle(const TwistedComplex& complex) {
  const int n = complex.dimension();
  // Columns of ∂_k that are mapped isomorphically; top degree uses all cells.
  std::vector<int> cols(static_cast<size_t>(complex.chain_dim(n)));
  std::iota(cols.begin(), cols.end(), 0);
  double log_tau = 0.0;
  for (int k = n; k >= 1; --k) {
    const Matrix d = complex.boundary(k);
    if (static_cast<int>(cols.size()) > d.rows())
      throw Error(ErrorCode::NotAcyclic, "degree " + std::to_string(k) +
                                             " has more free cells than its boundary can absorb");
    Matrix sub(d.rows(), static_cast<Eigen::Index>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) sub.col(static_cast<Eigen::Index>(j)) = d.col(cols[j]);
    const PivotMinor minor = full_pivot_minor(sub, k);
    log_tau += sign_pow(k + 1) * minor.log_abs_det;

    std::vector<bool> taken(static_cast<size_t>(d.rows()), false);
    for (int r : minor.rows) taken[static_cast<size_t>(r)] = true;
    cols.clear();
    for (int i = 0; i < d.rows(); ++i)
      if (!taken[static_cast<size_t>(i)]) cols.push_back(i);
  }
  if (!cols.empty())
    throw Error(ErrorCode::NotAcyclic, "homology in degree 0 has dimension " +
                                           std::to_string(cols.size()));
  return log_tau;
}

EulerCharacteristics euler_characteristics(const std::vector<int>& b) {
  EulerCharacteristics e;
  for (size_t k = 0; k < b.size(); ++k) {
    const double s = sign_pow(static_cast<int>(k));
    e.chi += s * b[k];
    e.chi_derived += s * static_cast<double>(k) * b[k];
  }
  return e;
}

CombinatorialReport combinatorial_report(const TwistedComplex& complex, const ChainMetric& metric,
                                         const BetaWeight& beta) {
  CombinatorialReport rep;
  rep.dimension = complex.dimension();
  rep.rank = complex.rank();
  if (beta.size() != rep.dimension + 1)
    throw Error(ErrorCode::ShapeMismatch, "beta needs " + std::to_string(rep.dimension + 1) +
                                              " entries");
  rep.beta = beta;
  rep.classification = classify_beta(beta);
  for (int k = 0; k <= rep.dimension; ++k) {
    const SpectralData spec = eigendecompose(laplacian(complex, metric, k), metric[k]);
    rep.betti.push_back(spec.kernel_dim);
    rep.tr_log.push_back(tr_log(spec, false));
    rep.spectra.emplace_back(spec.eigenvalues.data(),
                             spec.eigenvalues.data() + spec.eigenvalues.size());
  }
  rep.euler = euler_characteristics(rep.betti);
  rep.acyclic = std::all_of(rep.betti.begin(), rep.betti.end(), [](int b) { return b == 0; });
  require_acyclic(rep.betti);
  rep.log_torsion = generalized_log_torsion(rep.tr_log, beta);
  rep.log_reidemeister = generalized_log_torsion(rep.tr_log, BetaWeight::degree(rep.dimension));
  if (metric.is_identity()) {
    rep.oracle = determinant_oracle(complex);
    rep.oracle_available = true;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Metric variation

namespace {

struct VariationAtStep {
  std::vector<double> gamma, trace_alpha;
  double lhs = 0.0, rhs = 0.0, laplacian_residual = 0.0, log_t = 0.0;
};

double trace_log_torsion(const TwistedComplex& complex, const ChainMetric& metric,
                         const BetaWeight& beta) {
  std::vector<double> traces;
  for (int k = 0; k <= complex.dimension(); ++k) {
    const SpectralData spec = eigendecompose(laplacian(complex, metric, k), metric[k]);
    if (spec.kernel_dim != 0)
      throw Error(ErrorCode::NotAcyclic, "metric path leaves the acyclic locus at degree " +
                                             std::to_string(k));
    // log det Δ = log det(hΔ) - log det h, both by Cholesky
    const Matrix& h = metric[k];
    const Matrix hl = h * laplacian(complex, metric, k);
    const Eigen::LLT<Matrix> a(0.5 * (hl + hl.transpose())), b(h);
    if (a.info() != Eigen::Success || b.info() != Eigen::Success) {
      traces.push_back(tr_log(spec));
      continue;
    }
    traces.push_back(2.0 * (a.matrixLLT().diagonal().array().log().sum() -
                            b.matrixLLT().diagonal().array().log().sum()));
  }
  return generalized_log_torsion(traces, beta);
}

VariationAtStep variation_at(const TwistedComplex& complex, const MetricPath& path,
                             const BetaWeight& beta, double u0, double h) {
  const int n = complex.dimension();
  const ChainMetric g0 = path(u0), gp = path(u0 + h), gm = path(u0 - h);

  VariationAtStep out;
  out.log_t = trace_log_torsion(complex, g0, beta);
  out.lhs = 2.0 * (trace_log_torsion(complex, gp, beta) - trace_log_torsion(complex, gm, beta)) /
            (2.0 * h);

  std::vector<Matrix> alpha, delta, dco, lap;
  for (int k = 0; k <= n; ++k) {
    const Matrix hdot = (gp[k] - gm[k]) / (2.0 * h);
    alpha.push_back(g0[k].ldlt().solve(hdot));
    delta.push_back(codifferential(complex, g0, k));
    dco.push_back(complex.coboundary(k));
    lap.push_back(laplacian(complex, g0, k));
  }

  auto gamma_at = [&](int k) -> double {
    if (k < 0 || k > n || dco[static_cast<size_t>(k)].size() == 0) return 0.0;
    const auto K = static_cast<size_t>(k);
    const Matrix p = lap[K].partialPivLu().solve(Matrix::Identity(lap[K].rows(), lap[K].cols()));
    return (p * delta[K] * dco[K] * alpha[K]).trace();
  };
  auto tr_alpha = [&](int k) -> double {
    if (k < 0 || k > n) return 0.0;
    return alpha[static_cast<size_t>(k)].trace();
  };

  for (int k = 0; k <= n; ++k) {
    out.gamma.push_back(gamma_at(k));
    out.trace_alpha.push_back(tr_alpha(k));
  }
  auto gam = [&](int k) { return (k < 0 || k > n) ? 0.0 : out.gamma[static_cast<size_t>(k)]; };
  for (int k = 0; k <= n; ++k) {
    const double term =
        tr_alpha(k) + tr_alpha(k + 1) - gam(k + 1) - 2.0 * gam(k) - gam(k - 1);
    out.rhs += sign_pow(k + 1) * beta[k] * term;
  }

  // Four-term formula for Δ̇_k against the central difference of Δ_k.
  for (int k = 0; k <= n; ++k) {
    const auto K = static_cast<size_t>(k);
    const Matrix fd = (laplacian(complex, gp, k) - laplacian(complex, gm, k)) / (2.0 * h);
    Matrix formula = Matrix::Zero(fd.rows(), fd.cols());
    if (dco[K].size() != 0) {
      formula -= alpha[K] * delta[K] * dco[K];
      formula += delta[K] * alpha[K + 1] * dco[K];
    }
    if (k >= 1 && dco[K - 1].size() != 0) {
      formula -= dco[K - 1] * alpha[K - 1] * delta[K - 1];
      formula += dco[K - 1] * delta[K - 1] * alpha[K];
    }
    out.laplacian_residual = std::max(out.laplacian_residual, max_abs(fd - formula));
  }
  return out;
}

}  // namespace

VariationReport variation_check(const TwistedComplex& complex, const MetricPath& path,
                                const BetaWeight& beta, double u0, double step) {
  if (beta.size() != complex.dimension() + 1)
    throw Error(ErrorCode::ShapeMismatch, "beta length does not match the complex");
  if (!(step > 0.0)) throw Error(ErrorCode::BadParameter, "step must be positive");

  const VariationAtStep full = variation_at(complex, path, beta, u0, step);
  const VariationAtStep half = variation_at(complex, path, beta, u0, 0.5 * step);

  VariationReport rep;
  rep.gamma = full.gamma;
  rep.trace_alpha = full.trace_alpha;
  rep.lhs = full.lhs;
  rep.rhs = full.rhs;
  rep.step = step;
  rep.discrepancy = std::abs(full.lhs - full.rhs);
  rep.laplacian_residual = full.laplacian_residual;
  rep.discrepancy_half_step = std::abs(half.lhs - half.rhs);
  rep.laplacian_residual_half_step = half.laplacian_residual;
  rep.convergence_ratio =
      rep.discrepancy_half_step > 0.0 ? rep.discrepancy / rep.discrepancy_half_step : 0.0;

  // Central differences of tr log Δ lose about eps·|log T|/step to rounding.
  const double noise = 1e-15 * (1.0 + std::abs(full.log_t) + std::abs(full.lhs)) / step;
  rep.at_roundoff = rep.discrepancy <= 10.0 * noise;
  if (!rep.at_roundoff && rep.convergence_ratio < 2.5)
    throw Error(ErrorCode::StepTooLarge,
                "discrepancy shrank only by a factor " + std::to_string(rep.convergence_ratio) +
                    " when halving the step");
  return rep;
}

CoefficientTable expanded_gamma_coefficients(int n) {
  CoefficientTable c(static_cast<size_t>(n + 1), std::vector<long long>(static_cast<size_t>(n + 1), 0));
  auto add = [&](int gamma_index, int beta_index, long long value) {
    if (gamma_index < 0 || gamma_index > n) return;  // γ_{-1} = γ_{n+1} = 0
    c[static_cast<size_t>(gamma_index)][static_cast<size_t>(beta_index)] += value;
  };
  for (int k = 0; k <= n; ++k) {
    const long long s = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1}
    add(k + 1, k, -s);
    add(k, k, -2 * s);
    add(k - 1, k, -s);
  }
  return c;
}

CoefficientTable second_difference_gamma_coefficients(int n) {
  CoefficientTable c(static_cast<size_t>(n + 1), std::vector<long long>(static_cast<size_t>(n + 1), 0));
  for (int j = 0; j <= n; ++j) {
    const long long s = (j % 2 == 0) ? -1 : 1;  // (-1)^{j+1}
    auto& row = c[static_cast<size_t>(j)];
    if (j + 1 <= n) row[static_cast<size_t>(j + 1)] += s;
    row[static_cast<size_t>(j)] += -2 * s;
    if (j - 1 >= 0) row[static_cast<size_t>(j - 1)] += s;
  }
  return c;
}

}  // namespace torsionlab
