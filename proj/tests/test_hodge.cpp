#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "torsionlab/errors.hpp"
#include "torsionlab/hodge.hpp"

#include <random>

using namespace torsionlab;

namespace {

TwistedComplex build(const PresetSpec& spec) {
  auto [cells, rho] = preset(spec);
  return build_twisted_boundary(cells, rho);
}

std::vector<TwistedComplex> samples() {
  return {build({PresetKind::Circle, 0.7, 1.0, 0.3, 2, false}),
          build({PresetKind::Circle, 0.0, 1.0, 0.3, 2, true}),
          build({PresetKind::Torus2, 1.0, 1.1, 0.4, 2, false}),
          build({PresetKind::Torus2, 1.0, 0.0, 0.0, 2, true}),
          build({PresetKind::Interval, 1.0, 1.0, 0.3, 1, false})};
}

}  // namespace

TEST_CASE("jacobi agrees with a reference solver") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> nd;
  for (int size : {1, 3, 8, 20}) {
    Matrix a(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) a(i, j) = nd(gen);
    a = (a + a.transpose()).eval();
    const SymmetricEigen e = jacobi_eigen(a);
    const Eigen::SelfAdjointEigenSolver<Matrix> ref(a);
    CHECK(max_abs(e.values - ref.eigenvalues()) < 1e-12 * (1 + ref.eigenvalues().cwiseAbs().maxCoeff()));
    CHECK(max_abs(e.vectors.transpose() * e.vectors - Matrix::Identity(size, size)) < 1e-12);
    CHECK(max_abs(a * e.vectors - e.vectors * e.values.asDiagonal()) < 1e-11 * (1 + inf_norm(a)));
  }
}

TEST_CASE("circle laplacian is a multiple of the identity") {
  for (double theta : {0.7, 1.3, 2.5}) {
    const TwistedComplex c = build({PresetKind::Circle, theta, 1.0, 0.3, 2, false});
    const ChainMetric h = ChainMetric::identity(c);
    for (int k = 0; k <= 1; ++k) {
      const Matrix lap = laplacian(c, h, k);
      CHECK(max_abs(lap - (2 - 2 * std::cos(theta)) * Matrix::Identity(2, 2)) < 1e-14);
    }
  }
  const TwistedComplex pt = build({PresetKind::Point, 1.0, 1.0, 0.3, 1, false});
  CHECK(max_abs(laplacian(pt, ChainMetric::identity(pt), 0)) == 0.0);
}

TEST_CASE("identity metric laplacian matches the boundary formula") {
  for (const TwistedComplex& c : samples()) {
    const ChainMetric h = ChainMetric::identity(c);
    for (int k = 0; k <= c.dimension(); ++k) {
      const Matrix dk = c.boundary(k), dk1 = c.boundary(k + 1);
      Matrix expected = Matrix::Zero(c.chain_dim(k), c.chain_dim(k));
      if (dk.size()) expected += dk.transpose() * dk;
      if (dk1.size()) expected += dk1 * dk1.transpose();
      CHECK(max_abs(laplacian(c, h, k) - expected) < 1e-13);
    }
  }
}

TEST_CASE("spectral data under random metrics") {
  for (const TwistedComplex& c : samples()) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const ChainMetric h = ChainMetric::random(c, seed);
      for (int k = 0; k <= c.dimension(); ++k) {
        const Matrix lap = laplacian(c, h, k);
        // h Δ symmetric and positive semidefinite
        const Matrix hl = h[k] * lap;
        CHECK(max_abs(hl - hl.transpose()) < 1e-12 * (1 + inf_norm(hl)));
        const SpectralData sd = eigendecompose(lap, h[k]);
        const double norm = std::max(1.0, inf_norm(lap));
        for (Eigen::Index i = 0; i < sd.eigenvalues.size(); ++i) {
          CHECK(sd.eigenvalues(i) >= -1e-12 * norm);
          const Vector v = sd.eigenvectors.col(i);
          CHECK((lap * v - sd.eigenvalues(i) * v).norm() <= 1e-9 * norm);
        }
        const Eigen::Index n = sd.eigenvectors.cols();
        CHECK(max_abs(sd.eigenvectors.transpose() * h[k] * sd.eigenvectors - Matrix::Identity(n, n)) < 1e-10);
      }
    }
  }
}

TEST_CASE("betti numbers are metric independent and satisfy euler-poincare") {
  for (const TwistedComplex& c : samples()) {
    const std::vector<int> b0 = betti(c, ChainMetric::identity(c));
    for (std::uint64_t seed = 10; seed < 20; ++seed) CHECK(betti(c, ChainMetric::random(c, seed)) == b0);
    int chi_b = 0, chi_c = 0;
    for (int k = 0; k <= c.dimension(); ++k) {
      chi_b += (k % 2 ? -1 : 1) * b0[static_cast<size_t>(k)];
      chi_c += (k % 2 ? -1 : 1) * c.chain_dim(k);
    }
    CHECK(chi_b == chi_c);
  }
  const TwistedComplex trivial_torus = build({PresetKind::Torus2, 1.0, 0.0, 0.0, 1, true});
  CHECK(betti(trivial_torus, ChainMetric::identity(trivial_torus)) == std::vector<int>{1, 2, 1});
  const TwistedComplex trivial_circle = build({PresetKind::Circle, 0.0, 1.0, 0.3, 2, true});
  CHECK(betti(trivial_circle, ChainMetric::identity(trivial_circle)) == std::vector<int>{2, 2});
}

TEST_CASE("intertwining of d, delta and the parametrix") {
  for (const TwistedComplex& c : samples()) {
    const ChainMetric h = ChainMetric::random(c, 99);
    for (int k = 0; k < c.dimension(); ++k) {
      const Matrix d = c.coboundary(k);
      const Matrix delta = codifferential(c, h, k);
      const Matrix lk = laplacian(c, h, k), lk1 = laplacian(c, h, k + 1);
      const double scale = 1 + inf_norm(d) * (inf_norm(lk) + inf_norm(lk1));
      CHECK(max_abs(d * lk - lk1 * d) <= 1e-10 * scale);
      CHECK(max_abs(delta * lk1 - lk * delta) <= 1e-10 * (1 + inf_norm(delta) * (inf_norm(lk) + inf_norm(lk1))));

      const SpectralData sk = eigendecompose(lk, h[k]), sk1 = eigendecompose(lk1, h[k + 1]);
      const Matrix pk = (lk + kernel_projector(sk)).inverse();
      const Matrix pk1 = (lk1 + kernel_projector(sk1)).inverse();
      CHECK(max_abs(d * pk - pk1 * d) <= 1e-9 * (1 + inf_norm(d) * (inf_norm(pk) + inf_norm(pk1))));
      CHECK(max_abs(delta * pk1 - pk * delta) <= 1e-9 * (1 + inf_norm(delta) * (inf_norm(pk) + inf_norm(pk1))));
    }
  }
}

TEST_CASE("tr_log against an LU log-determinant") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  for (int size : {2, 5, 12}) {
    Matrix a(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) a(i, j) = nd(gen);
    const Matrix spd = a * a.transpose() + 0.5 * Matrix::Identity(size, size);
    const double expected = oracle::log_abs_det(spd);
    CHECK(tr_log(eigendecompose(spd)) == doctest::Approx(expected).epsilon(1e-9));
  }
  Matrix singular = Matrix::Zero(2, 2);
  singular(0, 0) = 3.0;
  CHECK_THROWS_AS(tr_log(eigendecompose(singular)), Error);
  CHECK(tr_log(eigendecompose(singular), false) == doctest::Approx(std::log(3.0)));
}

TEST_CASE("hodge split of positive eigenspaces") {
  for (const TwistedComplex& c : samples()) {
    const ChainMetric h = ChainMetric::random(c, 42);
    for (int k = 0; k <= c.dimension(); ++k) {
      const SpectralData sd = eigendecompose(laplacian(c, h, k), h[k]);
      std::vector<double> seen;
      for (Eigen::Index i = sd.kernel_dim; i < sd.eigenvalues.size(); ++i) {
        const double lambda = sd.eigenvalues(i);
        bool dup = false;
        for (double s : seen) dup = dup || std::abs(s - lambda) <= 1e-7 * lambda;
        if (dup) continue;
        seen.push_back(lambda);
        const EigenspaceSplit sp = hodge_split(c, h, k, lambda);
        CHECK(sp.f_mult + sp.g_mult == sp.multiplicity);
        const Eigen::Index m = sp.multiplicity;
        const Matrix& a = sp.closed_restricted;
        const Matrix& b = sp.coclosed_restricted;
        CHECK(max_abs(a + b - Matrix::Identity(m, m)) < 1e-9);
        CHECK(max_abs(a * a - a) < 1e-9);
        CHECK(max_abs(b * b - b) < 1e-9);
        if (k < c.dimension() && sp.g_mult > 0) {
          // coclosed part in degree k matches the closed part in degree k+1
          const EigenspaceSplit up = hodge_split(c, h, k + 1, lambda);
          CHECK(sp.g_mult == up.f_mult);
        }
      }
    }
  }
}

TEST_CASE("hodge split rejects a value outside the spectrum") {
  const TwistedComplex c = build({PresetKind::Circle, 0.7, 1.0, 0.3, 2, false});
  try {
    hodge_split(c, ChainMetric::identity(c), 0, 5.0);
    FAIL("expected NotAnEigenvalue");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAnEigenvalue);
  }
}
