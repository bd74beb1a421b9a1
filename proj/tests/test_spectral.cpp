#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "mixlab/error.hpp"
#include "mixlab/radial.hpp"
#include "mixlab/spectral.hpp"

using namespace mixlab;

namespace {

Field random_field(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector c(n);
  for (auto& x : c) x = cplx(g(rng), g(rng));
  return Field(c, BasisTag::GenericEigen);
}

Spectrum random_spectrum(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 50.0);
  std::vector<double> ev(n);
  for (auto& x : ev) x = u(rng);
  std::sort(ev.begin(), ev.end());
  return Spectrum(ev);
}

}  // namespace

TEST_CASE("sobolev norm on small spectra") {
  const Spectrum two({2.0, 3.0});
  CHECK(sobolev_norm(unit_field(2, 0), two, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(sobolev_norm(unit_field(2, 0), two, 0.0) == 1.0);
  Field f(CVector::Ones(2), BasisTag::GenericEigen);
  CHECK(sobolev_norm(f, Spectrum({1.0, 4.0}), -1.0) == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK_THROWS_AS(sobolev_norm(unit_field(3, 0), two, 1.0), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({0.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({2.0, 1.0}), InvalidArgument);
}

TEST_CASE("low-frequency projection") {
  const Spectrum s({1.0, 4.0});
  Field f(CVector::Ones(2), BasisTag::GenericEigen);
  const Field p = project_low(f, s, 2.0);
  CHECK(p.coefficients[0] == cplx(1.0));
  CHECK(p.coefficients[1] == cplx(0.0));
  CHECK(project_low(f, s, 4.0).coefficients == f.coefficients);
  CHECK(project_low(f, s, 0.5).coefficients.norm() == 0.0);

  std::mt19937_64 rng(11);
  const Spectrum big = random_spectrum(40, rng);
  const Field g = random_field(40, rng);
  const Field once = project_low(g, big, big.median());
  CHECK(project_low(once, big, big.median()).coefficients == once.coefficients);
}

TEST_CASE("Poincare pair on random fields") {
  std::mt19937_64 rng(2024);
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Spectrum spec = random_spectrum(24, rng);
    const Field f = random_field(24, rng);
    for (double s : {0.5, 1.0, 2.0})
      for (double R : {spec.lambda_min(), spec.median(), spec.lambda_max()}) {
        const double low = std::pow(sobolev_norm(project_low(f, spec, R), spec, 0.0), 2);
        Field high = f;
        high.coefficients -= project_low(f, spec, R).coefficients;
        const double hi = std::pow(sobolev_norm(high, spec, 0.0), 2);
        if (low > std::pow(R, s) * std::pow(sobolev_norm(f, spec, -s), 2) * (1 + 1e-12)) ++failures;
        if (std::pow(R, s) * hi > std::pow(sobolev_norm(f, spec, s), 2) * (1 + 1e-12)) ++failures;
      }
    // Cauchy-Schwarz through A^{1/2} and A^{-1/2}.
    const double h = sobolev_norm(f, spec, 0.0);
    if (dual_norm_hminus(f, spec) * sobolev_norm(f, spec, 1.0) < h * h * (1 - 1e-12)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("sobolev norm is monotone in s above unit eigenvalues") {
  std::mt19937_64 rng(5);
  std::vector<double> ev(30);
  std::uniform_real_distribution<double> u(1.0, 9.0);
  for (auto& x : ev) x = u(rng);
  std::sort(ev.begin(), ev.end());
  const Spectrum spec(ev);
  const Field f = random_field(30, rng);
  double prev = 0.0;
  for (double s = -2.0; s <= 2.0; s += 0.25) {
    const double n = sobolev_norm(f, spec, s);
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("fractional symbol") {
  CHECK(fractional_symbol(2.0, 1, 0) == 1.0);
  CHECK(fractional_symbol(1.0, 3, 4) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(fractional_symbol(1.0, 1, 1) * fractional_symbol(1.0, 1, 1) ==
        doctest::Approx(fractional_symbol(2.0, 1, 1)).epsilon(1e-15));
  CHECK_THROWS_AS(fractional_symbol(0.0, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(fractional_symbol(2.5, 1, 1), InvalidArgument);
}

TEST_CASE("dual norm of single modes") {
  const Spectrum s({3.0, 7.0});
  CHECK(dual_norm_hminus(unit_field(2, 0), s) == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
  // Torus mode (1, 0) has unit eigenvalue.
  const Spectrum torus({fractional_symbol(2.0, 1, 0), fractional_symbol(2.0, 1, 1)});
  CHECK(dual_norm_hminus(unit_field(2, 0), torus) == sobolev_norm(unit_field(2, 0), torus, 0.0));
}

TEST_CASE("disk dual norm equals the sup over H1 test functions") {
  const int N = 16;
  const RadialLaplacian lap(N, 1);
  // Dense H1 Gram matrix G_ij = e_i^* S e_j and the functional b_i = <f, e_i>_H.
  Eigen::MatrixXcd G(N, N);
  for (int j = 0; j < N; ++j) G.col(j) = lap.apply_stiffness(CVector::Unit(N, j));
  Eigen::LLT<Eigen::MatrixXcd> llt(G);
  REQUIRE(llt.info() == Eigen::Success);
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    CVector f(N);
    for (auto& x : f) x = cplx(g(rng), g(rng));
    CVector b(N);
    for (int i = 0; i < N; ++i) b[i] = lap.weights()[i] * f[i];
    // The maximizer of |<f, eta>| / ||eta||_{H1} is eta = G^{-1} b.
    const CVector eta = llt.solve(b);
    const double num = std::abs(b.dot(eta));
    const double den = std::sqrt(std::real(eta.dot(G * eta)));
    const double sup = num / den;
    CHECK(std::abs(lap.dual_norm(f) - sup) < 1e-10 * sup);
    // No random test function beats it.
    for (int k = 0; k < 200; ++k) {
      CVector e(N);
      for (auto& x : e) x = cplx(g(rng), g(rng));
      CHECK(std::abs(b.dot(e)) / std::sqrt(std::real(e.dot(G * e))) <= sup * (1 + 1e-12));
    }
  }
}

TEST_CASE("disk operator is self-adjoint and positive") {
  const RadialLaplacian lap(64, 3);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  CVector a(64), b(64);
  for (int i = 0; i < 64; ++i) {
    a[i] = cplx(g(rng), g(rng));
    b[i] = cplx(g(rng), g(rng));
  }
  const InnerProduct ip(InnerProductKind::WeightedRadial, lap.weights());
  const cplx lhs = ip(lap.apply(a), b), rhs = ip(a, lap.apply(b));
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(lhs));
  CHECK(lap.eigenvalues()[0] > 0.0);
  CHECK(std::abs(lap.sobolev_norm(a, -1.0) - lap.dual_norm(a)) < 1e-12 * lap.dual_norm(a));
  CHECK(std::abs(lap.sobolev_norm(a, 1.0) - lap.h1_norm(a)) < 1e-12 * lap.h1_norm(a));
  const CVector back = lap.apply(lap.solve(a));
  CHECK((back - a).norm() < 1e-10 * a.norm());
  CHECK_THROWS_AS(RadialLaplacian(16, 0), InvalidArgument);
}

TEST_CASE("torus mode indexing and conjugate symmetry") {
  const TorusModes t{4};
  CHECK(t.count() == 9);
  CHECK(t.wavenumber(0) == -4);
  CHECK(t.index(0) == 4);
  CVector c = CVector::Zero(9);
  c[t.index(2)] = cplx(1, 2);
  c[t.index(-2)] = cplx(1, -2);
  CHECK(conjugate_symmetry_defect(Field(c, BasisTag::TorusFourier, true)) == 0.0);
  c[t.index(-2)] = cplx(1, 2);
  CHECK(conjugate_symmetry_defect(Field(c, BasisTag::TorusFourier, true)) == doctest::Approx(4.0));
}
