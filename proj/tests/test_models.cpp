#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>

#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/radial.hpp"

using namespace mixlab;

namespace {

// Random coefficients with a random algebraic decay, so that some draws carry
// most of their energy at high frequency and others at low frequency.
CVector random_coefficients(const ModelProblem& m, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 2.0);
  const double decay = u(rng);
  CVector c(m.size());
  if (m.basis() == BasisTag::RadialGrid) {
    for (auto& x : c) x = cplx(g(rng), g(rng));
    return c;
  }
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Decay by the index distance from the middle for torus fields, by index otherwise.
    const double d = m.basis() == BasisTag::TorusFourier
                         ? std::abs(static_cast<double>(i) - static_cast<double>(n / 2))
                         : static_cast<double>(i);
    c(i) = cplx(g(rng), g(rng)) / std::pow(1.0 + d, decay);
  }
  return c;
}

struct BoundStats {
  double skew = 0.0;        // max |Re<B phi, phi>| / ||phi||^2
  double commutator = 0.0;  // max |Re<B phi, A phi>| / ||phi||_{H1}^2
  double mixed = 0.0;       // max |Re<B phi, A phi>| / (||phi|| ||phi||_{H1})
};

BoundStats sample_bounds(const ModelProblem& m, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BoundStats s;
  const InnerProduct& ip = m.inner_product();
  for (int t = 0; t < trials; ++t) {
    const CVector phi = random_coefficients(m, rng);
    const CVector b = m.apply_B(phi);
    const double h = m.norm(phi, 0.0), h1 = m.norm(phi, 1.0);
    const double rba = std::abs(std::real(ip(b, m.apply_A(phi))));
    s.skew = std::max(s.skew, std::abs(std::real(ip(b, phi))) / (h * h));
    s.commutator = std::max(s.commutator, rba / (h1 * h1));
    s.mixed = std::max(s.mixed, rba / (h * h1));
  }
  return s;
}

std::vector<ModelPtr> all_models() {
  std::vector<ModelPtr> out;
  out.push_back(build_shear(ShearModel{ShearProfile::named("sin"), 1, 2.0, 1, 64}));
  out.push_back(build_shear(ShearModel{ShearProfile::named("sin"), 1, 1.0, 2, 64}));
  out.push_back(build_shear(ShearModel{ShearProfile::named("sin"), 1, 0.5, 1, 64}));
  out.push_back(build_shear(ShearModel{ShearProfile::named("sin2"), 1, 2.0, 1, 64}));
  out.push_back(build_kolmogorov(KolmogorovModel{2.0, 1, 64}));
  out.push_back(build_kolmogorov(KolmogorovModel{1.0, 2, 64}));
  out.push_back(build_kolmogorov(KolmogorovModel{1.5, -3, 64}));
  out.push_back(build_spiral(SpiralModel{1.0, 1, 64}));
  out.push_back(build_spiral(SpiralModel{4.0, 3, 64}));
  out.push_back(build_spiral(SpiralModel{2.5, -2, 64}));
  out.push_back(build_kinetic(KineticModel{{1}, 24}));
  out.push_back(build_kinetic(KineticModel{{2, -1}, 10}));
  return out;
}

}  // namespace

TEST_CASE("skewness and commutator bounds on random fields") {
  std::uint64_t seed = 100;
  for (const auto& m : all_models()) {
    CAPTURE(m->descriptor().dump());
    const BoundStats s = sample_bounds(*m, 1000, seed++);
    CHECK(s.skew <= 1e-12);
    if (m->mixed_bound()) {
      CHECK(s.mixed <= m->mixed_constant() * (1 + 1e-12));
    } else {
      CHECK(s.commutator <= m->c_B() * (1 + 1e-12));
    }
    // The generic bound follows from the mixed one through Poincare.
    CHECK(s.commutator <= m->c_B() * (1 + 1e-12));
  }
}

TEST_CASE("pure-heat shear commutes") {
  const auto heat = build_shear(ShearModel{ShearProfile::named("const"), 0, 2.0, 1, 32});
  const BoundStats s = sample_bounds(*heat, 200, 7);
  CHECK(s.commutator <= 1e-12);
}

TEST_CASE("Kolmogorov wavenumber constraint and weights") {
  CHECK_THROWS_AS(build_kolmogorov(KolmogorovModel{1.0, 1, 32}), InvalidArgument);
  try {
    build_kolmogorov(KolmogorovModel{1.0, 1, 32});
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("wavenumber") != std::string::npos);
  }
  CHECK_NOTHROW(build_kolmogorov(KolmogorovModel{1.0, 2, 32}));
  CHECK_NOTHROW(build_kolmogorov(KolmogorovModel{1.01, 1, 32}));

  const double L = 2.0;
  const auto m = build_kolmogorov(KolmogorovModel{L, 1, 16});
  const RVector& w = m->inner_product().weights();
  const TorusModes modes{16};
  // w_m = 1 - 1/(L^2 k^2 + m^2); the (m = 0) weight is 1 - 1/4.
  CHECK(w(modes.index(0)) == 0.75);
  CHECK(w(modes.index(3)) == 1.0 - 1.0 / 13.0);
  // Norm equivalence with L^2: 1 - 1/(L^2 k^2) <= ratio <= 1 on every mode.
  for (int i = 0; i < modes.count(); ++i) {
    CVector e = CVector::Unit(modes.count(), i);
    const double ratio = std::pow(m->norm(e, 0.0), 2);
    CHECK(ratio >= 1.0 - 1.0 / (L * L) - 1e-15);
    CHECK(ratio <= 1.0);
  }
}

TEST_CASE("kinetic Hermite spectrum") {
  const auto m = build_kinetic(KineticModel{{1}, 8});
  const Spectrum s = m->spectrum();
  REQUIRE(s.size() == 8);
  for (std::size_t n = 0; n < 8; ++n) CHECK(s[n] == static_cast<double>(n + 1));
  const auto m2 = build_kinetic(KineticModel{{1, 1}, 3});
  // Multi-indices of total degree 1..3 in two dimensions: 2 + 3 + 4.
  CHECK(m2->size() == 9);
  CHECK_THROWS_AS(build_kinetic(KineticModel{{1}, 1}), InvalidArgument);
  CHECK_THROWS_AS(build_kinetic(KineticModel{{0}, 8}), InvalidArgument);
}

TEST_CASE("spiral exact inviscid solution") {
  const auto m = build_spiral(SpiralModel{1.0, 1, 32});
  const auto lap = radial_laplacian(32, 1);
  const Field one = m->make_field(CVector::Ones(32));
  const Field out = exact_inviscid(*m, one, M_PI);
  for (int j = 0; j < 32; ++j)
    CHECK(std::abs(out.coefficients(j) - std::polar(1.0, -M_PI * lap->radii()(j))) < 1e-15);
  CHECK(exact_inviscid(*m, one, 0.0).coefficients == one.coefficients);

  std::mt19937_64 rng(3);
  for (const auto& model : all_models()) {
    if (!model->has_exact_inviscid()) {
      CHECK_THROWS_AS(exact_inviscid(*model, model->make_field(CVector::Zero(model->size())), 1.0),
                      Unsupported);
      continue;
    }
    const Field f = model->make_field(random_coefficients(*model, rng));
    const Field g = exact_inviscid(*model, f, 100.0);
    CHECK(std::abs(model->norm(g, 0.0) - model->norm(f, 0.0)) < 1e-13 * model->norm(f, 0.0));
  }
}

TEST_CASE("shear exact inviscid solution is a pointwise phase") {
  const int M = 16;
  const auto m = build_shear(ShearModel{ShearProfile::named("sin"), 1, 2.0, 1, M});
  const TorusModes modes{M};
  CVector c = CVector::Zero(modes.count());
  c(modes.index(0)) = 1.0;
  // Jacobi-Anger: e^{-i t sin y} = sum_m (-1)^m J_m(t) e^{i m y}, with J_{-m} = (-1)^m J_m.
  const double t = 0.7;
  const Field out = exact_inviscid(*m, m->make_field(c), t);
  for (int mm = -5; mm <= 5; ++mm) {
    const double expected = mm < 0 ? std::cyl_bessel_j(-mm, t) : (mm % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(mm, t);
    CHECK(std::abs(out.coefficients(modes.index(mm)) - expected) < 1e-13);
  }
}

TEST_CASE("initial data") {
  for (const auto& m : all_models()) {
    CAPTURE(m->descriptor().dump());
    for (const char* kind : {"single-mode", "random"}) {
      const Field f = m->initial_datum(DatumSpec{kind, 5});
      CHECK(m->norm(f, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK_NOTHROW(m->check(f));
    }
  }
  const auto shear = build_shear(ShearModel{});
  const Field bump = shear->initial_datum(DatumSpec{"gaussian-bump"});
  CHECK(bump.real_representation);
  CHECK(conjugate_symmetry_defect(bump) < 1e-14);
  CHECK_THROWS_AS(shear->initial_datum(DatumSpec{"nonsense"}), InvalidArgument);
  CHECK_THROWS_AS(build_kinetic(KineticModel{})->initial_datum(DatumSpec{"gaussian-bump"}), Unsupported);
  // Same seed, same field.
  const Field a = shear->initial_datum(DatumSpec{"random", 9});
  const Field b = shear->initial_datum(DatumSpec{"random", 9});
  CHECK(a.coefficients == b.coefficients);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(build_shear(ShearModel{ShearProfile::named("sin"), 1, 2.0, 0, 32}), InvalidArgument);
  CHECK_THROWS_AS(build_shear(ShearModel{ShearProfile::named("sin"), 1, 2.5, 1, 32}), InvalidArgument);
  CHECK_THROWS_AS(build_spiral(SpiralModel{0.5, 1, 32}), InvalidArgument);
  CHECK_THROWS_AS(build_spiral(SpiralModel{1.0, 0, 32}), InvalidArgument);
  CHECK_THROWS_AS(parse_family("vortex"), InvalidArgument);
  const auto m = build_spiral(SpiralModel{1.0, 1, 32});
  CHECK_THROWS_AS(m->check(Field(CVector::Zero(31), BasisTag::RadialGrid)), InvalidArgument);
  CHECK_THROWS_AS(m->check(Field(CVector::Zero(32), BasisTag::Hermite)), InvalidArgument);
}

TEST_CASE("tabulated shear profile") {
  const auto dir = std::filesystem::temp_directory_path() / "mixlab-profile-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "u.csv";
  {
    std::ofstream out(path);
    out.precision(17);
    out << "y,u\n";
    const int n = 64;
    for (int i = 0; i < n; ++i) {
      const double y = 2 * M_PI * i / n;
      out << y << "," << std::sin(y) << "\n";
    }
  }
  const ShearProfile p = ShearProfile::parse("csv:" + path.string());
  const ShearProfile ref = ShearProfile::named("sin");
  for (double y : {0.1, 1.3, 2.9, 5.0}) {
    CHECK(p.value(y) == doctest::Approx(ref.value(y)).epsilon(1e-10));
    CHECK(p.derivative(y) == doctest::Approx(ref.derivative(y)).epsilon(1e-10));
  }
  CHECK(p.max_slope() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(ShearProfile::parse("csv:/nonexistent/u.csv"), Error);
}
