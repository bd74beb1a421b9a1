#include <cmath>

#include <doctest.h>

#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/rates.hpp"

using namespace mixlab;

TEST_CASE("polynomial mixing exponents and constants") {
  CHECK(q_poly(1.0) == 2.0 / 3.0);
  CHECK(constant_c0_poly(1.0, 1.0, 0.0) == 1.0 / 512.0);
  // 1/(2(1+c_B)) is the smaller branch once c_B > 1.
  CHECK(constant_c0_poly(1.0, 1.0, 3.0) == 1.0 / 1024.0);
  for (double p : {0.25, 0.5, 1.0, 2.0}) CHECK(q_sobolev(1.0, p) == q_poly(p));
  CHECK(q_sobolev(2.0, 1.0) == 4.0 / 5.0);
  CHECK(q_sobolev(0.5, 1.0) == 1.5 / 2.5);
  CHECK_THROWS_AS(q_poly(0.0), InvalidArgument);
  CHECK_THROWS_AS(constant_c0_poly(1.0, -1.0, 0.0), InvalidArgument);
}

TEST_CASE("sobolev-mixing constant") {
  // s = p = a = lambda1 = 1, c_B = 0: both branches equal 1/128.
  CHECK(constant_cs(1.0, 1.0, 1.0, 0.0, 1.0) == doctest::Approx(1.0 / 256.0).epsilon(1e-15));
  CHECK(constant_cs(1.0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0 / 512.0).epsilon(1e-15));
}

TEST_CASE("exponential mixing constants") {
  CHECK(constant_c0_exp(1.0, 1.0, 32.0, 0.0) == 1.0 / 128.0);
  CHECK(constant_c0_exp(1.0, 1.0, 1.0, 0.0) == doctest::Approx(1.0 / (128.0 * 32.0)).epsilon(1e-15));
  CHECK(exp_mixing_nu_threshold(1.0, 1.0, 32.0) == std::exp(-1.0));
  CHECK(exp_mixing_nu_threshold(2.0, 1.0, 1.0) == std::exp(-8.0));
  CHECK(exp_mixing_nu_threshold(2.0, 100.0, 1000.0) == std::exp(-100.0));
  CHECK(exp_timescale_exponent(1.0) == 2.0);
}

TEST_CASE("shear, spiral and mixed-bound exponents") {
  CHECK(q_shear(1, 2.0) == 0.8);
  CHECK(q_shear(1, 1.0) == 2.0 / 2.25);
  CHECK(q_shear(0, 2.0) == 2.0 / 3.0);
  CHECK(p_shear(1, 2.0) == 0.5);
  CHECK(p_spiral(1.0) == 1.0);
  CHECK(p_spiral(2.0) == 1.0);
  CHECK(p_spiral(4.0) == 0.5);
  CHECK(q_mixed(1.0) == 3.0 / 5.0);
  CHECK(q_mixed(0.5) == 7.0 / 9.0);
  CHECK(constant_c_mixed(1.0, 1.0, 1.0) == 1.0 / 16384.0);
  CHECK(constant_c_mixed(1.0, 1.0, 0.0) == 1.0 / (128.0 * 64.0));
  CHECK_THROWS_AS(p_spiral(0.5), InvalidArgument);
  CHECK_THROWS_AS(q_shear(1, 2.5), InvalidArgument);
  CHECK_THROWS_AS(q_shear(-1, 2.0), InvalidArgument);
}

TEST_CASE("powers of two") {
  CHECK(round_up_pow2(3.0) == 4.0);
  CHECK(round_up_pow2(4.0) == 4.0);
  CHECK(round_up_pow2(0.3) == 0.5);
  CHECK(round_up_pow2(1.0) == 1.0);
}

TEST_CASE("model predictions") {
  const auto shear = build_shear(ShearModel{});
  const PredictedRates s = predicted_rates(*shear, 1.0);
  CHECK(s.p == 0.5);
  CHECK(s.q == 0.8);
  CHECK_FALSE(s.mixed);

  const auto spiral = build_spiral(SpiralModel{1.0, 1, 64});
  const PredictedRates sp = predicted_rates(*spiral, 1.0);
  CHECK(sp.p == 1.0);
  CHECK(sp.q == 3.0 / 5.0);
  CHECK(sp.mixed);
  CHECK(sp.c0 == constant_c_mixed(1.0, 1.0, 1.0));
  const auto spiral4 = build_spiral(SpiralModel{4.0, 1, 64});
  CHECK(spiral4->predicted_p() == 0.5);
  CHECK(spiral4->predicted_q() == 7.0 / 9.0);

  const auto kolm = build_kolmogorov(KolmogorovModel{2.0, 1, 32});
  const PredictedRates k = predicted_rates(*kolm, 1.0);
  CHECK(k.p == 1.0);
  CHECK(k.q == 2.0 / 3.0);
  CHECK(k.q_alt == 3.0 / 5.0);
  CHECK(k.c0 == constant_c0_poly(1.0, 1.0, 1.0));

  const auto kin = build_kinetic(KineticModel{{1}, 16});
  const PredictedRates kr = predicted_rates(*kin, 1.0);
  CHECK(kr.q == 3.0 / 5.0);
  CHECK(kr.mixed);

  const auto heat = build_shear(ShearModel{ShearProfile::named("const"), 0, 2.0, 1, 64});
  CHECK(heat->commutes());
  const PredictedRates h = predicted_rates(*heat, 1.0);
  CHECK(h.q == 1.0);
}
