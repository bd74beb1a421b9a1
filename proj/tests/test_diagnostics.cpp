#include <cmath>

#include <doctest.h>

#include "mixlab/diagnostics.hpp"
#include "mixlab/error.hpp"
#include "mixlab/rates.hpp"

using namespace mixlab;

namespace {

DecayTrace trace_from(const std::vector<double>& t, double (*h)(double)) {
  DecayTrace tr;
  for (double x : t) tr.push(x, h(x), 1.0, h(x));
  tr.t_horizon = t.back();
  return tr;
}

}  // namespace

TEST_CASE("power-law fits") {
  std::vector<double> x, y;
  for (int i = 1; i <= 50; ++i) {
    x.push_back(i);
    y.push_back(std::pow(i, -2.0));
  }
  const RateFit f = fit_power_law(x, y, 1.0, 50.0);
  CHECK(f.exponent == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(f.log_intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK(f.n_points == 50);

  // Scale equivariance: only the intercept moves.
  std::vector<double> scaled = y;
  for (auto& v : scaled) v *= 37.5;
  const RateFit g = fit_power_law(x, scaled, 1.0, 50.0);
  CHECK(std::abs(g.exponent - f.exponent) < 1e-12);
  CHECK(g.log_intercept == doctest::Approx(std::log(37.5)).epsilon(1e-12));

  const RateFit w = fit_power_law(x, y, 10.0, 20.0);
  CHECK(w.n_points == 11);
  CHECK(w.window_lo == 10.0);
  CHECK(w.window_hi == 20.0);
  const auto j = w.to_json();
  for (const char* key : {"exponent", "intercept", "residual", "window", "n_points"}) CHECK(j.contains(key));

  CHECK_THROWS_AS(fit_power_law(x, y, 1.0, 3.0), InvalidArgument);
  y[20] = 0.0;
  CHECK_THROWS_AS(fit_power_law(x, y, 1.0, 50.0), InvalidArgument);
}

TEST_CASE("mixing fit drops the noise floor") {
  std::vector<double> t;
  for (int i = 0; i <= 60; ++i) t.push_back(std::pow(10.0, 1.0 + i / 20.0));
  DecayTrace tr;
  for (double x : t) tr.push(x, 1.0, 1.0, x < 500 ? 3.0 / x : 1e-16);
  const RateFit f = fit_mixing_rate(tr, 10.0, 1e4);
  CHECK(f.exponent == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.n_points == 34);  // t < 500 only
}

TEST_CASE("threshold times") {
  std::vector<double> t;
  for (int i = 0; i <= 100; ++i) t.push_back(0.1 * i);
  const DecayTrace tr = trace_from(t, [](double x) { return std::exp(-x); });
  CHECK(tau_threshold(tr, std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  // Exact between samples for exponentials thanks to log interpolation.
  CHECK(tau_threshold(tr, std::exp(-2.55)) == doctest::Approx(2.55).epsilon(1e-12));
  const DecayTrace faster = trace_from(t, [](double x) { return std::exp(-2 * x); });
  CHECK(tau_threshold(faster, 0.5) < tau_threshold(tr, 0.5));
  const DecayTrace flat = trace_from(t, [](double) { return 1.0; });
  CHECK_THROWS_AS(tau_threshold(flat, 0.5), NumericalError);
  CHECK_THROWS_AS(tau_threshold(tr, 1.5), InvalidArgument);
}

TEST_CASE("enhanced dissipation exponent") {
  std::vector<double> nu, tau;
  for (int i = 0; i < 8; ++i) {
    nu.push_back(std::pow(10.0, -6.0 + 3.0 * i / 7.0));
    tau.push_back(std::pow(nu.back(), -0.5));
  }
  CHECK(ed_exponent(nu, tau).exponent == doctest::Approx(0.5).epsilon(1e-12));

  // Pure heat: tau = |ln theta| / (nu lambda_1).
  const auto heat = build_shear(ShearModel{ShearProfile::named("const"), 0, 2.0, 1, 8});
  const Field f = heat->initial_datum(DatumSpec{});
  // The single-mode datum is an eigenfunction; its eigenvalue is the H1/H ratio squared.
  const double lambda = std::pow(heat->norm(f, 1.0) / heat->norm(f, 0.0), 2);
  tau.clear();
  for (double v : nu) {
    EvolveParams p;
    p.nu = v;
    p.t_end = 2.0 / v;
    const DecayTrace tr = evolve(*heat, f, p).trace;
    tau.push_back(tau_threshold(tr, std::exp(-1.0)));
    CHECK(tau.back() == doctest::Approx(1.0 / (v * lambda)).epsilon(1e-6));
  }
  CHECK(ed_exponent(nu, tau).exponent == doctest::Approx(1.0).epsilon(1e-6));

  CHECK_THROWS_AS(ed_exponent({1e-3, 2e-3, 3e-3, 4e-3}, {1, 2, 3, 4}), InvalidArgument);
  CHECK_THROWS_AS(ed_exponent({1e-6, 1e-3}, {1, 2}), InvalidArgument);
}

TEST_CASE("decay bound check") {
  const double nu = 1e-4, q = 0.5, c0 = 0.01;
  const double rate = c0 * std::pow(nu, q);
  std::vector<double> t;
  for (int i = 0; i <= 200; ++i) t.push_back(10.0 * i);
  DecayTrace on_bound;
  for (double x : t) on_bound.push(x, std::exp(-rate * x), 1, 1);
  on_bound.t_horizon = t.back();
  const BoundReport exact = theorem_bound_check(on_bound, nu, q, c0, 5e-2);
  CHECK(exact.pass);
  CHECK(std::abs(exact.worst_margin) < 1e-12);
  CHECK(exact.checked == 190);  // samples with t > 100

  DecayTrace flat;
  for (double x : t) flat.push(x, 1.0, 1, 1);
  flat.t_horizon = t.back();
  CHECK_FALSE(theorem_bound_check(flat, nu, q, c0, 5e-2).pass);

  // A trace stopped early is also judged at its horizon.
  DecayTrace stopped;
  for (double x : t)
    if (x <= 500) stopped.push(x, std::exp(-rate * x), 1, 1);
  stopped.stopped_early = true;
  stopped.t_horizon = 1e6;
  const BoundReport rep = theorem_bound_check(stopped, nu, q, c0, 5e-2);
  CHECK_FALSE(rep.pass);

  DecayTrace too_short;
  too_short.push(0, 1, 1, 1);
  too_short.push(50, 1, 1, 1);
  too_short.t_horizon = 50;
  CHECK_THROWS_AS(theorem_bound_check(too_short, nu, q, c0, 5e-2), InvalidArgument);
}

TEST_CASE("exponential-mixing bound check") {
  // p = 1, a1 = 1, a2 = 32: admissible for nu < e^{-1}.
  const double p = 1.0, a1 = 1.0, a2 = 32.0;
  const double c0 = constant_c0_exp(p, a1, a2, 0.0);
  const double nu = 1e-3, L = std::pow(std::abs(std::log(nu)), 2.0 / p);
  DecayTrace tr;
  for (int i = 0; i <= 100; ++i) {
    const double t = 20.0 * L * i / 100;
    tr.push(t, std::exp(-c0 * t / L), 1, 1);
  }
  tr.t_horizon = 20.0 * L;
  const BoundReport r = theorem_bound_check_exp(tr, nu, p, c0, a1, a2, 5e-2);
  CHECK(r.pass);
  CHECK(std::abs(r.worst_margin) < 1e-12);
  CHECK_THROWS_AS(theorem_bound_check_exp(tr, 0.5, p, c0, a1, a2, 5e-2), InvalidArgument);
}
