#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mixlab/evolution.hpp"

namespace mixlab {

/// Least-squares line in log-log coordinates.
struct RateFit {
  double exponent = 0.0;       // slope
  double log_intercept = 0.0;  // natural log of the prefactor
  double residual = 0.0;       // RMS misfit in log space
  double window_lo = 0.0;
  double window_hi = 0.0;
  int n_points = 0;

  nlohmann::json to_json() const;
};

struct BoundReport {
  bool pass = false;
  double worst_margin = 0.0;  // min over checked times of (bound - h)/bound
  int checked = 0;

  nlohmann::json to_json() const;
};

/// Fits values ~ C x^exponent using points with x in [lo, hi]. Throws when
/// fewer than 4 points fall in the window or a value there is nonpositive.
RateFit fit_power_law(const std::vector<double>& x, const std::vector<double>& values, double lo,
                      double hi);

/// Same, restricted to values above floor * values[0] (noise cut).
RateFit fit_mixing_rate(const DecayTrace& trace, double t_lo, double t_hi, double noise_floor = 1e-12);

/// First time h drops to theta * h(0), by linear interpolation in (t, log h).
double tau_threshold(const DecayTrace& trace, double theta);

/// Fits tau ~ nu^{-q}; returns the fit with exponent = q_meas = -slope.
/// Needs at least 4 viscosities spanning 2 decades.
RateFit ed_exponent(const std::vector<double>& nu, const std::vector<double>& tau);

/// h(t) <= (1 + tol) e^{-c0 nu^q s t} h(0) for every sample with
/// t > 1/(nu^q s), where s is the model's rate scale (1 unless given).
/// Early-stopped traces are also checked at their horizon using the last
/// sample, since h is nonincreasing.
BoundReport theorem_bound_check(const DecayTrace& trace, double nu, double q, double c0, double tol,
                                double rate_scale = 1.0);

/// Exponential-mixing variant: bound e^{-c0 |ln nu|^{-2/p} t} for
/// t > |ln nu|^{2/p}, admissible only below the viscosity threshold.
BoundReport theorem_bound_check_exp(const DecayTrace& trace, double nu, double p, double c0,
                                    double a1, double a2, double tol);

}  // namespace mixlab
