#include "mixlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixlab/error.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

nlohmann::json RateFit::to_json() const {
  return {{"exponent", exponent},
          {"intercept", log_intercept},
          {"residual", residual},
          {"window", {window_lo, window_hi}},
          {"n_points", n_points}};
}

nlohmann::json BoundReport::to_json() const {
  return {{"pass", pass}, {"worst_margin", worst_margin}, {"checked", checked}};
}

RateFit fit_power_law(const std::vector<double>& x, const std::vector<double>& values, double lo,
                      double hi) {
  if (x.size() != values.size()) throw InvalidArgument("fit: abscissa and values differ in length");
  if (!(hi >= lo)) throw InvalidArgument("fit: empty window");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi) continue;
    if (!(x[i] > 0.0)) throw InvalidArgument("fit: abscissa must be positive inside the window");
    if (!(values[i] > 0.0)) {
      std::ostringstream os;
      os << "fit: nonpositive value " << values[i] << " at x = " << x[i];
      throw InvalidArgument(os.str());
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(values[i]));
  }
  const std::size_t n = lx.size();
  if (n < 4) {
    std::ostringstream os;
    os << "fit: window [" << lo << ", " << hi << "] holds " << n << " points, need at least 4";
    throw InvalidArgument(os.str());
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw InvalidArgument("fit: all abscissae coincide");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.log_intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (fit.log_intercept + fit.exponent * lx[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.n_points = static_cast<int>(n);
  return fit;
}

RateFit fit_mixing_rate(const DecayTrace& trace, double t_lo, double t_hi, double noise_floor) {
  if (trace.size() == 0) throw InvalidArgument("fit: empty trace");
  const double floor = noise_floor * trace.hm1_norm.front();
  std::vector<double> t, v;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.hm1_norm[i] <= floor) continue;
    t.push_back(trace.times[i]);
    v.push_back(trace.hm1_norm[i]);
  }
  return fit_power_law(t, v, t_lo, t_hi);
}

double tau_threshold(const DecayTrace& trace, double theta) {
  if (!(theta > 0.0 && theta < 1.0)) throw InvalidArgument("threshold theta must lie in (0, 1)");
  if (trace.size() == 0) throw InvalidArgument("tau: empty trace");
  const double target = theta * trace.h_norm.front();
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace.h_norm[i] <= target) {
      const double t0 = trace.times[i - 1], t1 = trace.times[i];
      const double l0 = std::log(trace.h_norm[i - 1]), l1 = std::log(trace.h_norm[i]);
      const double lt = std::log(target);
      if (!(l0 > l1) || !std::isfinite(l1)) return t1;
      return t0 + (t1 - t0) * (l0 - lt) / (l0 - l1);
    }
  }
  std::ostringstream os;
  os << "no threshold crossing: h stays above " << theta << " h(0) up to t = " << trace.times.back()
     << " (t_end too small)";
  throw NumericalError(os.str());
}

RateFit ed_exponent(const std::vector<double>& nu, const std::vector<double>& tau) {
  if (nu.size() != tau.size()) throw InvalidArgument("ed_exponent: nu and tau differ in length");
  if (nu.size() < 4) throw InvalidArgument("ed_exponent needs at least 4 viscosities");
  const auto [lo, hi] = std::minmax_element(nu.begin(), nu.end());
  if (!(*lo > 0.0) || *hi / *lo < 100.0 * (1.0 - 1e-12))
    throw InvalidArgument("ed_exponent needs viscosities spanning at least 2 decades");
  RateFit fit = fit_power_law(nu, tau, *lo, *hi);
  fit.exponent = -fit.exponent;
  return fit;
}

namespace {

void accumulate(BoundReport& rep, double h, double bound) {
  const double margin = (bound - h) / bound;
  rep.worst_margin = rep.checked == 0 ? margin : std::min(rep.worst_margin, margin);
  ++rep.checked;
}

BoundReport check_rate(const DecayTrace& trace, double rate, double t_start, double tol) {
  if (trace.size() == 0) throw InvalidArgument("bound check: empty trace");
  const double horizon = std::max(trace.t_horizon, trace.times.back());
  if (!(horizon > t_start)) {
    std::ostringstream os;
    os << "bound check: trace ends at t = " << horizon << ", before the bound applies (t > "
       << t_start << ")";
    throw InvalidArgument(os.str());
  }
  const double h0 = trace.h_norm.front();
  BoundReport rep;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (trace.times[i] <= t_start) continue;
    accumulate(rep, trace.h_norm[i], std::exp(-rate * trace.times[i]) * h0);
  }
  if (trace.stopped_early && horizon > trace.times.back())
    accumulate(rep, trace.h_norm.back(), std::exp(-rate * horizon) * h0);
  rep.pass = rep.checked > 0 && rep.worst_margin >= -tol;
  return rep;
}

}  // namespace

BoundReport theorem_bound_check(const DecayTrace& trace, double nu, double q, double c0, double tol,
                                double rate_scale) {
  if (!(nu > 0.0)) throw InvalidArgument("bound check needs nu > 0");
  if (!(c0 > 0.0) || !(rate_scale > 0.0)) throw InvalidArgument("bound check needs c0 > 0");
  const double nq = std::pow(nu, q) * rate_scale;
  return check_rate(trace, c0 * nq, 1.0 / nq, tol);
}

BoundReport theorem_bound_check_exp(const DecayTrace& trace, double nu, double p, double c0,
                                    double a1, double a2, double tol) {
  if (!(nu > 0.0)) throw InvalidArgument("bound check needs nu > 0");
  const double threshold = exp_mixing_nu_threshold(p, a1, a2);
  if (!(nu < threshold)) {
    std::ostringstream os;
    os << "nu = " << nu << " is above the admissible threshold " << threshold
       << " for the exponential-mixing bound";
    throw InvalidArgument(os.str());
  }
  const double scale = std::pow(std::abs(std::log(nu)), exp_timescale_exponent(p));
  return check_rate(trace, c0 / scale, scale, tol);
}

}  // namespace mixlab
