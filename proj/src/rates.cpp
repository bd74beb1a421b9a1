#include "mixlab/rates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixlab/error.hpp"

namespace mixlab {

namespace {

void positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << what << " must be positive (got " << x << ")";
    throw InvalidArgument(os.str());
  }
}

void nonnegative(double x, const char* what) {
  if (!(x >= 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << what << " must be nonnegative (got " << x << ")";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

double q_poly(double p) {
  positive(p, "mixing rate p");
  return 2.0 / (2.0 + p);
}

double q_sobolev(double s, double p) {
  positive(s, "s");
  positive(p, "mixing rate p");
  const double top = std::max(1.0, s) + s;
  return top / (top + p);
}

double p_shear(int n0, double gamma) {
  if (n0 < 0) throw InvalidArgument("vanishing order n0 must be >= 0");
  if (!(gamma > 0.0 && gamma <= 2.0)) throw InvalidArgument("gamma must lie in (0, 2]");
  return gamma / (2.0 * (n0 + 1));
}

double q_shear(int n0, double gamma) { return 2.0 / (2.0 + p_shear(n0, gamma)); }

double p_spiral(double alpha) {
  if (!(alpha >= 1.0)) throw InvalidArgument("alpha must be >= 1");
  return 2.0 / std::max(alpha, 2.0);
}

double q_mixed(double p) {
  positive(p, "mixing rate p");
  return (4.0 - p) / (4.0 + p);
}

double constant_c0_poly(double p, double a, double c_B) {
  positive(p, "p");
  positive(a, "a");
  nonnegative(c_B, "c_B");
  return std::min(1.0 / (2.0 * (1.0 + c_B)), 1.0 / (a * std::pow(4.0, p))) / 128.0;
}

double constant_c0_exp(double p, double a1, double a2, double c_B) {
  positive(p, "p");
  positive(a1, "a1");
  positive(a2, "a2");
  nonnegative(c_B, "c_B");
  return std::min(std::pow(a2, 2.0 / p) / (32.0 * (1.0 + c_B)), 1.0) / 128.0;
}

double constant_cs(double s, double p, double a, double c_B, double lambda1) {
  positive(s, "s");
  positive(p, "p");
  positive(a, "a");
  nonnegative(c_B, "c_B");
  positive(lambda1, "lambda1");
  const double first = 1.0 / (128.0 * (1.0 + c_B));
  const double left = std::pow(s / (16.0 * (s + 1.0)), s / (1.0 + s));
  const double right = std::pow(std::pow(lambda1, 1.0 - s) /
                                    (std::pow(4.0, 2.0 * p + 2.0) * (s + 1.0) * a * a),
                                1.0 / (1.0 + s));
  return 0.5 * std::min(first, left * right);
}

double constant_c_mixed(double p, double a, double kappa) {
  positive(p, "p");
  positive(a, "a");
  nonnegative(kappa, "kappa");
  return std::min(1.0 / (64.0 * (1.0 + kappa * kappa)), 1.0 / (a * std::pow(4.0, p))) / 128.0;
}

double exp_mixing_nu_threshold(double p, double a1, double a2) {
  positive(p, "p");
  positive(a1, "a1");
  positive(a2, "a2");
  return std::min({std::exp(-std::pow(4.0, p) / (2.0 * a2)), std::exp(-1.0),
                   std::exp(-std::pow(a1, p / 2.0))});
}

double exp_timescale_exponent(double p) {
  positive(p, "p");
  return 2.0 / p;
}

double round_up_pow2(double x) {
  positive(x, "value");
  return std::exp2(std::ceil(std::log2(x)));
}

}  // namespace mixlab
