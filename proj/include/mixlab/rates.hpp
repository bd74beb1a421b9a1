#pragma once

namespace mixlab {

// Closed-form exponents and constants for the decay estimates. All functions
// evaluate the formulas literally and reject nonpositive inputs.

/// Enhanced-dissipation exponent q = 2/(2+p) for polynomial mixing rate p.
double q_poly(double p);

/// Exponent for the H^s-mixing variant: (max{1,s}+s)/(max{1,s}+s+p).
double q_sobolev(double s, double p);

/// Shear exponent with fractional dissipation: 2/(2 + gamma/(2(n0+1))).
double q_shear(int n0, double gamma);

/// Mixing rate of the H^{gamma/2}-interpolated shear estimate: gamma/(2(n0+1)).
double p_shear(int n0, double gamma);

/// Spiral mixing rate 2/max{alpha, 2}.
double p_spiral(double alpha);

/// Exponent under the improved mixed bound: (4-p)/(4+p).
double q_mixed(double p);

/// (1/128) min{1/(2(1+c_B)), 1/(a 4^p)}.
double constant_c0_poly(double p, double a, double c_B);

/// (1/128) min{a2^{2/p}/(32(1+c_B)), 1}.
double constant_c0_exp(double p, double a1, double a2, double c_B);

/// (1/2) min{1/(128(1+c_B)), (s/(16(s+1)))^{s/(1+s)} (lambda1^{1-s}/(4^{2p+2}(s+1)a^2))^{1/(1+s)}}.
double constant_cs(double s, double p, double a, double c_B, double lambda1);

/// (1/128) min{1/(64(1+kappa^2)), 1/(a 4^p)}; kappa is the mixed-bound constant
/// (alpha for spiral flows).
double constant_c_mixed(double p, double a, double kappa);

/// Largest viscosity admitted by the exponential-mixing estimate:
/// min{e^{-4^p/(2 a2)}, e^{-1}, e^{-a1^{p/2}}}.
double exp_mixing_nu_threshold(double p, double a1, double a2);

/// Exponent of |ln nu| in the exponential-mixing time-scale: 2/p.
double exp_timescale_exponent(double p);

/// Smallest power of two that is >= x (x > 0).
double round_up_pow2(double x);

}  // namespace mixlab
