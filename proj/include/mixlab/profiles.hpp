#pragma once

#include <string>
#include <vector>

namespace mixlab {

/// Periodic shear profile u(y) on [0, 2 pi).
class ShearProfile {
 public:
  /// Built-in profiles: "sin" (sin y), "sin2" (sin y + sin 2y), "const" (u = 1).
  static ShearProfile named(const std::string& name);
  /// Tabulated profile from a CSV file with header columns y,u and uniform
  /// spacing covering one period (the endpoint 2 pi may be omitted).
  static ShearProfile from_csv(const std::string& path);
  /// Name or "csv:<path>".
  static ShearProfile parse(const std::string& spec);

  const std::string& name() const { return name_; }
  /// Declared maximal vanishing order of u' at critical points, if known.
  int default_n0() const { return default_n0_; }
  bool is_constant() const { return constant_; }

  double value(double y) const;
  double derivative(double y) const;
  /// max |u'| estimated by sampling 4096 points.
  double max_slope() const;
  double max_abs() const;
  /// Smallest y in [0, 2 pi) with u'(y) = 0 (pi for constant profiles).
  double first_critical_point() const;

 private:
  std::string name_;
  int default_n0_ = 1;
  bool constant_ = false;
  // Real Fourier representation u = a0 + sum_n a_n cos(ny) + b_n sin(ny).
  double a0_ = 0.0;
  std::vector<double> a_, b_;
};

}  // namespace mixlab
