#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mixlab {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

enum class BasisTag { TorusFourier, RadialGrid, Hermite, GenericEigen };

std::string to_string(BasisTag tag);

/// Truncated spectrum of a strictly positive self-adjoint operator A,
/// eigenvalues listed in nondecreasing order with multiplicity.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> eigenvalues);

  std::size_t size() const { return eigenvalues_.size(); }
  double operator[](std::size_t j) const { return eigenvalues_[j]; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }
  double lambda_min() const { return eigenvalues_.front(); }
  double lambda_max() const { return eigenvalues_.back(); }
  double median() const { return eigenvalues_[eigenvalues_.size() / 2]; }

 private:
  std::vector<double> eigenvalues_;
};

/// Coefficients of a scalar in some working basis. Plain value type.
struct Field {
  CVector coefficients;
  BasisTag basis = BasisTag::GenericEigen;
  // Torus fields only: coefficients satisfy c_{-m} = conj(c_m).
  bool real_representation = false;

  Field() = default;
  Field(CVector c, BasisTag tag, bool real = false)
      : coefficients(std::move(c)), basis(tag), real_representation(real) {}

  std::size_t size() const { return static_cast<std::size_t>(coefficients.size()); }
};

/// Unit vector e_j of length n in the generic eigenbasis.
Field unit_field(std::size_t n, std::size_t j);

/// (sum_j lambda_j^s |phi_j|^2)^{1/2} for f expressed in the eigenbasis of spec.
double sobolev_norm(const Field& f, const Spectrum& spec, double s);

/// Zeroes every coefficient whose eigenvalue exceeds R.
Field project_low(const Field& f, const Spectrum& spec, double R);

/// Fourier symbol of Lambda^gamma on the torus mode (k, m): (k^2+m^2)^{gamma/2}.
double fractional_symbol(double gamma, long k, long m);

/// ||A^{-1/2} f||_H for f in the eigenbasis of spec.
double dual_norm_hminus(const Field& f, const Spectrum& spec);

enum class InnerProductKind { Flat, WeightedRadial, GibbsWeighted, KolmogorovModified };

std::string to_string(InnerProductKind kind);

/// Diagonal inner product <a, b> = sum_j w_j a_j conj(b_j) on coefficient vectors.
class InnerProduct {
 public:
  InnerProduct() = default;
  InnerProduct(InnerProductKind kind, RVector weights);

  InnerProductKind kind() const { return kind_; }
  const RVector& weights() const { return weights_; }

  cplx operator()(const CVector& a, const CVector& b) const;
  double norm(const CVector& a) const;

 private:
  InnerProductKind kind_ = InnerProductKind::Flat;
  RVector weights_;
};

/// Index bookkeeping for torus Fourier coefficients stored in natural order
/// m = -M, ..., M (storage index m + M).
struct TorusModes {
  int max_mode = 0;

  int count() const { return 2 * max_mode + 1; }
  int wavenumber(int index) const { return index - max_mode; }
  int index(int m) const { return m + max_mode; }
};

/// Largest |c_{-m} - conj(c_m)| over the stored modes.
double conjugate_symmetry_defect(const Field& f);

}  // namespace mixlab
