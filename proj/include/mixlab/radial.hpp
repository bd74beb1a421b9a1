#pragma once

#include <memory>
#include <mutex>

#include "mixlab/spectral.hpp"

namespace mixlab {

/// Cell-centered discretization of -Delta_k = -(d_rr + (1/r) d_r - k^2/r^2) on
/// the unit disk with no-flux at r = 1. Nodes r_j = (j - 1/2)/N, quadrature
/// weights r_j/N.
///
/// The operator is stored as A = W^{-1} S with S symmetric tridiagonal, so A is
/// self-adjoint in the weighted inner product and f^* S f is the discrete H^1
/// energy.
class RadialLaplacian {
 public:
  RadialLaplacian(int N, long k);

  int size() const { return n_; }
  long wavenumber() const { return k_; }
  double spacing() const { return h_; }

  const RVector& radii() const { return r_; }
  const RVector& weights() const { return w_; }
  const RVector& stiffness_diagonal() const { return diag_; }
  const RVector& stiffness_offdiagonal() const { return off_; }

  CVector apply_stiffness(const CVector& f) const;
  /// A f.
  CVector apply(const CVector& f) const;
  /// A^{-1} g via a tridiagonal solve.
  CVector solve(const CVector& g) const;

  double h_norm(const CVector& f) const;
  double h1_norm(const CVector& f) const;
  /// ||A^{-1/2} f||_H, equal to sup |<f, eta>| / ||eta||_{H^1}.
  double dual_norm(const CVector& f) const;
  double sobolev_norm(const CVector& f, double s) const;

  /// Eigenvalues of A ascending, and eigenvectors of the symmetrized matrix
  /// W^{-1/2} S W^{-1/2} (columns, orthonormal in the flat product).
  const RVector& eigenvalues() const;
  const Eigen::MatrixXd& symmetric_eigenvectors() const;

  /// e^{-t A} f, exact for the discrete operator.
  CVector heat(const CVector& f, double t) const;
  /// Lowest eigenvector of A, normalized to unit H norm and positive at r_1.
  RVector lowest_eigenmode() const;

 private:
  void ensure_eigen() const;

  int n_;
  long k_;
  double h_;
  RVector r_, w_, diag_, off_;

  mutable std::once_flag eigen_once_;
  mutable RVector eigenvalues_;
  mutable Eigen::MatrixXd eigenvectors_;
};

/// Shared, lazily built operator for (N, k); safe to call from many threads.
std::shared_ptr<const RadialLaplacian> radial_laplacian(int N, long k);

}  // namespace mixlab
