#pragma once

// Helpers shared by the model implementations.

#include <fftw3.h>

#include <random>
#include <vector>

#include "mixlab/spectral.hpp"

namespace mixlab::detail {

/// In-place FFT between torus coefficients c_m (m = -M..M, natural order) and
/// samples on the 2M+1 point grid y_j = 2 pi j/(2M+1). One instance per thread.
class TorusTransform {
 public:
  explicit TorusTransform(int max_mode);
  ~TorusTransform();
  TorusTransform(const TorusTransform&) = delete;
  TorusTransform& operator=(const TorusTransform&) = delete;

  int points() const { return n_; }
  /// Writes grid samples of the trigonometric polynomial into buffer().
  void to_grid(const CVector& c);
  /// Reads buffer() back into coefficients.
  void from_grid(CVector& c);
  cplx* buffer() { return reinterpret_cast<cplx*>(data_); }

 private:
  int max_mode_;
  int n_;
  fftw_complex* data_;
  fftw_plan forward_;
  fftw_plan backward_;
};

/// Disjoint pairs (a, b) evolved by x' = G x with G = [[0, g], [-conj(g), 0]].
struct BondGroup {
  std::vector<int> a, b;
  std::vector<cplx> g;
};

/// Exact flow of one bond group over time tau; every 2x2 block is unitary.
void apply_bond_group(const BondGroup& group, CVector& x, double tau);

/// Symmetric Strang product g1(tau/2) ... gK(tau) ... g1(tau/2).
void apply_bond_strang(const std::vector<BondGroup>& groups, CVector& x, double tau);

/// Complex standard normal vector from a seeded engine.
CVector random_normal(std::size_t n, std::mt19937_64& rng);

}  // namespace mixlab::detail
