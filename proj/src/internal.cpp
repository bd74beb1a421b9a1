#include "internal.hpp"

#include <cmath>
#include <mutex>

#include "mixlab/error.hpp"

namespace mixlab::detail {

namespace {
// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

TorusTransform::TorusTransform(int max_mode) : max_mode_(max_mode), n_(2 * max_mode + 1) {
  if (max_mode < 1) throw InvalidArgument("torus truncation needs M >= 1");
  std::lock_guard<std::mutex> lock(planner_mutex());
  data_ = fftw_alloc_complex(static_cast<std::size_t>(n_));
  forward_ = fftw_plan_dft_1d(n_, data_, data_, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_1d(n_, data_, data_, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!forward_ || !backward_) throw NumericalError("FFTW planning failed");
}

TorusTransform::~TorusTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(backward_);
  fftw_free(data_);
}

void TorusTransform::to_grid(const CVector& c) {
  if (c.size() != n_) throw InvalidArgument("torus field has wrong length");
  cplx* buf = buffer();
  for (int m = -max_mode_; m <= max_mode_; ++m) buf[(m + n_) % n_] = c(m + max_mode_);
  fftw_execute(backward_);
}

void TorusTransform::from_grid(CVector& c) {
  fftw_execute(forward_);
  const cplx* buf = buffer();
  c.resize(n_);
  const double scale = 1.0 / n_;
  for (int m = -max_mode_; m <= max_mode_; ++m) c(m + max_mode_) = scale * buf[(m + n_) % n_];
}

void apply_bond_group(const BondGroup& group, CVector& x, double tau) {
  for (std::size_t i = 0; i < group.a.size(); ++i) {
    const cplx g = group.g[i];
    const double mag = std::abs(g);
    if (mag == 0.0) continue;
    const double c = std::cos(mag * tau);
    const cplx s = (std::sin(mag * tau) / mag) * g;
    const cplx xa = x(group.a[i]), xb = x(group.b[i]);
    x(group.a[i]) = c * xa + s * xb;
    x(group.b[i]) = c * xb - std::conj(s) * xa;
  }
}

void apply_bond_strang(const std::vector<BondGroup>& groups, CVector& x, double tau) {
  const std::size_t K = groups.size();
  if (K == 0) return;
  for (std::size_t i = 0; i + 1 < K; ++i) apply_bond_group(groups[i], x, 0.5 * tau);
  apply_bond_group(groups[K - 1], x, tau);
  for (std::size_t i = K - 1; i-- > 0;) apply_bond_group(groups[i], x, 0.5 * tau);
}

CVector random_normal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector out(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const double re = normal(rng);
    const double im = normal(rng);
    out(static_cast<Eigen::Index>(j)) = cplx(re, im);
  }
  return out;
}

}  // namespace mixlab::detail
