#include "mixlab/radial.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "mixlab/error.hpp"

namespace mixlab {

RadialLaplacian::RadialLaplacian(int N, long k) : n_(N), k_(k) {
  if (N < 2) throw InvalidArgument("radial grid needs at least 2 cells");
  if (k == 0)
    throw InvalidArgument("radial operator with k = 0 and no-flux boundary is singular");
  h_ = 1.0 / N;
  r_.resize(N);
  w_.resize(N);
  diag_.setZero(N);
  off_.resize(N - 1);
  const double k2 = static_cast<double>(k) * static_cast<double>(k);
  for (int j = 0; j < N; ++j) {
    r_(j) = (j + 0.5) * h_;
    w_(j) = r_(j) * h_;
    diag_(j) = k2 * h_ / r_(j);
  }
  // Bond between cells j and j+1 sits at r = (j+1) h and carries r/h. No bond
  // past the last cell (no-flux) and none at the pole (zero flux through r = 0).
  for (int j = 0; j + 1 < N; ++j) {
    const double c = static_cast<double>(j + 1);
    off_(j) = -c;
    diag_(j) += c;
    diag_(j + 1) += c;
  }
}

CVector RadialLaplacian::apply_stiffness(const CVector& f) const {
  if (f.size() != n_) throw InvalidArgument("radial field has wrong length");
  CVector out(n_);
  for (int j = 0; j < n_; ++j) {
    cplx acc = diag_(j) * f(j);
    if (j > 0) acc += off_(j - 1) * f(j - 1);
    if (j + 1 < n_) acc += off_(j) * f(j + 1);
    out(j) = acc;
  }
  return out;
}

CVector RadialLaplacian::apply(const CVector& f) const {
  CVector out = apply_stiffness(f);
  for (int j = 0; j < n_; ++j) out(j) /= w_(j);
  return out;
}

CVector RadialLaplacian::solve(const CVector& g) const {
  if (g.size() != n_) throw InvalidArgument("radial field has wrong length");
  // Thomas algorithm on S x = W g.
  RVector cprime(n_);
  CVector d(n_);
  double denom = diag_(0);
  if (!(denom > 0.0)) throw NumericalError("radial operator is singular");
  cprime(0) = n_ > 1 ? off_(0) / denom : 0.0;
  d(0) = w_(0) * g(0) / denom;
  for (int j = 1; j < n_; ++j) {
    denom = diag_(j) - off_(j - 1) * cprime(j - 1);
    if (!(denom > 0.0)) throw NumericalError("radial operator is singular");
    cprime(j) = j + 1 < n_ ? off_(j) / denom : 0.0;
    d(j) = (w_(j) * g(j) - off_(j - 1) * d(j - 1)) / denom;
  }
  CVector x(n_);
  x(n_ - 1) = d(n_ - 1);
  for (int j = n_ - 2; j >= 0; --j) x(j) = d(j) - cprime(j) * x(j + 1);
  return x;
}

double RadialLaplacian::h_norm(const CVector& f) const {
  if (f.size() != n_) throw InvalidArgument("radial field has wrong length");
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += w_(j) * std::norm(f(j));
  return std::sqrt(acc);
}

double RadialLaplacian::h1_norm(const CVector& f) const {
  if (f.size() != n_) throw InvalidArgument("radial field has wrong length");
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += diag_(j) * std::norm(f(j));
  for (int j = 0; j + 1 < n_; ++j) acc += 2.0 * off_(j) * std::real(std::conj(f(j)) * f(j + 1));
  return std::sqrt(std::max(acc, 0.0));
}

double RadialLaplacian::dual_norm(const CVector& f) const {
  const CVector x = solve(f);
  double acc = 0.0;
  for (int j = 0; j < n_; ++j) acc += w_(j) * std::real(x(j) * std::conj(f(j)));
  return std::sqrt(std::max(acc, 0.0));
}

double RadialLaplacian::sobolev_norm(const CVector& f, double s) const {
  if (s == 0.0) return h_norm(f);
  if (s == 1.0) return h1_norm(f);
  if (s == -1.0) return dual_norm(f);
  if (f.size() != n_) throw InvalidArgument("radial field has wrong length");
  ensure_eigen();
  const RVector sq = w_.cwiseSqrt();
  const RVector re = eigenvectors_.transpose() * (sq.array() * f.real().array()).matrix();
  const RVector im = eigenvectors_.transpose() * (sq.array() * f.imag().array()).matrix();
  double acc = 0.0;
  for (int j = 0; j < n_; ++j)
    acc += std::pow(eigenvalues_(j), s) * (re(j) * re(j) + im(j) * im(j));
  return std::sqrt(acc);
}

void RadialLaplacian::ensure_eigen() const {
  std::call_once(eigen_once_, [this] {
    // W^{-1/2} S W^{-1/2} keeps the tridiagonal structure.
    RVector d(n_), e(n_ - 1);
    for (int j = 0; j < n_; ++j) d(j) = diag_(j) / w_(j);
    for (int j = 0; j + 1 < n_; ++j) e(j) = off_(j) / std::sqrt(w_(j) * w_(j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericalError("radial eigendecomposition failed");
    eigenvalues_ = es.eigenvalues();
    eigenvectors_ = es.eigenvectors();
    if (!(eigenvalues_(0) > 0.0)) throw NumericalError("radial operator is not positive");
  });
}

const RVector& RadialLaplacian::eigenvalues() const {
  ensure_eigen();
  return eigenvalues_;
}

const Eigen::MatrixXd& RadialLaplacian::symmetric_eigenvectors() const {
  ensure_eigen();
  return eigenvectors_;
}

CVector RadialLaplacian::heat(const CVector& f, double t) const {
  if (f.size() != n_) throw InvalidArgument("radial field has wrong length");
  ensure_eigen();
  const RVector sq = w_.cwiseSqrt();
  RVector re = eigenvectors_.transpose() * (sq.array() * f.real().array()).matrix();
  RVector im = eigenvectors_.transpose() * (sq.array() * f.imag().array()).matrix();
  for (int j = 0; j < n_; ++j) {
    const double g = std::exp(-t * eigenvalues_(j));
    re(j) *= g;
    im(j) *= g;
  }
  const RVector ore = (eigenvectors_ * re).array() / sq.array();
  const RVector oim = (eigenvectors_ * im).array() / sq.array();
  CVector out(n_);
  for (int j = 0; j < n_; ++j) out(j) = cplx(ore(j), oim(j));
  return out;
}

RVector RadialLaplacian::lowest_eigenmode() const {
  CVector x = CVector::Ones(n_);
  x /= h_norm(x);
  double previous = 0.0;
  for (int it = 0; it < 500; ++it) {
    CVector y = solve(x);
    y /= h_norm(y);
    const double change = (y - x).cwiseAbs().maxCoeff();
    x = y;
    if (change < 1e-15 || std::abs(change - previous) < 1e-16) break;
    previous = change;
  }
  RVector out = x.real();
  if (out(0) < 0.0) out = -out;
  return out;
}

std::shared_ptr<const RadialLaplacian> radial_laplacian(int N, long k) {
  static std::mutex mutex;
  static std::map<std::pair<int, long>, std::shared_ptr<const RadialLaplacian>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(N, k);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto op = std::make_shared<const RadialLaplacian>(N, k);
  cache.emplace(key, op);
  return op;
}

}  // namespace mixlab
