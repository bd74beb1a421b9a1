#include "mixlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixlab/error.hpp"

namespace mixlab {

std::string to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::TorusFourier: return "torus-fourier";
    case BasisTag::RadialGrid: return "radial-grid";
    case BasisTag::Hermite: return "hermite";
    case BasisTag::GenericEigen: return "generic-eigenbasis";
  }
  return "unknown";
}

std::string to_string(InnerProductKind kind) {
  switch (kind) {
    case InnerProductKind::Flat: return "flat";
    case InnerProductKind::WeightedRadial: return "weighted-radial";
    case InnerProductKind::GibbsWeighted: return "gibbs-weighted";
    case InnerProductKind::KolmogorovModified: return "kolmogorov-modified";
  }
  return "unknown";
}

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) throw InvalidArgument("spectrum must be nonempty");
  for (std::size_t j = 0; j < eigenvalues_.size(); ++j) {
    if (!(eigenvalues_[j] > 0.0) || !std::isfinite(eigenvalues_[j])) {
      std::ostringstream os;
      os << "spectrum eigenvalue " << j << " = " << eigenvalues_[j] << " is not strictly positive";
      throw InvalidArgument(os.str());
    }
    if (j > 0 && eigenvalues_[j] < eigenvalues_[j - 1])
      throw InvalidArgument("spectrum eigenvalues must be nondecreasing");
  }
}

Field unit_field(std::size_t n, std::size_t j) {
  CVector c = CVector::Zero(static_cast<Eigen::Index>(n));
  c(static_cast<Eigen::Index>(j)) = 1.0;
  return Field(std::move(c), BasisTag::GenericEigen);
}

namespace {

void require_match(const Field& f, const Spectrum& spec) {
  if (f.size() != spec.size()) {
    std::ostringstream os;
    os << "field has " << f.size() << " coefficients but spectrum has " << spec.size();
    throw InvalidArgument(os.str());
  }
}

}  // namespace

double sobolev_norm(const Field& f, const Spectrum& spec, double s) {
  require_match(f, spec);
  double acc = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j)
    acc += std::pow(spec[j], s) * std::norm(f.coefficients(static_cast<Eigen::Index>(j)));
  return std::sqrt(acc);
}

Field project_low(const Field& f, const Spectrum& spec, double R) {
  require_match(f, spec);
  Field out = f;
  for (std::size_t j = 0; j < spec.size(); ++j)
    if (spec[j] > R) out.coefficients(static_cast<Eigen::Index>(j)) = 0.0;
  return out;
}

double fractional_symbol(double gamma, long k, long m) {
  if (!(gamma > 0.0 && gamma <= 2.0)) {
    std::ostringstream os;
    os << "fractional order gamma = " << gamma << " outside (0, 2]";
    throw InvalidArgument(os.str());
  }
  const double mag2 = static_cast<double>(k) * k + static_cast<double>(m) * m;
  if (gamma == 2.0) return mag2;
  return std::pow(mag2, 0.5 * gamma);
}

double dual_norm_hminus(const Field& f, const Spectrum& spec) {
  return sobolev_norm(f, spec, -1.0);
}

InnerProduct::InnerProduct(InnerProductKind kind, RVector weights)
    : kind_(kind), weights_(std::move(weights)) {
  for (Eigen::Index j = 0; j < weights_.size(); ++j)
    if (!(weights_(j) > 0.0))
      throw InvalidArgument("inner product weights must be strictly positive");
}

cplx InnerProduct::operator()(const CVector& a, const CVector& b) const {
  if (a.size() != weights_.size() || b.size() != weights_.size())
    throw InvalidArgument("inner product: dimension mismatch");
  cplx acc = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) acc += weights_(j) * a(j) * std::conj(b(j));
  return acc;
}

double InnerProduct::norm(const CVector& a) const {
  if (a.size() != weights_.size()) throw InvalidArgument("inner product: dimension mismatch");
  double acc = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) acc += weights_(j) * std::norm(a(j));
  return std::sqrt(acc);
}

double conjugate_symmetry_defect(const Field& f) {
  if (f.basis != BasisTag::TorusFourier)
    throw InvalidArgument("conjugate symmetry is defined for torus-Fourier fields only");
  const Eigen::Index n = f.coefficients.size();
  if (n % 2 == 0) throw InvalidArgument("torus field must have an odd number of modes");
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    worst = std::max(worst, std::abs(f.coefficients(n - 1 - i) - std::conj(f.coefficients(i))));
  return worst;
}

}  // namespace mixlab
