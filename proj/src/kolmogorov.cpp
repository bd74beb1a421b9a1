#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

namespace {

// Linearized Kolmogorov flow on T^2_L: B = ikL sin(y) [I + Delta_k^{-1}],
// A = -Delta_k with symbol lambda_m = L^2 k^2 + m^2, inner product weight
// w_m = 1 - 1/lambda_m on Fourier mode m.
class KolmogorovProblem final : public ModelProblem {
 public:
  explicit KolmogorovProblem(const KolmogorovModel& m) : m_(m), modes_{m.modes} {
    if (!(m.L >= 1.0)) throw InvalidArgument("Kolmogorov aspect ratio L must be >= 1");
    if (m.k == 0) throw InvalidArgument("Kolmogorov model needs k != 0");
    if (m.L == 1.0 && std::abs(m.k) < 2) {
      throw InvalidArgument(
          "Kolmogorov wavenumber constraint violated: |k| >= 2 is required when L = 1 "
          "(otherwise the modified inner product is not positive)");
    }
    if (m.modes < 1) throw InvalidArgument("Kolmogorov model needs M >= 1");
    const int n = modes_.count();
    lambda_.resize(n);
    w_.resize(n);
    const double kL = m.L * static_cast<double>(m.k);
    for (int i = 0; i < n; ++i) {
      const double mm = modes_.wavenumber(i);
      lambda_(i) = kL * kL + mm * mm;
      w_(i) = 1.0 - 1.0 / lambda_(i);
      if (!(w_(i) > 0.0)) throw InvalidArgument("Kolmogorov inner product is not positive");
    }
    inner_ = InnerProduct(InnerProductKind::KolmogorovModified, w_);

    // In psi = sqrt(w) c the advection generator is real antisymmetric and
    // couples neighbours (m-1, m) with strength (kL/2) sqrt(w_{m-1} w_m).
    groups_.resize(2);
    for (int i = 1; i < n; ++i) {
      auto& g = groups_[(i - 1) % 2];
      g.a.push_back(i - 1);
      g.b.push_back(i);
      g.g.push_back(0.5 * kL * std::sqrt(w_(i - 1) * w_(i)));
    }
  }

  ModelFamily family() const override { return ModelFamily::Kolmogorov; }
  BasisTag basis() const override { return BasisTag::TorusFourier; }
  std::size_t size() const override { return static_cast<std::size_t>(modes_.count()); }

  nlohmann::json descriptor() const override {
    return {{"family", "kolmogorov"}, {"L", m_.L}, {"k", m_.k}, {"M", m_.modes}};
  }

  double norm(const CVector& c, double s) const override {
    check_size(c);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) acc += w_(i) * std::pow(lambda_(i), s) * std::norm(c(i));
    return std::sqrt(acc);
  }

  CVector apply_A(const CVector& c) const override {
    check_size(c);
    return (lambda_.array() * c.array()).matrix();
  }

  CVector apply_B(const CVector& c) const override {
    check_size(c);
    const Eigen::Index n = c.size();
    const double half_kL = 0.5 * m_.L * static_cast<double>(m_.k);
    CVector out = CVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      cplx acc = 0.0;
      if (i > 0) acc += w_(i - 1) * c(i - 1);
      if (i + 1 < n) acc -= w_(i + 1) * c(i + 1);
      out(i) = half_kL * acc;
    }
    return out;
  }

  Spectrum spectrum() const override {
    std::vector<double> ev(lambda_.data(), lambda_.data() + lambda_.size());
    std::sort(ev.begin(), ev.end());
    return Spectrum(std::move(ev));
  }

  std::unique_ptr<Stepper> make_stepper(double nu, double dt) const override;

  double max_advection_symbol() const override {
    return std::abs(m_.L * static_cast<double>(m_.k));
  }
  double c_B() const override { return 1.0; }
  double predicted_p() const override { return 1.0; }
  double predicted_q() const override { return q_poly(1.0); }
  double predicted_q_alt() const override { return q_mixed(1.0); }

  Field initial_datum(const DatumSpec& spec) const override {
    const int n = modes_.count();
    CVector c = CVector::Zero(n);
    if (spec.kind == "single-mode") {
      c(modes_.index(1)) = 1.0;
    } else if (spec.kind == "random") {
      std::mt19937_64 rng(spec.seed);
      c = detail::random_normal(static_cast<std::size_t>(n), rng);
      for (int i = 0; i < n; ++i) c(i) /= lambda_(i);
    } else if (spec.kind == "gaussian-bump") {
      const double sigma = std::isnan(spec.width) ? 0.1 : spec.width;
      const double center = std::isnan(spec.center) ? 0.5 * std::acos(-1.0) : spec.center;
      if (!(sigma > 0.0)) throw InvalidArgument("bump width must be positive");
      for (int i = 0; i < n; ++i) {
        const double mm = modes_.wavenumber(i);
        c(i) = std::polar(std::exp(-0.5 * sigma * sigma * mm * mm), -mm * center);
      }
    } else {
      throw InvalidArgument("unknown datum kind '" + spec.kind + "'");
    }
    c /= norm(c, 1.0);
    return Field(std::move(c), BasisTag::TorusFourier, spec.kind == "gaussian-bump");
  }

  const RVector& lambda() const { return lambda_; }
  const RVector& weights() const { return w_; }
  const std::vector<detail::BondGroup>& groups() const { return groups_; }

 private:
  void check_size(const CVector& c) const {
    if (c.size() != modes_.count()) {
      std::ostringstream os;
      os << "Kolmogorov field has " << c.size() << " coefficients, expected " << modes_.count();
      throw InvalidArgument(os.str());
    }
  }

  KolmogorovModel m_;
  TorusModes modes_;
  RVector lambda_, w_;
  std::vector<detail::BondGroup> groups_;
};

class KolmogorovStepper final : public Stepper {
 public:
  KolmogorovStepper(const KolmogorovProblem& p, double dt, double nu) : p_(p), dt_(dt) {
    half_ = (-0.5 * nu * dt * p.lambda().array()).exp();
    full_ = (-nu * dt * p.lambda().array()).exp();
    sqrt_w_ = p.weights().cwiseSqrt();
  }

  void half_diffusion(CVector& c) override { c.array() *= half_.array(); }
  void full_diffusion(CVector& c) override { c.array() *= full_.array(); }

  double advection(CVector& c) override {
    psi_ = (c.array() * sqrt_w_.array()).matrix();
    const double before = psi_.norm();
    detail::apply_bond_strang(p_.groups(), psi_, dt_);
    const double after = psi_.norm();
    c = (psi_.array() / sqrt_w_.array()).matrix();
    return before > 0.0 ? std::abs(after - before) / before : 0.0;
  }

 private:
  const KolmogorovProblem& p_;
  double dt_;
  RVector half_, full_, sqrt_w_;
  CVector psi_;
};

std::unique_ptr<Stepper> KolmogorovProblem::make_stepper(double nu, double dt) const {
  return std::make_unique<KolmogorovStepper>(*this, dt, nu);
}

}  // namespace

ModelPtr build_kolmogorov(const KolmogorovModel& m) { return std::make_shared<KolmogorovProblem>(m); }

}  // namespace mixlab
