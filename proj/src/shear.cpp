#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// f_k(y) e^{ikx} on the torus, modes m = -M..M, A = (k^2 + m^2)^{gamma/2},
// B = i k u(y), flat inner product.
class ShearProblem final : public ModelProblem {
 public:
  explicit ShearProblem(const ShearModel& m) : m_(m), modes_{m.modes} {
    if (m.k == 0) throw InvalidArgument("shear model needs k != 0 (the k = 0 mode is pure diffusion)");
    if (m.modes < 1) throw InvalidArgument("shear model needs M >= 1");
    if (m.n0 < 0) throw InvalidArgument("shear model needs n0 >= 0");
    const int n = modes_.count();
    lambda_.resize(n);
    for (int i = 0; i < n; ++i) lambda_(i) = fractional_symbol(m.gamma, m.k, modes_.wavenumber(i));
    u_.resize(n);
    for (int j = 0; j < n; ++j) u_(j) = m.profile.value(kTwoPi * j / n);
    c_B_ = m.profile.max_slope();
    inner_ = InnerProduct(InnerProductKind::Flat, RVector::Ones(n));
  }

  ModelFamily family() const override { return ModelFamily::Shear; }
  BasisTag basis() const override { return BasisTag::TorusFourier; }
  std::size_t size() const override { return static_cast<std::size_t>(modes_.count()); }

  nlohmann::json descriptor() const override {
    return {{"family", "shear"}, {"profile", m_.profile.name()}, {"n0", m_.n0},
            {"gamma", m_.gamma}, {"k", m_.k}, {"M", m_.modes}};
  }

  double norm(const CVector& c, double s) const override {
    check_size(c);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) acc += std::pow(lambda_(i), s) * std::norm(c(i));
    return std::sqrt(acc);
  }

  CVector apply_A(const CVector& c) const override {
    check_size(c);
    return (lambda_.array() * c.array()).matrix();
  }

  CVector apply_B(const CVector& c) const override {
    check_size(c);
    detail::TorusTransform tr(m_.modes);
    tr.to_grid(c);
    cplx* buf = tr.buffer();
    const cplx ik(0.0, static_cast<double>(m_.k));
    for (int j = 0; j < tr.points(); ++j) buf[j] *= ik * u_(j);
    CVector out;
    tr.from_grid(out);
    return out;
  }

  Spectrum spectrum() const override {
    std::vector<double> ev(lambda_.data(), lambda_.data() + lambda_.size());
    std::sort(ev.begin(), ev.end());
    return Spectrum(std::move(ev));
  }

  std::unique_ptr<Stepper> make_stepper(double nu, double dt) const override;

  bool has_exact_inviscid() const override { return true; }
  CVector exact_inviscid(const CVector& c, double t) const override {
    check_size(c);
    detail::TorusTransform tr(m_.modes);
    tr.to_grid(c);
    cplx* buf = tr.buffer();
    for (int j = 0; j < tr.points(); ++j) buf[j] *= std::polar(1.0, -static_cast<double>(m_.k) * u_(j) * t);
    CVector out;
    tr.from_grid(out);
    return out;
  }

  double max_advection_symbol() const override {
    return std::abs(static_cast<double>(m_.k)) * u_.cwiseAbs().maxCoeff();
  }
  bool commutes() const override { return m_.profile.is_constant(); }
  double c_B() const override { return c_B_; }

  double predicted_p() const override {
    if (commutes()) return 0.0;
    return p_shear(m_.n0, m_.gamma);
  }
  double predicted_q() const override {
    if (commutes()) return 1.0;
    return q_shear(m_.n0, m_.gamma);
  }

  Field initial_datum(const DatumSpec& spec) const override {
    const int n = modes_.count();
    CVector c = CVector::Zero(n);
    bool real = false;
    if (spec.kind == "single-mode") {
      c(modes_.index(1)) = 1.0;
    } else if (spec.kind == "gaussian-bump") {
      const double sigma = std::isnan(spec.width) ? 0.1 : spec.width;
      const double center = std::isnan(spec.center) ? m_.profile.first_critical_point() : spec.center;
      if (!(sigma > 0.0)) throw InvalidArgument("bump width must be positive");
      detail::TorusTransform tr(m_.modes);
      cplx* buf = tr.buffer();
      for (int j = 0; j < n; ++j) {
        const double y = kTwoPi * j / n;
        double g = 0.0;
        for (int w = -3; w <= 3; ++w) {
          const double d = y - center + kTwoPi * w;
          g += std::exp(-d * d / (2.0 * sigma * sigma));
        }
        buf[j] = g;
      }
      tr.from_grid(c);
      real = true;
    } else if (spec.kind == "random") {
      std::mt19937_64 rng(spec.seed);
      c = detail::random_normal(static_cast<std::size_t>(n), rng);
      for (int i = 0; i < n; ++i) c(i) /= lambda_(i);
    } else {
      throw InvalidArgument("unknown datum kind '" + spec.kind + "'");
    }
    c /= norm(c, 1.0);
    return Field(std::move(c), BasisTag::TorusFourier, real);
  }

  const RVector& lambda() const { return lambda_; }
  const RVector& u() const { return u_; }
  int max_mode() const { return m_.modes; }
  long k() const { return m_.k; }

 private:
  void check_size(const CVector& c) const {
    if (c.size() != modes_.count()) {
      std::ostringstream os;
      os << "shear field has " << c.size() << " coefficients, expected " << modes_.count();
      throw InvalidArgument(os.str());
    }
  }

  ShearModel m_;
  TorusModes modes_;
  RVector lambda_;
  RVector u_;
  double c_B_ = 0.0;
};

class ShearStepper final : public Stepper {
 public:
  ShearStepper(const ShearProblem& p, double nu, double dt) : tr_(p.max_mode()) {
    const auto& lam = p.lambda();
    half_ = (-0.5 * nu * dt * lam.array()).exp();
    full_ = (-nu * dt * lam.array()).exp();
    phase_.resize(p.u().size());
    for (Eigen::Index j = 0; j < p.u().size(); ++j)
      phase_(j) = std::polar(1.0, -static_cast<double>(p.k()) * p.u()(j) * dt);
  }

  void half_diffusion(CVector& c) override { c.array() *= half_.array(); }
  void full_diffusion(CVector& c) override { c.array() *= full_.array(); }

  double advection(CVector& c) override {
    const double before = c.norm();
    tr_.to_grid(c);
    cplx* buf = tr_.buffer();
    for (int j = 0; j < tr_.points(); ++j) buf[j] *= phase_(j);
    tr_.from_grid(c);
    return before > 0.0 ? std::abs(c.norm() - before) / before : 0.0;
  }

 private:
  detail::TorusTransform tr_;
  RVector half_, full_;
  CVector phase_;
};

std::unique_ptr<Stepper> ShearProblem::make_stepper(double nu, double dt) const {
  return std::make_unique<ShearStepper>(*this, nu, dt);
}

}  // namespace

ModelPtr build_shear(const ShearModel& m) { return std::make_shared<ShearProblem>(m); }

}  // namespace mixlab
