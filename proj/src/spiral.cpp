#include <cmath>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/radial.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

namespace {

// Angular mode k of the spiral flow u = r^{1+alpha}(-sin, cos) on the unit
// disk: B = i k r^alpha, A = -Delta_k with no-flux at r = 1, weighted radial
// inner product. Fields are samples on the cell-centered radial grid.
class SpiralProblem final : public ModelProblem {
 public:
  explicit SpiralProblem(const SpiralModel& m) : m_(m) {
    if (!(m.alpha >= 1.0)) throw InvalidArgument("spiral model needs alpha >= 1");
    if (m.k == 0) throw InvalidArgument("spiral model needs k != 0");
    op_ = radial_laplacian(m.cells, m.k);
    ralpha_ = op_->radii().array().pow(m.alpha);
    inner_ = InnerProduct(InnerProductKind::WeightedRadial, op_->weights());
  }

  ModelFamily family() const override { return ModelFamily::Spiral; }
  BasisTag basis() const override { return BasisTag::RadialGrid; }
  std::size_t size() const override { return static_cast<std::size_t>(m_.cells); }

  nlohmann::json descriptor() const override {
    return {{"family", "spiral"}, {"alpha", m_.alpha}, {"k", m_.k}, {"N", m_.cells}};
  }

  double norm(const CVector& c, double s) const override { return op_->sobolev_norm(c, s); }
  CVector apply_A(const CVector& c) const override { return op_->apply(c); }

  CVector apply_B(const CVector& c) const override {
    check_size(c);
    const cplx ik(0.0, static_cast<double>(m_.k));
    return (ik * (ralpha_.array() * c.array())).matrix();
  }

  Spectrum spectrum() const override {
    const RVector& ev = op_->eigenvalues();
    return Spectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
  }

  std::unique_ptr<Stepper> make_stepper(double nu, double dt) const override;

  bool has_exact_inviscid() const override { return true; }
  CVector exact_inviscid(const CVector& c, double t) const override {
    check_size(c);
    CVector out(c.size());
    const double kt = static_cast<double>(m_.k) * t;
    for (Eigen::Index j = 0; j < c.size(); ++j) out(j) = std::polar(1.0, -kt * ralpha_(j)) * c(j);
    return out;
  }

  double max_advection_symbol() const override { return std::abs(static_cast<double>(m_.k)); }

  // Discrete commutator: |Re<B phi, A phi>| <= alpha |k| ||phi|| ||phi||_{H^1}.
  double c_B() const override {
    return m_.alpha * std::abs(static_cast<double>(m_.k)) / std::sqrt(op_->eigenvalues()(0));
  }
  bool mixed_bound() const override { return true; }
  double mixed_constant() const override { return m_.alpha * std::abs(static_cast<double>(m_.k)); }
  double mixed_kappa() const override { return m_.alpha; }

  double predicted_p() const override { return p_spiral(m_.alpha); }
  double predicted_q() const override { return q_mixed(predicted_p()); }
  double rate_scale(double q) const override {
    return std::pow(std::abs(static_cast<double>(m_.k)), 1.0 - q);
  }

  Field initial_datum(const DatumSpec& spec) const override {
    const int n = m_.cells;
    CVector c(n);
    if (spec.kind == "single-mode") {
      c = op_->lowest_eigenmode().cast<cplx>();
    } else if (spec.kind == "gaussian-bump") {
      const double sigma = std::isnan(spec.width) ? 1.0 : spec.width;
      const double center = std::isnan(spec.center) ? 0.0 : spec.center;
      if (!(sigma > 0.0)) throw InvalidArgument("bump width must be positive");
      for (int j = 0; j < n; ++j) {
        const double d = op_->radii()(j) - center;
        c(j) = std::exp(-d * d / (2.0 * sigma * sigma));
      }
    } else if (spec.kind == "random") {
      std::mt19937_64 rng(spec.seed);
      c = op_->solve(detail::random_normal(static_cast<std::size_t>(n), rng));
    } else {
      throw InvalidArgument("unknown datum kind '" + spec.kind + "'");
    }
    c /= op_->h1_norm(c);
    return Field(std::move(c), BasisTag::RadialGrid);
  }

  const RadialLaplacian& op() const { return *op_; }
  const RVector& ralpha() const { return ralpha_; }
  long k() const { return m_.k; }

 private:
  void check_size(const CVector& c) const {
    if (c.size() != m_.cells) {
      std::ostringstream os;
      os << "spiral field has " << c.size() << " samples, expected " << m_.cells;
      throw InvalidArgument(os.str());
    }
  }

  SpiralModel m_;
  std::shared_ptr<const RadialLaplacian> op_;
  RVector ralpha_;
};

// Diffusion through dense propagators W^{-1/2} V e^{-nu tau Lambda} V^T W^{1/2}.
class SpiralStepper final : public Stepper {
 public:
  SpiralStepper(const SpiralProblem& p, double nu, double dt) {
    if (nu > 0.0) {
      half_ = propagator(p.op(), nu * dt * 0.5);
      full_ = propagator(p.op(), nu * dt);
    }
    const Eigen::Index n = p.ralpha().size();
    phase_.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
      phase_(j) = std::polar(1.0, -static_cast<double>(p.k()) * dt * p.ralpha()(j));
  }

  void half_diffusion(CVector& c) override { apply(half_, c); }
  void full_diffusion(CVector& c) override { apply(full_, c); }

  double advection(CVector& c) override {
    const double before = c.norm();
    c.array() *= phase_.array();
    return before > 0.0 ? std::abs(c.norm() - before) / before : 0.0;
  }

 private:
  static Eigen::MatrixXd propagator(const RadialLaplacian& op, double tau) {
    const Eigen::MatrixXd& V = op.symmetric_eigenvectors();
    const RVector g = (-tau * op.eigenvalues().array()).exp();
    const RVector sq = op.weights().cwiseSqrt();
    Eigen::MatrixXd left = sq.cwiseInverse().asDiagonal() * V * g.asDiagonal();
    Eigen::MatrixXd right = V.transpose() * sq.asDiagonal();
    return left * right;
  }

  void apply(const Eigen::MatrixXd& P, CVector& c) {
    if (P.size() == 0) return;
    const Eigen::Index n = c.size();
    Eigen::Map<Eigen::Matrix<double, 2, Eigen::Dynamic>> view(reinterpret_cast<double*>(c.data()), 2, n);
    tmp_.noalias() = view * P.transpose();
    view = tmp_;
  }

  Eigen::MatrixXd half_, full_;
  Eigen::Matrix<double, 2, Eigen::Dynamic> tmp_;
  CVector phase_;
};

std::unique_ptr<Stepper> SpiralProblem::make_stepper(double nu, double dt) const {
  return std::make_unique<SpiralStepper>(*this, nu, dt);
}

}  // namespace

ModelPtr build_spiral(const SpiralModel& m) { return std::make_shared<SpiralProblem>(m); }

}  // namespace mixlab
