#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "internal.hpp"
#include "mixlab/error.hpp"
#include "mixlab/models.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

namespace {

// Spatial Fourier mode k of the linear kinetic model. Velocity dependence is
// expanded in normalized Hermite functions (orthonormal for the Gibbs weight),
// keeping multi-indices of total degree 1..N. A is diagonal with eigenvalue
// |n|; B = i v.k couples n and n + e_i with strength k_i sqrt(n_i + 1).
class KineticProblem final : public ModelProblem {
 public:
  explicit KineticProblem(const KineticModel& m) : m_(m) {
    if (m.degree < 2) throw InvalidArgument("kinetic model needs Hermite degree N >= 2");
    if (m.k.empty()) throw InvalidArgument("kinetic model needs a frequency vector");
    double k2 = 0.0;
    for (long ki : m.k) k2 += static_cast<double>(ki) * ki;
    if (k2 == 0.0) throw InvalidArgument("kinetic model needs k != 0");
    knorm_ = std::sqrt(k2);
    const int d = static_cast<int>(m.k.size());

    for (int deg = 1; deg <= m.degree; ++deg) enumerate(std::vector<int>(d, 0), 0, deg);
    std::map<std::vector<int>, int> where;
    for (std::size_t i = 0; i < index_.size(); ++i) where[index_[i]] = static_cast<int>(i);
    lambda_.resize(static_cast<Eigen::Index>(index_.size()));
    for (std::size_t i = 0; i < index_.size(); ++i) lambda_(static_cast<Eigen::Index>(i)) = degree_of(index_[i]);

    // Bonds along direction i are disjoint within a fixed parity of n_i.
    groups_.resize(static_cast<std::size_t>(2 * d));
    for (std::size_t a = 0; a < index_.size(); ++a) {
      for (int i = 0; i < d; ++i) {
        if (m.k[static_cast<std::size_t>(i)] == 0) continue;
        std::vector<int> up = index_[a];
        ++up[static_cast<std::size_t>(i)];
        auto it = where.find(up);
        if (it == where.end()) continue;
        const int ni = index_[a][static_cast<std::size_t>(i)];
        auto& g = groups_[static_cast<std::size_t>(2 * i + (ni % 2))];
        g.a.push_back(static_cast<int>(a));
        g.b.push_back(it->second);
        g.g.push_back(cplx(0.0, -static_cast<double>(m.k[static_cast<std::size_t>(i)]) * std::sqrt(ni + 1.0)));
      }
    }
    std::vector<detail::BondGroup> kept;
    for (auto& g : groups_)
      if (!g.a.empty()) kept.push_back(std::move(g));
    groups_ = std::move(kept);

    double vmax = 0.0;
    for (long ki : m.k) vmax += std::abs(static_cast<double>(ki)) * 2.0 * std::sqrt(static_cast<double>(m.degree));
    max_symbol_ = vmax;
    inner_ = InnerProduct(InnerProductKind::GibbsWeighted, RVector::Ones(lambda_.size()));
  }

  ModelFamily family() const override { return ModelFamily::Kinetic; }
  BasisTag basis() const override { return BasisTag::Hermite; }
  std::size_t size() const override { return index_.size(); }

  nlohmann::json descriptor() const override {
    return {{"family", "kinetic"}, {"k", m_.k}, {"d", m_.k.size()}, {"N", m_.degree}};
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

  // (B phi)_n = i sum_i k_i (sqrt(n_i) phi_{n-e_i} + sqrt(n_i+1) phi_{n+e_i}),
  // so along each bond (a, b = a + e_i): (B phi)_a += -g phi_b, (B phi)_b += conj(g) phi_a
  // with g = -i k_i sqrt(n_i+1) (the evolution is d/dt phi = -B phi).
  CVector apply_B(const CVector& c) const override {
    check_size(c);
    CVector out = CVector::Zero(c.size());
    for (const auto& g : groups_) {
      for (std::size_t j = 0; j < g.a.size(); ++j) {
        out(g.a[j]) -= g.g[j] * c(g.b[j]);
        out(g.b[j]) += std::conj(g.g[j]) * c(g.a[j]);
      }
    }
    return out;
  }

  Spectrum spectrum() const override {
    return Spectrum(std::vector<double>(lambda_.data(), lambda_.data() + lambda_.size()));
  }

  std::unique_ptr<Stepper> make_stepper(double nu, double dt) const override;

  double max_advection_symbol() const override { return max_symbol_; }
  double c_B() const override { return knorm_; }
  bool mixed_bound() const override { return true; }
  double mixed_constant() const override { return knorm_; }
  double predicted_p() const override { return 1.0; }
  double predicted_q() const override { return q_mixed(1.0); }

  Field initial_datum(const DatumSpec& spec) const override {
    CVector c = CVector::Zero(lambda_.size());
    if (spec.kind == "single-mode") {
      c(0) = 1.0;
    } else if (spec.kind == "random") {
      std::mt19937_64 rng(spec.seed);
      c = detail::random_normal(size(), rng);
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) /= lambda_(i);
    } else if (spec.kind == "gaussian-bump") {
      throw Unsupported("gaussian-bump datum is not defined for the kinetic model");
    } else {
      throw InvalidArgument("unknown datum kind '" + spec.kind + "'");
    }
    c /= norm(c, 1.0);
    return Field(std::move(c), BasisTag::Hermite);
  }

  double top_degree_fraction(const CVector& c) const override {
    check_size(c);
    double top = 0.0, all = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double e = std::norm(c(i));
      all += e;
      if (lambda_(i) == m_.degree) top += e;
    }
    return all > 0.0 ? top / all : 0.0;
  }

  const RVector& lambda() const { return lambda_; }
  const std::vector<detail::BondGroup>& groups() const { return groups_; }

 private:
  static int degree_of(const std::vector<int>& n) {
    int s = 0;
    for (int v : n) s += v;
    return s;
  }

  void enumerate(std::vector<int> n, std::size_t axis, int remaining) {
    if (axis + 1 == n.size()) {
      n[axis] = remaining;
      index_.push_back(n);
      return;
    }
    for (int v = remaining; v >= 0; --v) {
      n[axis] = v;
      enumerate(n, axis + 1, remaining - v);
    }
  }

  void check_size(const CVector& c) const {
    if (static_cast<std::size_t>(c.size()) != index_.size()) {
      std::ostringstream os;
      os << "kinetic field has " << c.size() << " coefficients, expected " << index_.size();
      throw InvalidArgument(os.str());
    }
  }

  KineticModel m_;
  std::vector<std::vector<int>> index_;
  RVector lambda_;
  std::vector<detail::BondGroup> groups_;
  double knorm_ = 0.0;
  double max_symbol_ = 0.0;
};

class KineticStepper final : public Stepper {
 public:
  KineticStepper(const KineticProblem& p, double nu, double dt) : p_(p), dt_(dt) {
    half_ = (-0.5 * nu * dt * p.lambda().array()).exp();
    full_ = (-nu * dt * p.lambda().array()).exp();
  }

  void half_diffusion(CVector& c) override { c.array() *= half_.array(); }
  void full_diffusion(CVector& c) override { c.array() *= full_.array(); }

  double advection(CVector& c) override {
    const double before = c.norm();
    detail::apply_bond_strang(p_.groups(), c, dt_);
    return before > 0.0 ? std::abs(c.norm() - before) / before : 0.0;
  }

 private:
  const KineticProblem& p_;
  double dt_;
  RVector half_, full_;
};

std::unique_ptr<Stepper> KineticProblem::make_stepper(double nu, double dt) const {
  return std::make_unique<KineticStepper>(*this, nu, dt);
}

}  // namespace

ModelPtr build_kinetic(const KineticModel& m) { return std::make_shared<KineticProblem>(m); }

}  // namespace mixlab
