#include "mixlab/models.hpp"

#include <cmath>
#include <sstream>

#include "mixlab/error.hpp"
#include "mixlab/rates.hpp"

namespace mixlab {

std::string to_string(ModelFamily family) {
  switch (family) {
    case ModelFamily::Shear: return "shear";
    case ModelFamily::Kolmogorov: return "kolmogorov";
    case ModelFamily::Spiral: return "spiral";
    case ModelFamily::Kinetic: return "kinetic";
  }
  return "unknown";
}

ModelFamily parse_family(const std::string& name) {
  if (name == "shear") return ModelFamily::Shear;
  if (name == "kolmogorov") return ModelFamily::Kolmogorov;
  if (name == "spiral") return ModelFamily::Spiral;
  if (name == "kinetic") return ModelFamily::Kinetic;
  throw InvalidArgument("unknown model '" + name + "' (expected shear, kolmogorov, spiral or kinetic)");
}

double ModelProblem::norm(const Field& f, double s) const {
  check(f);
  return norm(f.coefficients, s);
}

CVector ModelProblem::exact_inviscid(const CVector&, double) const {
  throw Unsupported("no closed-form inviscid solution for the " + to_string(family()) + " model");
}

void ModelProblem::check(const Field& f) const {
  if (f.basis != basis()) {
    throw InvalidArgument("field basis " + to_string(f.basis) + " does not match model basis " +
                          to_string(basis()));
  }
  if (f.size() != size()) {
    std::ostringstream os;
    os << "field has " << f.size() << " coefficients, model expects " << size();
    throw InvalidArgument(os.str());
  }
}

int default_resolution(ModelFamily family) {
  switch (family) {
    case ModelFamily::Shear:
    case ModelFamily::Kolmogorov: return 512;
    case ModelFamily::Spiral: return 256;
    case ModelFamily::Kinetic: return 32;
  }
  return 0;
}

ModelPtr build_model(const ModelSpec& spec) {
  const int res = spec.resolution > 0 ? spec.resolution : default_resolution(spec.family);
  switch (spec.family) {
    case ModelFamily::Shear: {
      ShearModel m;
      m.profile = ShearProfile::parse(spec.profile);
      m.n0 = spec.n0 >= 0 ? spec.n0 : m.profile.default_n0();
      m.gamma = spec.gamma;
      m.k = spec.k;
      m.modes = res;
      return build_shear(m);
    }
    case ModelFamily::Kolmogorov:
      return build_kolmogorov({spec.L, spec.k, res});
    case ModelFamily::Spiral:
      return build_spiral({spec.alpha, spec.k, res});
    case ModelFamily::Kinetic: {
      KineticModel m;
      m.k = spec.kvec.empty() ? std::vector<long>{spec.k} : spec.kvec;
      m.degree = res;
      return build_kinetic(m);
    }
  }
  throw InvalidArgument("unknown model family");
}

Field exact_inviscid(const ModelProblem& model, const Field& f_in, double t) {
  model.check(f_in);
  if (!(t >= 0.0)) throw InvalidArgument("time must be nonnegative");
  if (t == 0.0) return f_in;
  Field out = f_in;
  out.coefficients = model.exact_inviscid(f_in.coefficients, t);
  return out;
}

PredictedRates rates_for(const ModelProblem& model, double p, double a) {
  PredictedRates r;
  r.c_B = model.c_B();
  r.mixed = model.mixed_bound();
  if (model.commutes()) {
    // No mixing: decay is purely diffusive.
    r.p = 0.0;
    r.q = 1.0;
    r.c0 = model.lambda1();
    return r;
  }
  r.p = p;
  if (r.mixed) {
    r.q = q_mixed(p);
    r.c0 = constant_c_mixed(p, a, model.mixed_kappa());
  } else {
    r.q = q_poly(p);
    r.c0 = constant_c0_poly(p, a, r.c_B);
  }
  if (model.family() == ModelFamily::Kolmogorov) r.q_alt = model.predicted_q_alt();
  return r;
}

PredictedRates predicted_rates(const ModelProblem& model, double a) {
  return rates_for(model, model.predicted_p(), a);
}

}  // namespace mixlab
