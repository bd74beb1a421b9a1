#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixlab/profiles.hpp"
#include "mixlab/spectral.hpp"

namespace mixlab {

enum class ModelFamily { Shear, Kolmogorov, Spiral, Kinetic };

std::string to_string(ModelFamily family);
ModelFamily parse_family(const std::string& name);

/// Parameters selecting one concrete model problem. Fields irrelevant to the
/// chosen family are ignored.
struct ModelSpec {
  ModelFamily family = ModelFamily::Shear;
  std::string profile = "sin";  // shear: name or csv:<path>
  int n0 = -1;                  // shear: -1 takes the profile default
  double gamma = 2.0;           // shear: dissipation order in (0, 2]
  double alpha = 1.0;           // spiral
  double L = 1.0;               // kolmogorov aspect ratio
  long k = 1;                   // x-, angular or (kinetic, d=1) spatial wavenumber
  std::vector<long> kvec;       // kinetic: spatial frequency vector; empty means {k}
  int resolution = 0;           // M (torus), N (disk), Hermite degree; 0 = default
};

/// Initial datum recipe. Width and center fall back to per-model defaults when
/// left NaN.
struct DatumSpec {
  std::string kind = "single-mode";  // single-mode | gaussian-bump | random
  std::uint64_t seed = 0;
  double width = std::numeric_limits<double>::quiet_NaN();
  double center = std::numeric_limits<double>::quiet_NaN();
};

/// One splitting step's pieces for fixed (nu, dt). Holds scratch space, so a
/// stepper belongs to a single thread.
class Stepper {
 public:
  virtual ~Stepper() = default;
  /// c <- e^{-nu A dt/2} c.
  virtual void half_diffusion(CVector& c) = 0;
  /// c <- e^{-nu A dt} c.
  virtual void full_diffusion(CVector& c) = 0;
  /// c <- e^{-B dt} c; returns the relative change of the H norm.
  virtual double advection(CVector& c) = 0;
};

class ModelProblem {
 public:
  virtual ~ModelProblem() = default;

  virtual ModelFamily family() const = 0;
  virtual BasisTag basis() const = 0;
  virtual std::size_t size() const = 0;
  virtual nlohmann::json descriptor() const = 0;
  const InnerProduct& inner_product() const { return inner_; }

  /// ||c||_{H^s} with respect to this model's A and inner product.
  virtual double norm(const CVector& c, double s) const = 0;
  double norm(const Field& f, double s) const;
  virtual CVector apply_A(const CVector& c) const = 0;
  virtual CVector apply_B(const CVector& c) const = 0;
  virtual Spectrum spectrum() const = 0;
  double lambda1() const { return spectrum().lambda_min(); }

  virtual std::unique_ptr<Stepper> make_stepper(double nu, double dt) const = 0;
  virtual bool has_exact_inviscid() const { return false; }
  virtual CVector exact_inviscid(const CVector& c, double t) const;

  /// Upper estimate of the spectral radius of B, used to pick default steps.
  virtual double max_advection_symbol() const = 0;
  /// True when B commutes with A (no enhancement possible).
  virtual bool commutes() const { return false; }

  virtual double c_B() const = 0;
  /// True when |Re<B phi, A phi>| <= kappa ||phi|| ||phi||_{H^1} is the
  /// estimate used for predictions.
  virtual bool mixed_bound() const { return false; }
  virtual double mixed_constant() const { return std::numeric_limits<double>::quiet_NaN(); }
  /// Constant entering the mixed-bound decay constant (alpha for spiral, |k| for kinetic).
  virtual double mixed_kappa() const { return mixed_constant(); }

  virtual double predicted_p() const = 0;
  virtual double predicted_q() const = 0;
  /// Secondary prediction where two routes exist, NaN otherwise.
  virtual double predicted_q_alt() const { return std::numeric_limits<double>::quiet_NaN(); }
  /// Factor multiplying nu^q in the decay rate (|k|^{1-q} for spiral flows).
  virtual double rate_scale(double q) const {
    (void)q;
    return 1.0;
  }

  virtual Field initial_datum(const DatumSpec& spec) const = 0;
  /// Energy fraction in the highest retained degree (kinetic closure check).
  virtual double top_degree_fraction(const CVector& c) const {
    (void)c;
    return 0.0;
  }

  Field make_field(CVector c) const { return Field(std::move(c), basis()); }
  void check(const Field& f) const;

 protected:
  InnerProduct inner_;
};

using ModelPtr = std::shared_ptr<const ModelProblem>;

struct ShearModel {
  ShearProfile profile = ShearProfile::named("sin");
  int n0 = 1;
  double gamma = 2.0;
  long k = 1;
  int modes = 512;
};

struct KolmogorovModel {
  double L = 2.0;
  long k = 1;
  int modes = 512;
};

struct SpiralModel {
  double alpha = 1.0;
  long k = 1;
  int cells = 256;
};

struct KineticModel {
  std::vector<long> k{1};
  int degree = 32;
};

ModelPtr build_shear(const ShearModel& m);
ModelPtr build_kolmogorov(const KolmogorovModel& m);
ModelPtr build_spiral(const SpiralModel& m);
ModelPtr build_kinetic(const KineticModel& m);
ModelPtr build_model(const ModelSpec& spec);

int default_resolution(ModelFamily family);

/// Closed-form inviscid solution; Unsupported for Kolmogorov and kinetic models.
Field exact_inviscid(const ModelProblem& model, const Field& f_in, double t);

struct PredictedRates {
  double p = 0.0;
  double q = 0.0;
  double q_alt = std::numeric_limits<double>::quiet_NaN();
  double c_B = 0.0;
  double c0 = 0.0;
  bool mixed = false;
};

/// Exponents and decay constant for mixing amplitude a. Models with the mixed
/// bound use (4-p)/(4+p) and the mixed constant; others use 2/(2+p).
PredictedRates predicted_rates(const ModelProblem& model, double a);

/// Same, with the mixing rate p supplied (e.g. fitted) instead of predicted.
PredictedRates rates_for(const ModelProblem& model, double p, double a);

}  // namespace mixlab
