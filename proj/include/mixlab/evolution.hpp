#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mixlab/models.hpp"

namespace mixlab {

/// Sampled norms of one solution.
struct DecayTrace {
  std::vector<double> times;
  std::vector<double> h_norm;
  std::vector<double> h1_norm;
  std::vector<double> hm1_norm;
  double nu = 0.0;
  double dt = 0.0;
  std::string scheme = "strang";
  nlohmann::json model;
  // Time the run was meant to reach; larger than times.back() when it stopped
  // early after the energy dropped below the stop fraction.
  double t_horizon = 0.0;
  bool stopped_early = false;
  double max_top_fraction = 0.0;

  std::size_t size() const { return times.size(); }
  void push(double t, double h, double h1, double hm1);
};

struct EvolveParams {
  double nu = 0.0;
  double t_end = 1.0;
  double dt = 0.0;           // 0 picks the default step
  int sample_every = 0;      // 0 picks a stride giving at most 1e4 intervals
  // Sample every step at first and halve the density whenever the trace
  // would exceed 1e4 intervals; gives good resolution for runs that stop early.
  bool adaptive_sampling = false;
  double stop_fraction = 0.0;  // stop once h <= stop_fraction * h(0); 0 disables
};

struct EvolveResult {
  DecayTrace trace;
  Field final_field;
};

/// min(0.01, 0.1 / max|symbol of B|); t_end / 1e4 when B commutes with A.
double default_dt(const ModelProblem& model, double t_end);

/// One Strang step: e^{-nu A dt/2} e^{-B dt} e^{-nu A dt/2}.
Field step_viscous(const ModelProblem& model, const Field& f, double nu, double dt);

EvolveResult evolve(const ModelProblem& model, const Field& f_in, const EvolveParams& params);

/// Norms of the inviscid solution at the given times (closed form where the
/// model has one, integrated otherwise).
DecayTrace inviscid_trace(const ModelProblem& model, const Field& f_in,
                          const std::vector<double>& times, double dt = 0.0);

/// Max over interior samples of |d/dt h^2 + 2 nu (h1)^2| / h(0)^2 with
/// centered differences.
double energy_residual(const DecayTrace& trace);

/// Logarithmically spaced times in [t_min, t_max].
std::vector<double> log_times(double t_min, double t_max, int count);

void write_trace_csv(const DecayTrace& trace, const std::string& path);
/// Metadata sidecar (model, nu, dt, scheme, horizon).
void write_trace_json(const DecayTrace& trace, const std::string& path);
/// foo.csv -> foo.json
std::string trace_sidecar_path(const std::string& csv_path);
/// Reads a CSV written by write_trace_csv, plus its sidecar when present.
DecayTrace read_trace(const std::string& csv_path);

}  // namespace mixlab
