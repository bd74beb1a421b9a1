#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "mixlab/diagnostics.hpp"
#include "mixlab/models.hpp"

namespace mixlab {

struct SweepConfig {
  ModelFamily family = ModelFamily::Shear;
  std::string profile = "sin";
  int n0 = -1;
  std::vector<double> gamma{2.0};
  std::vector<double> alpha{1.0};
  std::vector<long> k{1};
  std::vector<double> L{2.0};
  std::vector<double> nu;
  DatumSpec datum;
  int resolution = 0;  // 0 = model default
  double dt = 0.0;     // 0 = default step
  double t_end_multiplier = 20.0;
  double theta = 0.36787944117144233;  // e^{-1}
  double stop_fraction = 0.05;
  // Inviscid run used to fit (a, p) per parameter group.
  double mix_t_min = 10.0;
  double mix_t_max = 100.0;
  int mix_samples = 41;
  double bound_tol = 5e-2;
  int workers = 1;
  std::string output_dir = "sweep-out";

  static SweepConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// Loads a JSON config file.
SweepConfig load_sweep_config(const std::string& path);

struct SweepRow {
  ModelSpec spec;
  double nu = 0.0;
  double tau = 0.0;
  double q_pred = 0.0;
  std::string status = "pending";  // ok | unresolved | failed | pending
  std::string key;
  std::string message;

  std::string trace_path(const std::string& dir) const;
};

struct GroupFit {
  ModelSpec spec;
  double q_pred = 0.0;
  double q_alt = 0.0;  // NaN when there is a single prediction
  bool commutes = false;
  bool has_mixing_fit = false;
  RateFit mixing;
  double p_fit = 0.0;
  double a = 0.0;  // fitted amplitude rounded up to a power of two
  double q_bound = 0.0;
  double c0 = 0.0;
  bool has_ed_fit = false;
  RateFit ed;
  std::vector<std::pair<std::string, BoundReport>> bounds;
  std::vector<std::string> notes;

  bool all_bounds_pass() const;
  nlohmann::json to_json() const;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<GroupFit> groups;
  int skipped = 0;  // rows reused from an earlier run
};

/// Expands the parameter product in a fixed order.
std::vector<SweepRow> expand_rows(const SweepConfig& cfg);

/// Runs every row not already completed in cfg.output_dir, writes sweep.csv,
/// traces/<key>.csv and fits.json.
SweepResult run_sweep(const SweepConfig& cfg);

std::string row_key(const ModelSpec& spec, double nu);

/// Parses sweep.csv; empty vector when the file has no data rows.
std::vector<SweepRow> read_sweep_csv(const std::string& path);
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace mixlab
