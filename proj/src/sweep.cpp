#include "mixlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "mixlab/error.hpp"
#include "mixlab/evolution.hpp"
#include "mixlab/rates.hpp"

namespace fs = std::filesystem;

namespace mixlab {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string short_num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
  return out;
}

template <typename T>
std::vector<T> list_or_scalar(const nlohmann::json& j, const char* name, std::vector<T> fallback) {
  if (!j.contains(name)) return fallback;
  const auto& v = j.at(name);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::vector<double> parse_nu(const nlohmann::json& j) {
  if (!j.contains("nu")) return {};
  const auto& v = j.at("nu");
  if (v.is_array()) return v.get<std::vector<double>>();
  if (v.is_object()) {
    const double lo = v.at("min").get<double>(), hi = v.at("max").get<double>();
    const int count = v.at("count").get<int>();
    if (count == 1) return {lo};
    if (count < 1) return {};
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
      out.push_back(std::pow(10.0, std::log10(lo) + (std::log10(hi) - std::log10(lo)) * i / (count - 1)));
    out.front() = lo;
    out.back() = hi;
    return out;
  }
  return {v.get<double>()};
}

// Columns that do not apply to a family are left empty.
std::string csv_line(const SweepRow& r) {
  const auto& s = r.spec;
  const bool shear = s.family == ModelFamily::Shear;
  const bool spiral = s.family == ModelFamily::Spiral;
  std::ostringstream os;
  os << to_string(s.family) << ',' << (spiral ? fmt(s.alpha) : "") << ','
     << (shear ? fmt(s.gamma) : "") << ',' << (shear ? std::to_string(s.n0) : "") << ',' << s.k
     << ',' << fmt(r.nu) << ',' << (r.status == "ok" ? fmt(r.tau) : "") << ',' << fmt(r.q_pred)
     << ',' << r.status << ',' << r.key;
  return os.str();
}

const char* kHeader = "model,alpha,gamma,n0,k,nu,tau,q_pred,status,key";

std::string group_id(const ModelSpec& s) {
  nlohmann::json j = {{"family", to_string(s.family)}, {"profile", s.profile}, {"n0", s.n0},
                      {"gamma", s.gamma}, {"alpha", s.alpha}, {"L", s.L}, {"k", s.k},
                      {"resolution", s.resolution}};
  return j.dump();
}

nlohmann::json spec_json(const ModelSpec& s) {
  nlohmann::json j = {{"model", to_string(s.family)}, {"k", s.k}};
  switch (s.family) {
    case ModelFamily::Shear:
      j["profile"] = s.profile;
      j["gamma"] = s.gamma;
      j["n0"] = s.n0;
      break;
    case ModelFamily::Kolmogorov: j["L"] = s.L; break;
    case ModelFamily::Spiral: j["alpha"] = s.alpha; break;
    case ModelFamily::Kinetic: break;
  }
  return j;
}

}  // namespace

SweepConfig SweepConfig::from_json(const nlohmann::json& j) {
  SweepConfig c;
  if (!j.contains("model")) throw InvalidArgument("sweep config needs a \"model\" entry");
  c.family = parse_family(j.at("model").get<std::string>());
  c.profile = j.value("profile", c.profile);
  c.n0 = j.value("n0", c.n0);
  c.gamma = list_or_scalar<double>(j, "gamma", c.gamma);
  c.alpha = list_or_scalar<double>(j, "alpha", c.alpha);
  c.k = list_or_scalar<long>(j, "k", c.k);
  c.L = list_or_scalar<double>(j, "L", c.L);
  c.nu = parse_nu(j);
  if (j.contains("datum")) {
    const auto& d = j.at("datum");
    if (d.is_string()) {
      c.datum.kind = d.get<std::string>();
    } else {
      c.datum.kind = d.value("kind", c.datum.kind);
      c.datum.seed = d.value("seed", c.datum.seed);
      if (d.contains("width")) c.datum.width = d.at("width").get<double>();
      if (d.contains("center")) c.datum.center = d.at("center").get<double>();
    }
  }
  if (j.contains("resolution")) {
    const auto& r = j.at("resolution");
    if (r.is_number()) {
      c.resolution = r.get<int>();
    } else {
      c.resolution = r.value("modes", 0);
      c.dt = r.value("dt", 0.0);
    }
  }
  c.t_end_multiplier = j.value("t_end_multiplier", c.t_end_multiplier);
  c.theta = j.value("theta", c.theta);
  c.stop_fraction = j.value("stop_fraction", c.stop_fraction);
  if (j.contains("mixing")) {
    const auto& m = j.at("mixing");
    c.mix_t_min = m.value("t_min", c.mix_t_min);
    c.mix_t_max = m.value("t_max", c.mix_t_max);
    c.mix_samples = m.value("samples", c.mix_samples);
  }
  c.bound_tol = j.value("bound_tol", c.bound_tol);
  c.workers = j.value("workers", c.workers);
  c.output_dir = j.value("output_dir", c.output_dir);

  for (double v : c.nu)
    if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("sweep viscosities must lie in (0, 1)");
  if (!(c.theta > 0.0 && c.theta < 1.0)) throw InvalidArgument("theta must lie in (0, 1)");
  if (!(c.t_end_multiplier > 0.0)) throw InvalidArgument("t_end_multiplier must be positive");
  if (c.workers < 1) throw InvalidArgument("workers must be >= 1");
  return c;
}

nlohmann::json SweepConfig::to_json() const {
  nlohmann::json d = {{"kind", datum.kind}, {"seed", datum.seed}};
  if (!std::isnan(datum.width)) d["width"] = datum.width;
  if (!std::isnan(datum.center)) d["center"] = datum.center;
  return {{"model", to_string(family)},
          {"profile", profile},
          {"n0", n0},
          {"gamma", gamma},
          {"alpha", alpha},
          {"k", k},
          {"L", L},
          {"nu", nu},
          {"datum", d},
          {"resolution", {{"modes", resolution}, {"dt", dt}}},
          {"t_end_multiplier", t_end_multiplier},
          {"theta", theta},
          {"stop_fraction", stop_fraction},
          {"mixing", {{"t_min", mix_t_min}, {"t_max", mix_t_max}, {"samples", mix_samples}}},
          {"bound_tol", bound_tol},
          {"workers", workers},
          {"output_dir", output_dir}};
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open sweep config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("sweep config " + path + " is not valid JSON: " + e.what());
  }
  return SweepConfig::from_json(j);
}

std::string row_key(const ModelSpec& s, double nu) {
  std::ostringstream os;
  os << to_string(s.family);
  switch (s.family) {
    case ModelFamily::Shear:
      os << '-' << sanitize(s.profile) << "-g" << short_num(s.gamma) << "-n" << s.n0;
      break;
    case ModelFamily::Kolmogorov: os << "-L" << short_num(s.L); break;
    case ModelFamily::Spiral: os << "-a" << short_num(s.alpha); break;
    case ModelFamily::Kinetic: break;
  }
  os << "-k" << s.k << "-nu" << short_num(nu);
  return os.str();
}

std::string SweepRow::trace_path(const std::string& dir) const {
  return (fs::path(dir) / "traces" / (key + ".csv")).string();
}

bool GroupFit::all_bounds_pass() const {
  for (const auto& b : bounds)
    if (!b.second.pass) return false;
  return true;
}

nlohmann::json GroupFit::to_json() const {
  nlohmann::json j = spec_json(spec);
  j["q_pred"] = q_pred;
  j["q_alt"] = std::isnan(q_alt) ? nlohmann::json(nullptr) : nlohmann::json(q_alt);
  j["commutes"] = commutes;
  if (has_mixing_fit) {
    j["mixing_fit"] = mixing.to_json();
    j["p_fit"] = p_fit;
    j["a"] = a;
    j["q_bound"] = q_bound;
    j["c0"] = c0;
  }
  if (has_ed_fit) {
    j["ed_fit"] = ed.to_json();
    j["q_meas"] = ed.exponent;
  }
  nlohmann::json b = nlohmann::json::array();
  for (const auto& [key, rep] : bounds) {
    auto r = rep.to_json();
    r["key"] = key;
    b.push_back(r);
  }
  j["bounds"] = b;
  j["all_bounds_pass"] = all_bounds_pass();
  j["notes"] = notes;
  return j;
}

std::vector<SweepRow> expand_rows(const SweepConfig& cfg) {
  std::vector<double> gammas = cfg.family == ModelFamily::Shear ? cfg.gamma : std::vector<double>{2.0};
  std::vector<double> alphas = cfg.family == ModelFamily::Spiral ? cfg.alpha : std::vector<double>{1.0};
  std::vector<double> Ls = cfg.family == ModelFamily::Kolmogorov ? cfg.L : std::vector<double>{1.0};
  std::vector<SweepRow> rows;
  for (double g : gammas)
    for (double a : alphas)
      for (double L : Ls)
        for (long k : cfg.k)
          for (double nu : cfg.nu) {
            SweepRow r;
            r.spec.family = cfg.family;
            r.spec.profile = cfg.profile;
            r.spec.gamma = g;
            r.spec.alpha = a;
            r.spec.L = L;
            r.spec.k = k;
            r.spec.resolution = cfg.resolution;
            if (cfg.family == ModelFamily::Shear)
              r.spec.n0 = cfg.n0 >= 0 ? cfg.n0 : ShearProfile::parse(cfg.profile).default_n0();
            r.nu = nu;
            r.key = row_key(r.spec, nu);
            rows.push_back(r);
          }
  std::map<std::string, int> seen;
  for (const auto& r : rows)
    if (++seen[r.key] > 1) throw InvalidArgument("sweep rows are not uniquely keyed: " + r.key);
  return rows;
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("model,alpha,gamma,n0,k,nu,tau,q_pred,status", 0) != 0)
    throw InvalidArgument(path + " does not have the sweep header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() < 9) throw InvalidArgument("short row in " + path + ": " + line);
    SweepRow r;
    r.spec.family = parse_family(cells[0]);
    if (!cells[1].empty()) r.spec.alpha = std::stod(cells[1]);
    if (!cells[2].empty()) r.spec.gamma = std::stod(cells[2]);
    if (!cells[3].empty()) r.spec.n0 = std::stoi(cells[3]);
    r.spec.k = std::stol(cells[4]);
    r.nu = std::stod(cells[5]);
    r.tau = cells[6].empty() ? 0.0 : std::stod(cells[6]);
    r.q_pred = std::stod(cells[7]);
    r.status = cells[8];
    r.key = cells.size() > 9 ? cells[9] : row_key(r.spec, r.nu);
    rows.push_back(r);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp);
    out << kHeader << "\n";
    for (const auto& r : rows) out << csv_line(r) << "\n";
  }
  fs::rename(tmp, path);
}

namespace {

// Evolves one row and extracts tau; failures are recorded, not thrown.
void run_row(const SweepConfig& cfg, const ModelProblem& model, const Field& datum, SweepRow& row,
             const std::string& dir) {
  row.q_pred = model.predicted_q();
  try {
    EvolveParams p;
    p.nu = row.nu;
    p.t_end = cfg.t_end_multiplier * std::pow(row.nu, -row.q_pred);
    p.dt = cfg.dt;
    p.adaptive_sampling = true;
    p.stop_fraction = cfg.stop_fraction;
    EvolveResult res = evolve(model, datum, p);
    const std::string path = row.trace_path(dir);
    write_trace_csv(res.trace, path);
    write_trace_json(res.trace, trace_sidecar_path(path));
    try {
      row.tau = tau_threshold(res.trace, cfg.theta);
      row.status = "ok";
    } catch (const NumericalError& e) {
      row.status = "unresolved";
      row.message = e.what();
    }
  } catch (const Error& e) {
    row.status = "failed";
    row.message = e.what();
  }
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult result;
  result.rows = expand_rows(cfg);
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir / "traces");
  {
    std::ofstream out(dir / "config.json");
    if (!out) throw Error("output directory " + cfg.output_dir + " is not writable");
    out << cfg.to_json().dump(2) << "\n";
  }
  const std::string csv_path = (dir / "sweep.csv").string();

  // Resume: keep finished rows whose trace file is still present.
  if (fs::exists(csv_path)) {
    std::map<std::string, SweepRow> previous;
    for (auto& r : read_sweep_csv(csv_path)) previous[r.key] = r;
    for (auto& row : result.rows) {
      auto it = previous.find(row.key);
      if (it == previous.end()) continue;
      if ((it->second.status == "ok" || it->second.status == "unresolved") &&
          fs::exists(row.trace_path(cfg.output_dir))) {
        row.tau = it->second.tau;
        row.q_pred = it->second.q_pred;
        row.status = it->second.status;
        ++result.skipped;
      }
    }
  }

  // One immutable model and datum per parameter group.
  std::map<std::string, ModelPtr> models;
  std::map<std::string, Field> data;
  std::vector<std::string> order;
  for (const auto& row : result.rows) {
    const std::string id = group_id(row.spec);
    if (models.count(id)) continue;
    order.push_back(id);
    try {
      models[id] = build_model(row.spec);
      data[id] = models[id]->initial_datum(cfg.datum);
    } catch (const Error& e) {
      models[id] = nullptr;
      for (auto& r : result.rows)
        if (group_id(r.spec) == id) {
          r.status = "failed";
          r.message = e.what();
        }
    }
  }

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < result.rows.size(); ++i)
    if (result.rows[i].status == "pending") todo.push_back(i);

  std::mutex writer;
  std::ofstream progress;
  if (!fs::exists(csv_path)) {
    std::ofstream(csv_path) << kHeader << "\n";
  }
  progress.open(csv_path, std::ios::app);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= todo.size()) return;
      SweepRow& row = result.rows[todo[slot]];
      const std::string id = group_id(row.spec);
      run_row(cfg, *models.at(id), data.at(id), row, cfg.output_dir);
      std::lock_guard<std::mutex> lock(writer);
      progress << csv_line(row) << "\n";
      progress.flush();
    }
  };
  const int nworkers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(todo.size())));
  if (nworkers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  progress.close();
  write_sweep_csv(result.rows, csv_path);

  // Per-group fits: mixing amplitude and rate from the inviscid run, the
  // enhanced-dissipation exponent across nu, and the decay bound per row.
  nlohmann::json fits = nlohmann::json::array();
  for (const auto& id : order) {
    const ModelPtr& model = models[id];
    GroupFit g;
    std::vector<const SweepRow*> members;
    for (const auto& r : result.rows)
      if (group_id(r.spec) == id) members.push_back(&r);
    g.spec = members.front()->spec;
    if (!model) {
      g.notes.push_back("model could not be built: " + members.front()->message);
      fits.push_back(g.to_json());
      result.groups.push_back(g);
      continue;
    }
    g.q_pred = model->predicted_q();
    g.q_alt = model->predicted_q_alt();
    g.commutes = model->commutes();

    std::vector<double> nus, taus;
    for (const auto* r : members)
      if (r->status == "ok") {
        nus.push_back(r->nu);
        taus.push_back(r->tau);
      }
    try {
      g.ed = ed_exponent(nus, taus);
      g.has_ed_fit = true;
    } catch (const InvalidArgument& e) {
      g.notes.push_back(std::string("no enhanced-dissipation fit: ") + e.what());
    }

    if (g.commutes) {
      g.notes.push_back("B commutes with A: no mixing, decay bound not applicable");
    } else {
      try {
        const Field& f0 = data.at(id);
        const DecayTrace mix =
            inviscid_trace(*model, f0, log_times(cfg.mix_t_min, cfg.mix_t_max, cfg.mix_samples));
        g.mixing = fit_mixing_rate(mix, cfg.mix_t_min, cfg.mix_t_max);
        g.has_mixing_fit = true;
        g.p_fit = -g.mixing.exponent;
        if (!(g.p_fit > 0.0)) throw NumericalError("inviscid H^{-1} norm does not decay");
        // Smallest a with hm1(t) <= a t^{-p} ||f_in||_{H^1} on every sample of the window.
        double envelope = 0.0;
        for (std::size_t i = 0; i < mix.size(); ++i)
          envelope = std::max(envelope, mix.hm1_norm[i] * std::pow(mix.times[i], g.p_fit));
        g.a = round_up_pow2(envelope / mix.h1_norm.front());
        const PredictedRates pr = rates_for(*model, g.p_fit, g.a);
        g.q_bound = pr.q;
        g.c0 = pr.c0;
        for (const auto* r : members) {
          if (r->status != "ok") continue;
          const DecayTrace tr = read_trace(r->trace_path(cfg.output_dir));
          g.bounds.emplace_back(r->key, theorem_bound_check(tr, r->nu, g.q_bound, g.c0, cfg.bound_tol,
                                                            model->rate_scale(g.q_bound)));
        }
      } catch (const Error& e) {
        g.notes.push_back(std::string("bound check skipped: ") + e.what());
      }
    }
    fits.push_back(g.to_json());
    result.groups.push_back(std::move(g));
  }
  std::ofstream(dir / "fits.json") << nlohmann::json{{"groups", fits}}.dump(2) << "\n";
  return result;
}

}  // namespace mixlab
