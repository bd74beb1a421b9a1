// mixlab: command-line front end for the advection-diffusion laboratory.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mixlab/diagnostics.hpp"
#include "mixlab/error.hpp"
#include "mixlab/evolution.hpp"
#include "mixlab/models.hpp"
#include "mixlab/rates.hpp"
#include "mixlab/report.hpp"
#include "mixlab/sweep.hpp"

namespace fs = std::filesystem;
using namespace mixlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

// Integers are read as text so that "1e3" works like "1000".
long parse_integer(const std::string& text, const char* flag) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw InvalidArgument(std::string(flag) + " expects a number, got '" + text + "'");
  }
  if (v != std::floor(v) || std::abs(v) > 9.0e15)
    throw InvalidArgument(std::string(flag) + " expects an integer, got '" + text + "'");
  return static_cast<long>(v);
}

std::uint64_t parse_seed(const std::string& text) {
  if (text.find_first_of(".eE") == std::string::npos) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(text, &used);
      if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("--seed expects an unsigned integer, got '" + text + "'");
  }
  const long v = parse_integer(text, "--seed");
  if (v < 0) throw InvalidArgument("--seed must be nonnegative");
  return static_cast<std::uint64_t>(v);
}

std::vector<long> parse_integer_list(const std::string& text, const char* flag) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item, flag));
  if (out.empty()) throw InvalidArgument(std::string(flag) + " needs at least one value");
  return out;
}

struct Globals {
  std::string out = "mixlab-out";
  std::string workers = "1";
  std::string seed = "0";
  std::string resolution = "0";
};

struct ModelFlags {
  std::string model = "shear";
  std::string profile = "sin";
  std::string n0 = "-1";
  double gamma = 2.0;
  double alpha = 1.0;
  double L = 2.0;
  std::string k = "1";
  std::string datum = "single-mode";
  double width = std::nan("");
  double center = std::nan("");

  void add(CLI::App* app, bool k_list = false) {
    app->add_option("--model", model, "shear | kolmogorov | spiral | kinetic")->capture_default_str();
    app->add_option("--profile", profile, "shear profile: sin, sin2, const or csv:<path>")->capture_default_str();
    app->add_option("--n0", n0, "vanishing order of u' (default: profile's own)");
    app->add_option("--gamma", gamma, "dissipation order in (0, 2]")->capture_default_str();
    app->add_option("--alpha", alpha, "spiral exponent alpha >= 1")->capture_default_str();
    app->add_option("--L", L, "Kolmogorov aspect ratio")->capture_default_str();
    app->add_option("--k", k, k_list ? "wavenumber(s), comma separated" : "wavenumber (kinetic: comma separated vector)")
        ->capture_default_str();
    app->add_option("--datum", datum, "single-mode | gaussian-bump | random")->capture_default_str();
    app->add_option("--width", width, "bump width");
    app->add_option("--center", center, "bump center");
  }

  ModelSpec spec(const Globals& g) const {
    ModelSpec s;
    s.family = parse_family(model);
    s.profile = profile;
    s.n0 = static_cast<int>(parse_integer(n0, "--n0"));
    s.gamma = gamma;
    s.alpha = alpha;
    s.L = L;
    const auto ks = parse_integer_list(k, "--k");
    if (s.family == ModelFamily::Kinetic) {
      s.kvec = ks;
      s.k = ks.front();
    } else {
      if (ks.size() != 1) throw InvalidArgument("--k takes a single value for this model");
      s.k = ks.front();
    }
    s.resolution = static_cast<int>(parse_integer(g.resolution, "--resolution"));
    return s;
  }

  DatumSpec datum_spec(const Globals& g) const {
    DatumSpec d;
    d.kind = datum;
    d.seed = parse_seed(g.seed);
    d.width = width;
    d.center = center;
    return d;
  }
};

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir + ": " + ec.message());
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_simulate(const Globals& g, const ModelFlags& mf, double nu, double t_end, double dt,
                 const std::string& sample_every) {
  const ModelPtr model = build_model(mf.spec(g));
  const Field f0 = model->initial_datum(mf.datum_spec(g));
  EvolveParams p;
  p.nu = nu;
  p.t_end = t_end;
  p.dt = dt;
  p.sample_every = static_cast<int>(parse_integer(sample_every, "--sample-every"));
  const EvolveResult res = evolve(*model, f0, p);
  ensure_dir(g.out);
  const std::string csv = (fs::path(g.out) / "trace.csv").string();
  write_trace_csv(res.trace, csv);
  write_trace_json(res.trace, trace_sidecar_path(csv));
  const auto& tr = res.trace;
  std::printf("t=%.6g h=%.12g h1=%.12g hm1=%.12g\n", tr.times.back(), tr.h_norm.back(), tr.h1_norm.back(),
              tr.hm1_norm.back());
  if (tr.max_top_fraction > 0.01)
    std::printf("warning: top Hermite degree holds %.3g of the energy (truncation too small)\n",
                tr.max_top_fraction);
  std::printf("trace written to %s\n", csv.c_str());
  return kExitOk;
}

int cmd_mix_rate(const Globals& g, const ModelFlags& mf, double t_min, double t_max,
                 const std::string& samples) {
  const ModelPtr model = build_model(mf.spec(g));
  const Field f0 = model->initial_datum(mf.datum_spec(g));
  const int n = static_cast<int>(parse_integer(samples, "--samples"));
  const DecayTrace tr = inviscid_trace(*model, f0, log_times(t_min, t_max, n));
  const RateFit fit = fit_mixing_rate(tr, t_min, t_max);
  ensure_dir(g.out);
  const std::string csv = (fs::path(g.out) / "mixing.csv").string();
  write_trace_csv(tr, csv);
  write_trace_json(tr, trace_sidecar_path(csv));
  nlohmann::json out = fit.to_json();
  out["p_meas"] = -fit.exponent;
  out["p_pred"] = model->predicted_p();
  out["amplitude"] = std::exp(fit.log_intercept) / tr.h1_norm.front();
  std::ofstream(fs::path(g.out) / "mixing_fit.json") << out.dump(2) << "\n";
  std::printf("p_meas=%.4f p_pred=%.4f residual=%.3g points=%d\n", -fit.exponent, model->predicted_p(),
              fit.residual, fit.n_points);
  return kExitOk;
}

int cmd_ed_sweep(const Globals& g, const ModelFlags& mf, const std::string& config, double nu_min,
                 double nu_max, const std::string& nu_count, double multiplier, double stop_fraction) {
  SweepConfig cfg;
  if (!config.empty()) {
    cfg = load_sweep_config(config);
  } else {
    nlohmann::json j = {{"model", mf.model},
                        {"profile", mf.profile},
                        {"n0", parse_integer(mf.n0, "--n0")},
                        {"gamma", mf.gamma},
                        {"alpha", mf.alpha},
                        {"L", mf.L},
                        {"k", parse_integer_list(mf.k, "--k")},
                        {"nu", {{"min", nu_min}, {"max", nu_max}, {"count", parse_integer(nu_count, "--nu-count")}}},
                        {"datum", {{"kind", mf.datum}, {"seed", parse_seed(g.seed)}}},
                        {"resolution", {{"modes", parse_integer(g.resolution, "--resolution")}, {"dt", 0.0}}},
                        {"t_end_multiplier", multiplier},
                        {"stop_fraction", stop_fraction}};
    if (!std::isnan(mf.width)) j["datum"]["width"] = mf.width;
    if (!std::isnan(mf.center)) j["datum"]["center"] = mf.center;
    cfg = SweepConfig::from_json(j);
  }
  cfg.output_dir = g.out;
  cfg.workers = static_cast<int>(parse_integer(g.workers, "--workers"));
  if (cfg.workers < 1) throw InvalidArgument("--workers must be >= 1");
  const SweepResult res = run_sweep(cfg);
  int bad = 0;
  for (const auto& r : res.rows) {
    if (r.status != "ok") {
      ++bad;
      std::fprintf(stderr, "row %s: %s %s\n", r.key.c_str(), r.status.c_str(), r.message.c_str());
    }
  }
  for (const auto& grp : res.groups) {
    const std::string label = row_key(grp.spec, 0.0).substr(0, row_key(grp.spec, 0.0).rfind("-nu"));
    std::printf("%s:", label.c_str());
    if (grp.has_ed_fit)
      std::printf(" q_meas=%.4f q_pred=%.4f (%s)", grp.ed.exponent, grp.q_pred,
                  exponent_verdict(grp.ed.exponent, grp.q_pred, grp.commutes).c_str());
    else
      std::printf(" no exponent fit");
    if (!grp.bounds.empty()) std::printf(" bounds %s", grp.all_bounds_pass() ? "pass" : "FAIL");
    std::printf("\n");
  }
  std::printf("%zu rows (%d reused), results in %s\n", res.rows.size(), res.skipped, cfg.output_dir.c_str());
  return bad ? kExitNumerical : kExitOk;
}

int cmd_verify_bound(const Globals& g, const std::string& dir, const std::string& trace_path, double nu,
                     double q, double c0, double rate_scale, double tol, bool exp_variant, double p,
                     double a1, double a2) {
  if (!trace_path.empty()) {
    const DecayTrace tr = read_trace(trace_path);
    const double v = nu > 0.0 ? nu : tr.nu;
    const BoundReport rep = exp_variant ? theorem_bound_check_exp(tr, v, p, c0, a1, a2, tol)
                                        : theorem_bound_check(tr, v, q, c0, tol, rate_scale);
    print_json(rep.to_json());
    return rep.pass ? kExitOk : kExitNumerical;
  }
  const std::string d = dir.empty() ? g.out : dir;
  std::ifstream in(fs::path(d) / "fits.json");
  if (!in) throw InvalidArgument("no fits.json in " + d + " (run ed-sweep first or pass --trace)");
  const auto fits = nlohmann::json::parse(in);
  bool all = true;
  int checked = 0;
  for (const auto& grp : fits.at("groups")) {
    for (const auto& b : grp.at("bounds")) {
      ++checked;
      const bool pass = b.at("pass").get<bool>();
      all = all && pass;
      std::printf("%-40s %s margin=%.4g points=%d\n", b.at("key").get<std::string>().c_str(),
                  pass ? "PASS" : "FAIL", b.at("worst_margin").get<double>(), b.at("checked").get<int>());
    }
    for (const auto& n : grp.at("notes")) std::printf("note: %s\n", n.get<std::string>().c_str());
  }
  if (checked == 0) throw InvalidArgument("fits.json in " + d + " holds no bound checks");
  std::printf("%s (%d rows)\n", all ? "all bounds hold" : "bound violated", checked);
  return all ? kExitOk : kExitNumerical;
}

int cmd_report(const Globals& g, const std::string& dir) {
  const ReportBundle b = build_report(dir.empty() ? g.out : dir);
  for (const auto& e : b.report.at("experiments")) {
    if (e.at("q_meas").is_null())
      std::printf("%s: %s\n", e.at("group").get<std::string>().c_str(), e.at("verdict").get<std::string>().c_str());
    else
      std::printf("%s: q_meas=%.3f q_pred=%.3f %s\n", e.at("group").get<std::string>().c_str(),
                  e.at("q_meas").get<double>(), e.at("q_pred").get<double>(),
                  e.at("verdict").get<std::string>().c_str());
  }
  for (const auto& a : b.artifacts) std::printf("wrote %s\n", a.c_str());
  if (!b.complete) std::printf("some rows are incomplete; see incomplete_rows in report.json\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral advection-diffusion laboratory: mixing rates and enhanced dissipation"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--out", g.out, "output directory")->capture_default_str();
  app.add_option("--workers", g.workers, "parallel sweep workers")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for random initial data")->capture_default_str();
  app.add_option("--resolution", g.resolution, "M (torus), N (disk) or Hermite degree; 0 = default")
      ->capture_default_str();

  ModelFlags sim_flags, mix_flags, sweep_flags;

  auto* sim = app.add_subcommand("simulate", "evolve one model and write its norm trace");
  sim_flags.add(sim);
  double nu = 0.0, t_end = 100.0, dt = 0.0;
  std::string sample_every = "0";
  sim->add_option("--nu", nu, "viscosity")->required();
  sim->add_option("--t-end", t_end, "final time")->capture_default_str();
  sim->add_option("--dt", dt, "time step (0 = default)")->capture_default_str();
  sim->add_option("--sample-every", sample_every, "steps between samples (0 = auto)")->capture_default_str();

  auto* mix = app.add_subcommand("mix-rate", "fit the inviscid H^-1 decay exponent");
  mix_flags.add(mix);
  double t_min = 10.0, t_max = 1000.0;
  std::string samples = "41";
  mix->add_option("--t-min", t_min, "fit window start")->capture_default_str();
  mix->add_option("--t-max", t_max, "fit window end")->capture_default_str();
  mix->add_option("--samples", samples, "log-spaced sample count")->capture_default_str();

  auto* sweep = app.add_subcommand("ed-sweep", "viscosity sweep: tau(nu) and the dissipation exponent");
  sweep_flags.add(sweep, true);
  std::string config;
  double nu_min = 1e-6, nu_max = 1e-3, multiplier = 20.0, stop_fraction = 0.05;
  std::string nu_count = "8";
  sweep->add_option("--config", config, "JSON sweep config (overrides model flags)");
  sweep->add_option("--nu-min", nu_min, "smallest viscosity")->capture_default_str();
  sweep->add_option("--nu-max", nu_max, "largest viscosity")->capture_default_str();
  sweep->add_option("--nu-count", nu_count, "number of log-spaced viscosities")->capture_default_str();
  sweep->add_option("--t-end-multiplier", multiplier, "t_end = multiplier * nu^-q_pred")->capture_default_str();
  sweep->add_option("--stop-fraction", stop_fraction, "stop once h <= fraction * h(0)")->capture_default_str();

  auto* verify = app.add_subcommand("verify-bound", "check the decay bound on a trace or a sweep");
  std::string vdir, vtrace;
  double vnu = 0.0, vq = 0.0, vc0 = 0.0, vscale = 1.0, vtol = 5e-2, vp = 1.0, va1 = 1.0, va2 = 1.0;
  bool vexp = false;
  verify->add_option("--dir", vdir, "sweep directory (default --out)");
  verify->add_option("--trace", vtrace, "single trace CSV");
  verify->add_option("--nu", vnu, "viscosity (default: from the trace sidecar)");
  verify->add_option("--q", vq, "exponent q");
  verify->add_option("--c0", vc0, "decay constant c0");
  verify->add_option("--rate-scale", vscale, "extra factor on nu^q (|k|^{1-q} for spiral)")->capture_default_str();
  verify->add_option("--tol", vtol, "relative tolerance")->capture_default_str();
  verify->add_flag("--exp", vexp, "exponential-mixing variant");
  verify->add_option("--p", vp, "mixing rate p (exponential variant)");
  verify->add_option("--a1", va1, "amplitude a1 (exponential variant)");
  verify->add_option("--a2", va2, "rate a2 (exponential variant)");

  auto* report = app.add_subcommand("report", "aggregate a sweep directory into report.json and SVG plots");
  std::string rdir;
  report->add_option("--dir", rdir, "sweep directory (default --out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim) return cmd_simulate(g, sim_flags, nu, t_end, dt, sample_every);
    if (*mix) return cmd_mix_rate(g, mix_flags, t_min, t_max, samples);
    if (*sweep) return cmd_ed_sweep(g, sweep_flags, config, nu_min, nu_max, nu_count, multiplier, stop_fraction);
    if (*verify) return cmd_verify_bound(g, vdir, vtrace, vnu, vq, vc0, vscale, vtol, vexp, vp, va1, va2);
    if (*report) return cmd_report(g, rdir);
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const Unsupported& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
