#include "mixlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mixlab/error.hpp"

namespace mixlab {

namespace {

constexpr long kMaxIntervals = 10000;
constexpr double kUnitarityTolerance = 1e-10;

bool finite(const CVector& c) {
  for (Eigen::Index i = 0; i < c.size(); ++i)
    if (!std::isfinite(c(i).real()) || !std::isfinite(c(i).imag())) return false;
  return true;
}

void advect_checked(Stepper& stepper, CVector& c, double dt) {
  const double defect = stepper.advection(c);
  if (!(defect <= kUnitarityTolerance)) {
    std::ostringstream os;
    os << "advection substep changed the H norm by " << defect << " (tolerance "
       << kUnitarityTolerance << "); time step " << dt << " is too large";
    throw NumericalError(os.str());
  }
}

}  // namespace

std::string trace_sidecar_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind(".csv");
  if (dot != std::string::npos && dot + 4 == csv_path.size()) return csv_path.substr(0, dot) + ".json";
  return csv_path + ".json";
}

void DecayTrace::push(double t, double h, double h1, double hm1) {
  times.push_back(t);
  h_norm.push_back(h);
  h1_norm.push_back(h1);
  hm1_norm.push_back(hm1);
}

double default_dt(const ModelProblem& model, double t_end) {
  if (model.commutes() && t_end > 0.0) return t_end / static_cast<double>(kMaxIntervals);
  const double sym = model.max_advection_symbol();
  return sym > 0.0 ? std::min(0.01, 0.1 / sym) : 0.01;
}

Field step_viscous(const ModelProblem& model, const Field& f, double nu, double dt) {
  model.check(f);
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  if (!(nu >= 0.0)) throw InvalidArgument("viscosity must be nonnegative");
  auto stepper = model.make_stepper(nu, dt);
  Field out = f;
  stepper->half_diffusion(out.coefficients);
  advect_checked(*stepper, out.coefficients, dt);
  stepper->half_diffusion(out.coefficients);
  return out;
}

EvolveResult evolve(const ModelProblem& model, const Field& f_in, const EvolveParams& params) {
  model.check(f_in);
  if (!(params.nu >= 0.0)) throw InvalidArgument("viscosity must be nonnegative");
  if (!(params.t_end >= 0.0)) throw InvalidArgument("t_end must be nonnegative");
  if (params.dt < 0.0) throw InvalidArgument("time step must be positive");
  if (!finite(f_in.coefficients)) throw NumericalError("initial datum contains NaN or infinity");

  EvolveResult res;
  DecayTrace& tr = res.trace;
  tr.nu = params.nu;
  tr.model = model.descriptor();
  tr.t_horizon = params.t_end;

  CVector c = f_in.coefficients;
  auto sample = [&](double t) {
    if (!finite(c)) {
      std::ostringstream os;
      os << "solution became non-finite at t = " << t;
      throw NumericalError(os.str());
    }
    tr.push(t, model.norm(c, 0.0), model.norm(c, 1.0), model.norm(c, -1.0));
    tr.max_top_fraction = std::max(tr.max_top_fraction, model.top_degree_fraction(c));
  };

  sample(0.0);
  if (params.t_end == 0.0) {
    tr.dt = params.dt;
    res.final_field = f_in;
    return res;
  }

  double dt = params.dt > 0.0 ? params.dt : default_dt(model, params.t_end);
  const long n = std::max<long>(1, static_cast<long>(std::ceil(params.t_end / dt - 1e-9)));
  dt = params.t_end / static_cast<double>(n);
  tr.dt = dt;

  long stride = 1;
  if (!params.adaptive_sampling)
    stride = params.sample_every > 0 ? params.sample_every : (n + kMaxIntervals - 1) / kMaxIntervals;

  auto stepper = model.make_stepper(params.nu, dt);
  const double h0 = tr.h_norm.front();
  long done = 0;
  while (done < n) {
    const long chunk = std::min(stride, n - done);
    // Consecutive half diffusions inside a chunk merge into full steps.
    stepper->half_diffusion(c);
    for (long i = 0; i < chunk; ++i) {
      advect_checked(*stepper, c, dt);
      if (i + 1 < chunk) stepper->full_diffusion(c);
    }
    stepper->half_diffusion(c);
    done += chunk;
    sample(done == n ? params.t_end : static_cast<double>(done) * dt);

    if (params.stop_fraction > 0.0 && tr.h_norm.back() <= params.stop_fraction * h0 && done < n) {
      tr.stopped_early = true;
      break;
    }
    if (params.adaptive_sampling && static_cast<long>(tr.size()) == kMaxIntervals + 1) {
      DecayTrace thin = tr;
      thin.times.clear();
      thin.h_norm.clear();
      thin.h1_norm.clear();
      thin.hm1_norm.clear();
      for (std::size_t i = 0; i < tr.size(); i += 2)
        thin.push(tr.times[i], tr.h_norm[i], tr.h1_norm[i], tr.hm1_norm[i]);
      tr = std::move(thin);
      stride *= 2;
    }
  }
  res.final_field = Field(std::move(c), f_in.basis, f_in.real_representation);
  return res;
}

DecayTrace inviscid_trace(const ModelProblem& model, const Field& f_in,
                          const std::vector<double>& times, double dt) {
  model.check(f_in);
  DecayTrace tr;
  tr.nu = 0.0;
  tr.model = model.descriptor();
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0))
    throw InvalidArgument("inviscid trace times must be sorted and nonnegative");
  tr.t_horizon = times.empty() ? 0.0 : times.back();
  if (model.has_exact_inviscid()) {
    tr.scheme = "exact-phase";
    for (double t : times) {
      const CVector c = t == 0.0 ? f_in.coefficients : model.exact_inviscid(f_in.coefficients, t);
      tr.push(t, model.norm(c, 0.0), model.norm(c, 1.0), model.norm(c, -1.0));
    }
    return tr;
  }
  const double base_dt = dt > 0.0 ? dt : default_dt(model, 0.0);
  tr.dt = base_dt;
  CVector c = f_in.coefficients;
  double t_cur = 0.0;
  for (double t : times) {
    if (t > t_cur) {
      const long n = std::max<long>(1, static_cast<long>(std::ceil((t - t_cur) / base_dt - 1e-9)));
      const double h = (t - t_cur) / static_cast<double>(n);
      auto stepper = model.make_stepper(0.0, h);
      for (long i = 0; i < n; ++i) advect_checked(*stepper, c, h);
      t_cur = t;
    }
    if (!finite(c)) throw NumericalError("inviscid solution became non-finite");
    tr.push(t, model.norm(c, 0.0), model.norm(c, 1.0), model.norm(c, -1.0));
  }
  return tr;
}

double energy_residual(const DecayTrace& trace) {
  if (trace.size() < 3) throw InvalidArgument("energy residual needs at least 3 samples");
  const double h0sq = trace.h_norm.front() * trace.h_norm.front();
  if (!(h0sq > 0.0)) throw InvalidArgument("energy residual needs a nonzero initial norm");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
    const double dt = trace.times[i + 1] - trace.times[i - 1];
    const double dh2 = trace.h_norm[i + 1] * trace.h_norm[i + 1] - trace.h_norm[i - 1] * trace.h_norm[i - 1];
    const double r = dh2 / dt + 2.0 * trace.nu * trace.h1_norm[i] * trace.h1_norm[i];
    worst = std::max(worst, std::abs(r) / h0sq);
  }
  return worst;
}

std::vector<double> log_times(double t_min, double t_max, int count) {
  if (!(t_min > 0.0 && t_max > t_min) || count < 2) throw InvalidArgument("bad log-time range");
  std::vector<double> out(static_cast<std::size_t>(count));
  const double a = std::log(t_min), b = std::log(t_max);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  out.front() = t_min;
  out.back() = t_max;
  return out;
}

void write_trace_csv(const DecayTrace& trace, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw Error("cannot write " + path);
  std::fprintf(f, "t,h,h1,hm1\n");
  for (std::size_t i = 0; i < trace.size(); ++i)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", trace.times[i], trace.h_norm[i], trace.h1_norm[i],
                 trace.hm1_norm[i]);
  std::fclose(f);
}

void write_trace_json(const DecayTrace& trace, const std::string& path) {
  nlohmann::json j = {{"model", trace.model},       {"nu", trace.nu},
                      {"dt", trace.dt},             {"scheme", trace.scheme},
                      {"t_horizon", trace.t_horizon}, {"stopped_early", trace.stopped_early},
                      {"samples", trace.size()},    {"max_top_degree_fraction", trace.max_top_fraction}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

DecayTrace read_trace(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw InvalidArgument("cannot open trace " + csv_path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,h,h1,hm1", 0) != 0)
    throw InvalidArgument("trace " + csv_path + " lacks the t,h,h1,hm1 header");
  DecayTrace tr;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double v[4];
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3]) != 4)
      throw InvalidArgument("malformed row in trace " + csv_path + ": " + line);
    tr.push(v[0], v[1], v[2], v[3]);
  }
  tr.t_horizon = tr.times.empty() ? 0.0 : tr.times.back();
  std::ifstream side(trace_sidecar_path(csv_path));
  if (side) {
    const auto j = nlohmann::json::parse(side);
    tr.model = j.value("model", nlohmann::json::object());
    tr.nu = j.value("nu", 0.0);
    tr.dt = j.value("dt", 0.0);
    tr.scheme = j.value("scheme", std::string("strang"));
    tr.t_horizon = j.value("t_horizon", tr.t_horizon);
    tr.stopped_early = j.value("stopped_early", false);
    tr.max_top_fraction = j.value("max_top_degree_fraction", 0.0);
  }
  return tr;
}

}  // namespace mixlab
