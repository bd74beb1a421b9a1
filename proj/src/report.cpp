#include "mixlab/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>

#include "mixlab/diagnostics.hpp"
#include "mixlab/error.hpp"
#include "mixlab/evolution.hpp"
#include "mixlab/sweep.hpp"

namespace fs = std::filesystem;

namespace mixlab {

std::string exponent_verdict(double q_meas, double q_pred, bool commutes) {
  if (commutes) return std::abs(q_meas - 1.0) <= 0.01 ? "diffusive" : "not diffusive";
  return q_meas <= q_pred + 0.05 ? "within bound" : "exceeds bound";
}

namespace {

std::string group_of(const SweepRow& r) {
  const auto pos = r.key.rfind("-nu");
  return pos == std::string::npos ? r.key : r.key.substr(0, pos);
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

ReportBundle build_report(const std::string& sweep_dir) {
  const fs::path dir(sweep_dir);
  const fs::path csv = dir / "sweep.csv";
  if (!fs::exists(csv)) throw InvalidArgument("no sweep.csv in " + sweep_dir);
  const std::vector<SweepRow> rows = read_sweep_csv(csv.string());
  if (rows.empty()) throw InvalidArgument(csv.string() + " holds no rows");

  nlohmann::json fits_by_prefix = nlohmann::json::object();
  if (fs::exists(dir / "fits.json")) {
    std::ifstream in(dir / "fits.json");
    const auto fits = nlohmann::json::parse(in);
    for (const auto& g : fits.value("groups", nlohmann::json::array())) {
      // Match fit groups to CSV groups through the bound row keys or params.
      for (const auto& b : g.value("bounds", nlohmann::json::array())) {
        const std::string key = b.value("key", "");
        const auto pos = key.rfind("-nu");
        if (pos != std::string::npos) fits_by_prefix[key.substr(0, pos)] = g;
      }
    }
  }

  ReportBundle bundle;
  std::map<std::string, std::vector<const SweepRow*>> groups;
  std::vector<std::string> order;
  nlohmann::json incomplete = nlohmann::json::array();
  for (const auto& r : rows) {
    const std::string g = group_of(r);
    if (!groups.count(g)) order.push_back(g);
    groups[g].push_back(&r);
    if (r.status != "ok") {
      bundle.complete = false;
      incomplete.push_back({{"key", r.key}, {"status", r.status}});
    }
  }

  nlohmann::json experiments = nlohmann::json::array();
  int plot_index = 0;
  for (const auto& g : order) {
    const auto& members = groups[g];
    const SweepRow& first = *members.front();
    // Only commuting (pure-heat) models predict the diffusive exponent 1.
    const bool commutes = first.q_pred == 1.0;
    nlohmann::json e = {{"group", g}, {"model", to_string(first.spec.family)}, {"q_pred", first.q_pred},
                        {"rows", members.size()}};
    std::vector<double> nus, taus;
    for (const auto* r : members)
      if (r->status == "ok") {
        nus.push_back(r->nu);
        taus.push_back(r->tau);
      }
    e["completed_rows"] = nus.size();
    try {
      const RateFit fit = ed_exponent(nus, taus);
      e["q_meas"] = fit.exponent;
      e["ed_fit"] = fit.to_json();
      e["verdict"] = exponent_verdict(fit.exponent, first.q_pred, commutes);
    } catch (const InvalidArgument& err) {
      e["q_meas"] = nullptr;
      e["verdict"] = std::string("no fit: ") + err.what();
    }
    if (fits_by_prefix.contains(g)) {
      const auto& f = fits_by_prefix[g];
      e["bound_check"] = {{"all_pass", f.value("all_bounds_pass", false)},
                          {"rows", f.value("bounds", nlohmann::json::array())},
                          {"a", f.value("a", 0.0)},
                          {"p_fit", f.value("p_fit", 0.0)},
                          {"q", f.value("q_bound", 0.0)},
                          {"c0", f.value("c0", 0.0)}};
      if (!f.value("q_alt", nlohmann::json(nullptr)).is_null()) e["q_alt"] = f["q_alt"];
    }

    if (nus.size() >= 2) {
      std::vector<std::size_t> idx(nus.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return nus[a] < nus[b]; });
      PlotSeries measured{"measured tau", {}, {}, false};
      for (auto i : idx) {
        measured.x.push_back(nus[i]);
        measured.y.push_back(taus[i]);
      }
      // Reference slope nu^{-q_pred} through the geometric centre of the data.
      double lx = 0.0, ly = 0.0;
      for (auto i : idx) {
        lx += std::log(nus[i]);
        ly += std::log(taus[i]);
      }
      lx /= idx.size();
      ly /= idx.size();
      PlotSeries ref{"nu^-q_pred", {}, {}, true};
      for (double x : measured.x) {
        ref.x.push_back(x);
        ref.y.push_back(std::exp(ly - first.q_pred * (std::log(x) - lx)));
      }
      const std::string name = "tau_vs_nu_" + std::to_string(plot_index) + ".svg";
      write_file(dir / name, render_loglog_svg(g + ": tau vs nu", "nu", "tau", {measured, ref}));
      bundle.artifacts.push_back((dir / name).string());
      e["tau_plot"] = name;
    }

    // Decay of hm1 for the extreme viscosities with a trace on disk.
    std::vector<const SweepRow*> with_trace;
    for (const auto* r : members)
      if (r->status == "ok" && fs::exists(r->trace_path(sweep_dir))) with_trace.push_back(r);
    if (!with_trace.empty()) {
      std::sort(with_trace.begin(), with_trace.end(), [](auto a, auto b) { return a->nu < b->nu; });
      std::vector<const SweepRow*> pick{with_trace.front()};
      if (with_trace.size() > 1) pick.push_back(with_trace.back());
      std::vector<PlotSeries> series;
      for (const auto* r : pick) {
        const DecayTrace tr = read_trace(r->trace_path(sweep_dir));
        PlotSeries s{"nu=" + std::to_string(r->nu), {}, {}, series.size() == 1};
        for (std::size_t i = 0; i < tr.size(); ++i) {
          s.x.push_back(tr.times[i]);
          s.y.push_back(tr.hm1_norm[i]);
        }
        series.push_back(std::move(s));
      }
      try {
        const std::string name = "hm1_vs_t_" + std::to_string(plot_index) + ".svg";
        write_file(dir / name, render_loglog_svg(g + ": H^-1 norm", "t", "hm1", series));
        bundle.artifacts.push_back((dir / name).string());
        e["hm1_plot"] = name;
      } catch (const InvalidArgument&) {
      }
    }
    ++plot_index;
    experiments.push_back(e);
  }

  // Wavenumber scaling at fixed nu: tau |k|^{1-q} across k.
  nlohmann::json kscaling = nlohmann::json::array();
  std::map<std::string, std::vector<const SweepRow*>> by_nu;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    std::string base = group_of(r);
    const auto kpos = base.rfind("-k");
    if (kpos != std::string::npos) base = base.substr(0, kpos);
    by_nu[base + "@" + std::to_string(r.nu)].push_back(&r);
  }
  for (const auto& [id, members] : by_nu) {
    if (members.size() < 2) continue;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto* r : members) {
      const double v = r->tau * std::pow(std::abs(static_cast<double>(r->spec.k)), 1.0 - r->q_pred);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      vals.push_back({{"k", r->spec.k}, {"scaled_tau", v}});
    }
    kscaling.push_back({{"id", id}, {"values", vals}, {"spread", hi / lo}});
  }

  bundle.report = {{"sweep_dir", sweep_dir},
                   {"experiments", experiments},
                   {"k_scaling", kscaling},
                   {"incomplete_rows", incomplete},
                   {"complete", bundle.complete},
                   {"artifacts", bundle.artifacts}};
  write_file(dir / "report.json", bundle.report.dump(2) + "\n");
  bundle.artifacts.push_back((dir / "report.json").string());
  return bundle;
}

}  // namespace mixlab
