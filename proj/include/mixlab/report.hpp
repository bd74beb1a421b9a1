#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mixlab {

/// One polyline on a log-log plot.
struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
  bool dashed = false;
};

/// Static SVG line plot with logarithmic axes; at most two series.
std::string render_loglog_svg(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<PlotSeries>& series);

struct ReportBundle {
  nlohmann::json report;
  std::vector<std::string> artifacts;
  bool complete = true;  // false when some rows are not ok
};

/// Aggregates a sweep directory (sweep.csv, fits.json, traces/) into
/// report.json and SVG plots. Throws InvalidArgument when the directory holds
/// no sweep results.
ReportBundle build_report(const std::string& sweep_dir);

/// Verdict for a measured exponent against a predicted upper bound.
std::string exponent_verdict(double q_meas, double q_pred, bool commutes);

}  // namespace mixlab
