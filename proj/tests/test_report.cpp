#include <cmath>
#include <filesystem>

#include <doctest.h>

#include "mixlab/error.hpp"
#include "mixlab/report.hpp"
#include "mixlab/sweep.hpp"

using namespace mixlab;
namespace fs = std::filesystem;

TEST_CASE("report on a synthetic sweep") {
  const fs::path dir = fs::temp_directory_path() / "mixlab-report-test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<SweepRow> rows;
  for (int i = 0; i < 8; ++i) {
    SweepRow r;
    r.spec.family = ModelFamily::Spiral;
    r.spec.alpha = 1.0;
    r.nu = std::pow(10.0, -6.0 + 3.0 * i / 7.0);
    r.tau = 3.0 * std::pow(r.nu, -0.6);
    r.q_pred = 0.6;
    r.status = "ok";
    r.key = row_key(r.spec, r.nu);
    rows.push_back(r);
  }
  rows.back().status = "unresolved";
  write_sweep_csv(rows, (dir / "sweep.csv").string());

  const ReportBundle b = build_report(dir.string());
  CHECK_FALSE(b.complete);
  const auto& e = b.report.at("experiments").at(0);
  CHECK(e.at("q_meas").get<double>() == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(e.at("verdict") == "within bound");
  CHECK(e.at("completed_rows") == 7);
  CHECK(b.report.at("incomplete_rows").size() == 1);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "tau_vs_nu_0.svg"));
}

TEST_CASE("report needs sweep results") {
  const fs::path dir = fs::temp_directory_path() / "mixlab-report-empty";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CHECK_THROWS_AS(build_report(dir.string()), InvalidArgument);
}

TEST_CASE("exponent verdicts") {
  CHECK(exponent_verdict(0.62, 0.6, false) == "within bound");
  CHECK(exponent_verdict(0.7, 0.6, false) == "exceeds bound");
  CHECK(exponent_verdict(1.005, 1.0, true) == "diffusive");
  CHECK(exponent_verdict(0.9, 1.0, true) == "not diffusive");
}

TEST_CASE("svg plots") {
  const std::string svg = render_loglog_svg("t <&> ", "x", "y", {{"a", {1, 10, 100}, {1, 0.1, 0.01}, false}});
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("t &lt;&amp;&gt;") != std::string::npos);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK_THROWS_AS(render_loglog_svg("t", "x", "y", {}), InvalidArgument);
}
