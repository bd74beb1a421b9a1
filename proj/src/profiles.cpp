#include "mixlab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mixlab/error.hpp"

namespace mixlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSamples = 4096;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

}  // namespace

ShearProfile ShearProfile::named(const std::string& name) {
  ShearProfile p;
  p.name_ = name;
  if (name == "sin") {
    p.a_ = {0.0};
    p.b_ = {1.0};
  } else if (name == "sin2") {
    p.a_ = {0.0, 0.0};
    p.b_ = {1.0, 1.0};
  } else if (name == "const") {
    p.a0_ = 1.0;
    p.constant_ = true;
    p.default_n0_ = 0;
  } else {
    throw InvalidArgument("unknown shear profile '" + name + "' (expected sin, sin2, const or csv:<path>)");
  }
  return p;
}

ShearProfile ShearProfile::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open profile file " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("profile file " + path + " is empty");
  const auto header = split_csv(line);
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InvalidArgument("profile file " + path + " lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t iy = col("y"), iu = col("u");
  std::vector<double> ys, us;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (cells.size() <= std::max(iy, iu)) throw InvalidArgument("short row in profile file " + path);
    ys.push_back(std::stod(cells[iy]));
    us.push_back(std::stod(cells[iu]));
  }
  if (ys.size() < 3) throw InvalidArgument("profile file " + path + " needs at least 3 samples");
  const double dy = ys[1] - ys[0];
  if (!(dy > 0.0)) throw InvalidArgument("profile samples must increase in y");
  for (std::size_t j = 1; j < ys.size(); ++j)
    if (std::abs(ys[j] - ys[0] - j * dy) > 1e-6 * kTwoPi)
      throw InvalidArgument("profile samples must be uniformly spaced");
  // Drop a duplicated endpoint at y0 + 2 pi.
  if (std::abs(ys.back() - ys.front() - kTwoPi) < 1e-6 * kTwoPi) {
    ys.pop_back();
    us.pop_back();
  }
  const std::size_t n = ys.size();
  if (std::abs(n * dy - kTwoPi) > 1e-6 * kTwoPi)
    throw InvalidArgument("profile samples must cover exactly one period [0, 2 pi)");

  ShearProfile p;
  p.name_ = "csv:" + path;
  const std::size_t harmonics = n / 2;
  p.a_.assign(harmonics, 0.0);
  p.b_.assign(harmonics, 0.0);
  // Samples sit on the ideal grid; this ignores rounding in the tabulated y.
  std::vector<double> grid(n);
  for (std::size_t j = 0; j < n; ++j) grid[j] = ys[0] + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) p.a0_ += us[j] / n;
  for (std::size_t h = 1; h <= harmonics; ++h) {
    const bool nyquist = (n % 2 == 0 && h == harmonics);
    const double scale = nyquist ? 1.0 / n : 2.0 / n;
    double a = 0.0, b = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      a += us[j] * std::cos(h * grid[j]);
      b += us[j] * std::sin(h * grid[j]);
    }
    p.a_[h - 1] = scale * a;
    p.b_[h - 1] = nyquist ? 0.0 : scale * b;
  }
  double spread = 0.0;
  for (std::size_t h = 0; h < harmonics; ++h) spread += std::abs(p.a_[h]) + std::abs(p.b_[h]);
  p.constant_ = spread < 1e-14 * (1.0 + std::abs(p.a0_));
  p.default_n0_ = p.constant_ ? 0 : 1;
  return p;
}

ShearProfile ShearProfile::parse(const std::string& spec) {
  if (spec.rfind("csv:", 0) == 0) return from_csv(spec.substr(4));
  return named(spec);
}

double ShearProfile::value(double y) const {
  double u = a0_;
  for (std::size_t h = 0; h < a_.size(); ++h) {
    const double n = static_cast<double>(h + 1);
    u += a_[h] * std::cos(n * y) + b_[h] * std::sin(n * y);
  }
  return u;
}

double ShearProfile::derivative(double y) const {
  double du = 0.0;
  for (std::size_t h = 0; h < a_.size(); ++h) {
    const double n = static_cast<double>(h + 1);
    du += n * (-a_[h] * std::sin(n * y) + b_[h] * std::cos(n * y));
  }
  return du;
}

double ShearProfile::max_slope() const {
  double m = 0.0;
  for (int j = 0; j < kSamples; ++j) m = std::max(m, std::abs(derivative(kTwoPi * j / kSamples)));
  return m;
}

double ShearProfile::max_abs() const {
  double m = 0.0;
  for (int j = 0; j < kSamples; ++j) m = std::max(m, std::abs(value(kTwoPi * j / kSamples)));
  return m;
}

double ShearProfile::first_critical_point() const {
  if (constant_) return std::numbers::pi;
  double prev = derivative(0.0);
  if (prev == 0.0) return 0.0;
  for (int j = 1; j <= kSamples; ++j) {
    const double y = kTwoPi * j / kSamples;
    const double cur = derivative(y);
    if (cur == 0.0) return y;
    if ((cur < 0.0) != (prev < 0.0)) {
      double lo = kTwoPi * (j - 1) / kSamples, hi = y;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((derivative(mid) < 0.0) == (prev < 0.0)) lo = mid; else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev = cur;
  }
  throw InvalidArgument("profile " + name_ + " has no critical point");
}

}  // namespace mixlab
