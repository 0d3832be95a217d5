#include "unimap/unimodal_map.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace unimap {

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Tent: return "tent";
    case MapKind::SkewTent: return "skew_tent";
    case MapKind::Logistic: return "logistic";
    case MapKind::PiecewiseLinear: return "piecewise_linear";
    case MapKind::Generic: return "generic";
  }
  return "unknown";
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass) return c.name;
  return {};
}

namespace {

double clamp01(double t) { return std::min(1.0, std::max(0.0, t)); }

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << what << " must lie in [0,1], got " << t;
    throw std::domain_error(os.str());
  }
}

}  // namespace

UnimodalMap::UnimodalMap(MapKind kind, double v, RealFn left, RealFn right,
                         RealFn left_inv, RealFn right_inv, std::string description,
                         ChainFn chain)
    : kind_(kind),
      v_(v),
      left_(std::move(left)),
      right_(std::move(right)),
      left_inv_(std::move(left_inv)),
      right_inv_(std::move(right_inv)),
      chain_(std::move(chain)),
      description_(std::move(description)) {}

UnimodalMap UnimodalMap::tent() {
  return UnimodalMap(
      MapKind::Tent, 0.5,
      [](double t) { return 2.0 * t; },
      [](double t) { return 2.0 * (1.0 - t); },
      [](double y) { return 0.5 * y; },
      [](double y) { return 1.0 - 0.5 * y; },
      "tent");
}

UnimodalMap UnimodalMap::skew_tent(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("critical point out of range");
  std::ostringstream os;
  os << "skew_tent(v=" << v << ")";
  return UnimodalMap(
      MapKind::SkewTent, v,
      [v](double t) { return t / v; },
      [v](double t) { return (1.0 - t) / (1.0 - v); },
      [v](double y) { return v * y; },
      [v](double y) { return 1.0 - (1.0 - v) * y; },
      os.str());
}

UnimodalMap UnimodalMap::logistic() {
  // Pullback chains run in half-angle coordinates y = sin^2(pi*theta/2),
  // where both branch inverses are affine (theta/2 and 1 - theta/2). The
  // plain composition visits points exponentially close to 1, which
  // binary64 quantizes away after ~26 levels.
  auto chain = [](const std::vector<std::uint8_t>& digits) {
    double theta = 0.5;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
      theta = *it ? 1.0 - 0.5 * theta : 0.5 * theta;
    const double s = std::sin(1.57079632679489661923 * theta);
    return s * s;
  };
  return UnimodalMap(
      MapKind::Logistic, 0.5,
      [](double t) { return 4.0 * t * (1.0 - t); },
      [](double t) { return 4.0 * t * (1.0 - t); },
      // rationalized form of (1 - sqrt(1-y))/2: no cancellation near y = 0
      [](double y) { return 0.5 * y / (1.0 + std::sqrt(1.0 - y)); },
      [](double y) { return 0.5 * (1.0 + std::sqrt(1.0 - y)); },
      "logistic", std::move(chain));
}

UnimodalMap UnimodalMap::piecewise_linear(std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.size() < 3)
    throw std::invalid_argument("piecewise_linear needs at least 3 breakpoints");
  if (breakpoints.front() != std::pair<double, double>(0.0, 0.0))
    throw std::invalid_argument("piecewise_linear must start at (0,0)");
  if (breakpoints.back() != std::pair<double, double>(1.0, 0.0))
    throw std::invalid_argument("piecewise_linear must end at (1,0)");

  std::size_t peak = 0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i].first <= breakpoints[i - 1].first)
      throw std::invalid_argument("piecewise_linear breakpoints must have increasing x");
    if (breakpoints[i].second == 1.0) peak = i;
  }
  if (peak == 0 || peak + 1 == breakpoints.size())
    throw std::invalid_argument("piecewise_linear needs an interior breakpoint with value 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const bool rising = i <= peak;
    const double dy = breakpoints[i].second - breakpoints[i - 1].second;
    if (rising ? dy <= 0.0 : dy >= 0.0)
      throw std::invalid_argument("piecewise_linear profile must increase to the peak, then decrease");
  }

  const double v = breakpoints[peak].first;
  auto pts = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(breakpoints));

  auto interp = [pts](double t) {
    const auto& p = *pts;
    std::size_t i = 1;
    while (i + 1 < p.size() && t > p[i].first) ++i;
    const double x0 = p[i - 1].first, y0 = p[i - 1].second;
    const double x1 = p[i].first, y1 = p[i].second;
    return y0 + (y1 - y0) * (t - x0) / (x1 - x0);
  };
  // Branch inverses by segment search t; left half has increasing y, right
  // half decreasing, so each y hits exactly one segment per side.
  auto inv_left = [pts, peak](double y) {
    const auto& p = *pts;
    std::size_t i = 1;
    while (i < peak && y > p[i].second) ++i;
    const double x0 = p[i - 1].first, y0 = p[i - 1].second;
    const double x1 = p[i].first, y1 = p[i].second;
    return x0 + (x1 - x0) * (y - y0) / (y1 - y0);
  };
  auto inv_right = [pts, peak](double y) {
    const auto& p = *pts;
    std::size_t i = peak + 1;
    while (i + 1 < p.size() && y < p[i].second) ++i;
    const double x0 = p[i - 1].first, y0 = p[i - 1].second;
    const double x1 = p[i].first, y1 = p[i].second;
    return x0 + (x1 - x0) * (y - y0) / (y1 - y0);
  };

  std::ostringstream os;
  os << "piecewise_linear(" << pts->size() << " breakpoints, v=" << v << ")";
  UnimodalMap map(MapKind::PiecewiseLinear, v, interp, interp, inv_left, inv_right, os.str());
  auto report = map.validate();
  if (!report.pass)
    throw std::invalid_argument("piecewise_linear profile rejected: " + report.first_failure());
  return map;
}

UnimodalMap UnimodalMap::generic(double v, RealFn left, RealFn right) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("critical point out of range");
  auto report = validate_profile(v, left, right);
  if (!report.pass)
    throw std::invalid_argument("generic profile rejected: " + report.first_failure());
  std::ostringstream os;
  os << "generic(v=" << v << ")";
  return UnimodalMap(MapKind::Generic, v, std::move(left), std::move(right),
                     RealFn(), RealFn(), os.str());
}

double UnimodalMap::evaluate(double t) const {
  require_unit_interval(t, "map argument");
  const double y = t <= v_ ? left_(t) : right_(t);
  return clamp01(y);
}

double UnimodalMap::iterate(double t, int n) const {
  if (n < 0) throw std::invalid_argument("iterate count must be >= 0");
  require_unit_interval(t, "map argument");
  for (int i = 0; i < n; ++i) t = evaluate(t);
  return t;
}

double UnimodalMap::invert_branch(Side side, double y) const {
  require_unit_interval(y, "branch inverse argument");
  if (side == Side::Left && left_inv_) return clamp01(std::min(left_inv_(y), v_));
  if (side == Side::Right && right_inv_) return clamp01(std::max(right_inv_(y), v_));

  // Bisection on the monotone branch. Left is increasing on [0,v], right
  // decreasing on [v,1]; both are onto [0,1] by the map invariants.
  const bool left = side == Side::Left;
  double lo = left ? 0.0 : v_;
  double hi = left ? v_ : 1.0;
  const auto& branch = left ? left_ : right_;
  for (int i = 0; i < num::kBisectMaxIter && hi - lo > num::kBisectTol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const bool go_right = left ? branch(mid) < y : branch(mid) > y;
    (go_right ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double UnimodalMap::pullback_critical(const std::vector<std::uint8_t>& branch_digits) const {
  if (chain_) return chain_(branch_digits);
  double y = v_;
  for (auto it = branch_digits.rbegin(); it != branch_digits.rend(); ++it)
    y = *it ? invert_right(y) : invert_left(y);
  return y;
}

ValidationReport UnimodalMap::validate() const {
  return validate_profile(v_, left_, right_);
}

ValidationReport validate_profile(double v, const UnimodalMap::RealFn& left,
                                  const UnimodalMap::RealFn& right) {
  ValidationReport report;
  auto add = [&report](std::string name, double residual, bool pass) {
    report.checks.push_back({std::move(name), residual, pass});
    report.pass = report.pass && pass;
  };

  if (!(v > 0.0 && v < 1.0)) {
    add("critical point in (0,1)", 0.0, false);
    return report;
  }
  add("critical point in (0,1)", 0.0, true);

  const double g0 = left(0.0);
  const double g1 = right(1.0);
  const double gv_l = left(v);
  const double gv_r = right(v);
  add("g(0) = 0", std::fabs(g0), std::fabs(g0) <= num::kEndpointTol);
  add("g(1) = 0", std::fabs(g1), std::fabs(g1) <= num::kEndpointTol);
  add("g(v) = 1", std::fabs(gv_l - 1.0), std::fabs(gv_l - 1.0) <= num::kEndpointTol);
  add("continuity at v", std::fabs(gv_l - gv_r), std::fabs(gv_l - gv_r) <= num::kEndpointTol);

  bool increasing = true, decreasing = true;
  double prev_l = left(0.0), prev_r = right(v);
  for (int i = 1; i < num::kMonotoneSamples; ++i) {
    const double s = static_cast<double>(i) / (num::kMonotoneSamples - 1);
    const double tl = v * s;
    const double tr = v + (1.0 - v) * s;
    const double yl = left(tl), yr = right(tr);
    increasing = increasing && yl > prev_l;
    decreasing = decreasing && yr < prev_r;
    prev_l = yl;
    prev_r = yr;
  }
  add("left branch strictly increasing", 0.0, increasing);
  add("right branch strictly decreasing", 0.0, decreasing);
  return report;
}

UnimodalMap make_map(const MapSpec& spec) {
  if (spec.kind == "tent") return UnimodalMap::tent();
  if (spec.kind == "logistic") return UnimodalMap::logistic();
  if (spec.kind == "skew_tent") {
    if (!spec.v) throw std::invalid_argument("skew_tent requires a critical point v");
    return UnimodalMap::skew_tent(*spec.v);
  }
  if (spec.kind == "piecewise_linear") {
    if (spec.breakpoints.empty())
      throw std::invalid_argument("piecewise_linear requires breakpoints");
    return UnimodalMap::piecewise_linear(spec.breakpoints);
  }
  throw std::invalid_argument("unknown map kind: " + spec.kind);
}

}  // namespace unimap
