#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace unimap {

enum class MapKind { Tent, SkewTent, Logistic, PiecewiseLinear, Generic };
enum class Side { Left, Right };

std::string to_string(MapKind kind);

// Numeric policy shared across the library. All arithmetic is binary64;
// iteration amplifies rounding by the product of branch slopes, so depths
// past ~48 lose significance for slope-2 maps.
namespace num {
inline constexpr double kEndpointTol = 1e-12;  // g(0)=g(1)=0, g(v)=1, continuity at v
inline constexpr double kTieTol = 1e-12;       // equality against v and lattice midpoints
inline constexpr double kBisectTol = 1e-13;    // bracket width for bisection solves
inline constexpr int kBisectMaxIter = 200;
inline constexpr int kLatticeCap = 20;         // full level n holds 2^{n-1}+1 points
inline constexpr int kDepthCeiling = 64;
inline constexpr int kDepthWarn = 48;
inline constexpr int kMonotoneSamples = 1024;  // per-branch validation grid
}  // namespace num

struct ValidationCheck {
  std::string name;
  double residual = 0.0;
  bool pass = true;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool pass = true;

  std::string first_failure() const;
};

/// Wire-format map description: {kind, v?, breakpoints?}.
struct MapSpec {
  std::string kind;
  std::optional<double> v;
  std::vector<std::pair<double, double>> breakpoints;
};

// Continuous self-map of [0,1] with a single interior maximum: an increasing
// branch on [0,v] and a decreasing branch on [v,1], with g(0)=g(1)=0 and
// g(v)=1. Values are immutable after construction and every operation is a
// pure function, so instances can be shared freely across threads.
class UnimodalMap {
 public:
  using RealFn = std::function<double(double)>;
  /// Evaluates a branch-inverse chain applied to the critical point:
  /// digits[0] is the outermost branch choice (0 left, 1 right).
  using ChainFn = std::function<double(const std::vector<std::uint8_t>&)>;

  static UnimodalMap tent();
  static UnimodalMap skew_tent(double v);
  static UnimodalMap logistic();
  static UnimodalMap piecewise_linear(std::vector<std::pair<double, double>> breakpoints);
  /// Arbitrary callables plus a critical point. Branches are trusted
  /// monotone after sampled validation; inverses fall back to bisection.
  static UnimodalMap generic(double v, RealFn left, RealFn right);

  MapKind kind() const noexcept { return kind_; }
  double critical_point() const noexcept { return v_; }
  bool has_analytic_inverses() const noexcept { return static_cast<bool>(left_inv_); }
  const std::string& describe() const noexcept { return description_; }

  /// g(t). t == v routes to the left branch; the result is clamped to [0,1]
  /// only to absorb final-ulp rounding. Throws std::domain_error off [0,1].
  double evaluate(double t) const;
  double operator()(double t) const { return evaluate(t); }

  /// g^n(t) by n-fold composition; n = 0 is the identity.
  double iterate(double t, int n) const;

  /// The unique x on the chosen branch with g(x) = y. Uses the analytic
  /// inverse when attached, otherwise bisection to 1e-13.
  double invert_branch(Side side, double y) const;
  double invert_left(double y) const { return invert_branch(Side::Left, y); }
  double invert_right(double y) const { return invert_branch(Side::Right, y); }

  /// The n-fold branch-inverse pullback of the critical point along the
  /// given branch choices, outermost first. Maps may attach a specialized
  /// evaluator when the plain composition loses precision (the logistic
  /// chain transits points exponentially close to 1, which binary64 cannot
  /// hold; its evaluator works in half-angle coordinates instead).
  double pullback_critical(const std::vector<std::uint8_t>& branch_digits) const;

  /// Re-runs the construction-time checks; failures are report entries,
  /// never exceptions.
  ValidationReport validate() const;

 private:
  UnimodalMap(MapKind kind, double v, RealFn left, RealFn right,
              RealFn left_inv, RealFn right_inv, std::string description,
              ChainFn chain = {});

  MapKind kind_ = MapKind::Generic;
  double v_ = 0.5;
  RealFn left_, right_;
  RealFn left_inv_, right_inv_;  // empty when only bisection is available
  ChainFn chain_;                // empty: plain composition of branch inverses
  std::string description_;
};

/// Runs the unimodal-map invariant checks on a candidate profile without
/// constructing a map: endpoint conditions, continuity at v, and sampled
/// branch monotonicity.
ValidationReport validate_profile(double v, const UnimodalMap::RealFn& left,
                                  const UnimodalMap::RealFn& right);

/// Builds a validated map from a specification record. Throws
/// std::invalid_argument naming the failing invariant.
UnimodalMap make_map(const MapSpec& spec);

}  // namespace unimap
