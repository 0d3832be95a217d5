#pragma once

#include <string>
#include <utility>
#include <vector>

#include "unimap/codings.hpp"
#include "unimap/unimodal_map.hpp"

namespace unimap {

// Partial reconstructions a_n of a point from its digit sequence, walking
// the localization tree of the target map. Convergence is declared by the
// final interval length, which bounds the true error because the target
// point and every a_n share the interval.
struct ConvergenceReport {
  std::vector<double> partial_sums;  // a_0..a_N
  double final_length = 1.0;         // length of the depth-N interval
  double value = 0.0;                // a_N
  bool converged = false;
  int depth = 0;                     // N
};

inline constexpr double kDefaultTol = 1e-8;
inline constexpr int kDefaultDepth = 48;
inline constexpr int kDecodeDepthCap = 128;

/// Reconstructs the point with the given digit sequence on `map`. Stops when
/// the interval length drops to `tol`, or when digits or `max_depth` run
/// out; converged = false then signals that the map may not contract fast
/// enough at the reachable depth.
ConvergenceReport decode(const UnimodalMap& map, const DigitSequence& digits,
                         double tol = kDefaultTol, int max_depth = kDefaultDepth);

/// Closed-form reconstruction on the skew tent f_v:
/// x = rho_1 + sum_{n>=2} rho_n v^{n-1} ((v-1)/v)^{rho_1+...+rho_{n-1}},
/// truncated after the depth-N term. Powers are evaluated with separate
/// magnitude and sign tracking.
double skew_decode(double v, const DigitSequence& digits, int depth);

/// l_{n+1,k_n} = (1-v)^{rho_1+...+rho_n} * v^{n - (rho_1+...+rho_n)}.
double skew_interval_length(double v, const DigitSequence& digits, int n);

struct EndpointTriple {
  double left = 0.0;
  double right = 1.0;
  double midpoint = 0.5;
};

/// Truncated explicit series for the localization endpoints and midpoint of
/// a point of f_v with the given digits.
EndpointTriple skew_endpoint_series(double v, const DigitSequence& digits, int n);

/// h(x) = decode(target, digit_sequence(source, x)): the digit-transfer
/// conjugacy. Fixed points 0 and 1 map exactly. Throws std::runtime_error
/// when decode fails to converge on the target at the reachable depth.
double conjugate(const UnimodalMap& source, const UnimodalMap& target, double x,
                 double tol = kDefaultTol, int depth = kDefaultDepth);

/// h sampled on a uniform grid; the output column is checked strictly
/// increasing. Any decode failure aborts with the offending x.
std::vector<std::pair<double, double>> conjugate_grid(const UnimodalMap& source,
                                                      const UnimodalMap& target,
                                                      int sample_count,
                                                      double tol = kDefaultTol,
                                                      int depth = kDefaultDepth);

}  // namespace unimap
