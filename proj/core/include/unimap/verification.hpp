#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unimap/unimodal_map.hpp"

namespace unimap {

struct CheckFailure {
  int level = 0;  // lattice depth or sample index
  double input = 0.0;
  double expected = 0.0;
  double got = 0.0;
  std::string what;
};

// Executable statement check: pass iff the largest residual stays at or
// below the check's tolerance and no structural failure was recorded.
struct CheckReport {
  std::string name;
  std::string subject;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::uint64_t seed = 0;
  std::vector<CheckFailure> failures;  // capped at 8 entries
};

/// Endpoint, midpoint and length recurrences of the localization descent,
/// asserted at every level of the path of x. Tolerance 1e-10.
CheckReport check_recurrences(const UnimodalMap& map, double x, int depth);

/// Skew-tent ratio identities on f_v along the path of x: every delta is
/// Rot^{d_n}(v), lengths satisfy the one-step recurrence and the full
/// product formula. Tolerance 1e-12.
CheckReport check_skew_identities(double v, double x, int depth);

/// Reconstruction identity: a_n computed directly from the localization of
/// x equals the signed digit sum, for every n up to the depth. Tolerance 1e-9.
CheckReport check_reconstruction_identity(const UnimodalMap& map, double x, int depth);

/// Closed-form skew-tent interval lengths against localize lengths,
/// n <= min(depth, 40). Tolerance 1e-12.
CheckReport check_skew_length_formula(double v, double x, int depth);

/// Endpoint/midpoint series from the localization data against the directly
/// computed columns; adds the skew-tent closed forms when the map is a
/// (skew) tent. Tolerance 1e-10.
CheckReport check_endpoint_series(const UnimodalMap& map, double x, int depth);

/// Conjugacy checks for the digit-transfer h: functional-equation residual
/// and strict monotonicity over a sample grid, lattice correspondence for
/// n <= 8 via exact lattice addresses, digit transfer at guarded positions,
/// and the arcsin closed form when the pair is logistic -> tent.
CheckReport check_conjugacy(const UnimodalMap& source, const UnimodalMap& target,
                            int samples, int depth);

/// Invariant coordinates of sorted points are non-decreasing, strictly where
/// the truncated codes differ.
CheckReport check_coordinate_monotonicity(const UnimodalMap& map, std::vector<double> xs,
                                          int depth);

struct SuiteConfig {
  int depth = 24;
  int samples = 40;
  std::uint64_t seed = 1729;
  std::string only;  // substring filter on check names
};

/// Runs every check over the built-in map set with seeded sampling; reports
/// are merged per (check, subject) and ordered deterministically.
std::vector<CheckReport> run_verification_suite(const SuiteConfig& config = {});

}  // namespace unimap
