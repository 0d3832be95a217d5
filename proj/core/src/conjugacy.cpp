#include "unimap/conjugacy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "unimap/preimage_lattice.hpp"

namespace unimap {

namespace {

void require_unit_v(double v) {
  if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("critical point out of range");
}

}  // namespace

ConvergenceReport decode(const UnimodalMap& map, const DigitSequence& digits,
                         double tol, int max_depth) {
  if (digits.bits.empty()) throw std::invalid_argument("decode needs a nonempty digit sequence");
  if (!(tol > 0.0 && tol < 1.0)) throw std::invalid_argument("decode tolerance must lie in (0,1)");
  if (max_depth < 1 || max_depth > kDecodeDepthCap)
    throw std::invalid_argument("decode depth out of range");

  const GDecomposition d = decomposition_from_digits(digits);
  const int m = digits.depth();

  IntervalWalker walker(map);
  ConvergenceReport report;
  double a = d.bits[1];  // a_0 = d_1
  report.partial_sums.push_back(a);

  // Companion signed-sum accumulator, coefficients derived from the digits
  // alone: a_n = rho_1 + sum_{i=2}^{n+1} (-1)^{rho_1+..+rho_{i-1}} rho_i l_{i,k_{i-1}}.
  double series = digits.bits[0];
  int parity = digits.bits[0] & 1;

  int n = 0;
  while (true) {
    if (walker.current().length <= tol) break;  // converged at depth n
    if (n >= max_depth || n + 2 > m) break;     // depth or digits exhausted
    const int d1 = d.bits[n + 1];
    const int d2 = d.bits[n + 2];
    walker.descend(d1);
    const double ell = walker.current().length;  // l_{n+2,k_{n+1}}
    a += (d1 ? -1.0 : 1.0) * rot_bit(d1, d2) * ell;
    series += (parity ? -1.0 : 1.0) * digits.bits[n + 1] * ell;
    parity ^= digits.bits[n + 1];
    if (std::fabs(a - series) > 1e-12)
      throw std::logic_error("decode: recurrence and signed-sum forms disagree");
    report.partial_sums.push_back(a);
    ++n;
  }

  report.value = a;
  report.depth = n;
  report.final_length = walker.current().length;
  report.converged = report.final_length <= tol;
  return report;
}

double skew_decode(double v, const DigitSequence& digits, int depth) {
  require_unit_v(v);
  if (depth < 0) throw std::invalid_argument("skew_decode depth must be >= 0");
  const int n_max = std::min<int>(depth, digits.depth());
  if (n_max < 1) return 0.0;

  double x = digits.bits[0];
  double len = 1.0;  // l at depth n-1, closed form
  int parity = 0;    // of rho_1..rho_{n-1}
  for (int n = 2; n <= n_max; ++n) {
    const int r_prev = digits.bits[n - 2];
    len *= r_prev ? (1.0 - v) : v;
    parity ^= r_prev;
    if (digits.bits[n - 1]) x += (parity ? -1.0 : 1.0) * len;
  }
  return x;
}

double skew_interval_length(double v, const DigitSequence& digits, int n) {
  require_unit_v(v);
  if (n < 0 || n > digits.depth())
    throw std::invalid_argument("skew_interval_length level out of range");
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += digits.bits[i];
  return std::pow(1.0 - v, ones) * std::pow(v, n - ones);
}

EndpointTriple skew_endpoint_series(double v, const DigitSequence& digits, int n) {
  require_unit_v(v);
  if (n < 0 || n > digits.depth())
    throw std::invalid_argument("skew_endpoint_series level out of range");
  EndpointTriple out{0.0, 1.0, v};
  if (n == 0) return out;

  out.left = digits.bits[0] * v;
  out.right = 1.0 - (1 - digits.bits[0]) * (1.0 - v);

  double len = 1.0;  // l at depth i-1
  int s = 0;         // rho_1 + .. + rho_{i-1}
  for (int i = 1; i <= n; ++i) {
    const int r = digits.bits[i - 1];
    if (i >= 2) {
      out.left += ((s + r) & 1) * rot(s, v) * len;
      out.right -= ((1 + s + r) & 1) * rot(1 + s, v) * len;
    }
    s += r;
    len *= r ? (1.0 - v) : v;  // now l at depth i
    out.midpoint += (((1 + s) & 1) ? -1.0 : 1.0) * (1.0 - v) * len;
  }
  return out;
}

double conjugate(const UnimodalMap& source, const UnimodalMap& target, double x,
                 double tol, int depth) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("conjugate argument must lie in [0,1]");
  if (x == 0.0 || x == 1.0) return x;  // shared fixed points of every unimodal map
  const DigitSequence rho = digit_sequence(source, x, depth);
  const ConvergenceReport report = decode(target, rho, tol, depth);
  if (!report.converged) {
    std::ostringstream os;
    os << "conjugate: decode did not converge at x = " << x << " (final interval length "
       << report.final_length << " > tol " << tol << " at depth " << report.depth
       << "); the target map may contract too slowly at this depth";
    throw std::runtime_error(os.str());
  }
  return report.value;
}

std::vector<std::pair<double, double>> conjugate_grid(const UnimodalMap& source,
                                                      const UnimodalMap& target,
                                                      int sample_count, double tol,
                                                      int depth) {
  if (sample_count < 2) throw std::invalid_argument("conjugate_grid needs at least 2 samples");
  std::vector<std::pair<double, double>> table;
  table.reserve(sample_count);
  for (int i = 0; i < sample_count; ++i) {
    const double x = static_cast<double>(i) / (sample_count - 1);
    table.emplace_back(x, conjugate(source, target, x, tol, depth));
    if (i > 0 && !(table[i].second > table[i - 1].second)) {
      std::ostringstream os;
      os << "conjugate_grid: output not strictly increasing at x = " << x;
      throw std::runtime_error(os.str());
    }
  }
  return table;
}

}  // namespace unimap
