#include "unimap/preimage_lattice.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace unimap {

namespace {

// Branch choices along the pullback chain of an interval with the given
// index bits: rho_i = d_{i-1} xor d_i.
std::vector<std::uint8_t> branch_digits_from_index(int depth, std::uint64_t index) {
  std::vector<std::uint8_t> rho(depth);
  std::uint8_t prev = 0;
  for (int i = 1; i <= depth; ++i) {
    const std::uint8_t di = static_cast<std::uint8_t>((index >> (depth - i)) & 1u);
    rho[i - 1] = prev ^ di;
    prev = di;
  }
  return rho;
}

double pullback_midpoint(const UnimodalMap& map, const std::vector<std::uint8_t>& branch_digits) {
  double y = map.critical_point();
  for (auto it = branch_digits.rbegin(); it != branch_digits.rend(); ++it)
    y = *it ? map.invert_right(y) : map.invert_left(y);
  return y;
}

double bisect_midpoint(const UnimodalMap& map, int depth, std::uint64_t index,
                       double lo, double hi) {
  if (depth == 0) return map.critical_point();
  const double v = map.critical_point();
  const bool increasing = (index & 1u) == 0;

  // Sign test: the monotone image of the quarter points must be ordered the
  // way the index parity predicts, otherwise rounding has swamped g^n here.
  const double len = hi - lo;
  const double q1 = map.iterate(lo + 0.25 * len, depth);
  const double q3 = map.iterate(lo + 0.75 * len, depth);
  if (!std::isfinite(q1) || !std::isfinite(q3) || q1 == q3 || ((q3 > q1) != increasing)) {
    std::ostringstream os;
    os << "refine_midpoint: sign test degenerate on [" << lo << ", " << hi
       << "] at depth " << depth;
    throw std::runtime_error(os.str());
  }

  double a = lo, b = hi;
  for (int i = 0; i < num::kBisectMaxIter && b - a > num::kBisectTol; ++i) {
    const double mid = 0.5 * (a + b);
    const bool go_right = increasing ? map.iterate(mid, depth) < v : map.iterate(mid, depth) > v;
    (go_right ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

PreimageLevel preimage_level(const UnimodalMap& map, int n) {
  if (n < 1) throw std::invalid_argument("preimage level must be >= 1");
  if (n > num::kLatticeCap) {
    std::ostringstream os;
    os << "preimage level cap exceeded (n = " << n << ", cap " << num::kLatticeCap << ")";
    throw std::invalid_argument(os.str());
  }
  std::vector<double> level = {0.0, 1.0};
  for (int m = 1; m < n; ++m) {
    const std::size_t half = level.size() - 1;  // 2^{m-1}
    std::vector<double> next(2 * half + 1);
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (i % 2 == 0)
        next[i] = level[i / 2];  // nesting is exact by construction
      else if (i <= half)
        next[i] = map.invert_left(level[i]);
      else
        next[i] = map.invert_right(level[2 * half - i]);
    }
    level = std::move(next);
  }
  return {n, std::move(level)};
}

int LocalizationPath::bit(int i) const {
  if (i < 0 || i > depth + 1) throw std::out_of_range("decomposition bit index out of range");
  if (i == 0) return 0;
  return levels[i - 1].next_bit;
}

double refine_midpoint(const UnimodalMap& map, const LocalizedInterval& interval,
                       MidpointStrategy strategy) {
  if (interval.depth < 0) throw std::invalid_argument("interval depth must be >= 0");
  if (!(interval.left < interval.right))
    throw std::runtime_error("refine_midpoint: empty interval");
  if (strategy == MidpointStrategy::Auto)
    strategy = map.has_analytic_inverses() ? MidpointStrategy::Pullback
                                           : MidpointStrategy::Bisection;
  if (strategy == MidpointStrategy::Pullback) {
    if (!map.has_analytic_inverses())
      throw std::invalid_argument("pullback midpoints need analytic branch inverses");
    return pullback_midpoint(map, branch_digits_from_index(interval.depth, interval.index));
  }
  return bisect_midpoint(map, interval.depth, interval.index, interval.left, interval.right);
}

double delta_ratio(const LocalizedInterval& interval) {
  const double len = interval.right - interval.left;
  if (!(len > 0.0))
    throw std::runtime_error("delta_ratio: zero-length interval (depth exceeded binary64 resolution)");
  const double delta = (interval.midpoint - interval.left) / len;
  if (!(delta > 0.0 && delta < 1.0))
    throw std::runtime_error("delta_ratio: midpoint collapsed onto an endpoint");
  return delta;
}

IntervalWalker::IntervalWalker(const UnimodalMap& map) : map_(&map) {
  cur_.midpoint = map.critical_point();  // depth 0: solve g^0(y) = v
  cur_.delta = cur_.midpoint;
}

void IntervalWalker::descend(int bit) {
  if (bit != 0 && bit != 1) throw std::invalid_argument("descent bit must be 0 or 1");
  cur_.next_bit = bit;
  LocalizedInterval next;
  next.depth = cur_.depth + 1;
  next.index = 2 * cur_.index + static_cast<std::uint64_t>(bit);
  next.left = bit ? cur_.midpoint : cur_.left;
  next.right = bit ? cur_.right : cur_.midpoint;
  next.length = next.right - next.left;

  branch_digits_.push_back(last_bit_ ^ static_cast<std::uint8_t>(bit));
  last_bit_ = static_cast<std::uint8_t>(bit);

  if (map_->has_analytic_inverses())
    next.midpoint = pullback_midpoint(*map_, branch_digits_);
  else
    next.midpoint = bisect_midpoint(*map_, next.depth, next.index, next.left, next.right);

  if (!(next.left < next.midpoint && next.midpoint < next.right)) {
    branch_digits_.pop_back();
    std::ostringstream os;
    os << "interval collapsed at depth " << next.depth
       << " (binary64 resolution exhausted)";
    throw std::runtime_error(os.str());
  }
  next.delta = (next.midpoint - next.left) / next.length;
  cur_ = next;
}

LocalizationPath localize(const UnimodalMap& map, double x, int depth) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("localize target must lie in [0,1]");
  if (depth < 0 || depth > num::kDepthCeiling) {
    std::ostringstream os;
    os << "localize depth must be in [0, " << num::kDepthCeiling << "]";
    throw std::invalid_argument(os.str());
  }

  LocalizationPath path;
  path.target = x;
  path.levels.reserve(depth + 1);
  if (depth > num::kDepthWarn) {
    std::ostringstream os;
    os << "depth " << depth << " exceeds the reliable ceiling " << num::kDepthWarn
       << "; slope products may exhaust binary64";
    path.diagnostic = os.str();
  }

  IntervalWalker walker(map);
  for (int n = 0; n <= depth; ++n) {
    LocalizedInterval row = walker.current();
    // Tie window scales with the interval: it is the pullback of the digit
    // rule's 1e-12 window at unit scale, and an absolute window would
    // swallow whole intervals once lengths drop near 1e-12.
    row.next_bit = x <= row.midpoint + num::kTieTol * row.length ? 0 : 1;
    path.levels.push_back(row);
    if (n == depth) break;
    try {
      walker.descend(row.next_bit);
    } catch (const std::runtime_error& err) {
      std::ostringstream os;
      os << "truncated at depth " << n << ": " << err.what();
      path.diagnostic = os.str();
      break;
    }
  }
  path.depth = static_cast<int>(path.levels.size()) - 1;
  return path;
}

std::uint64_t index_window(const GDecomposition& d, int i, int j) {
  if (i < 0 || j < i || j > d.depth())
    throw std::out_of_range("index_window range must satisfy 0 <= i <= j <= depth");
  std::uint64_t k = 0;
  for (int t = i; t <= j; ++t) k = 2 * k + d.bits[t];
  return k;
}

DigitSequence lattice_point_digits(int level, std::uint64_t k, int depth) {
  if (level < 1 || level > 62) throw std::invalid_argument("lattice level out of range");
  if (k > (std::uint64_t{1} << (level - 1)))
    throw std::invalid_argument("lattice index out of range");
  if (depth < 0) throw std::invalid_argument("digit depth must be >= 0");

  while (level > 1 && k % 2 == 0) {  // mu_{n,2k} = mu_{n-1,k}
    --level;
    k /= 2;
  }
  DigitSequence rho;
  rho.bits.assign(depth, 0);
  if (level == 1) {
    if (k == 1 && depth >= 1) rho.bits[0] = 1;  // the point 1: orbit 1, 0, 0, ...
    return rho;
  }
  // New point at `level`, the midpoint of the depth-(level-2) interval with
  // index (k-1)/2: address digits, then the tie (0), the peak hit (1), zeros.
  const int prefix = level - 2;
  const std::uint64_t cell = (k - 1) / 2;
  std::uint8_t prev = 0;
  for (int i = 1; i <= prefix && i <= depth; ++i) {
    const std::uint8_t di = static_cast<std::uint8_t>((cell >> (prefix - i)) & 1u);
    rho.bits[i - 1] = prev ^ di;
    prev = di;
  }
  if (prefix + 2 <= depth) rho.bits[prefix + 1] = 1;
  return rho;
}

}  // namespace unimap
