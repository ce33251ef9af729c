#include "covopt/oracle.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include <fmt/format.h>

#include "covopt/error.hpp"
#include "exact_sum.hpp"

namespace covopt {
namespace {

using Mask = std::uint64_t;

// Walks the chosen items in ascending-lo order and sums the merged pieces the
// way the coverage engine does, so equal unions give bit-identical measures.
class SubsetMeasurer {
 public:
  explicit SubsetMeasurer(const Instance& instance) : instance_(instance) {
    order_.resize(instance.items.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
      const Interval& x = instance.items[a].interval;
      const Interval& y = instance.items[b].interval;
      return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi);
    });
  }

  double measure(Mask mask) const {
    bool any = false;
    double piece_lo = 0.0, piece_hi = 0.0;
    detail::ExactSum length;
    for (std::size_t i : order_) {
      if (!(mask >> i & 1u)) continue;
      const Interval& iv = instance_.items[i].interval;
      if (any && iv.lo <= piece_hi + instance_.gap_tol) {
        piece_hi = std::max(piece_hi, iv.hi);
        continue;
      }
      if (any) {
        length.add(piece_hi);
        length.add(-piece_lo);
      }
      piece_lo = iv.lo;
      piece_hi = iv.hi;
      any = true;
    }
    if (!any) return 0.0;
    length.add(piece_hi);
    length.add(-piece_lo);
    return length.result();
  }

 private:
  const Instance& instance_;
  std::vector<std::size_t> order_;
};

struct Candidate {
  Mask mask = 0;
  double cost = 0.0;
  std::int64_t total = 0;
  int size = 0;
};

}  // namespace

SelectionResult brute_force_select(const Instance& instance, Objective objective,
                                   std::size_t limit) {
  const std::size_t n = instance.items.size();
  if (n > limit) {
    throw LimitExceededError(fmt::format(
        "brute-force search refused: {} items exceed the limit of {}", n, limit));
  }
  if (n >= 63) throw LimitExceededError("brute-force search supports at most 62 items");

  const SubsetMeasurer measurer(instance);
  const double target = instance.target.measure();
  const auto rank = key_ranks(instance);

  auto is_full = [&](double m) {
    return target <= 0.0 || is_full_coverage(100.0 * m / target);
  };
  auto evaluate = [&](Mask mask) {
    Candidate c;
    c.mask = mask;
    c.size = std::popcount(mask);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) c.total += instance.items[i].count;
    }
    const double m = measurer.measure(mask);
    c.cost = m > 0.0 ? static_cast<double>(c.total) / m : std::numeric_limits<double>::infinity();
    return c;
  };
  auto ranks_of = [&](Mask mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) out.push_back(rank[i]);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto better = [&](const Candidate& a, const Candidate& b) {
    if (objective == Objective::kLeastSequences) {
      if (a.size != b.size) return a.size < b.size;
      if (a.total != b.total) return a.total < b.total;
    } else {
      if (a.cost != b.cost) return a.cost < b.cost;
      if (a.size != b.size) return a.size < b.size;
    }
    return ranks_of(a.mask) < ranks_of(b.mask);
  };

  std::optional<Candidate> best;
  auto consider = [&](Mask mask) {
    if (!is_full(measurer.measure(mask))) return;
    Candidate c = evaluate(mask);
    if (!best || better(c, *best)) best = c;
  };

  if (objective == Objective::kLeastSequences) {
    // Size levels in ascending order; the first level with a full subset is optimal.
    for (std::size_t k = 1; k <= n && !best; ++k) {
      Mask mask = (Mask{1} << k) - 1;
      const Mask end = Mask{1} << n;
      while (mask < end) {
        consider(mask);
        const Mask low = mask & (~mask + 1);  // Gosper's hack: next mask with k bits
        const Mask ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
      }
    }
  } else {
    for (Mask mask = 1; mask < (Mask{1} << n); ++mask) consider(mask);
  }

  std::vector<std::size_t> indices;
  for (std::size_t i = 0; i < n; ++i) {
    if (best->mask >> i & 1u) indices.push_back(i);
  }
  return make_selection(instance, std::move(indices), objective, Algorithm::kBrute);
}

double monte_carlo_measure(std::span<const Interval> intervals, std::uint64_t samples,
                           std::uint64_t seed) {
  if (intervals.empty()) throw ValidationError("monte_carlo_measure: no intervals");
  if (samples == 0) throw ValidationError("monte_carlo_measure: samples must be >= 1");

  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<double> los(sorted.size());
  std::vector<double> reach(sorted.size());  // max hi over sorted[0..i]
  double lo = sorted.front().lo, hi = sorted.front().hi;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    los[i] = sorted[i].lo;
    hi = std::max(hi, sorted[i].hi);
    reach[i] = hi;
  }
  const double span = hi - lo;
  if (span <= 0.0) return 0.0;

  // Bucket b of the unit draw maps into [lo + span*b/B, lo + span*(b+1)/B], so the
  // search for x only needs the slice of `los` between those two bounds.
  constexpr std::size_t kBuckets = 4096;
  std::vector<std::size_t> first(kBuckets + 1);
  for (std::size_t b = 0; b <= kBuckets; ++b) {
    const double edge = lo + span * (static_cast<double>(b) / kBuckets);
    first[b] = static_cast<std::size_t>(std::upper_bound(los.begin(), los.end(), edge) - los.begin());
  }

  std::mt19937_64 rng(seed);
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = lo + span * u;
    const auto b = static_cast<std::size_t>(u * kBuckets);
    const auto it = std::upper_bound(los.begin() + first[b], los.begin() + first[b + 1], x);
    if (it != los.begin() && reach[static_cast<std::size_t>(it - los.begin()) - 1] >= x) ++hits;
  }
  return span * (static_cast<double>(hits) / static_cast<double>(samples));
}

}  // namespace covopt
