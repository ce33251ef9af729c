#include "covopt/coverage.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "covopt/error.hpp"
#include "exact_sum.hpp"

namespace covopt {
namespace {

bool by_lo(const Interval& a, const Interval& b) {
  return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
}

}  // namespace

CoverageSet CoverageSet::from_sorted(std::span<const Interval> sorted, double gap_tol) {
  CoverageSet cov;
  if (sorted.empty()) return cov;

  cov.pieces_.reserve(sorted.size());
  for (const Interval& iv : sorted) {
    if (!cov.pieces_.empty() && iv.lo <= cov.pieces_.back().hi + gap_tol) {
      cov.pieces_.back().hi = std::max(cov.pieces_.back().hi, iv.hi);
    } else {
      cov.pieces_.push_back(iv);
    }
  }
  cov.span_lo_ = cov.pieces_.front().lo;
  cov.span_hi_ = cov.pieces_.back().hi;

  // Both sums are rounded once from their exact values, so a covered measure
  // never moves when the union itself does not, and measure is exactly
  // span - epsilon before rounding.
  detail::ExactSum length, gaps;
  for (std::size_t i = 0; i < cov.pieces_.size(); ++i) {
    length.add(cov.pieces_[i].hi);
    length.add(-cov.pieces_[i].lo);
    if (i > 0) {
      gaps.add(cov.pieces_[i].lo);
      gaps.add(-cov.pieces_[i - 1].hi);
    }
  }
  cov.epsilon_ = gaps.result();
  cov.measure_ = length.result();
  return cov;
}

bool CoverageSet::contains(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Interval& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  return x <= std::prev(it)->hi;
}

CoverageSet union_of(std::span<const Interval> intervals, double gap_tol) {
  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(), by_lo);
  return CoverageSet::from_sorted(sorted, gap_tol);
}

CoverageSet extend(const CoverageSet& cov, const Interval& iv, double gap_tol) {
  std::vector<Interval> merged;
  merged.reserve(cov.pieces().size() + 1);
  auto pos = std::upper_bound(cov.pieces().begin(), cov.pieces().end(), iv, by_lo);
  merged.insert(merged.end(), cov.pieces().begin(), pos);
  merged.push_back(iv);
  merged.insert(merged.end(), pos, cov.pieces().end());
  return CoverageSet::from_sorted(merged, gap_tol);
}

double coverage_percent(const CoverageSet& subset, const CoverageSet& target) {
  if (target.measure() <= 0.0) return subset.empty() ? 0.0 : 100.0;
  return 100.0 * subset.measure() / target.measure();
}

double coverage_cost(std::span<const std::int64_t> counts, const CoverageSet& subset) {
  if (subset.measure() <= 0.0) {
    throw DegenerateCoverageError(
        fmt::format("coverage cost undefined: covered measure is {}", subset.measure()));
  }
  const std::int64_t total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  return static_cast<double>(total) / subset.measure();
}

}  // namespace covopt
