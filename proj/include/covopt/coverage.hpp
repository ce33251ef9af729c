#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covopt/interval.hpp"

namespace covopt {

/// Percent values at or above 100 - kCompletionTolerance count as full coverage.
inline constexpr double kCompletionTolerance = 1e-9;

/// Union of characterization intervals kept as merged, disjoint pieces sorted by lo.
///
/// The scalar view (span, total discontinuity epsilon, measure) is derived from the
/// pieces; measure is always (span_hi - span_lo) - epsilon.
class CoverageSet {
 public:
  CoverageSet() = default;

  const std::vector<Interval>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  double span_lo() const { return span_lo_; }
  double span_hi() const { return span_hi_; }
  double span() const { return span_hi_ - span_lo_; }
  double epsilon() const { return epsilon_; }
  double measure() const { return measure_; }

  /// True when x lies inside one of the pieces.
  bool contains(double x) const;

  friend bool operator==(const CoverageSet&, const CoverageSet&) = default;

 private:
  friend CoverageSet union_of(std::span<const Interval>, double);
  friend CoverageSet extend(const CoverageSet&, const Interval&, double);

  // Takes intervals already sorted by (lo, hi).
  static CoverageSet from_sorted(std::span<const Interval> sorted, double gap_tol);

  std::vector<Interval> pieces_;
  double span_lo_ = 0.0;
  double span_hi_ = 0.0;
  double epsilon_ = 0.0;
  double measure_ = 0.0;
};

/// Merges intervals into a CoverageSet. Gaps no wider than gap_tol are closed.
/// Order of the input does not matter; an empty input yields an empty set.
CoverageSet union_of(std::span<const Interval> intervals, double gap_tol = 0.0);

/// Same as union_of(cov.pieces() ++ [iv]).
CoverageSet extend(const CoverageSet& cov, const Interval& iv, double gap_tol = 0.0);

/// 100 * subset / target measure. A zero-measure target counts a non-empty
/// subset as fully covered.
double coverage_percent(const CoverageSet& subset, const CoverageSet& target);

/// Processed measurements per unit of covered range. Throws DegenerateCoverageError
/// when the subset has zero measure.
double coverage_cost(std::span<const std::int64_t> counts, const CoverageSet& subset);

inline bool is_full_coverage(double percent) {
  return percent >= 100.0 - kCompletionTolerance;
}

}  // namespace covopt
