#pragma once

#include <cmath>

namespace covopt {

/// Closed range [lo, hi] of one characterization value over a sequence.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  /// Builds an interval, throwing ValidationError unless lo <= hi and both are finite.
  static Interval checked(double lo, double hi);

  double length() const { return hi - lo; }
  bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && lo <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace covopt
