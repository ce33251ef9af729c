#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace covopt::detail {

// Correctly rounded sum of finite doubles: Shewchuk's non-overlapping partials
// with the half-way correction used by Python's math.fsum.
class ExactSum {
 public:
  void add(double x) {
    std::size_t kept = 0;
    for (std::size_t j = 0; j < partials_.size(); ++j) {
      double y = partials_[j];
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[kept++] = lo;
      x = hi;
    }
    partials_.resize(kept);
    partials_.push_back(x);
  }

  double result() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    // Round half-way cases the way a single exact rounding would.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

}  // namespace covopt::detail
