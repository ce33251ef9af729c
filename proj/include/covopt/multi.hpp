#pragma once

#include <span>
#include <vector>

#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt {

struct MultiResult {
  std::vector<MetricId> metrics;              // in evaluation order
  std::vector<SelectionResult> per_metric;    // parallel to metrics
  std::vector<SequenceKey> joint;             // union of per-metric subsets, catalog order
};

struct CurvePoint {
  std::size_t k = 0;           // number of leading metrics included
  std::size_t joint_size = 0;

  friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Runs `algorithm` (greedy or dp) on each metric and unions the chosen subsets.
/// Per-metric runs are independent and execute concurrently.
MultiResult multi_select_union(const Catalog& catalog, std::span<const MetricId> metrics,
                               Objective objective, Algorithm algorithm, double gap_tol = 0.0);

/// Joint subset size over the first k metrics, for k = 1..metrics.size().
std::vector<CurvePoint> joint_coverage_curve(const MultiResult& result);

std::vector<CurvePoint> joint_coverage_curve(const Catalog& catalog,
                                             std::span<const MetricId> metrics,
                                             Objective objective, Algorithm algorithm,
                                             double gap_tol = 0.0);

}  // namespace covopt
