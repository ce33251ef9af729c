#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt {

/// 100 * (1 - subset_size / pool_size). Throws ValidationError if subset_size > pool_size
/// or pool_size is zero.
double reduction_percent(std::size_t subset_size, std::size_t pool_size);

struct GroupedResult {
  MetricId metric;
  std::string group;
  SelectionResult result;
};

struct GroupAggregate {
  std::string group;
  std::size_t metrics = 0;
  std::optional<double> mean_cost;  // over defined costs only
  std::size_t excluded_costs = 0;   // results whose cost is undefined
  double mean_percent = 0.0;
  double mean_size = 0.0;
};

/// Arithmetic means of C, P and subset size per group, in order of first
/// appearance. Groups listed in `declared` but absent from `results` are errors.
std::vector<GroupAggregate> aggregate_by_group(std::span<const GroupedResult> results,
                                               std::span<const std::string> declared = {});

}  // namespace covopt
