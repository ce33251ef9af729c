#include "covopt/report.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "covopt/error.hpp"

namespace covopt {

double reduction_percent(std::size_t subset_size, std::size_t pool_size) {
  if (pool_size == 0) throw ValidationError("pool size must be positive");
  if (subset_size > pool_size) {
    throw ValidationError(
        fmt::format("subset size {} exceeds pool size {}", subset_size, pool_size));
  }
  return 100.0 * (1.0 - static_cast<double>(subset_size) / static_cast<double>(pool_size));
}

std::vector<GroupAggregate> aggregate_by_group(std::span<const GroupedResult> results,
                                               std::span<const std::string> declared) {
  std::vector<std::string> order;
  for (const GroupedResult& r : results) {
    if (std::find(order.begin(), order.end(), r.group) == order.end()) order.push_back(r.group);
  }
  for (const std::string& g : declared) {
    if (std::find(order.begin(), order.end(), g) == order.end()) {
      throw ValidationError(fmt::format("group '{}' has no results", g));
    }
  }

  std::vector<GroupAggregate> out;
  for (const std::string& g : order) {
    GroupAggregate agg;
    agg.group = g;
    double cost_sum = 0.0, percent_sum = 0.0, size_sum = 0.0;
    std::size_t costs = 0;
    for (const GroupedResult& r : results) {
      if (r.group != g) continue;
      ++agg.metrics;
      percent_sum += r.result.percent;
      size_sum += static_cast<double>(r.result.size());
      if (r.result.cost) {
        cost_sum += *r.result.cost;
        ++costs;
      } else {
        ++agg.excluded_costs;
      }
    }
    agg.mean_percent = percent_sum / static_cast<double>(agg.metrics);
    agg.mean_size = size_sum / static_cast<double>(agg.metrics);
    if (costs > 0) agg.mean_cost = cost_sum / static_cast<double>(costs);
    out.push_back(std::move(agg));
  }
  return out;
}

}  // namespace covopt
