#include "covopt/selection.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "covopt/error.hpp"

namespace covopt {

std::string_view to_string(Objective objective) {
  return objective == Objective::kLeastSequences ? "ls" : "lc";
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kDp: return "dp";
    case Algorithm::kBrute: return "brute";
    case Algorithm::kBaseline: return "baseline";
  }
  return "unknown";
}

Objective parse_objective(std::string_view text) {
  if (text == "ls") return Objective::kLeastSequences;
  if (text == "lc") return Objective::kLeastCost;
  throw UsageError(fmt::format("unknown objective '{}' (expected ls|lc)", text));
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "greedy") return Algorithm::kGreedy;
  if (text == "dp") return Algorithm::kDp;
  if (text == "brute") return Algorithm::kBrute;
  if (text == "baseline") return Algorithm::kBaseline;
  throw UsageError(fmt::format("unknown algorithm '{}' (expected greedy|dp|brute|baseline)", text));
}

SelectionResult make_selection(const Instance& instance, std::vector<std::size_t> indices,
                               Objective objective, Algorithm algorithm) {
  SelectionResult r;
  r.objective = objective;
  r.algorithm = algorithm;
  std::vector<Interval> ivs;
  std::vector<std::int64_t> counts;
  for (std::size_t i : indices) {
    const InstanceItem& item = instance.items.at(i);
    r.subset.push_back(item.key);
    ivs.push_back(item.interval);
    counts.push_back(item.count);
  }
  r.indices = std::move(indices);
  r.cov = union_of(ivs, instance.gap_tol);
  r.percent = coverage_percent(r.cov, instance.target);
  r.total_measurements = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (r.cov.measure() > 0.0) r.cost = coverage_cost(counts, r.cov);
  return r;
}

std::vector<std::size_t> key_ranks(const Instance& instance) {
  std::vector<std::size_t> order(instance.items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return instance.items[a].key < instance.items[b].key;
  });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  return rank;
}

}  // namespace covopt
