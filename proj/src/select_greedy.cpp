#include "covopt/select_greedy.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "covopt/error.hpp"

namespace covopt {

std::string_view to_string(Heuristic heuristic) {
  switch (heuristic) {
    case Heuristic::kAtcDesc: return "atc";
    case Heuristic::kCostAsc: return "cost";
    case Heuristic::kMinAsc: return "min-start";
  }
  return "unknown";
}

Heuristic parse_heuristic(std::string_view text) {
  if (text == "atc") return Heuristic::kAtcDesc;
  if (text == "cost") return Heuristic::kCostAsc;
  if (text == "min-start") return Heuristic::kMinAsc;
  throw UsageError(fmt::format("unknown heuristic '{}' (expected atc|cost|min-start)", text));
}

Heuristic default_heuristic(Objective objective) {
  return objective == Objective::kLeastSequences ? Heuristic::kAtcDesc : Heuristic::kCostAsc;
}

std::vector<std::size_t> rank_sequences(const Instance& instance, Heuristic heuristic) {
  const auto& items = instance.items;
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  auto by_key = [&](std::size_t a, std::size_t b) { return items[a].key < items[b].key; };
  auto cmp = [&](std::size_t a, std::size_t b) {
    const Interval& ia = items[a].interval;
    const Interval& ib = items[b].interval;
    switch (heuristic) {
      case Heuristic::kAtcDesc:
        if (ia.length() != ib.length()) return ia.length() > ib.length();
        break;
      case Heuristic::kCostAsc: {
        const bool za = ia.length() <= 0.0;
        const bool zb = ib.length() <= 0.0;
        if (za != zb) return zb;
        if (!za) {
          const double ca = static_cast<double>(items[a].count) / ia.length();
          const double cb = static_cast<double>(items[b].count) / ib.length();
          if (ca != cb) return ca < cb;
        }
        break;
      }
      case Heuristic::kMinAsc:
        if (ia.lo != ib.lo) return ia.lo < ib.lo;
        break;
    }
    return by_key(a, b);
  };
  std::sort(order.begin(), order.end(), cmp);
  return order;
}

SelectionResult sweep_select(const Instance& instance, std::span<const std::size_t> order,
                             Objective objective, Algorithm algorithm) {
  std::vector<std::size_t> picked;
  if (instance.target.measure() <= 0.0) {
    // Point-mass target: any single item already counts as full coverage.
    if (!order.empty()) picked.push_back(order.front());
    return make_selection(instance, std::move(picked), objective, algorithm);
  }

  CoverageSet cov;
  for (std::size_t i : order) {
    if (is_full_coverage(coverage_percent(cov, instance.target))) break;
    CoverageSet next = extend(cov, instance.items.at(i).interval, instance.gap_tol);
    if (next.measure() > cov.measure()) {
      picked.push_back(i);
      cov = std::move(next);
    }
  }
  return make_selection(instance, std::move(picked), objective, algorithm);
}

SelectionResult greedy_select(const Instance& instance, Objective objective,
                              std::optional<Heuristic> heuristic) {
  const auto order = rank_sequences(instance, heuristic.value_or(default_heuristic(objective)));
  return sweep_select(instance, order, objective, Algorithm::kGreedy);
}

SelectionResult baseline_select(const Instance& instance, Objective objective) {
  std::vector<std::size_t> order(instance.items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return sweep_select(instance, order, objective, Algorithm::kBaseline);
}

}  // namespace covopt
