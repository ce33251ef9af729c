#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt {

/// Ordering applied before the greedy sweep.
enum class Heuristic {
  kAtcDesc,  // interval length, longest first
  kCostAsc,  // count per unit length, cheapest first; zero-length items last
  kMinAsc,   // interval lower bound, ascending
};

std::string_view to_string(Heuristic heuristic);
Heuristic parse_heuristic(std::string_view text);

/// atc-desc for LS, cost-asc for LC.
Heuristic default_heuristic(Objective objective);

/// Item indices in heuristic order; ties go to the smaller (dataset, sequence).
std::vector<std::size_t> rank_sequences(const Instance& instance, Heuristic heuristic);

/// Visits items in `order`, keeping each one that strictly grows the covered
/// measure, until full coverage.
SelectionResult sweep_select(const Instance& instance, std::span<const std::size_t> order,
                             Objective objective, Algorithm algorithm);

SelectionResult greedy_select(const Instance& instance, Objective objective,
                              std::optional<Heuristic> heuristic = std::nullopt);

/// The conventional practice: run sequences in catalog order until full coverage.
SelectionResult baseline_select(const Instance& instance,
                                Objective objective = Objective::kLeastSequences);

}  // namespace covopt
