#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covopt/coverage.hpp"
#include "covopt/model.hpp"

namespace covopt {

/// LS: fewest sequences. LC: lowest coverage cost. Both require full coverage.
enum class Objective { kLeastSequences, kLeastCost };

enum class Algorithm { kGreedy, kDp, kBrute, kBaseline };

std::string_view to_string(Objective objective);
std::string_view to_string(Algorithm algorithm);
Objective parse_objective(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

/// A chosen subset with its coverage figures recomputed from the instance.
struct SelectionResult {
  std::vector<SequenceKey> subset;    // selection order
  std::vector<std::size_t> indices;   // parallel to subset, into Instance::items
  CoverageSet cov;
  double percent = 0.0;
  std::optional<double> cost;         // nullopt when cov has zero measure
  std::int64_t total_measurements = 0;
  Objective objective = Objective::kLeastSequences;
  Algorithm algorithm = Algorithm::kGreedy;

  std::size_t size() const { return subset.size(); }
};

SelectionResult make_selection(const Instance& instance, std::vector<std::size_t> indices,
                               Objective objective, Algorithm algorithm);

/// Rank of each item's key in ascending (dataset, sequence) order.
std::vector<std::size_t> key_ranks(const Instance& instance);

}  // namespace covopt
