#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "covopt/interval.hpp"
#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt {

inline constexpr std::size_t kDefaultBruteLimit = 20;

/// Exact optimum by enumerating every subset. Among fully covering subsets:
/// LS minimizes (size, total measurements), LC minimizes (cost, size); the
/// lexicographically smaller sorted key list breaks remaining ties.
/// Throws LimitExceededError when the instance has more than `limit` items.
SelectionResult brute_force_select(const Instance& instance, Objective objective,
                                   std::size_t limit = kDefaultBruteLimit);

/// span * (fraction of uniform samples over the bounding span that land in some
/// interval). Deterministic for a given seed.
double monte_carlo_measure(std::span<const Interval> intervals, std::uint64_t samples,
                           std::uint64_t seed);

}  // namespace covopt
