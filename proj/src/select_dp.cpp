#include "covopt/select_dp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "covopt/select_greedy.hpp"

namespace covopt {
namespace {

std::vector<std::size_t> sorted_ranks(const DpCell& cell, std::span<const std::size_t> key_rank) {
  std::vector<std::size_t> out;
  out.reserve(cell.subset.size());
  for (std::size_t i : cell.subset) out.push_back(key_rank[i]);
  std::sort(out.begin(), out.end());
  return out;
}

DpCell extend_cell(const DpCell& src, std::size_t item, const Instance& instance) {
  DpCell out;
  out.subset = src.subset;
  out.subset.insert(std::upper_bound(out.subset.begin(), out.subset.end(), item), item);
  out.added = src.added;
  out.added.push_back(item);
  out.cov = extend(src.cov, instance.items[item].interval, instance.gap_tol);
  out.count = src.count + 1;
  out.total_measurements = src.total_measurements + instance.items[item].count;
  return out;
}

}  // namespace

DpTable::DpTable() { cells_[0] = DpCell{}; }

int quantize_bin(double percent) {
  if (!(percent >= 0.0) || percent > 100.0 + kCompletionTolerance) {
    throw std::logic_error(fmt::format("coverage percent {} outside [0, 100]", percent));
  }
  if (is_full_coverage(percent)) return kDpStates;
  return static_cast<int>(std::floor(percent / 10.0)) + 1;
}

bool prefers(const DpCell& candidate, const DpCell& existing, Objective objective,
             std::span<const std::size_t> key_rank) {
  if (candidate.cov.measure() != existing.cov.measure()) {
    return candidate.cov.measure() > existing.cov.measure();
  }
  auto tie_key = [objective](const DpCell& c) {
    const auto count = static_cast<std::int64_t>(c.count);
    return objective == Objective::kLeastSequences ? std::pair{count, c.total_measurements}
                                                   : std::pair{c.total_measurements, count};
  };
  if (tie_key(candidate) != tie_key(existing)) return tie_key(candidate) < tie_key(existing);
  return sorted_ranks(candidate, key_rank) < sorted_ranks(existing, key_rank);
}

DpCell replace_cell(const std::optional<DpCell>& existing, const DpCell& candidate,
                    Objective objective, const Instance& instance) {
  if (!existing) return candidate;
  const auto rank = key_ranks(instance);
  return prefers(candidate, *existing, objective, rank) ? candidate : *existing;
}

SelectionResult dp_select(const Instance& instance, Objective objective, DpTrace* trace) {
  const std::size_t n = instance.items.size();
  const auto rank = key_ranks(instance);
  DpTable table;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 1; k <= kDpStates; ++k) {
      if (!table.cell(k)) continue;
      const DpCell src = *table.cell(k);
      for (std::size_t j = 0; j < n; ++j) {
        if (std::binary_search(src.subset.begin(), src.subset.end(), j)) continue;
        DpCell cand = extend_cell(src, j, instance);
        const int loc = quantize_bin(coverage_percent(cand.cov, instance.target));
        if (loc == 1) continue;  // cell 1 stays the base state
        auto& slot = table.cell(loc);
        if (!slot || prefers(cand, *slot, objective, rank)) {
          slot = std::move(cand);
          changed = true;
        }
      }
    }
    if (trace) trace->after_pass.push_back(table);
  }

  if (table.cell(kDpStates)) {
    return make_selection(instance, table.cell(kDpStates)->added, objective, Algorithm::kDp);
  }

  // Only reachable when every single item covers under 10% of the target.
  if (trace) trace->completed_by_sweep = true;
  int best = 1;
  for (int k = kDpStates; k >= 1; --k) {
    if (table.cell(k)) {
      best = k;
      break;
    }
  }
  const DpCell& start = *table.cell(best);
  CoverageSet cov = start.cov;
  std::vector<std::size_t> picked = start.added;
  for (std::size_t i : rank_sequences(instance, Heuristic::kMinAsc)) {
    if (is_full_coverage(coverage_percent(cov, instance.target))) break;
    CoverageSet next = extend(cov, instance.items[i].interval, instance.gap_tol);
    if (next.measure() > cov.measure()) {
      picked.push_back(i);
      cov = std::move(next);
    }
  }
  return make_selection(instance, std::move(picked), objective, Algorithm::kDp);
}

}  // namespace covopt
