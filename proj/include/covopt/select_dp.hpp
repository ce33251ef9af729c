#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "covopt/coverage.hpp"
#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt {

/// Number of coverage states: the empty base state plus ten 10%-wide bins, the
/// last of which is full coverage.
inline constexpr int kDpStates = 11;

struct DpCell {
  std::vector<std::size_t> subset;  // item indices, ascending
  std::vector<std::size_t> added;   // the same indices in the order they entered
  CoverageSet cov;
  std::size_t count = 0;
  std::int64_t total_measurements = 0;
};

/// Cells are addressed 1..kDpStates. Cell 1 is the empty base state.
class DpTable {
 public:
  DpTable();

  const std::optional<DpCell>& cell(int k) const { return cells_.at(static_cast<std::size_t>(k - 1)); }
  std::optional<DpCell>& cell(int k) { return cells_.at(static_cast<std::size_t>(k - 1)); }

 private:
  std::array<std::optional<DpCell>, kDpStates> cells_;
};

/// floor(percent / 10) + 1, with full coverage mapped to cell 11.
/// Throws std::logic_error outside [0, 100].
int quantize_bin(double percent);

/// Replacement rule. Greater covered measure wins; on equal measure LS prefers
/// fewer sequences then fewer measurements, LC the reverse; remaining ties go to
/// the lexicographically smaller sorted key list.
bool prefers(const DpCell& candidate, const DpCell& existing, Objective objective,
             std::span<const std::size_t> key_rank);

DpCell replace_cell(const std::optional<DpCell>& existing, const DpCell& candidate,
                    Objective objective, const Instance& instance);

/// Per-pass snapshots of a dp_select run.
struct DpTrace {
  std::vector<DpTable> after_pass;
  // Set when no single item reached the second bin and cell 11 had to be
  // completed by a measure-increasing sweep.
  bool completed_by_sweep = false;

  std::size_t passes() const { return after_pass.size(); }
};

/// Tabulation over coverage bins, iterated to a fixpoint; returns cell 11 with
/// its picks in the order they were added.
SelectionResult dp_select(const Instance& instance, Objective objective, DpTrace* trace = nullptr);

}  // namespace covopt
