#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "covopt/oracle.hpp"
#include "covopt/select_dp.hpp"
#include "covopt/select_greedy.hpp"
#include "fixtures.hpp"

namespace covopt {
namespace {

using testing::fixture;
using testing::fixture_suite;
using testing::sorted_names;
using Strings = std::vector<std::string>;

TEST(QuantizeBin, Boundaries) {
  EXPECT_EQ(quantize_bin(0.0), 1);
  EXPECT_EQ(quantize_bin(9.999), 1);
  EXPECT_EQ(quantize_bin(10.0), 2);
  EXPECT_EQ(quantize_bin(55.0), 6);
  EXPECT_EQ(quantize_bin(99.99), 10);
  EXPECT_EQ(quantize_bin(100.0), 11);
  EXPECT_EQ(quantize_bin(100.0 - 1e-10), 11);
}

TEST(QuantizeBin, OutOfRangeIsALogicError) {
  EXPECT_THROW(quantize_bin(-0.5), std::logic_error);
  EXPECT_THROW(quantize_bin(101.0), std::logic_error);
  EXPECT_THROW(quantize_bin(std::nan("")), std::logic_error);
}

DpCell cell_of(const Instance& inst, std::vector<std::size_t> subset) {
  DpCell c;
  std::vector<Interval> ivs;
  for (auto i : subset) {
    ivs.push_back(inst.items[i].interval);
    c.total_measurements += inst.items[i].count;
  }
  c.cov = union_of(ivs);
  c.count = subset.size();
  c.subset = c.added = std::move(subset);
  return c;
}

TEST(Prefers, GreaterMeasureWins) {
  const Instance& f1 = fixture("F1").instance;
  const auto rank = key_ranks(f1);
  EXPECT_TRUE(prefers(cell_of(f1, {0, 2}), cell_of(f1, {1}), Objective::kLeastSequences, rank));
  EXPECT_FALSE(prefers(cell_of(f1, {1}), cell_of(f1, {0, 2}), Objective::kLeastSequences, rank));
}

TEST(Prefers, ObjectiveBreaksMeasureTies) {
  // Both cover [0,10]; F3's A alone is one sequence but 1000 measurements.
  const Instance& f3 = fixture("F3").instance;
  const auto rank = key_ranks(f3);
  const DpCell one = cell_of(f3, {0});
  const DpCell two = cell_of(f3, {1, 2});
  EXPECT_TRUE(prefers(one, two, Objective::kLeastSequences, rank));
  EXPECT_TRUE(prefers(two, one, Objective::kLeastCost, rank));
}

TEST(Prefers, KeyOrderBreaksFullTies) {
  const Instance inst = testing::instance_of({{"b", 0, 1, 1}, {"a", 0, 1, 1}});
  const auto rank = key_ranks(inst);
  EXPECT_TRUE(prefers(cell_of(inst, {1}), cell_of(inst, {0}), Objective::kLeastSequences, rank));
  EXPECT_FALSE(prefers(cell_of(inst, {0}), cell_of(inst, {1}), Objective::kLeastSequences, rank));
  EXPECT_FALSE(prefers(cell_of(inst, {0}), cell_of(inst, {0}), Objective::kLeastCost, rank));
}

TEST(ReplaceCell, EmptySlotTakesCandidate) {
  const Instance& f1 = fixture("F1").instance;
  const DpCell c = cell_of(f1, {0});
  EXPECT_EQ(replace_cell(std::nullopt, c, Objective::kLeastSequences, f1).subset, c.subset);
  EXPECT_EQ(replace_cell(cell_of(f1, {1}), c, Objective::kLeastSequences, f1).subset,
            (std::vector<std::size_t>{1}));
}

TEST(DpSelect, MatchesFixtureOptima) {
  for (const auto& f : fixture_suite()) {
    SCOPED_TRACE(f.name);
    const auto ls = dp_select(f.instance, Objective::kLeastSequences);
    EXPECT_EQ(sorted_names(ls.subset), f.ls);
    EXPECT_EQ(ls.total_measurements, f.ls_total);
    const auto lc = dp_select(f.instance, Objective::kLeastCost);
    EXPECT_EQ(sorted_names(lc.subset), f.lc);
    ASSERT_TRUE(lc.cost.has_value());
    EXPECT_DOUBLE_EQ(*lc.cost, f.lc_cost);
  }
}

TEST(DpSelect, F1BeatsGreedy) {
  const Instance& f1 = fixture("F1").instance;
  EXPECT_EQ(dp_select(f1, Objective::kLeastSequences).size(), 2u);
  EXPECT_EQ(greedy_select(f1, Objective::kLeastSequences).size(), 3u);
}

// Keeping only the widest subset per 10% bin can drop the partial subset an
// optimum is built from. These two pools show it; brute force stays ahead.
TEST(DpSelect, BinningCanMissTheOptimum) {
  const Instance a = testing::instance_of({{"P", 0, 6, 30}, {"Q", 5, 9, 20}, {"S", 6, 12, 30}, {"U", 2, 10, 200}});
  EXPECT_EQ(sorted_names(dp_select(a, Objective::kLeastSequences).subset), (Strings{"P", "Q", "S"}));
  EXPECT_EQ(sorted_names(brute_force_select(a, Objective::kLeastSequences).subset), (Strings{"P", "S"}));

  const Instance b = testing::instance_of(
      {{"k1", 0, 9, 45}, {"k2", 4, 9, 25}, {"k3", 8, 17, 45}, {"k4", 12, 17, 25}, {"k5", 2, 15, 300}});
  EXPECT_EQ(sorted_names(dp_select(b, Objective::kLeastSequences).subset), (Strings{"k1", "k4", "k5"}));
  EXPECT_EQ(sorted_names(dp_select(b, Objective::kLeastCost).subset), (Strings{"k1", "k2", "k3"}));
  EXPECT_EQ(sorted_names(brute_force_select(b, Objective::kLeastSequences).subset), (Strings{"k1", "k3"}));
  EXPECT_EQ(sorted_names(brute_force_select(b, Objective::kLeastCost).subset), (Strings{"k1", "k3"}));
}

TEST(DpSelect, NarrowItemsFallBackToSweep) {
  std::vector<testing::Item> items;
  for (int i = 0; i < 12; ++i) items.push_back({"n" + std::to_string(i), double(i), double(i + 1), 1});
  const Instance inst = testing::instance_of(items);
  DpTrace trace;
  const auto r = dp_select(inst, Objective::kLeastSequences, &trace);
  EXPECT_TRUE(trace.completed_by_sweep);
  EXPECT_EQ(r.size(), 12u);
  EXPECT_TRUE(is_full_coverage(r.percent));
  EXPECT_TRUE(testing::irredundant(inst, r));
}

TEST(DpSelect, PointTarget) {
  const Instance inst = testing::instance_of({{"q", 2, 2, 3}, {"p", 2, 2, 1}});
  const auto ls = dp_select(inst, Objective::kLeastSequences);
  EXPECT_EQ(ls.size(), 1u);
  EXPECT_EQ(ls.percent, 100.0);
  EXPECT_EQ(ls.subset[0].sequence, "p");
}

void check_trace(const Instance& inst, const DpTrace& trace) {
  ASSERT_GE(trace.passes(), 1u);
  EXPECT_LE(trace.passes(), inst.size() * kDpStates);
  for (const DpTable& t : trace.after_pass) {
    ASSERT_TRUE(t.cell(1).has_value());
    EXPECT_TRUE(t.cell(1)->subset.empty());
    for (int k = 2; k <= kDpStates; ++k) {
      if (!t.cell(k)) continue;
      const double p = coverage_percent(t.cell(k)->cov, inst.target);
      EXPECT_EQ(quantize_bin(p), k);
      EXPECT_EQ(t.cell(k)->count, t.cell(k)->subset.size());
    }
  }
  // The final pass confirms the fixpoint.
  if (trace.passes() >= 2) {
    const DpTable& a = trace.after_pass[trace.passes() - 2];
    const DpTable& b = trace.after_pass.back();
    for (int k = 1; k <= kDpStates; ++k) {
      ASSERT_EQ(a.cell(k).has_value(), b.cell(k).has_value());
      if (a.cell(k)) EXPECT_EQ(a.cell(k)->subset, b.cell(k)->subset);
    }
  }
}

TEST(DpTrace, FixtureTablesStayConsistent) {
  for (const auto& f : fixture_suite()) {
    for (auto obj : {Objective::kLeastSequences, Objective::kLeastCost}) {
      SCOPED_TRACE(f.name);
      DpTrace trace;
      dp_select(f.instance, obj, &trace);
      check_trace(f.instance, trace);
      EXPECT_FALSE(trace.completed_by_sweep);
    }
  }
}

TEST(DpProperty, RandomInstances) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = testing::random_instance(rng, 30);
    for (auto obj : {Objective::kLeastSequences, Objective::kLeastCost}) {
      DpTrace trace;
      const auto r = dp_select(inst, obj, &trace);
      EXPECT_TRUE(is_full_coverage(r.percent));
      EXPECT_TRUE(testing::irredundant(inst, r));
      check_trace(inst, trace);
    }
  }
}

TEST(DpProperty, NeverLosesToBruteForce) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 150; ++t) {
    const Instance inst = testing::random_instance(rng, 10);
    const auto dls = dp_select(inst, Objective::kLeastSequences);
    const auto bls = brute_force_select(inst, Objective::kLeastSequences);
    EXPECT_GE(dls.size(), bls.size());
    const auto dlc = dp_select(inst, Objective::kLeastCost);
    const auto blc = brute_force_select(inst, Objective::kLeastCost);
    if (blc.cost && dlc.cost) EXPECT_GE(*dlc.cost, *blc.cost * (1 - 1e-12));
  }
}

}  // namespace
}  // namespace covopt
