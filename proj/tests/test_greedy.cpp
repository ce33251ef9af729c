#include <random>

#include <gtest/gtest.h>

#include "covopt/error.hpp"
#include "covopt/select_greedy.hpp"
#include "fixtures.hpp"

namespace covopt {
namespace {

using testing::fixture;
using testing::fixture_suite;
using testing::names;
using Strings = std::vector<std::string>;

Strings ranked(const Instance& inst, Heuristic h) {
  Strings out;
  for (auto i : rank_sequences(inst, h)) out.push_back(inst.items[i].key.sequence);
  return out;
}

TEST(RankSequences, HeuristicOrders) {
  const Instance& f1 = fixture("F1").instance;
  EXPECT_EQ(ranked(f1, Heuristic::kAtcDesc), (Strings{"M", "L", "R"}));
  EXPECT_EQ(ranked(f1, Heuristic::kCostAsc), (Strings{"L", "R", "M"}));
  EXPECT_EQ(ranked(f1, Heuristic::kMinAsc), (Strings{"L", "M", "R"}));
}

TEST(RankSequences, ZeroLengthItemsRankLastByCost) {
  EXPECT_EQ(ranked(fixture("F9").instance, Heuristic::kCostAsc), (Strings{"u", "s", "t", "v", "e"}));
}

TEST(RankSequences, TiesBreakOnKey) {
  const Instance inst = testing::instance_of({{"b", 0, 1, 1}, {"a", 2, 3, 1}, {"c", 4, 5, 1}});
  EXPECT_EQ(ranked(inst, Heuristic::kAtcDesc), (Strings{"a", "b", "c"}));
  EXPECT_EQ(ranked(inst, Heuristic::kCostAsc), (Strings{"a", "b", "c"}));
}

TEST(GreedySelect, FixtureSelections) {
  for (const auto& f : fixture_suite()) {
    SCOPED_TRACE(f.name);
    EXPECT_EQ(names(greedy_select(f.instance, Objective::kLeastSequences, Heuristic::kAtcDesc).subset),
              f.greedy_atc);
    EXPECT_EQ(names(greedy_select(f.instance, Objective::kLeastCost, Heuristic::kCostAsc).subset),
              f.greedy_cost);
    EXPECT_EQ(names(greedy_select(f.instance, Objective::kLeastSequences, Heuristic::kMinAsc).subset),
              f.greedy_min);
  }
}

TEST(GreedySelect, DefaultsFollowObjective) {
  EXPECT_EQ(default_heuristic(Objective::kLeastSequences), Heuristic::kAtcDesc);
  EXPECT_EQ(default_heuristic(Objective::kLeastCost), Heuristic::kCostAsc);
  const Instance& f1 = fixture("F1").instance;
  EXPECT_EQ(names(greedy_select(f1, Objective::kLeastSequences).subset), (Strings{"M", "L", "R"}));
  EXPECT_EQ(names(greedy_select(f1, Objective::kLeastCost).subset), (Strings{"L", "R"}));
}

TEST(GreedySelect, F1PicksThreeWhereTwoSuffice) {
  const auto r = greedy_select(fixture("F1").instance, Objective::kLeastSequences);
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(r.percent, 100.0);
  EXPECT_EQ(r.total_measurements, 180);
}

TEST(GreedySelect, ReportsCostAndAlgorithm) {
  const auto r = greedy_select(fixture("F3").instance, Objective::kLeastCost);
  ASSERT_TRUE(r.cost.has_value());
  EXPECT_EQ(*r.cost, 2.0);
  EXPECT_EQ(r.algorithm, Algorithm::kGreedy);
  EXPECT_EQ(r.objective, Objective::kLeastCost);
}

TEST(BaselineSelect, CatalogOrderSweep) {
  for (const auto& f : fixture_suite()) {
    SCOPED_TRACE(f.name);
    const auto r = baseline_select(f.instance);
    EXPECT_EQ(names(r.subset), f.baseline);
    EXPECT_EQ(r.algorithm, Algorithm::kBaseline);
  }
}

TEST(BaselineSelect, DependsOnCatalogOrder) {
  const Instance reversed = testing::instance_of({{"C", 8, 10, 5}, {"B", 2, 6, 20}, {"A", 0, 4, 10}});
  EXPECT_EQ(names(baseline_select(reversed).subset), (Strings{"C", "B", "A"}));
}

TEST(SweepSelect, PointTargetTakesFirstItem) {
  const Instance inst = testing::instance_of({{"p", 2, 2, 3}, {"q", 2, 2, 1}});
  const auto r = baseline_select(inst);
  EXPECT_EQ(names(r.subset), (Strings{"p"}));
  EXPECT_EQ(r.percent, 100.0);
  EXPECT_FALSE(r.cost.has_value());
}

TEST(ParseHeuristic, Names) {
  EXPECT_EQ(parse_heuristic("atc"), Heuristic::kAtcDesc);
  EXPECT_EQ(parse_heuristic("cost"), Heuristic::kCostAsc);
  EXPECT_EQ(parse_heuristic("min-start"), Heuristic::kMinAsc);
  EXPECT_EQ(to_string(Heuristic::kMinAsc), "min-start");
  EXPECT_THROW(parse_heuristic("random"), UsageError);
}

TEST(GreedyProperty, FullCoverageWithoutRedundantPicks) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = testing::random_instance(rng, 40);
    for (auto obj : {Objective::kLeastSequences, Objective::kLeastCost}) {
      for (auto h : {Heuristic::kAtcDesc, Heuristic::kCostAsc, Heuristic::kMinAsc}) {
        const auto r = greedy_select(inst, obj, h);
        EXPECT_TRUE(is_full_coverage(r.percent));
        EXPECT_TRUE(testing::irredundant(inst, r));
      }
    }
    const auto b = baseline_select(inst);
    EXPECT_TRUE(is_full_coverage(b.percent));
    EXPECT_TRUE(testing::irredundant(inst, b));
  }
}

TEST(GreedyProperty, DeterministicAcrossRuns) {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 50; ++t) {
    const Instance inst = testing::random_instance(rng, 40);
    EXPECT_EQ(greedy_select(inst, Objective::kLeastCost).indices,
              greedy_select(inst, Objective::kLeastCost).indices);
  }
}

}  // namespace
}  // namespace covopt
