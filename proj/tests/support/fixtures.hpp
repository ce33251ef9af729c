#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "covopt/model.hpp"
#include "covopt/selection.hpp"

namespace covopt::testing {

struct Item {
  std::string name;
  double lo;
  double hi;
  std::int64_t count;
};

Instance instance_of(const std::vector<Item>& items, const std::string& dataset = "d");

// Expected optima, verified by exhaustive enumeration outside this code base.
struct Fixture {
  std::string name;
  Instance instance;
  std::vector<std::string> ls;  // sorted names
  std::int64_t ls_total;
  std::vector<std::string> lc;  // sorted names
  double lc_cost;
  std::vector<std::string> greedy_atc;  // selection order
  std::vector<std::string> greedy_cost;
  std::vector<std::string> greedy_min;
  std::vector<std::string> baseline;
  double target_measure;
  double target_epsilon;
};

const std::vector<Fixture>& fixture_suite();
const Fixture& fixture(const std::string& name);

std::vector<std::string> names(const std::vector<SequenceKey>& keys);
std::vector<std::string> sorted_names(const std::vector<SequenceKey>& keys);

/// n intervals with endpoints on [0, 1000]; a mix of integer grid and real endpoints
/// so that ties, touching ends and zero-length items all appear.
Instance random_instance(std::mt19937_64& rng, std::size_t max_n, double range = 1000.0);

/// Measure of a union by cutting the line at every endpoint and testing each
/// elementary segment's midpoint. Quadratic, used only as a reference.
double segment_measure(const std::vector<Interval>& intervals);

std::vector<Interval> intervals_of(const Instance& inst, const std::vector<std::size_t>& indices);

/// True when every pick, in selection order, strictly grew the covered measure.
bool irredundant(const Instance& inst, const SelectionResult& r);

}  // namespace covopt::testing
