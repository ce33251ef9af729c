#include "fixtures.hpp"

#include <algorithm>
#include <stdexcept>

#include "covopt/coverage.hpp"

namespace covopt::testing {

Instance instance_of(const std::vector<Item>& items, const std::string& dataset) {
  std::vector<InstanceItem> out;
  for (const auto& it : items) out.push_back({{dataset, it.name}, Interval::checked(it.lo, it.hi), it.count});
  return make_instance("demo", std::move(out));
}

const std::vector<Fixture>& fixture_suite() {
  static const std::vector<Fixture> suite = [] {
    std::vector<Fixture> s;
    s.push_back({"F1", instance_of({{"L", 0, 5, 40}, {"M", 1, 9, 100}, {"R", 5, 10, 40}}),
                 {"L", "R"}, 80, {"L", "R"}, 8.0,
                 {"M", "L", "R"}, {"L", "R"}, {"L", "M", "R"}, {"L", "M", "R"}, 10, 0});
    s.push_back({"F2", instance_of({{"A", 0, 4, 10}, {"B", 2, 6, 20}, {"C", 8, 10, 5}}),
                 {"A", "B", "C"}, 35, {"A", "B", "C"}, 4.375,
                 {"A", "B", "C"}, {"A", "C", "B"}, {"A", "B", "C"}, {"A", "B", "C"}, 8, 2});
    s.push_back({"F3", instance_of({{"A", 0, 10, 1000}, {"B", 0, 6, 10}, {"C", 4, 10, 10}}),
                 {"A"}, 1000, {"B", "C"}, 2.0,
                 {"A"}, {"B", "C"}, {"A"}, {"A"}, 10, 0});
    s.push_back({"F4",
                 instance_of({{"a", 2, 10, 50}, {"b", 4, 14, 10}, {"c", 11, 16, 50}, {"d", 7, 17, 30},
                              {"e", 2, 6, 10}}),
                 {"a", "d"}, 80, {"b", "d", "e"}, 3.3333333333333335,
                 {"b", "d", "a"}, {"b", "e", "d"}, {"a", "b", "d"}, {"a", "b", "c", "d"}, 15, 0});
    s.push_back({"F5",
                 instance_of({{"a", 0, 2, 5}, {"b", 1, 3, 5}, {"c", 2, 4, 5}, {"d", 0, 4, 100}}),
                 {"d"}, 100, {"a", "c"}, 2.5,
                 {"d"}, {"a", "b", "c"}, {"a", "d"}, {"a", "b", "c"}, 4, 0});
    s.push_back({"F6",
                 instance_of({{"x", 0, 3, 10}, {"y", 5, 8, 10}, {"z", 10, 13, 10}, {"w", 1, 7, 60}}),
                 {"w", "x", "y", "z"}, 90, {"w", "x", "y", "z"}, 8.181818181818182,
                 {"w", "x", "y", "z"}, {"x", "y", "z", "w"}, {"x", "w", "y", "z"}, {"x", "y", "z", "w"},
                 11, 2});
    s.push_back({"F7",
                 instance_of({{"A", 0, 10, 50}, {"B", 20, 30, 50}, {"C", 0, 30, 500}, {"D", 5, 25, 80}}),
                 {"C"}, 500, {"A", "B", "D"}, 6.0,
                 {"C"}, {"D", "A", "B"}, {"A", "C"}, {"A", "B", "C"}, 30, 0});
    s.push_back({"F8",
                 instance_of({{"a", 3, 9, 100}, {"b", 5, 12, 10}, {"c", 6, 14, 50}, {"d", 12, 14, 10}}),
                 {"a", "c"}, 150, {"a", "b", "d"}, 10.909090909090908,
                 {"c", "b", "a"}, {"b", "d", "a"}, {"a", "b", "c"}, {"a", "b", "c"}, 11, 0});
    s.push_back({"F9",
                 instance_of({{"s", -5, -1, 12}, {"t", -3, 2, 40}, {"u", 1, 6, 12}, {"v", -5, 6, 90},
                              {"e", 3, 3, 1}}),
                 {"v"}, 90, {"s", "t", "u"}, 5.818181818181818,
                 {"v"}, {"u", "s", "t"}, {"s", "v"}, {"s", "t", "u"}, 11, 0});
    s.push_back({"F10",
                 instance_of({{"r1", 0, 1, 1}, {"r2", 1, 2, 1}, {"r3", 2, 3, 1}, {"r4", 3, 4, 1},
                              {"r5", 0, 4, 3}, {"r6", 1.5, 2.5, 1}}),
                 {"r5"}, 3, {"r5"}, 0.75,
                 {"r5"}, {"r5"}, {"r1", "r5"}, {"r1", "r2", "r3", "r4"}, 4, 0});
    return s;
  }();
  return suite;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixture_suite()) {
    if (f.name == name) return f;
  }
  throw std::out_of_range("no fixture " + name);
}

std::vector<std::string> names(const std::vector<SequenceKey>& keys) {
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(k.sequence);
  return out;
}

std::vector<std::string> sorted_names(const std::vector<SequenceKey>& keys) {
  auto out = names(keys);
  std::sort(out.begin(), out.end());
  return out;
}

Instance random_instance(std::mt19937_64& rng, std::size_t max_n, double range) {
  std::uniform_int_distribution<std::size_t> size_dist(1, max_n);
  std::uniform_int_distribution<int> style(0, 9);
  std::uniform_int_distribution<int> grid(0, 20);
  std::uniform_real_distribution<double> real(0.0, range);
  std::uniform_int_distribution<std::int64_t> count(1, 500);
  const std::size_t n = size_dist(rng);
  std::vector<InstanceItem> items;
  for (std::size_t i = 0; i < n; ++i) {
    double a = 0.0, b = 0.0;
    const int s = style(rng);
    if (s < 3) {
      a = grid(rng) * range / 20.0;
      b = grid(rng) * range / 20.0;
    } else if (s == 3) {
      a = b = real(rng);
    } else {
      a = real(rng);
      b = std::min(range, a + real(rng) * 0.3);
    }
    if (a > b) std::swap(a, b);
    items.push_back({{"d", "s" + std::to_string(i)}, Interval::checked(a, b), count(rng)});
  }
  return make_instance("rand", std::move(items));
}

double segment_measure(const std::vector<Interval>& intervals) {
  std::vector<double> cuts;
  for (const auto& iv : intervals) {
    cuts.push_back(iv.lo);
    cuts.push_back(iv.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
    const bool covered = std::any_of(intervals.begin(), intervals.end(),
                                     [&](const Interval& iv) { return iv.lo <= mid && mid <= iv.hi; });
    if (covered) total += cuts[i + 1] - cuts[i];
  }
  return total;
}

std::vector<Interval> intervals_of(const Instance& inst, const std::vector<std::size_t>& indices) {
  std::vector<Interval> out;
  for (auto i : indices) out.push_back(inst.items[i].interval);
  return out;
}

bool irredundant(const Instance& inst, const SelectionResult& r) {
  CoverageSet cov;
  for (std::size_t i : r.indices) {
    CoverageSet next = extend(cov, inst.items[i].interval, inst.gap_tol);
    // On a zero-measure target the single first pick is what reaches full coverage.
    const bool first_on_point = cov.empty() && inst.target.measure() == 0.0;
    if (!first_on_point && !(next.measure() > cov.measure())) return false;
    cov = std::move(next);
  }
  return true;
}

}  // namespace covopt::testing
