#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "covopt/model.hpp"

namespace covopt {

/// W1 between two empirical distributions: the integral of |CDF_a - CDF_b|.
/// Throws ValidationError on empty or non-finite input.
double wasserstein_1d(std::span<const double> a, std::span<const double> b);

struct DistributionSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double std = 0.0;  // sample standard deviation, 0 when n == 1
  double min = 0.0;
  double max = 0.0;
};

DistributionSummary distribution_summary(std::span<const double> values);

/// Per-sequence scores (e.g. ATE in meters), kept in input order.
class ScoreTable {
 public:
  ScoreTable() = default;
  explicit ScoreTable(std::vector<std::pair<SequenceKey, double>> entries);

  const std::vector<std::pair<SequenceKey, double>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::optional<double> find(const SequenceKey& key) const;
  std::vector<double> values() const;

 private:
  std::vector<std::pair<SequenceKey, double>> entries_;
};

/// CSV with header `dataset,sequence,score`.
ScoreTable parse_scores(std::istream& in);
ScoreTable load_scores(const std::filesystem::path& path);

/// SplitMix64 of (seed, index); per-iteration generator seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// W1 from the pool to `iterations` uniformly drawn k-subsets of it (without
/// replacement). Iteration i uses its own generator seeded with
/// derive_seed(seed, i), so the output does not depend on `threads`.
std::vector<double> random_subset_distances(std::span<const double> pool, std::size_t k,
                                            std::uint64_t iterations, std::uint64_t seed,
                                            unsigned threads = 1);

/// W1 from the pool to every k-subset, in lexicographic index order.
std::vector<double> exhaustive_subset_distances(std::span<const double> pool, std::size_t k);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

struct RandomTestOptions {
  std::uint64_t iterations = 2000;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  // Exhaustive mode falls back to sampling above this many subsets.
  std::uint64_t exhaustive_cap = 1'000'000;
  unsigned threads = 1;
};

struct RandomTestResult {
  double candidate_distance = 0.0;
  DistributionSummary random;         // over the random-subset distances
  double p_value = 0.0;               // fraction of random subsets at least as close
  std::optional<double> ratio_to_mean;  // candidate_distance / random.mean
  std::uint64_t draws = 0;
  bool exhaustive = false;
  std::size_t subset_size = 0;
  std::size_t pool_size = 0;
};

/// Compares a candidate subset's score distribution with same-size random subsets.
RandomTestResult random_subset_test(const ScoreTable& scores, std::span<const SequenceKey> candidate,
                                    const RandomTestOptions& options);

}  // namespace covopt
