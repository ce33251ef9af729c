#include "covopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "covopt/error.hpp"
#include "csv_util.hpp"

namespace covopt {
namespace {

void check_sample(std::span<const double> v, const char* name) {
  if (v.empty()) throw ValidationError(fmt::format("{}: sample is empty", name));
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(fmt::format("{}: non-finite value", name));
  }
}

// Both inputs sorted ascending and non-empty.
double w1_sorted(std::span<const double> a, std::span<const double> b) {
  const std::size_t na = a.size(), nb = b.size();
  std::size_t i = 0, j = 0;
  double prev = std::min(a[0], b[0]);
  double area = 0.0;  // in units of 1 / (na * nb)
  while (i < na || j < nb) {
    const double x = (j >= nb || (i < na && a[i] <= b[j])) ? a[i] : b[j];
    const double gap = static_cast<double>(i) * static_cast<double>(nb) -
                       static_cast<double>(j) * static_cast<double>(na);
    area += std::abs(gap) * (x - prev);
    while (i < na && a[i] == x) ++i;
    while (j < nb && b[j] == x) ++j;
    prev = x;
  }
  return area / (static_cast<double>(na) * static_cast<double>(nb));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased integer in [0, bound) by rejection.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

double wasserstein_1d(std::span<const double> a, std::span<const double> b) {
  check_sample(a, "wasserstein_1d(a)");
  check_sample(b, "wasserstein_1d(b)");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return w1_sorted(sa, sb);
}

DistributionSummary distribution_summary(std::span<const double> values) {
  check_sample(values, "distribution_summary");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  DistributionSummary s;
  s.n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(s.n);
  s.median = s.n % 2 ? v[s.n / 2] : 0.5 * (v[s.n / 2 - 1] + v[s.n / 2]);
  if (s.n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

ScoreTable::ScoreTable(std::vector<std::pair<SequenceKey, double>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw ValidationError("score table is empty");
  std::set<SequenceKey> seen;
  for (const auto& [key, value] : entries_) {
    if (!std::isfinite(value)) throw ValidationError(key.label() + ": score is not finite");
    if (!seen.insert(key).second) throw ValidationError("duplicate score for " + key.label());
  }
}

std::optional<double> ScoreTable::find(const SequenceKey& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::vector<double> ScoreTable::values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

ScoreTable parse_scores(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<std::pair<SequenceKey, double>> entries;
  std::set<SequenceKey> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto f = detail::split_csv_line(line, line_no);
    if (!have_header) {
      if (detail::join_fields(f) != "dataset,sequence,score") {
        throw ValidationError(fmt::format(
            "line {}: expected header 'dataset,sequence,score', got '{}'", line_no, detail::join_fields(f)));
      }
      have_header = true;
      continue;
    }
    if (f.size() != 3) {
      throw ValidationError(fmt::format("line {}: expected 3 fields, got {}", line_no, f.size()));
    }
    if (f[0].empty() || f[1].empty()) {
      throw ValidationError(fmt::format("line {}: dataset and sequence must be non-empty", line_no));
    }
    SequenceKey key{f[0], f[1]};
    if (!seen.insert(key).second) {
      throw ValidationError(fmt::format("line {}: duplicate score for {}", line_no, key.label()));
    }
    entries.emplace_back(std::move(key), detail::parse_real(f[2], line_no, "score"));
  }
  if (!have_header) throw ValidationError("score file is empty: missing header");
  return ScoreTable(std::move(entries));
}

ScoreTable load_scores(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open score file '{}'", path.string()));
  return parse_scores(in);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index));
}

std::vector<double> random_subset_distances(std::span<const double> pool, std::size_t k,
                                            std::uint64_t iterations, std::uint64_t seed,
                                            unsigned threads) {
  check_sample(pool, "random_subset_distances");
  if (k == 0 || k > pool.size()) {
    throw ValidationError(fmt::format("subset size {} outside [1, {}]", k, pool.size()));
  }
  std::vector<double> sorted_pool(pool.begin(), pool.end());
  std::sort(sorted_pool.begin(), sorted_pool.end());

  std::vector<double> out(iterations);
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<std::size_t> idx(pool.size());
    std::vector<double> sub(k);
    for (std::uint64_t it = begin; it < end; ++it) {
      std::mt19937_64 rng(derive_seed(seed, it));
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      // Partial Fisher-Yates: the first k slots are a uniform k-subset.
      for (std::size_t s = 0; s < k; ++s) {
        const auto r = s + static_cast<std::size_t>(uniform_below(rng, idx.size() - s));
        std::swap(idx[s], idx[r]);
        sub[s] = pool[idx[s]];
      }
      std::sort(sub.begin(), sub.end());
      out[it] = w1_sorted(sub, sorted_pool);
    }
  };

  threads = std::max(1u, threads);
  if (threads == 1 || iterations < 2) {
    run(0, iterations);
    return out;
  }
  std::vector<std::thread> workers;
  const std::uint64_t chunk = (iterations + threads - 1) / threads;
  for (std::uint64_t begin = 0; begin < iterations; begin += chunk) {
    workers.emplace_back(run, begin, std::min(iterations, begin + chunk));
  }
  for (auto& w : workers) w.join();
  return out;
}

std::vector<double> exhaustive_subset_distances(std::span<const double> pool, std::size_t k) {
  check_sample(pool, "exhaustive_subset_distances");
  const std::size_t n = pool.size();
  if (k == 0 || k > n) throw ValidationError(fmt::format("subset size {} outside [1, {}]", k, n));
  std::vector<double> sorted_pool(pool.begin(), pool.end());
  std::sort(sorted_pool.begin(), sorted_pool.end());

  std::vector<double> out;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::vector<double> sub(k);
  for (;;) {
    for (std::size_t s = 0; s < k; ++s) sub[s] = pool[idx[s]];
    std::sort(sub.begin(), sub.end());
    out.push_back(w1_sorted(sub, sorted_pool));
    // Advance to the next combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t s = pos; s < k; ++s) idx[s] = idx[s - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(acc);
}

RandomTestResult random_subset_test(const ScoreTable& scores, std::span<const SequenceKey> candidate,
                                    const RandomTestOptions& options) {
  if (candidate.empty()) throw ValidationError("candidate subset is empty");
  std::set<SequenceKey> unique;
  std::vector<double> cand_values;
  for (const SequenceKey& key : candidate) {
    if (!unique.insert(key).second) throw ValidationError("candidate lists " + key.label() + " twice");
    auto v = scores.find(key);
    if (!v) throw ValidationError("candidate " + key.label() + " has no score");
    cand_values.push_back(*v);
  }
  const std::vector<double> pool = scores.values();
  if (candidate.size() >= pool.size()) {
    throw ValidationError("candidate covers the full score table; its distance is trivially 0");
  }
  if (!options.exhaustive && options.iterations == 0) {
    throw ValidationError("iterations must be >= 1");
  }

  RandomTestResult r;
  r.subset_size = candidate.size();
  r.pool_size = pool.size();
  r.candidate_distance = wasserstein_1d(cand_values, pool);

  std::vector<double> distances;
  if (options.exhaustive && binomial(pool.size(), candidate.size()) <= options.exhaustive_cap) {
    distances = exhaustive_subset_distances(pool, candidate.size());
    r.exhaustive = true;
  } else {
    distances = random_subset_distances(pool, candidate.size(), options.iterations, options.seed,
                                        options.threads);
  }
  r.draws = distances.size();
  r.random = distribution_summary(distances);

  // Relative slack so a random draw of the candidate's own multiset counts as a tie.
  const double bound = r.candidate_distance * (1.0 + 1e-12);
  const auto closer = std::count_if(distances.begin(), distances.end(),
                                    [bound](double d) { return d <= bound; });
  r.p_value = static_cast<double>(closer) / static_cast<double>(distances.size());
  if (r.random.mean > 0.0) r.ratio_to_mean = r.candidate_distance / r.random.mean;
  return r;
}

}  // namespace covopt
