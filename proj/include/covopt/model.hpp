#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "covopt/coverage.hpp"
#include "covopt/interval.hpp"

namespace covopt {

using MetricId = std::string;

struct SequenceKey {
  std::string dataset;
  std::string sequence;

  /// "dataset/sequence"
  std::string label() const { return dataset + "/" + sequence; }

  friend auto operator<=>(const SequenceKey&, const SequenceKey&) = default;
  friend bool operator==(const SequenceKey&, const SequenceKey&) = default;
};

/// One dataset sequence: its measurement count and per-metric characterization interval.
struct SequenceRecord {
  SequenceKey key;
  std::int64_t count = 1;
  std::map<MetricId, Interval> intervals;

  friend bool operator==(const SequenceRecord&, const SequenceRecord&) = default;
};

/// Ordered pool of sequences. Record order is significant: it is the baseline
/// sweep order.
class Catalog {
 public:
  Catalog() = default;

  /// Validates records (unique keys, count >= 1, valid intervals).
  explicit Catalog(std::vector<SequenceRecord> records);

  const std::vector<SequenceRecord>& records() const { return records_; }
  const std::set<MetricId>& metrics() const { return metrics_; }
  std::size_t size() const { return records_.size(); }
  bool has_metric(const MetricId& metric) const { return metrics_.count(metric) != 0; }

  /// nullptr when absent.
  const SequenceRecord* find(const SequenceKey& key) const;

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<SequenceRecord> records_;
  std::set<MetricId> metrics_;
};

enum class CatalogFormat { kIntervalsCsv, kVectorsJson };

/// Parses `dataset,sequence,metric,min,max,count` rows, or the full-vector JSON form
/// where each metric interval is the [min, max] of its samples.
Catalog parse_catalog(std::istream& in, CatalogFormat format);

/// Picks the format from the extension (.json means vectors-json).
Catalog load_catalog(const std::filesystem::path& path);

void write_intervals_csv(std::ostream& out, const Catalog& catalog);

struct InstanceItem {
  SequenceKey key;
  Interval interval;
  std::int64_t count = 1;
};

/// A pool paired with one characterization metric. The target is the union of
/// every item interval.
struct Instance {
  MetricId metric;
  std::vector<InstanceItem> items;
  CoverageSet target;
  double gap_tol = 0.0;

  std::size_t size() const { return items.size(); }
};

/// Validates and wraps items; the target is computed here.
Instance make_instance(MetricId metric, std::vector<InstanceItem> items, double gap_tol = 0.0);

/// Every record carrying `metric`, in catalog order.
Instance build_instance(const Catalog& catalog, const MetricId& metric, double gap_tol = 0.0);

}  // namespace covopt
