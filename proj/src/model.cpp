#include "covopt/model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "covopt/error.hpp"
#include "csv_util.hpp"

namespace covopt {
namespace {

using detail::csv_field;
using detail::parse_real;
using detail::split_csv_line;
using detail::trim;

constexpr std::string_view kCsvHeader = "dataset,sequence,metric,min,max,count";

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::int64_t parse_count(std::string_view text, std::size_t line_no) {
  std::int64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw ValidationError(fmt::format("line {}: count '{}' is not an integer", line_no, text));
  }
  if (v < 1) throw ValidationError(fmt::format("line {}: count must be >= 1, got {}", line_no, v));
  return v;
}

struct KeyHash {
  std::size_t operator()(const SequenceKey& k) const {
    return std::hash<std::string>{}(k.dataset) ^ (std::hash<std::string>{}(k.sequence) * 31u);
  }
};

Catalog parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<SequenceRecord> records;
  std::unordered_map<SequenceKey, std::size_t, KeyHash> index;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (!have_header) {
      const std::string joined = detail::join_fields(split_csv_line(line, line_no));
      if (joined != kCsvHeader) {
        throw ValidationError(
            fmt::format("line {}: expected header '{}', got '{}'", line_no, kCsvHeader, joined));
      }
      have_header = true;
      continue;
    }
    auto f = split_csv_line(line, line_no);
    if (f.size() != 6) {
      throw ValidationError(fmt::format("line {}: expected 6 fields, got {}", line_no, f.size()));
    }
    if (f[0].empty() || f[1].empty() || f[2].empty()) {
      throw ValidationError(
          fmt::format("line {}: dataset, sequence and metric must be non-empty", line_no));
    }
    const double lo = parse_real(f[3], line_no, "min");
    const double hi = parse_real(f[4], line_no, "max");
    if (lo > hi) {
      throw ValidationError(fmt::format("line {}: min {} exceeds max {}", line_no, f[3], f[4]));
    }
    const std::int64_t count = parse_count(f[5], line_no);

    SequenceKey key{f[0], f[1]};
    auto [it, inserted] = index.try_emplace(key, records.size());
    if (inserted) {
      records.push_back(SequenceRecord{key, count, {}});
    }
    SequenceRecord& rec = records[it->second];
    if (rec.count != count) {
      throw ValidationError(fmt::format("line {}: count {} for {} conflicts with earlier count {}",
                                        line_no, count, key.label(), rec.count));
    }
    if (!rec.intervals.emplace(f[2], Interval{lo, hi}).second) {
      throw ValidationError(fmt::format("line {}: duplicate row for ({}, {}, {})", line_no,
                                        key.dataset, key.sequence, f[2]));
    }
  }
  if (!have_header) throw ValidationError("catalog is empty: missing header");
  return Catalog(std::move(records));
}

Catalog parse_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(fmt::format("invalid JSON catalog: {}", e.what()));
  }
  if (!doc.is_object() || !doc.contains("sequences") || !doc["sequences"].is_array()) {
    throw ValidationError("JSON catalog must be an object with a 'sequences' array");
  }
  std::vector<SequenceRecord> records;
  std::size_t idx = 0;
  for (const auto& seq : doc["sequences"]) {
    const std::string where = fmt::format("sequences[{}]", idx++);
    if (!seq.is_object()) throw ValidationError(where + ": expected an object");
    for (const char* field : {"dataset", "sequence"}) {
      if (!seq.contains(field) || !seq[field].is_string() || seq[field].get<std::string>().empty()) {
        throw ValidationError(fmt::format("{}: '{}' must be a non-empty string", where, field));
      }
    }
    if (!seq.contains("count") || !seq["count"].is_number_integer()) {
      throw ValidationError(where + ": 'count' must be an integer");
    }
    SequenceRecord rec;
    rec.key = {seq["dataset"].get<std::string>(), seq["sequence"].get<std::string>()};
    rec.count = seq["count"].get<std::int64_t>();
    if (rec.count < 1) {
      throw ValidationError(fmt::format("{}: count must be >= 1, got {}", where, rec.count));
    }
    if (!seq.contains("metrics") || !seq["metrics"].is_object()) {
      throw ValidationError(where + ": 'metrics' must be an object");
    }
    for (const auto& [metric, values] : seq["metrics"].items()) {
      if (!values.is_array() || values.empty()) {
        throw ValidationError(
            fmt::format("{}: metric '{}' needs a non-empty array of values", where, metric));
      }
      double lo = 0.0;
      double hi = 0.0;
      bool first = true;
      for (const auto& v : values) {
        if (!v.is_number()) {
          throw ValidationError(fmt::format("{}: metric '{}' has a non-numeric value", where, metric));
        }
        const double x = v.get<double>();
        if (!std::isfinite(x)) {
          throw ValidationError(fmt::format("{}: metric '{}' has a non-finite value", where, metric));
        }
        lo = first ? x : std::min(lo, x);
        hi = first ? x : std::max(hi, x);
        first = false;
      }
      rec.intervals.emplace(metric, Interval{lo, hi});
    }
    records.push_back(std::move(rec));
  }
  return Catalog(std::move(records));
}

}  // namespace

Interval Interval::checked(double lo, double hi) {
  Interval iv{lo, hi};
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError(fmt::format("interval [{}, {}] has a non-finite bound", lo, hi));
  }
  if (lo > hi) throw ValidationError(fmt::format("interval [{}, {}] has min > max", lo, hi));
  return iv;
}

Catalog::Catalog(std::vector<SequenceRecord> records) : records_(std::move(records)) {
  std::unordered_map<SequenceKey, std::size_t, KeyHash> seen;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const SequenceRecord& rec = records_[i];
    if (rec.key.dataset.empty() || rec.key.sequence.empty()) {
      throw ValidationError(fmt::format("record {}: empty dataset or sequence name", i));
    }
    if (!seen.emplace(rec.key, i).second) {
      throw ValidationError(fmt::format("duplicate sequence {}", rec.key.label()));
    }
    if (rec.count < 1) {
      throw ValidationError(fmt::format("{}: count must be >= 1", rec.key.label()));
    }
    for (const auto& [metric, iv] : rec.intervals) {
      if (!iv.valid()) {
        throw ValidationError(fmt::format("{}: invalid interval [{}, {}] for metric '{}'",
                                          rec.key.label(), iv.lo, iv.hi, metric));
      }
      metrics_.insert(metric);
    }
  }
}

const SequenceRecord* Catalog::find(const SequenceKey& key) const {
  auto it = std::find_if(records_.begin(), records_.end(),
                         [&](const SequenceRecord& r) { return r.key == key; });
  return it == records_.end() ? nullptr : &*it;
}

Catalog parse_catalog(std::istream& in, CatalogFormat format) {
  return format == CatalogFormat::kVectorsJson ? parse_json(in) : parse_csv(in);
}

Catalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open catalog '{}'", path.string()));
  const auto format =
      path.extension() == ".json" ? CatalogFormat::kVectorsJson : CatalogFormat::kIntervalsCsv;
  return parse_catalog(in, format);
}

void write_intervals_csv(std::ostream& out, const Catalog& catalog) {
  out << kCsvHeader << '\n';
  for (const SequenceRecord& rec : catalog.records()) {
    for (const auto& [metric, iv] : rec.intervals) {
      out << csv_field(rec.key.dataset) << ',' << csv_field(rec.key.sequence) << ','
          << csv_field(metric) << ',' << shortest(iv.lo) << ',' << shortest(iv.hi) << ','
          << rec.count << '\n';
    }
  }
}

Instance make_instance(MetricId metric, std::vector<InstanceItem> items, double gap_tol) {
  if (items.empty()) {
    throw ValidationError(fmt::format("metric '{}' has no sequences", metric));
  }
  if (!(gap_tol >= 0.0) || !std::isfinite(gap_tol)) {
    throw ValidationError(fmt::format("gap tolerance must be finite and >= 0, got {}", gap_tol));
  }
  std::vector<Interval> ivs;
  ivs.reserve(items.size());
  for (const InstanceItem& item : items) {
    if (!item.interval.valid()) {
      throw ValidationError(fmt::format("{}: invalid interval [{}, {}]", item.key.label(),
                                        item.interval.lo, item.interval.hi));
    }
    if (item.count < 1) throw ValidationError(item.key.label() + ": count must be >= 1");
    ivs.push_back(item.interval);
  }
  Instance inst;
  inst.metric = std::move(metric);
  inst.items = std::move(items);
  inst.target = union_of(ivs, gap_tol);
  inst.gap_tol = gap_tol;
  return inst;
}

Instance build_instance(const Catalog& catalog, const MetricId& metric, double gap_tol) {
  if (!catalog.has_metric(metric)) {
    std::string available;
    for (const auto& m : catalog.metrics()) available += (available.empty() ? "" : ", ") + m;
    throw UnknownMetricError(
        fmt::format("unknown metric '{}'; available: {}", metric, available.empty() ? "(none)" : available));
  }
  std::vector<InstanceItem> items;
  for (const SequenceRecord& rec : catalog.records()) {
    auto it = rec.intervals.find(metric);
    if (it != rec.intervals.end()) items.push_back({rec.key, it->second, rec.count});
  }
  return make_instance(metric, std::move(items), gap_tol);
}

}  // namespace covopt
