#include "covopt/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "covopt/error.hpp"
#include "covopt/model.hpp"
#include "covopt/multi.hpp"
#include "covopt/oracle.hpp"
#include "covopt/report.hpp"
#include "covopt/select_dp.hpp"
#include "covopt/select_greedy.hpp"
#include "covopt/stats.hpp"
#include "csv_util.hpp"

namespace covopt {
namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::string> kFormats = {"json", "csv", "markdown"};
const std::vector<std::string> kDefaultMethods = {"all",    "baseline", "ls-greedy",
                                                  "ls-dp",  "lc-greedy", "lc-dp"};

// Machine formats carry 6 significant digits.
double sig6(double x) { return std::stod(fmt::format("{:.6g}", x)); }
std::string csv6(double x) { return fmt::format("{:.6g}", x); }
std::string md2(double x) { return fmt::format("{:.2f}", x); }

Json num(std::optional<double> x) { return x ? Json(sig6(*x)) : Json(nullptr); }
std::string csv_opt(std::optional<double> x) { return x ? csv6(*x) : ""; }
std::string md_opt(std::optional<double> x) { return x ? md2(*x) : "n/a"; }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = std::string(detail::trim(item));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

Json key_json(const SequenceKey& k) { return Json{{"dataset", k.dataset}, {"sequence", k.sequence}}; }

std::vector<std::string> sequence_names(const std::vector<SequenceKey>& keys) {
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(k.sequence);
  return out;
}

std::vector<std::string> key_labels(const std::vector<SequenceKey>& keys) {
  std::vector<std::string> out;
  for (const auto& k : keys) out.push_back(k.label());
  return out;
}

Json summary_json(const DistributionSummary& s) {
  return Json{{"n", s.n},           {"mean", sig6(s.mean)}, {"median", sig6(s.median)},
              {"std", sig6(s.std)}, {"min", sig6(s.min)},   {"max", sig6(s.max)}};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("COVOPT_SEED"); env && *env) {
    std::uint64_t v = 0;
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw UsageError(fmt::format("COVOPT_SEED='{}' is not a non-negative integer", text));
    }
    return v;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Shared option bundles

struct MetricArgs {
  std::string metric;
  std::string metrics;

  std::vector<MetricId> resolve(const Catalog& catalog) const {
    if (!metric.empty()) return {metric};
    if (!metrics.empty()) return split_list(metrics);
    return {catalog.metrics().begin(), catalog.metrics().end()};
  }
};

struct SelectorArgs {
  std::string objective = "ls";
  std::string algorithm = "dp";
  std::string heuristic;
  std::size_t brute_limit = kDefaultBruteLimit;
};

SelectionResult run_selector(const Instance& inst, Objective objective, Algorithm algorithm,
                             std::optional<Heuristic> heuristic, std::size_t brute_limit) {
  switch (algorithm) {
    case Algorithm::kGreedy: return greedy_select(inst, objective, heuristic);
    case Algorithm::kDp: return dp_select(inst, objective);
    case Algorithm::kBrute: return brute_force_select(inst, objective, brute_limit);
    case Algorithm::kBaseline: return baseline_select(inst, objective);
  }
  throw UsageError("unknown algorithm");
}

// ---------------------------------------------------------------------------
// coverage

struct CoverageRow {
  MetricId metric;
  Instance inst;
  std::int64_t total = 0;
  std::optional<double> cost;
};

void emit_coverage(std::ostream& out, const std::vector<CoverageRow>& rows, const std::string& format) {
  if (format == "json") {
    Json results = Json::array();
    for (const auto& r : rows) {
      Json pieces = Json::array();
      for (const auto& p : r.inst.target.pieces()) pieces.push_back({sig6(p.lo), sig6(p.hi)});
      results.push_back(Json{{"metric", r.metric},
                             {"pool_size", r.inst.size()},
                             {"pieces", pieces},
                             {"span_lo", sig6(r.inst.target.span_lo())},
                             {"span_hi", sig6(r.inst.target.span_hi())},
                             {"span", sig6(r.inst.target.span())},
                             {"epsilon", sig6(r.inst.target.epsilon())},
                             {"measure", sig6(r.inst.target.measure())},
                             {"total_measurements", r.total},
                             {"cost", num(r.cost)}});
    }
    out << Json{{"command", "coverage"}, {"results", results}}.dump(2) << '\n';
  } else if (format == "csv") {
    out << "metric,pool_size,piece_count,span_lo,span_hi,span,epsilon,measure,total_measurements,cost\n";
    for (const auto& r : rows) {
      const auto& t = r.inst.target;
      out << detail::csv_field(r.metric) << ',' << r.inst.size() << ',' << t.pieces().size() << ','
          << csv6(t.span_lo()) << ',' << csv6(t.span_hi()) << ',' << csv6(t.span()) << ','
          << csv6(t.epsilon()) << ',' << csv6(t.measure()) << ',' << r.total << ','
          << csv_opt(r.cost) << '\n';
    }
  } else {
    out << "| Metric | # seq. | Span | ε | \\|ΔQ\\| | Pieces | C(Q) |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
      const auto& t = r.inst.target;
      out << "| " << r.metric << " | " << r.inst.size() << " | [" << md2(t.span_lo()) << ", "
          << md2(t.span_hi()) << "] | " << md2(t.epsilon()) << " | " << md2(t.measure()) << " | "
          << t.pieces().size() << " | " << md_opt(r.cost) << " |\n";
    }
  }
}

// ---------------------------------------------------------------------------
// select

struct SelectRow {
  Instance inst;
  SelectionResult result;
  std::optional<Heuristic> heuristic;
};

Json selection_json(const SelectRow& row) {
  const auto& r = row.result;
  Json keys = Json::array();
  for (const auto& k : r.subset) keys.push_back(key_json(k));
  Json j{{"metric", row.inst.metric},
         {"algorithm", std::string(to_string(r.algorithm))},
         {"objective", std::string(to_string(r.objective))}};
  if (row.heuristic) j["heuristic"] = std::string(to_string(*row.heuristic));
  j["pool_size"] = row.inst.size();
  j["subset"] = sequence_names(r.subset);
  j["subset_keys"] = keys;
  j["size"] = r.size();
  j["percent"] = sig6(r.percent);
  j["cost"] = num(r.cost);
  j["total_measurements"] = r.total_measurements;
  j["measure"] = sig6(r.cov.measure());
  j["target_measure"] = sig6(row.inst.target.measure());
  j["reduction_percent"] = sig6(reduction_percent(r.size(), row.inst.size()));
  return j;
}

void emit_select(std::ostream& out, const std::vector<SelectRow>& rows, const std::string& format) {
  if (format == "json") {
    Json results = Json::array();
    for (const auto& row : rows) results.push_back(selection_json(row));
    out << Json{{"command", "select"}, {"results", results}}.dump(2) << '\n';
  } else if (format == "csv") {
    out << "metric,algorithm,objective,pool_size,size,percent,cost,total_measurements,reduction_percent,subset\n";
    for (const auto& row : rows) {
      const auto& r = row.result;
      out << detail::csv_field(row.inst.metric) << ',' << to_string(r.algorithm) << ','
          << to_string(r.objective) << ',' << row.inst.size() << ',' << r.size() << ','
          << csv6(r.percent) << ',' << csv_opt(r.cost) << ',' << r.total_measurements << ','
          << csv6(reduction_percent(r.size(), row.inst.size())) << ','
          << detail::csv_field(join(key_labels(r.subset), ";")) << '\n';
    }
  } else {
    out << "| Characterization Metric | subset Q̃ | # seq. ñ | Reduction % | C(Q̃) | P(Q̃) |\n";
    out << "|---|---|---|---|---|---|\n";
    for (const auto& row : rows) {
      const auto& r = row.result;
      out << "| " << row.inst.metric << " | " << join(sequence_names(r.subset), ", ") << " | "
          << r.size() << " | " << md2(reduction_percent(r.size(), row.inst.size())) << " % | "
          << md_opt(r.cost) << " | " << md2(r.percent) << " |\n";
    }
  }
}

// ---------------------------------------------------------------------------
// multi

void emit_multi(std::ostream& out, const Catalog& catalog, const MultiResult& m,
                const std::vector<CurvePoint>& curve, Objective objective, Algorithm algorithm,
                const std::string& format) {
  const double reduction = reduction_percent(m.joint.size(), catalog.size());
  if (format == "json") {
    Json per = Json::array();
    for (std::size_t i = 0; i < m.metrics.size(); ++i) {
      const auto& r = m.per_metric[i];
      per.push_back(Json{{"metric", m.metrics[i]},
                         {"subset", sequence_names(r.subset)},
                         {"size", r.size()},
                         {"percent", sig6(r.percent)},
                         {"cost", num(r.cost)}});
    }
    Json joint_keys = Json::array();
    for (const auto& k : m.joint) joint_keys.push_back(key_json(k));
    Json curve_j = Json::array();
    for (const auto& p : curve) curve_j.push_back(Json{{"k", p.k}, {"joint_size", p.joint_size}});
    out << Json{{"command", "multi"},
                {"objective", std::string(to_string(objective))},
                {"algorithm", std::string(to_string(algorithm))},
                {"metrics", m.metrics},
                {"pool_size", catalog.size()},
                {"joint", sequence_names(m.joint)},
                {"joint_keys", joint_keys},
                {"joint_size", m.joint.size()},
                {"reduction_percent", sig6(reduction)},
                {"per_metric", per},
                {"curve", curve_j}}
               .dump(2)
        << '\n';
  } else if (format == "csv") {
    out << "k,metric,metric_size,joint_size\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      out << curve[i].k << ',' << detail::csv_field(m.metrics[i]) << ',' << m.per_metric[i].size()
          << ',' << curve[i].joint_size << '\n';
    }
  } else {
    out << "Joint subset (" << m.joint.size() << " of " << catalog.size() << ", reduction "
        << md2(reduction) << " %): " << join(key_labels(m.joint), ", ") << "\n\n";
    out << "| k | Added metric | ñ (metric) | ñ (joint) |\n|---|---|---|---|\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
      out << "| " << curve[i].k << " | " << m.metrics[i] << " | " << m.per_metric[i].size() << " | "
          << curve[i].joint_size << " |\n";
    }
  }
}

// ---------------------------------------------------------------------------
// stats

std::vector<SequenceKey> resolve_candidate(const ScoreTable& scores, const std::string& list) {
  std::vector<SequenceKey> out;
  for (const std::string& item : split_list(list)) {
    const auto slash = item.find('/');
    if (slash != std::string::npos) {
      out.push_back({item.substr(0, slash), item.substr(slash + 1)});
      continue;
    }
    std::optional<SequenceKey> match;
    for (const auto& [key, value] : scores.entries()) {
      if (key.sequence != item) continue;
      if (match) throw ValidationError(fmt::format("sequence '{}' is ambiguous; use dataset/sequence", item));
      match = key;
    }
    if (!match) throw ValidationError(fmt::format("sequence '{}' has no score", item));
    out.push_back(*match);
  }
  if (out.empty()) throw ValidationError("candidate list is empty");
  return out;
}

std::vector<SequenceKey> candidate_from_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open report '{}'", path));
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(fmt::format("report '{}' is not valid JSON: {}", path, e.what()));
  }
  const Json* keys = nullptr;
  if (doc.contains("joint_keys")) {
    keys = &doc["joint_keys"];
  } else if (doc.contains("results") && doc["results"].is_array() && doc["results"].size() == 1 &&
             doc["results"][0].contains("subset_keys")) {
    keys = &doc["results"][0]["subset_keys"];
  } else {
    throw ValidationError(fmt::format(
        "report '{}' must be a multi report or a select report with exactly one result", path));
  }
  std::vector<SequenceKey> out;
  for (const auto& k : *keys) {
    if (!k.contains("dataset") || !k.contains("sequence") || !k["dataset"].is_string() ||
        !k["sequence"].is_string()) {
      throw ValidationError(fmt::format("report '{}' has a malformed subset key", path));
    }
    out.push_back({k["dataset"].get<std::string>(), k["sequence"].get<std::string>()});
  }
  return out;
}

std::vector<double> values_for(const ScoreTable& scores, const std::vector<SequenceKey>& keys) {
  std::vector<double> out;
  for (const auto& k : keys) {
    auto v = scores.find(k);
    if (!v) throw ValidationError("candidate " + k.label() + " has no score");
    out.push_back(*v);
  }
  return out;
}

void emit_summary_md(std::ostream& out, const std::string& label, const DistributionSummary& s) {
  out << "| " << label << " | " << s.n << " | " << md2(s.mean) << " | " << md2(s.median) << " | "
      << md2(s.std) << " | " << md2(s.min) << " | " << md2(s.max) << " |\n";
}

void emit_summary_csv(std::ostream& out, const std::string& label, const DistributionSummary& s) {
  out << label << ',' << s.n << ',' << csv6(s.mean) << ',' << csv6(s.median) << ',' << csv6(s.std)
      << ',' << csv6(s.min) << ',' << csv6(s.max) << '\n';
}

// ---------------------------------------------------------------------------
// report aggregate

struct Method {
  std::string name;
  bool full_pool = false;
  Objective objective = Objective::kLeastSequences;
  Algorithm algorithm = Algorithm::kBaseline;
};

Method parse_method(const std::string& name) {
  if (name == "all") return {name, true};
  if (name == "baseline") return {name, false, Objective::kLeastSequences, Algorithm::kBaseline};
  const auto dash = name.find('-');
  if (dash == std::string::npos) throw UsageError(fmt::format("unknown method '{}'", name));
  return {name, false, parse_objective(name.substr(0, dash)), parse_algorithm(name.substr(dash + 1))};
}

std::vector<std::pair<MetricId, std::string>> load_groups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open group file '{}'", path));
  std::vector<std::pair<MetricId, std::string>> out;
  std::set<MetricId> seen;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto f = detail::split_csv_line(line, line_no);
    if (!have_header) {
      if (detail::join_fields(f) != "metric,group") {
        throw ValidationError(fmt::format("line {}: expected header 'metric,group'", line_no));
      }
      have_header = true;
      continue;
    }
    if (f.size() != 2 || f[0].empty() || f[1].empty()) {
      throw ValidationError(fmt::format("line {}: expected 'metric,group'", line_no));
    }
    if (!seen.insert(f[0]).second) {
      throw ValidationError(fmt::format("line {}: metric '{}' listed twice", line_no, f[0]));
    }
    out.emplace_back(f[0], f[1]);
  }
  if (out.empty()) throw ValidationError(fmt::format("group file '{}' has no rows", path));
  return out;
}

// ---------------------------------------------------------------------------

void add_format(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(kFormats));
}

void add_metric_options(CLI::App* cmd, MetricArgs& m) {
  auto* single = cmd->add_option("--metric", m.metric, "Characterization metric");
  auto* multi = cmd->add_option("--metrics", m.metrics, "Comma-separated metrics (default: all)");
  single->excludes(multi);
}

void add_selector_options(CLI::App* cmd, SelectorArgs& s) {
  cmd->add_option("--objective", s.objective, "ls (fewest sequences) or lc (lowest cost)")
      ->check(CLI::IsMember({"ls", "lc"}));
  cmd->add_option("--algorithm", s.algorithm, "Selector")
      ->check(CLI::IsMember({"greedy", "dp", "brute", "baseline"}));
  cmd->add_option("--heuristic", s.heuristic, "Greedy ranking")
      ->check(CLI::IsMember({"atc", "cost", "min-start"}));
  cmd->add_option("--brute-limit", s.brute_limit, "Largest pool the brute-force oracle accepts")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dynamic-range coverage analysis and evaluation-subset selection", "covopt"};
  app.require_subcommand(1);

  std::string format = "json";
  std::string catalog_path;
  double gap_tol = 0.0;
  MetricArgs metric_args;
  SelectorArgs sel;
  std::string order = "given";
  std::string scores_path, other_path, candidate_list, report_path, groups_path, methods;
  std::uint64_t iterations = 2000;
  std::optional<std::uint64_t> seed;
  bool exhaustive = false;

  auto* coverage = app.add_subcommand("coverage", "Dynamic-range coverage of the full pool per metric");
  coverage->add_option("--catalog", catalog_path, "Catalog (.csv intervals or .json vectors)")->required();
  add_metric_options(coverage, metric_args);
  coverage->add_option("--gap-tol", gap_tol, "Close gaps no wider than this")->check(CLI::NonNegativeNumber);
  add_format(coverage, format);

  auto* select = app.add_subcommand("select", "Select a fully covering subset per metric");
  select->add_option("--catalog", catalog_path, "Catalog (.csv intervals or .json vectors)")->required();
  add_metric_options(select, metric_args);
  add_selector_options(select, sel);
  select->add_option("--gap-tol", gap_tol, "Close gaps no wider than this")->check(CLI::NonNegativeNumber);
  add_format(select, format);

  auto* multi = app.add_subcommand("multi", "Joint subset over several metrics (set union)");
  multi->add_option("--catalog", catalog_path, "Catalog (.csv intervals or .json vectors)")->required();
  multi->add_option("--metrics", metric_args.metrics, "Comma-separated metrics (default: all)");
  multi->add_option("--objective", sel.objective, "ls or lc")->check(CLI::IsMember({"ls", "lc"}));
  multi->add_option("--algorithm", sel.algorithm, "greedy or dp")->check(CLI::IsMember({"greedy", "dp"}));
  multi->add_option("--order", order, "Metric order for the growth curve")
      ->check(CLI::IsMember({"given", "alpha"}));
  multi->add_option("--gap-tol", gap_tol, "Close gaps no wider than this")->check(CLI::NonNegativeNumber);
  add_format(multi, format);

  auto* stats = app.add_subcommand("stats", "Score-distribution checks for a selected subset");
  stats->require_subcommand(1);
  auto* wass = stats->add_subcommand("wasserstein", "W1 between a candidate subset (or another table) and the full scores");
  wass->add_option("--scores", scores_path, "Scores CSV (dataset,sequence,score)")->required();
  auto* w_cand = wass->add_option("--candidate", candidate_list, "Comma-separated dataset/sequence keys");
  auto* w_rep = wass->add_option("--from-report", report_path, "select/multi JSON report holding the subset");
  auto* w_other = wass->add_option("--other", other_path, "Second scores CSV to compare against");
  w_cand->excludes(w_rep)->excludes(w_other);
  w_rep->excludes(w_other);
  add_format(wass, format);

  auto* rtest = stats->add_subcommand("random-test", "Candidate vs same-size random subsets");
  rtest->add_option("--scores", scores_path, "Scores CSV (dataset,sequence,score)")->required();
  auto* r_cand = rtest->add_option("--candidate", candidate_list, "Comma-separated dataset/sequence keys");
  auto* r_rep = rtest->add_option("--from-report", report_path, "select/multi JSON report holding the subset");
  r_cand->excludes(r_rep);
  rtest->add_option("--iterations", iterations, "Random subsets to draw")->check(CLI::PositiveNumber);
  rtest->add_option("--seed", seed, "Generator seed (fallback: COVOPT_SEED, then 0)");
  rtest->add_flag("--exhaustive", exhaustive, "Enumerate every same-size subset when feasible");
  add_format(rtest, format);

  auto* report = app.add_subcommand("report", "Aggregated reports");
  report->require_subcommand(1);
  auto* aggregate = report->add_subcommand("aggregate", "Per-group means of C, P and subset size");
  aggregate->add_option("--catalog", catalog_path, "Catalog (.csv intervals or .json vectors)")->required();
  aggregate->add_option("--groups", groups_path, "CSV with header metric,group")->required();
  aggregate->add_option("--methods", methods, "Comma-separated: all,baseline,{ls,lc}-{greedy,dp,brute}");
  aggregate->add_option("--brute-limit", sel.brute_limit, "Largest pool the brute-force oracle accepts")
      ->check(CLI::PositiveNumber);
  aggregate->add_option("--gap-tol", gap_tol, "Close gaps no wider than this")->check(CLI::NonNegativeNumber);
  add_format(aggregate, format);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  std::ostringstream buf;
  try {
    if (coverage->parsed()) {
      const Catalog catalog = load_catalog(catalog_path);
      std::vector<CoverageRow> rows;
      for (const MetricId& m : metric_args.resolve(catalog)) {
        CoverageRow row{m, build_instance(catalog, m, gap_tol), 0, std::nullopt};
        std::vector<std::int64_t> counts;
        for (const auto& it : row.inst.items) counts.push_back(it.count);
        for (auto c : counts) row.total += c;
        if (row.inst.target.measure() > 0.0) row.cost = coverage_cost(counts, row.inst.target);
        rows.push_back(std::move(row));
      }
      emit_coverage(buf, rows, format);
    } else if (select->parsed()) {
      const Objective objective = parse_objective(sel.objective);
      const Algorithm algorithm = parse_algorithm(sel.algorithm);
      std::optional<Heuristic> heuristic;
      if (!sel.heuristic.empty()) {
        if (algorithm != Algorithm::kGreedy) throw UsageError("--heuristic applies only to --algorithm greedy");
        heuristic = parse_heuristic(sel.heuristic);
      }
      if (algorithm == Algorithm::kGreedy && !heuristic) heuristic = default_heuristic(objective);
      const Catalog catalog = load_catalog(catalog_path);
      std::vector<SelectRow> rows;
      for (const MetricId& m : metric_args.resolve(catalog)) {
        Instance inst = build_instance(catalog, m, gap_tol);
        SelectionResult r = run_selector(inst, objective, algorithm, heuristic, sel.brute_limit);
        rows.push_back({std::move(inst), std::move(r), heuristic});
      }
      emit_select(buf, rows, format);
    } else if (multi->parsed()) {
      const Objective objective = parse_objective(sel.objective);
      const Algorithm algorithm = parse_algorithm(sel.algorithm);
      const Catalog catalog = load_catalog(catalog_path);
      auto metrics = metric_args.resolve(catalog);
      if (order == "alpha") std::sort(metrics.begin(), metrics.end());
      const MultiResult m = multi_select_union(catalog, metrics, objective, algorithm, gap_tol);
      emit_multi(buf, catalog, m, joint_coverage_curve(m), objective, algorithm, format);
    } else if (wass->parsed()) {
      const ScoreTable scores = load_scores(scores_path);
      std::string label_a;
      std::vector<double> a;
      if (!other_path.empty()) {
        a = load_scores(other_path).values();
        label_a = "other";
      } else {
        if (candidate_list.empty() && report_path.empty()) {
          throw UsageError("stats wasserstein needs --candidate, --from-report or --other");
        }
        const auto keys = report_path.empty() ? resolve_candidate(scores, candidate_list)
                                              : candidate_from_report(report_path);
        a = values_for(scores, keys);
        label_a = "candidate";
      }
      const std::vector<double> b = scores.values();
      const double d = wasserstein_1d(a, b);
      const auto sa = distribution_summary(a);
      const auto sb = distribution_summary(b);
      if (format == "json") {
        buf << Json{{"command", "stats wasserstein"}, {"distance", sig6(d)},
                    {label_a, summary_json(sa)}, {"full", summary_json(sb)}}
                   .dump(2)
            << '\n';
      } else if (format == "csv") {
        buf << "set,n,mean,median,std,min,max\n";
        emit_summary_csv(buf, label_a, sa);
        emit_summary_csv(buf, "full", sb);
        buf << "distance," << csv6(d) << '\n';
      } else {
        buf << "Wasserstein distance: " << md2(d) << "\n\n";
        buf << "| Set | n | Mean | Median | Std | Min | Max |\n|---|---|---|---|---|---|---|\n";
        emit_summary_md(buf, label_a, sa);
        emit_summary_md(buf, "full", sb);
      }
    } else if (rtest->parsed()) {
      const ScoreTable scores = load_scores(scores_path);
      if (candidate_list.empty() && report_path.empty()) {
        throw UsageError("stats random-test needs --candidate or --from-report");
      }
      const auto keys = report_path.empty() ? resolve_candidate(scores, candidate_list)
                                            : candidate_from_report(report_path);
      RandomTestOptions opts;
      opts.iterations = iterations;
      opts.seed = resolve_seed(seed);
      opts.exhaustive = exhaustive;
      const RandomTestResult r = random_subset_test(scores, keys, opts);
      if (format == "json") {
        buf << Json{{"command", "stats random-test"},
                    {"subset_size", r.subset_size},
                    {"pool_size", r.pool_size},
                    {"candidate_distance", sig6(r.candidate_distance)},
                    {"random", summary_json(r.random)},
                    {"ratio_to_mean", num(r.ratio_to_mean)},
                    {"p_value", sig6(r.p_value)},
                    {"draws", r.draws},
                    {"exhaustive", r.exhaustive},
                    {"seed", opts.seed}}
                   .dump(2)
            << '\n';
      } else if (format == "csv") {
        buf << "subset_size,pool_size,candidate_distance,random_mean,random_std,ratio_to_mean,p_value,draws,exhaustive,seed\n"
            << r.subset_size << ',' << r.pool_size << ',' << csv6(r.candidate_distance) << ','
            << csv6(r.random.mean) << ',' << csv6(r.random.std) << ',' << csv_opt(r.ratio_to_mean)
            << ',' << csv6(r.p_value) << ',' << r.draws << ',' << (r.exhaustive ? "true" : "false")
            << ',' << opts.seed << '\n';
      } else {
        buf << "| Subset size | Candidate W1 | Random W1 (mean ± std) | Ratio | p-value | Draws |\n"
            << "|---|---|---|---|---|---|\n"
            << "| " << r.subset_size << " of " << r.pool_size << " | " << md2(r.candidate_distance)
            << " | " << md2(r.random.mean) << " ± " << md2(r.random.std) << " | "
            << md_opt(r.ratio_to_mean) << " | " << fmt::format("{:.4f}", r.p_value) << " | " << r.draws
            << (r.exhaustive ? " (exhaustive)" : "") << " |\n";
      }
    } else if (aggregate->parsed()) {
      const Catalog catalog = load_catalog(catalog_path);
      const auto groups = load_groups(groups_path);
      std::vector<std::string> declared;
      for (const auto& [m, g] : groups) {
        if (std::find(declared.begin(), declared.end(), g) == declared.end()) declared.push_back(g);
      }
      std::vector<Method> method_list;
      for (const auto& name : methods.empty() ? kDefaultMethods : split_list(methods)) {
        method_list.push_back(parse_method(name));
      }
      if (method_list.empty()) throw UsageError("--methods is empty");

      std::vector<Instance> instances;
      for (const auto& [m, g] : groups) instances.push_back(build_instance(catalog, m, gap_tol));

      std::vector<std::pair<std::string, std::vector<GroupAggregate>>> table;
      for (const Method& method : method_list) {
        std::vector<GroupedResult> results;
        for (std::size_t i = 0; i < groups.size(); ++i) {
          const Instance& inst = instances[i];
          SelectionResult r;
          if (method.full_pool) {
            std::vector<std::size_t> all(inst.size());
            for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
            r = make_selection(inst, std::move(all), method.objective, Algorithm::kBaseline);
          } else {
            r = run_selector(inst, method.objective, method.algorithm, std::nullopt, sel.brute_limit);
          }
          results.push_back({groups[i].first, groups[i].second, std::move(r)});
        }
        table.emplace_back(method.name, aggregate_by_group(results, declared));
      }

      if (format == "json") {
        Json rows = Json::array();
        for (const auto& [name, aggs] : table) {
          for (const auto& a : aggs) {
            rows.push_back(Json{{"method", name},
                                {"group", a.group},
                                {"metrics", a.metrics},
                                {"mean_cost", num(a.mean_cost)},
                                {"excluded_costs", a.excluded_costs},
                                {"mean_percent", sig6(a.mean_percent)},
                                {"mean_size", sig6(a.mean_size)}});
          }
        }
        buf << Json{{"command", "report aggregate"}, {"groups", declared}, {"rows", rows}}.dump(2) << '\n';
      } else if (format == "csv") {
        buf << "method,group,metrics,mean_cost,excluded_costs,mean_percent,mean_size\n";
        for (const auto& [name, aggs] : table) {
          for (const auto& a : aggs) {
            buf << name << ',' << detail::csv_field(a.group) << ',' << a.metrics << ','
                << csv_opt(a.mean_cost) << ',' << a.excluded_costs << ',' << csv6(a.mean_percent)
                << ',' << csv6(a.mean_size) << '\n';
          }
        }
      } else {
        buf << "| Method subset Q̃ |";
        for (const auto& g : declared) buf << " C(Q̃) " << g << " | P(Q̃) " << g << " | ñ " << g << " |";
        buf << "\n|---|";
        for (std::size_t i = 0; i < declared.size(); ++i) buf << "---|---|---|";
        buf << '\n';
        for (const auto& [name, aggs] : table) {
          buf << "| " << name << " |";
          for (const auto& a : aggs) {
            buf << ' ' << md_opt(a.mean_cost) << " | " << md2(a.mean_percent) << " | "
                << md2(a.mean_size) << " |";
          }
          buf << '\n';
        }
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const DegenerateCoverageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const LimitExceededError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  }

  out << buf.str();
  return kExitOk;
}

}  // namespace covopt
