#include "covopt/multi.hpp"

#include <algorithm>
#include <future>
#include <set>

#include <fmt/format.h>

#include "covopt/error.hpp"
#include "covopt/select_dp.hpp"
#include "covopt/select_greedy.hpp"

namespace covopt {
namespace {

std::vector<SequenceKey> in_catalog_order(const Catalog& catalog, const std::set<SequenceKey>& keys) {
  std::vector<SequenceKey> out;
  for (const SequenceRecord& rec : catalog.records()) {
    if (keys.count(rec.key)) out.push_back(rec.key);
  }
  return out;
}

}  // namespace

MultiResult multi_select_union(const Catalog& catalog, std::span<const MetricId> metrics,
                               Objective objective, Algorithm algorithm, double gap_tol) {
  if (algorithm != Algorithm::kGreedy && algorithm != Algorithm::kDp) {
    throw UsageError(fmt::format("multi-metric selection supports greedy or dp, not {}",
                                 to_string(algorithm)));
  }
  if (metrics.empty()) throw UsageError("multi-metric selection needs at least one metric");

  // Fail on unknown metrics before launching any work.
  std::vector<Instance> instances;
  instances.reserve(metrics.size());
  for (const MetricId& m : metrics) instances.push_back(build_instance(catalog, m, gap_tol));

  std::vector<std::future<SelectionResult>> futures;
  futures.reserve(instances.size());
  for (const Instance& inst : instances) {
    futures.push_back(std::async(std::launch::async, [&inst, objective, algorithm] {
      return algorithm == Algorithm::kDp ? dp_select(inst, objective)
                                         : greedy_select(inst, objective);
    }));
  }

  MultiResult result;
  result.metrics.assign(metrics.begin(), metrics.end());
  std::set<SequenceKey> joint;
  for (auto& f : futures) {
    result.per_metric.push_back(f.get());
    joint.insert(result.per_metric.back().subset.begin(), result.per_metric.back().subset.end());
  }
  result.joint = in_catalog_order(catalog, joint);
  return result;
}

std::vector<CurvePoint> joint_coverage_curve(const MultiResult& result) {
  std::vector<CurvePoint> curve;
  std::set<SequenceKey> joint;
  for (std::size_t k = 0; k < result.per_metric.size(); ++k) {
    joint.insert(result.per_metric[k].subset.begin(), result.per_metric[k].subset.end());
    curve.push_back({k + 1, joint.size()});
  }
  return curve;
}

std::vector<CurvePoint> joint_coverage_curve(const Catalog& catalog,
                                             std::span<const MetricId> metrics,
                                             Objective objective, Algorithm algorithm,
                                             double gap_tol) {
  return joint_coverage_curve(multi_select_union(catalog, metrics, objective, algorithm, gap_tol));
}

}  // namespace covopt
