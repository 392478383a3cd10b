// Copyright 2026 The weakspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "weakspec/eval.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "weakspec/errors.h"

namespace weakspec {
namespace {

struct GroupStats {
  Eigen::MatrixXd centroids;
  Eigen::VectorXd spread;  // mean distance to the centroid
};

GroupStats ComputeGroupStats(const Eigen::MatrixXd& x,
                             const Grouping& grouping) {
  if (grouping.size() != x.rows()) {
    throw InputError("grouping and feature rows differ in length");
  }
  const int k = grouping.k;
  GroupStats stats;
  stats.centroids = Eigen::MatrixXd::Zero(k, x.cols());
  stats.spread = Eigen::VectorXd::Zero(k);
  std::vector<int> counts(k, 0);
  for (int i = 0; i < grouping.size(); ++i) {
    const int g = grouping.assignments[i];
    if (g < 0 || g >= k) throw InputError("group index out of range");
    stats.centroids.row(g) += x.row(i);
    ++counts[g];
  }
  for (int g = 0; g < k; ++g) {
    if (counts[g] == 0) {
      throw DegenerateError("group " + std::to_string(g) + " is empty");
    }
    stats.centroids.row(g) /= counts[g];
  }
  for (int i = 0; i < grouping.size(); ++i) {
    const int g = grouping.assignments[i];
    stats.spread(g) += (x.row(i) - stats.centroids.row(g)).norm();
  }
  for (int g = 0; g < k; ++g) stats.spread(g) /= counts[g];
  return stats;
}

double Separation(const GroupStats& stats, int a, int b) {
  const double d = (stats.centroids.row(a) - stats.centroids.row(b)).norm();
  if (d == 0.0) {
    throw DegenerateError("groups " + std::to_string(a) + " and " +
                          std::to_string(b) + " share a centroid");
  }
  return d;
}

long long Pairs(long long count) { return count * (count - 1) / 2; }

GridPoint Evaluate(const Eigen::MatrixXd& features,
                   const DistanceMatrix& distances, GraphModel model,
                   GraphParams params, const GridSearchOptions& options,
                   Grouping* expanded) {
  GridPoint point;
  if (model == GraphModel::kProbCriterion && !params.seed) {
    params.seed = options.seed;
  }
  point.params = params;
  try {
    SimilarityGraph g = BuildGraph(distances, model, params);
    point.edges = g.EdgeCount();
    point.components = ConnectedComponents(g).count;
    SpectralGroupingResult sg =
        SpectralGrouping(g, options.k, options.seed, options.restarts);
    if (sg.grouping.Degenerate()) {
      throw DegenerateError("spectral grouping left a group empty");
    }
    if (options.min_group_fraction > 0.0) {
      const std::vector<int> sizes = sg.grouping.GroupSizes();
      const int smallest = *std::min_element(sizes.begin(), sizes.end());
      if (smallest < options.min_group_fraction * sg.grouping.size()) {
        throw DegenerateError("smallest group holds " +
                              std::to_string(smallest) + " of " +
                              std::to_string(sg.grouping.size()) +
                              " instances, under the minimum fraction");
      }
    }
    Grouping full;
    full.k = options.k;
    if (options.representative.empty()) {
      full.assignments = sg.grouping.assignments;
    } else {
      for (int r : options.representative) {
        full.assignments.push_back(sg.grouping.assignments[r]);
      }
    }
    try {
      point.davies_bouldin = DaviesBouldinGeneral(features, sg.grouping);
    } catch (const DegenerateError&) {
      if (options.objective == Objective::kDaviesBouldin) throw;
    }
    if (!options.truth.empty()) {
      point.f1 = PairCountingF1(full.assignments, options.truth).f1;
    }
    point.value =
        options.objective == Objective::kF1 ? point.f1 : point.davies_bouldin;
    if (expanded) *expanded = std::move(full);
  } catch (const Error& e) {
    point.value.reset();
    point.failure = e.what();
  }
  return point;
}

}  // namespace

double DaviesBouldin(const Eigen::MatrixXd& x, const Grouping& grouping) {
  if (grouping.k != 2) {
    throw ParameterError("the two-group index needs k = 2");
  }
  GroupStats stats = ComputeGroupStats(x, grouping);
  return (stats.spread(0) + stats.spread(1)) / Separation(stats, 0, 1);
}

double DaviesBouldinGeneral(const Eigen::MatrixXd& x,
                            const Grouping& grouping) {
  if (grouping.k < 2) throw ParameterError("Davies-Bouldin needs k >= 2");
  GroupStats stats = ComputeGroupStats(x, grouping);
  double total = 0.0;
  for (int a = 0; a < grouping.k; ++a) {
    double worst = 0.0;
    for (int b = 0; b < grouping.k; ++b) {
      if (a == b) continue;
      worst = std::max(
          worst, (stats.spread(a) + stats.spread(b)) / Separation(stats, a, b));
    }
    total += worst;
  }
  return total / grouping.k;
}

F1Score PairCountingF1(const std::vector<int>& groups,
                       const std::vector<int>& truth, double beta) {
  if (groups.size() != truth.size()) {
    throw InputError("grouping and truth differ in length");
  }
  if (!(beta > 0.0)) throw ParameterError("beta must be > 0");
  std::map<std::pair<int, int>, long long> cells;
  std::unordered_map<int, long long> group_sizes;
  std::unordered_map<int, long long> truth_sizes;
  for (size_t i = 0; i < groups.size(); ++i) {
    ++cells[{groups[i], truth[i]}];
    ++group_sizes[groups[i]];
    ++truth_sizes[truth[i]];
  }
  long long tp = 0;
  for (const auto& [key, count] : cells) tp += Pairs(count);
  long long same_group = 0;
  for (const auto& [key, count] : group_sizes) same_group += Pairs(count);
  long long same_truth = 0;
  for (const auto& [key, count] : truth_sizes) same_truth += Pairs(count);
  if (same_group == 0 || same_truth == 0) {
    throw DegenerateError(
        "F1 is undefined: no pair shares a group or no pair shares a class");
  }
  F1Score out;
  out.counts.true_positive = tp;
  out.counts.false_positive = same_group - tp;
  out.counts.false_negative = same_truth - tp;
  out.precision = static_cast<double>(tp) / static_cast<double>(same_group);
  out.recall = static_cast<double>(tp) / static_cast<double>(same_truth);
  const double b2 = beta * beta;
  const double denom = b2 * out.precision + out.recall;
  out.f1 = denom > 0.0 ? (b2 + 1.0) * out.precision * out.recall / denom : 0.0;
  return out;
}

std::vector<int> EncodeLabels(const std::vector<std::string>& labels) {
  std::unordered_map<std::string, int> codes;
  std::vector<int> out;
  out.reserve(labels.size());
  for (const auto& label : labels) {
    auto [it, inserted] = codes.emplace(label, static_cast<int>(codes.size()));
    out.push_back(it->second);
  }
  return out;
}

std::string_view ObjectiveName(Objective objective) {
  return objective == Objective::kF1 ? "f1" : "davies_bouldin";
}

Objective ParseObjective(std::string_view name) {
  if (name == "f1") return Objective::kF1;
  if (name == "db" || name == "davies_bouldin") {
    return Objective::kDaviesBouldin;
  }
  throw ParameterError("objective must be 'db' or 'f1'");
}

GridSearchResult GridSearch(const Eigen::MatrixXd& features,
                            const DistanceMatrix& distances, GraphModel model,
                            const std::vector<GraphParams>& tuples,
                            const GridSearchOptions& options) {
  if (tuples.empty()) throw ParameterError("empty parameter grid");
  if (features.rows() != distances.size()) {
    throw InputError("features and distances differ in size");
  }
  const size_t original = options.representative.empty()
                              ? static_cast<size_t>(features.rows())
                              : options.representative.size();
  if (options.objective == Objective::kF1 && options.truth.empty()) {
    throw ParameterError("the F1 objective needs truth labels");
  }
  if (!options.truth.empty() && options.truth.size() != original) {
    throw InputError("truth labels do not cover every row");
  }
  if (!(options.min_group_fraction >= 0.0 &&
        options.min_group_fraction * options.k <= 1.0)) {
    throw ParameterError("min_group_fraction must lie in [0, 1/k]");
  }
  for (int r : options.representative) {
    if (r < 0 || r >= features.rows()) {
      throw InputError("representative row out of range");
    }
  }

  GridSearchResult result;
  result.objective = options.objective;
  result.model = model;
  result.grid.resize(tuples.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t t = next++; t < tuples.size(); t = next++) {
      result.grid[t] =
          Evaluate(features, distances, model, tuples[t], options, nullptr);
    }
  };
  const int threads = std::max(
      1, std::min<int>(options.threads, static_cast<int>(tuples.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (size_t t = 0; t < result.grid.size(); ++t) {
    const auto& value = result.grid[t].value;
    if (!value) continue;
    if (result.winner < 0) {
      result.winner = static_cast<int>(t);
      continue;
    }
    const double best = *result.grid[result.winner].value;
    const bool better =
        options.objective == Objective::kF1 ? *value > best : *value < best;
    if (better) result.winner = static_cast<int>(t);
  }
  if (result.winner < 0) {
    std::ostringstream msg;
    msg << "every grid tuple failed:";
    for (size_t t = 0; t < result.grid.size(); ++t) {
      msg << "\n  [" << t << "] " << result.grid[t].failure;
    }
    throw SearchError(msg.str());
  }
  // Re-run the winner to recover its grouping; every step is deterministic.
  Evaluate(features, distances, model, tuples[result.winner], options,
           &result.winner_grouping);
  return result;
}

std::vector<GraphParams> ExpandGrid(GraphModel model, const GridAxes& axes,
                                    const GraphParams& base) {
  auto or_base = [](const auto& axis, auto value) {
    using T = decltype(value);
    return axis.empty() ? std::vector<T>{value} : axis;
  };
  std::vector<double> eps = {base.epsilon};
  std::vector<int> ks = {base.k};
  std::vector<double> ws = {base.w_thresh};
  std::vector<std::optional<double>> sigmas = {base.sigma};
  std::vector<Symmetrization> syms = {base.symmetrize};
  switch (model) {
    case GraphModel::kEpsilon:
      eps = or_base(axes.epsilon, base.epsilon);
      break;
    case GraphModel::kKnnSymmetric:
    case GraphModel::kKnnMutual:
      ks = or_base(axes.k, base.k);
      break;
    case GraphModel::kProbThreshold:
    case GraphModel::kProbCriterion:
      ws = or_base(axes.w, base.w_thresh);
      syms = or_base(axes.symmetrize, base.symmetrize);
      [[fallthrough]];
    case GraphModel::kFullyConnected:
      if (!axes.sigma.empty()) {
        sigmas.assign(axes.sigma.begin(), axes.sigma.end());
      }
      break;
    case GraphModel::kCustom:
      throw ParameterError("a custom graph has no parameter grid");
  }
  std::vector<GraphParams> out;
  for (double e : eps) {
    for (int k : ks) {
      for (double w : ws) {
        for (const auto& s : sigmas) {
          for (Symmetrization rule : syms) {
            GraphParams p = base;
            p.epsilon = e;
            p.k = k;
            p.w_thresh = w;
            p.sigma = s;
            p.symmetrize = rule;
            out.push_back(p);
          }
        }
      }
    }
  }
  return out;
}

std::vector<double> Linspace(double lo, double hi, int count) {
  if (count < 1) throw ParameterError("linspace needs count >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  return out;
}

}  // namespace weakspec
