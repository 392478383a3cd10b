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

#ifndef WEAKSPEC_EVAL_H_
#define WEAKSPEC_EVAL_H_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakspec/dataset.h"
#include "weakspec/simgraph.h"
#include "weakspec/spectral.h"

namespace weakspec {

// Two-group Davies-Bouldin index (s1 + s2) / d(c1, c2), where s_i is the mean
// Euclidean distance of group i to its centroid c_i. Lower is better. Throws
// ParameterError unless the grouping has k = 2, DegenerateError when a group
// is empty or the centroids coincide.
double DaviesBouldin(const Eigen::MatrixXd& x, const Grouping& grouping);

// Davies-Bouldin for any k >= 2: the mean over groups of
// max_{j != i} (s_i + s_j) / d(c_i, c_j). Equals DaviesBouldin when k = 2.
double DaviesBouldinGeneral(const Eigen::MatrixXd& x, const Grouping& grouping);

struct PairCounts {
  long long true_positive = 0;   // same group, same truth
  long long false_positive = 0;  // same group, different truth
  long long false_negative = 0;  // different group, same truth
};

struct F1Score {
  double f1 = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  PairCounts counts;
};

// Pair-counting F-measure with weight beta on recall. Computed from the
// contingency table, so group and truth numbering are irrelevant. Throws
// DegenerateError when there are no same-group or no same-truth pairs.
F1Score PairCountingF1(const std::vector<int>& groups,
                       const std::vector<int>& truth, double beta = 1.0);

// Integer codes for string labels in order of first appearance.
std::vector<int> EncodeLabels(const std::vector<std::string>& labels);

enum class Objective { kDaviesBouldin, kF1 };

std::string_view ObjectiveName(Objective objective);
Objective ParseObjective(std::string_view name);

struct GridPoint {
  GraphParams params;
  std::optional<double> value;  // objective; empty when the tuple failed
  std::optional<double> davies_bouldin;
  std::optional<double> f1;
  long edges = 0;
  int components = 0;
  std::string failure;
};

struct GridSearchOptions {
  Objective objective = Objective::kDaviesBouldin;
  int k = 2;
  std::uint64_t seed = 0;
  int restarts = 10;
  int threads = 1;
  // Truth code per original row; required for the F1 objective, optional
  // otherwise.
  std::vector<int> truth;
  // Maps each original row to its row of `features` when duplicates were
  // collapsed beforehand. Empty means the identity.
  std::vector<int> representative;
  // Tuples whose smallest group holds fewer than this fraction of the
  // (deduplicated) instances count as failures. Zero disables the check.
  double min_group_fraction = 0.0;
};

struct GridSearchResult {
  Objective objective = Objective::kDaviesBouldin;
  GraphModel model = GraphModel::kProbThreshold;
  std::vector<GridPoint> grid;  // in input order
  int winner = -1;
  Grouping winner_grouping;  // over original rows
};

// Evaluates graph -> spectral grouping -> index for every tuple. The winner
// minimizes DB or maximizes F1; the first tuple wins ties. Criterion graphs
// without a seed use `options.seed`. Results do not depend on the thread
// count. Throws SearchError listing every failure when no tuple succeeds.
GridSearchResult GridSearch(const Eigen::MatrixXd& features,
                            const DistanceMatrix& distances, GraphModel model,
                            const std::vector<GraphParams>& tuples,
                            const GridSearchOptions& options);

// Axes of a parameter grid; only the axes a model reads are expanded.
struct GridAxes {
  std::vector<double> epsilon;
  std::vector<int> k;
  std::vector<double> sigma;
  std::vector<double> w;
  std::vector<Symmetrization> symmetrize;
};

// Cartesian product in the order epsilon, k, w, sigma, symmetrize (last
// varies fastest). Unlisted axes keep the value in `base`.
std::vector<GraphParams> ExpandGrid(GraphModel model, const GridAxes& axes,
                                    const GraphParams& base);

// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> Linspace(double lo, double hi, int count);

}  // namespace weakspec

#endif  // WEAKSPEC_EVAL_H_
