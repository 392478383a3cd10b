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

#ifndef WEAKSPEC_SIMGRAPH_H_
#define WEAKSPEC_SIMGRAPH_H_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weakspec/dataset.h"

namespace weakspec {

enum class GraphModel {
  kEpsilon,
  kKnnSymmetric,
  kKnnMutual,
  kFullyConnected,
  kProbThreshold,
  kProbCriterion,
  kCustom,  // weights supplied directly
};

enum class Symmetrization { kMin, kMax };

std::string_view GraphModelName(GraphModel model);
// Accepts the names produced by GraphModelName. Throws ParameterError.
GraphModel ParseGraphModel(std::string_view name);
std::string_view SymmetrizationName(Symmetrization rule);
Symmetrization ParseSymmetrization(std::string_view name);

// Construction parameters. Only the fields used by the chosen model are
// validated; see ValidateParams.
struct GraphParams {
  double epsilon = 0.0;  // distance threshold of the epsilon graph
  int k = 0;             // neighbour count of the kNN graphs
  // Gaussian width. Fully connected and probabilistic graphs require it; kNN
  // graphs default to the median off-diagonal distance.
  std::optional<double> sigma;
  double w_thresh = 0.0;  // similarity threshold w of the probabilistic graphs
  double eps_weight = 1e-3;  // weight floor of the threshold graph
  double m = -1.0;           // smoothing exponent of the ratio similarities
  Symmetrization symmetrize = Symmetrization::kMax;
  std::optional<std::uint64_t> seed;  // required by the criterion graph
};

// Throws ParameterError naming the offending field.
void ValidateParams(GraphModel model, const GraphParams& params);

// Weighted undirected graph: symmetric, nonnegative, zero diagonal, finite.
class SimilarityGraph {
 public:
  SimilarityGraph(Eigen::MatrixXd weights, GraphModel model,
                  GraphParams params);
  static SimilarityGraph FromWeights(Eigen::MatrixXd weights);

  int size() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& weights() const { return w_; }
  GraphModel model() const { return model_; }
  const GraphParams& params() const { return params_; }
  // Number of unordered pairs with positive weight.
  long EdgeCount() const;

 private:
  Eigen::MatrixXd w_;
  GraphModel model_;
  GraphParams params_;
};

// Row-normalized ratio similarities d_ij^m / sum_{l != i} d_il^m. Rows sum to
// one; the matrix is not symmetric in general.
class InitialSimilarities {
 public:
  explicit InitialSimilarities(Eigen::MatrixXd s) : s_(std::move(s)) {}
  int size() const { return static_cast<int>(s_.rows()); }
  double operator()(int i, int j) const { return s_(i, j); }
  const Eigen::MatrixXd& matrix() const { return s_; }

 private:
  Eigen::MatrixXd s_;
};

// Throws DegenerateError naming the pair when an off-diagonal distance is 0,
// ParameterError when m >= 0.
InitialSimilarities ComputeInitialSimilarities(const DistanceMatrix& d,
                                               double m = -1.0);

// Gaussian density with mean w and width sigma evaluated at s.
double TruncatedGaussianDensity(double s, double w, double sigma);

// Similarity s_eps below w at which the density falls to `eps_weight`, i.e.
// the cut-off under which the threshold graph assigns zero. nullopt when the
// density never reaches `eps_weight` (every below-threshold pair is cut).
std::optional<double> WeightFloorSimilarity(double w, double sigma,
                                            double eps_weight);

// Unweighted: w_ij = 1 iff d_ij < epsilon.
SimilarityGraph EpsilonGraph(const DistanceMatrix& d, double epsilon);

enum class KnnMode { kSymmetric, kMutual };

// Directed kNN (distance ties go to the lower index), combined by OR
// (symmetric) or AND (mutual). Surviving edges carry exp(-d^2 / 2 sigma^2);
// sigma defaults to the median off-diagonal distance.
SimilarityGraph KnnGraph(const DistanceMatrix& d, int k, KnnMode mode,
                         std::optional<double> sigma = std::nullopt);

SimilarityGraph FullyConnectedGaussian(const DistanceMatrix& d, double sigma);

// Deterministic model. Per ordered pair: keep s if s >= w; otherwise take the
// density f(s); zero if f < eps_weight, else min(f, w). Then symmetrize.
SimilarityGraph ProbThresholdGraph(const InitialSimilarities& s,
                                   double w_thresh, double sigma,
                                   double eps_weight, Symmetrization rule);

// Stochastic model. Per ordered pair: keep s if s >= w; otherwise accept
// min(f(s), w) with probability f(s) / f_peak, else zero. Draws come from a
// generator seeded with `seed` in the pair order (i, j) then (j, i) for i < j,
// row-major; only below-threshold pairs consume a draw.
SimilarityGraph ProbCriterionGraph(const InitialSimilarities& s,
                                   double w_thresh, double sigma,
                                   Symmetrization rule,
                                   std::optional<std::uint64_t> seed);

// Acceptance probability used by ProbCriterionGraph for a below-threshold
// similarity.
double AcceptanceProbability(double s, double w, double sigma);

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& w, Symmetrization rule);

// Dispatches on `model` after ValidateParams. Ratio similarities are derived
// from `d` for the probabilistic models.
SimilarityGraph BuildGraph(const DistanceMatrix& d, GraphModel model,
                           const GraphParams& params);

struct Components {
  int count = 0;
  // Component of each vertex; components are numbered in order of their
  // smallest member.
  std::vector<int> labels;
};

// Components of the support graph (edges with positive weight).
Components ConnectedComponents(const SimilarityGraph& g);

// Median of the strictly upper-triangular entries.
double MedianOffDiagonal(const DistanceMatrix& d);

}  // namespace weakspec

#endif  // WEAKSPEC_SIMGRAPH_H_
