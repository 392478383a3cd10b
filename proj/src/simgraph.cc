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

#include "weakspec/simgraph.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <sstream>

#include "weakspec/errors.h"

namespace weakspec {
namespace {

void CheckWeights(const Eigen::MatrixXd& w) {
  if (w.rows() != w.cols()) throw InputError("weight matrix not square");
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (w(i, i) != 0.0) throw InputError("weight matrix diagonal not zero");
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      const double v = w(i, j);
      if (!std::isfinite(v) || v < 0.0 || v != w(j, i)) {
        throw InputError(
            "weight matrix must be finite, nonnegative and symmetric");
      }
    }
  }
}

// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
double UnitDraw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Assigned weight for a below-threshold similarity once it has survived.
double ClampedDensity(double s, double w, double sigma) {
  return std::min(TruncatedGaussianDensity(s, w, sigma), w);
}

}  // namespace

std::string_view GraphModelName(GraphModel model) {
  switch (model) {
    case GraphModel::kEpsilon:
      return "epsilon";
    case GraphModel::kKnnSymmetric:
      return "knn";
    case GraphModel::kKnnMutual:
      return "mutual_knn";
    case GraphModel::kFullyConnected:
      return "fully_connected";
    case GraphModel::kProbThreshold:
      return "prob_threshold";
    case GraphModel::kProbCriterion:
      return "prob_criterion";
    case GraphModel::kCustom:
      return "custom";
  }
  return "custom";
}

GraphModel ParseGraphModel(std::string_view name) {
  for (GraphModel m :
       {GraphModel::kEpsilon, GraphModel::kKnnSymmetric, GraphModel::kKnnMutual,
        GraphModel::kFullyConnected, GraphModel::kProbThreshold,
        GraphModel::kProbCriterion, GraphModel::kCustom}) {
    if (GraphModelName(m) == name) return m;
  }
  throw ParameterError("unknown graph model '" + std::string(name) + "'");
}

std::string_view SymmetrizationName(Symmetrization rule) {
  return rule == Symmetrization::kMin ? "min" : "max";
}

Symmetrization ParseSymmetrization(std::string_view name) {
  if (name == "min") return Symmetrization::kMin;
  if (name == "max") return Symmetrization::kMax;
  throw ParameterError("symmetrize must be 'min' or 'max', got '" +
                       std::string(name) + "'");
}

void ValidateParams(GraphModel model, const GraphParams& p) {
  auto need_sigma = [&] {
    if (!p.sigma || !(*p.sigma > 0.0) || !std::isfinite(*p.sigma)) {
      throw ParameterError("sigma must be > 0");
    }
  };
  switch (model) {
    case GraphModel::kEpsilon:
      if (!(p.epsilon > 0.0)) throw ParameterError("epsilon must be > 0");
      break;
    case GraphModel::kKnnSymmetric:
    case GraphModel::kKnnMutual:
      if (p.k < 1) throw ParameterError("k must be >= 1");
      if (p.sigma) need_sigma();
      break;
    case GraphModel::kFullyConnected:
      need_sigma();
      break;
    case GraphModel::kProbThreshold:
    case GraphModel::kProbCriterion:
      need_sigma();
      if (!(p.w_thresh > 0.0 && p.w_thresh < 1.0)) {
        throw ParameterError("w_thresh must lie in (0, 1)");
      }
      if (!(p.m < 0.0)) throw ParameterError("m must be < 0");
      if (model == GraphModel::kProbThreshold && !(p.eps_weight > 0.0)) {
        throw ParameterError("eps_weight must be > 0");
      }
      if (model == GraphModel::kProbCriterion && !p.seed) {
        throw ParameterError("prob_criterion requires a seed");
      }
      break;
    case GraphModel::kCustom:
      break;
  }
}

SimilarityGraph::SimilarityGraph(Eigen::MatrixXd weights, GraphModel model,
                                 GraphParams params)
    : w_(std::move(weights)), model_(model), params_(std::move(params)) {
  CheckWeights(w_);
}

SimilarityGraph SimilarityGraph::FromWeights(Eigen::MatrixXd weights) {
  return SimilarityGraph(std::move(weights), GraphModel::kCustom, {});
}

long SimilarityGraph::EdgeCount() const {
  long edges = 0;
  for (Eigen::Index j = 0; j < w_.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < w_.rows(); ++i) edges += w_(i, j) > 0.0;
  }
  return edges;
}

InitialSimilarities ComputeInitialSimilarities(const DistanceMatrix& d,
                                               double m) {
  if (!(m < 0.0)) throw ParameterError("m must be < 0");
  const int n = d.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (d(i, j) == 0.0) {
        std::ostringstream msg;
        msg << "instances " << i << " and " << j
            << " coincide; ratio similarities are undefined for m < 0 "
               "(deduplicate or jitter the input)";
        throw DegenerateError(msg.str());
      }
      s(i, j) = std::pow(d(i, j), m);
      total += s(i, j);
    }
    s.row(i) /= total;
  }
  return InitialSimilarities(std::move(s));
}

double TruncatedGaussianDensity(double s, double w, double sigma) {
  const double z = (s - w) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

std::optional<double> WeightFloorSimilarity(double w, double sigma,
                                            double eps_weight) {
  const double arg = eps_weight * sigma * std::sqrt(2.0 * std::numbers::pi);
  if (arg > 1.0) return std::nullopt;
  return w - sigma * std::sqrt(-2.0 * std::log(arg));
}

double AcceptanceProbability(double s, double w, double sigma) {
  const double z = (s - w) / sigma;
  return std::exp(-0.5 * z * z);
}

SimilarityGraph EpsilonGraph(const DistanceMatrix& d, double epsilon) {
  GraphParams params;
  params.epsilon = epsilon;
  ValidateParams(GraphModel::kEpsilon, params);
  const int n = d.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i != j && d(i, j) < epsilon) w(i, j) = 1.0;
    }
  }
  return SimilarityGraph(std::move(w), GraphModel::kEpsilon, params);
}

double MedianOffDiagonal(const DistanceMatrix& d) {
  const int n = d.size();
  std::vector<double> values;
  values.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j) {
    for (int i = j + 1; i < n; ++i) values.push_back(d(i, j));
  }
  if (values.empty()) return 0.0;
  const size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double median = values[mid];
  if (values.size() % 2 == 0) {
    median = 0.5 *
             (median + *std::max_element(values.begin(), values.begin() + mid));
  }
  return median;
}

SimilarityGraph KnnGraph(const DistanceMatrix& d, int k, KnnMode mode,
                         std::optional<double> sigma) {
  const int n = d.size();
  const GraphModel model = mode == KnnMode::kSymmetric
                               ? GraphModel::kKnnSymmetric
                               : GraphModel::kKnnMutual;
  GraphParams params;
  params.k = k;
  params.sigma = sigma;
  ValidateParams(model, params);
  if (k > n - 1) {
    throw ParameterError("k must be <= n - 1 (k = " + std::to_string(k) +
                         ", n = " + std::to_string(n) + ")");
  }
  if (!params.sigma) {
    double median = MedianOffDiagonal(d);
    params.sigma = median > 0.0 ? median : 1.0;
  }
  const double two_sigma2 = 2.0 * (*params.sigma) * (*params.sigma);

  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> directed =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n,
                                                                    false);
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) {
    order.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](int a, int b) {
                        if (d(i, a) != d(i, b)) return d(i, a) < d(i, b);
                        return a < b;
                      });
    for (int r = 0; r < k; ++r) directed(i, order[r]) = true;
  }
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const bool edge = mode == KnnMode::kSymmetric
                            ? (directed(i, j) || directed(j, i))
                            : (directed(i, j) && directed(j, i));
      if (edge) w(i, j) = std::exp(-d(i, j) * d(i, j) / two_sigma2);
    }
  }
  return SimilarityGraph(std::move(w), model, params);
}

SimilarityGraph FullyConnectedGaussian(const DistanceMatrix& d, double sigma) {
  GraphParams params;
  params.sigma = sigma;
  ValidateParams(GraphModel::kFullyConnected, params);
  const int n = d.size();
  const double two_sigma2 = 2.0 * sigma * sigma;
  Eigen::MatrixXd w(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      w(i, j) = i == j ? 0.0 : std::exp(-d(i, j) * d(i, j) / two_sigma2);
    }
  }
  return SimilarityGraph(std::move(w), GraphModel::kFullyConnected, params);
}

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd& w, Symmetrization rule) {
  if (w.rows() != w.cols()) throw InputError("matrix not square");
  Eigen::MatrixXd out(w.rows(), w.cols());
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      out(i, j) = rule == Symmetrization::kMin ? std::min(w(i, j), w(j, i))
                                               : std::max(w(i, j), w(j, i));
    }
  }
  return out;
}

SimilarityGraph ProbThresholdGraph(const InitialSimilarities& s,
                                   double w_thresh, double sigma,
                                   double eps_weight, Symmetrization rule) {
  GraphParams params;
  params.w_thresh = w_thresh;
  params.sigma = sigma;
  params.eps_weight = eps_weight;
  params.symmetrize = rule;
  ValidateParams(GraphModel::kProbThreshold, params);
  const int n = s.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (i == j) continue;
      const double sij = s(i, j);
      if (sij >= w_thresh) {
        w(i, j) = sij;
        continue;
      }
      const double f = TruncatedGaussianDensity(sij, w_thresh, sigma);
      w(i, j) = f < eps_weight ? 0.0 : std::min(f, w_thresh);
    }
  }
  return SimilarityGraph(Symmetrize(w, rule), GraphModel::kProbThreshold,
                         params);
}

SimilarityGraph ProbCriterionGraph(const InitialSimilarities& s,
                                   double w_thresh, double sigma,
                                   Symmetrization rule,
                                   std::optional<std::uint64_t> seed) {
  GraphParams params;
  params.w_thresh = w_thresh;
  params.sigma = sigma;
  params.symmetrize = rule;
  params.seed = seed;
  ValidateParams(GraphModel::kProbCriterion, params);
  std::mt19937_64 rng(*seed);
  const int n = s.size();
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  auto assign = [&](int a, int b) {
    const double sab = s(a, b);
    if (sab >= w_thresh) {
      w(a, b) = sab;
      return;
    }
    const double accept = AcceptanceProbability(sab, w_thresh, sigma);
    w(a, b) =
        UnitDraw(rng) < accept ? ClampedDensity(sab, w_thresh, sigma) : 0.0;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      assign(i, j);
      assign(j, i);
    }
  }
  return SimilarityGraph(Symmetrize(w, rule), GraphModel::kProbCriterion,
                         params);
}

SimilarityGraph BuildGraph(const DistanceMatrix& d, GraphModel model,
                           const GraphParams& params) {
  ValidateParams(model, params);
  switch (model) {
    case GraphModel::kEpsilon:
      return EpsilonGraph(d, params.epsilon);
    case GraphModel::kKnnSymmetric:
      return KnnGraph(d, params.k, KnnMode::kSymmetric, params.sigma);
    case GraphModel::kKnnMutual:
      return KnnGraph(d, params.k, KnnMode::kMutual, params.sigma);
    case GraphModel::kFullyConnected:
      return FullyConnectedGaussian(d, *params.sigma);
    case GraphModel::kProbThreshold: {
      SimilarityGraph g = ProbThresholdGraph(
          ComputeInitialSimilarities(d, params.m), params.w_thresh,
          *params.sigma, params.eps_weight, params.symmetrize);
      GraphParams full = params;
      full.seed.reset();
      return SimilarityGraph(g.weights(), model, full);
    }
    case GraphModel::kProbCriterion: {
      SimilarityGraph g = ProbCriterionGraph(
          ComputeInitialSimilarities(d, params.m), params.w_thresh,
          *params.sigma, params.symmetrize, params.seed);
      return SimilarityGraph(g.weights(), model, params);
    }
    case GraphModel::kCustom:
      break;
  }
  throw ParameterError("custom graphs cannot be built from distances");
}

Components ConnectedComponents(const SimilarityGraph& g) {
  const int n = g.size();
  Components out;
  out.labels.assign(n, -1);
  const Eigen::MatrixXd& w = g.weights();
  std::queue<int> frontier;
  for (int start = 0; start < n; ++start) {
    if (out.labels[start] >= 0) continue;
    const int label = out.count++;
    out.labels[start] = label;
    frontier.push(start);
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int u = 0; u < n; ++u) {
        if (out.labels[u] < 0 && w(u, v) > 0.0) {
          out.labels[u] = label;
          frontier.push(u);
        }
      }
    }
  }
  return out;
}

}  // namespace weakspec
