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

#include "weakspec/spectral.h"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "weakspec/errors.h"

namespace weakspec {
namespace {

Eigen::VectorXd RegularizedDegrees(const Eigen::VectorXd& degrees,
                                   std::vector<int>* isolated) {
  Eigen::VectorXd out = degrees;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out(i) == 0.0) {
      out(i) = 1.0;
      if (isolated) isolated->push_back(static_cast<int>(i));
    }
  }
  return out;
}

double UnitDraw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index sampled with probability proportional to `weights`; uniform when all
// weights are zero.
int SampleProportional(const std::vector<double>& weights,
                       std::mt19937_64& rng) {
  double total = 0.0;
  for (double w : weights) total += w;
  const int n = static_cast<int>(weights.size());
  if (!(total > 0.0)) {
    return std::min(n - 1, static_cast<int>(UnitDraw(rng) * n));
  }
  const double target = UnitDraw(rng) * total;
  double running = 0.0;
  int last_positive = 0;
  for (int i = 0; i < n; ++i) {
    if (weights[i] <= 0.0) continue;
    running += weights[i];
    last_positive = i;
    if (running > target) return i;
  }
  return last_positive;
}

Eigen::MatrixXd KMeansPlusPlus(const Eigen::MatrixXd& x, int k,
                               std::mt19937_64& rng) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd centers(k, x.cols());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  int chosen = std::min(n - 1, static_cast<int>(UnitDraw(rng) * n));
  for (int c = 0; c < k; ++c) {
    if (c > 0) chosen = SampleProportional(nearest, rng);
    centers.row(c) = x.row(chosen);
    for (int i = 0; i < n; ++i) {
      nearest[i] =
          std::min(nearest[i], (x.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

struct LloydRun {
  std::vector<int> labels;
  Eigen::MatrixXd centers;
  double objective = 0.0;
  std::vector<double> trace;
};

// Nearest center for every point; ties go to the lower center index.
double Assign(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers,
              std::vector<int>* labels, std::vector<double>* cost) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double dist = (x.row(i) - centers.row(c)).squaredNorm();
      if (dist < best_d) {
        best_d = dist;
        best = static_cast<int>(c);
      }
    }
    (*labels)[i] = best;
    (*cost)[i] = best_d;
    total += best_d;
  }
  return total;
}

LloydRun Lloyd(const Eigen::MatrixXd& x, Eigen::MatrixXd centers,
               int max_iterations) {
  const int n = static_cast<int>(x.rows());
  const int k = static_cast<int>(centers.rows());
  LloydRun run;
  run.labels.assign(n, -1);
  std::vector<int> labels(n, 0);
  std::vector<double> cost(n, 0.0);
  for (int iter = 0; iter < max_iterations; ++iter) {
    const double objective = Assign(x, centers, &labels, &cost);
    if (!run.trace.empty()) {
      const double prev = run.trace.back();
      if (objective > prev + 1e-12 * std::max(1.0, std::abs(prev))) {
        std::ostringstream msg;
        msg << "k-means objective increased from " << prev << " to "
            << objective << " at iteration " << iter;
        throw Error(msg.str());
      }
    }
    run.trace.push_back(objective);
    const bool stable = labels == run.labels;
    run.labels = labels;
    run.objective = objective;
    if (stable) break;

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(labels[i]) += x.row(i);
      ++counts[labels[i]];
    }
    std::vector<bool> used_as_seed(n, false);
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / counts[c];
        continue;
      }
      // Empty cluster: move it onto the worst-served point.
      int far = -1;
      for (int i = 0; i < n; ++i) {
        if (used_as_seed[i]) continue;
        if (far < 0 || cost[i] > cost[far]) far = i;
      }
      used_as_seed[far] = true;
      centers.row(c) = x.row(far);
    }
    run.centers = centers;
  }
  run.centers = centers;
  return run;
}

}  // namespace

Eigen::VectorXd DegreeVector(const SimilarityGraph& g) {
  return g.weights().rowwise().sum();
}

Laplacian UnnormalizedLaplacian(const SimilarityGraph& g) {
  Laplacian lap;
  lap.kind = LaplacianKind::kUnnormalized;
  lap.degrees = DegreeVector(g);
  lap.matrix = -g.weights();
  lap.matrix.diagonal() += lap.degrees;
  return lap;
}

Laplacian NormalizedLaplacian(const SimilarityGraph& g, LaplacianKind kind) {
  if (kind == LaplacianKind::kUnnormalized) return UnnormalizedLaplacian(g);
  Laplacian lap = UnnormalizedLaplacian(g);
  lap.kind = kind;
  const Eigen::VectorXd d = RegularizedDegrees(lap.degrees, &lap.isolated);
  if (kind == LaplacianKind::kRandomWalk) {
    lap.matrix = d.cwiseInverse().asDiagonal() * lap.matrix;
  } else {
    const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    lap.matrix = s.asDiagonal() * lap.matrix * s.asDiagonal();
  }
  return lap;
}

SpectralEmbedding SmallestEigenvectors(const Laplacian& random_walk, int k) {
  if (random_walk.kind != LaplacianKind::kRandomWalk) {
    throw ParameterError(
        "SmallestEigenvectors expects a random-walk Laplacian");
  }
  const int n = static_cast<int>(random_walk.matrix.rows());
  if (k < 1 || k > n) {
    throw ParameterError("k must lie in [1, n]");
  }
  const Eigen::VectorXd d = RegularizedDegrees(random_walk.degrees, nullptr);
  const Eigen::VectorXd sqrt_d = d.cwiseSqrt();
  const Eigen::VectorXd inv_sqrt_d = sqrt_d.cwiseInverse();
  // D^1/2 L_rw D^-1/2 equals D^-1/2 L D^-1/2, which is symmetric.
  Eigen::MatrixXd sym =
      sqrt_d.asDiagonal() * random_walk.matrix * inv_sqrt_d.asDiagonal();
  sym = (0.5 * (sym + sym.transpose())).eval();

  lapack_int found = 0;
  Eigen::VectorXd values(n);
  Eigen::MatrixXd vectors(n, k);
  std::vector<lapack_int> support(2 * static_cast<size_t>(k));
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, sym.data(), n, 0.0, 0.0, 1, k, abstol,
      &found, values.data(), vectors.data(), n, support.data());
  if (info != 0 || found != k) {
    std::ostringstream msg;
    msg << "symmetric eigen-solver failed (info=" << info << ", found " << found
        << " of " << k << " eigenpairs, n=" << n << ")";
    throw NumericalError(msg.str());
  }

  SpectralEmbedding out;
  out.eigenvalues = values.head(k);
  out.vectors = inv_sqrt_d.asDiagonal() * vectors;
  for (int c = 0; c < k; ++c) {
    auto col = out.vectors.col(c);
    col.normalize();
    Eigen::Index arg = 0;
    for (Eigen::Index i = 1; i < n; ++i) {
      if (std::abs(col(i)) > std::abs(col(arg))) arg = i;
    }
    if (col(arg) < 0.0) col = -col;
    const double residual =
        (random_walk.matrix * col - out.eigenvalues(c) * col).norm();
    if (!(residual <= 1e-8)) {
      std::ostringstream msg;
      msg << "eigenpair " << c << " (lambda=" << out.eigenvalues(c)
          << ") residual " << residual << " exceeds 1e-8; degree range ["
          << d.minCoeff() << ", " << d.maxCoeff() << "]";
      throw NumericalError(msg.str());
    }
  }
  return out;
}

std::vector<int> Grouping::GroupSizes() const {
  std::vector<int> sizes(k, 0);
  for (int a : assignments) ++sizes[a];
  return sizes;
}

bool Grouping::Degenerate() const {
  for (int s : GroupSizes()) {
    if (s == 0) return true;
  }
  return false;
}

std::vector<int> CanonicalLabels(const std::vector<int>& labels) {
  std::vector<int> out(labels.size());
  std::vector<std::pair<int, int>> seen;  // original -> canonical
  for (size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find_if(seen.begin(), seen.end(),
                           [&](auto& p) { return p.first == labels[i]; });
    if (it == seen.end()) {
      seen.emplace_back(labels[i], static_cast<int>(seen.size()));
      out[i] = seen.back().second;
    } else {
      out[i] = it->second;
    }
  }
  return out;
}

KMeansResult KMeans(const Eigen::MatrixXd& points, int k,
                    const KMeansOptions& options) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) throw ParameterError("k-means needs 1 <= k <= n");
  if (options.restarts < 1) throw ParameterError("restarts must be >= 1");
  std::mt19937_64 rng(options.seed);
  KMeansResult best;
  bool have_best = false;
  for (int r = 0; r < options.restarts; ++r) {
    LloydRun run =
        Lloyd(points, KMeansPlusPlus(points, k, rng), options.max_iterations);
    best.traces.push_back(run.trace);
    if (!have_best || run.objective < best.objective) {
      have_best = true;
      best.objective = run.objective;
      best.best_restart = r;
      best.grouping.assignments = run.labels;
      best.centroids = run.centers;
    }
  }
  // Canonical numbering, with centroids permuted to match.
  std::vector<int> canonical = CanonicalLabels(best.grouping.assignments);
  Eigen::MatrixXd centroids = best.centroids;
  std::vector<bool> placed(k, false);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int old_label = best.grouping.assignments[i];
    if (!placed[canonical[i]]) {
      placed[canonical[i]] = true;
      centroids.row(canonical[i]) = best.centroids.row(old_label);
      next = std::max(next, canonical[i] + 1);
    }
  }
  // Centroids of empty clusters keep the remaining slots in original order.
  for (int old_label = 0; old_label < k && next < k; ++old_label) {
    if (std::find(best.grouping.assignments.begin(),
                  best.grouping.assignments.end(),
                  old_label) == best.grouping.assignments.end()) {
      centroids.row(next++) = best.centroids.row(old_label);
    }
  }
  best.grouping.assignments = std::move(canonical);
  best.grouping.k = k;
  best.centroids = std::move(centroids);
  return best;
}

SpectralGroupingResult SpectralGrouping(const SimilarityGraph& g, int k,
                                        std::uint64_t seed, int restarts) {
  if (k < 2) throw ParameterError("spectral grouping needs k >= 2");
  if (k > g.size()) throw ParameterError("k exceeds the number of vertices");
  Laplacian lap = NormalizedLaplacian(g, LaplacianKind::kRandomWalk);
  SpectralGroupingResult out;
  out.isolated = lap.isolated;
  out.embedding = SmallestEigenvectors(lap, k);
  KMeansOptions options;
  options.seed = seed;
  options.restarts = restarts;
  KMeansResult km = KMeans(out.embedding.vectors, k, options);
  out.grouping = std::move(km.grouping);
  out.kmeans_objective = km.objective;
  return out;
}

}  // namespace weakspec
