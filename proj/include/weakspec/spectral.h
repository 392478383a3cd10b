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

#ifndef WEAKSPEC_SPECTRAL_H_
#define WEAKSPEC_SPECTRAL_H_

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "weakspec/simgraph.h"

namespace weakspec {

enum class LaplacianKind {
  kUnnormalized,  // D - W
  kSymmetric,     // D^-1/2 (D - W) D^-1/2
  kRandomWalk,    // D^-1 (D - W)
};

struct Laplacian {
  Eigen::MatrixXd matrix;
  LaplacianKind kind = LaplacianKind::kUnnormalized;
  // Raw weighted degrees. Normalized kinds substitute 1 for a zero degree;
  // those vertices are listed in `isolated`.
  Eigen::VectorXd degrees;
  std::vector<int> isolated;
};

Eigen::VectorXd DegreeVector(const SimilarityGraph& g);
Laplacian UnnormalizedLaplacian(const SimilarityGraph& g);
Laplacian NormalizedLaplacian(const SimilarityGraph& g, LaplacianKind kind);

struct SpectralEmbedding {
  // Columns are unit-norm eigenvectors of L_rw; rows are the embedded points.
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;  // ascending
};

// The k smallest eigenpairs of a random-walk Laplacian. Solved through the
// similar symmetric operator and mapped back with D^-1/2. Each eigenvector is
// scaled to unit norm with its largest-magnitude entry positive. Throws
// NumericalError if the solver fails or a residual exceeds 1e-8 |u|.
SpectralEmbedding SmallestEigenvectors(const Laplacian& random_walk, int k);

// Partition of n items into k groups, numbered 0..k-1 in order of first
// appearance.
struct Grouping {
  std::vector<int> assignments;
  int k = 0;

  int size() const { return static_cast<int>(assignments.size()); }
  std::vector<int> GroupSizes() const;
  // True when some group has no members.
  bool Degenerate() const;
};

// Renumbers labels by first appearance. Used to compare partitions.
std::vector<int> CanonicalLabels(const std::vector<int>& labels);

struct KMeansOptions {
  std::uint64_t seed = 0;
  int restarts = 10;
  int max_iterations = 300;
};

struct KMeansResult {
  Grouping grouping;
  Eigen::MatrixXd centroids;  // k x dim, rows follow the canonical numbering
  double objective = 0.0;     // within-cluster sum of squares
  int best_restart = 0;
  // Objective after every assignment step, one trace per restart.
  std::vector<std::vector<double>> traces;
};

// Lloyd iterations from k-means++ seeds; best of `restarts` by objective, the
// earliest restart winning ties. An emptied cluster is re-seeded at the point
// farthest from its assigned centroid. Throws ParameterError when k is outside
// [1, n] and Error if the objective ever increases.
KMeansResult KMeans(const Eigen::MatrixXd& points, int k,
                    const KMeansOptions& options);

struct SpectralGroupingResult {
  Grouping grouping;
  SpectralEmbedding embedding;
  double kmeans_objective = 0.0;
  std::vector<int> isolated;  // zero-degree vertices
};

// Random-walk Laplacian, its k smallest eigenvectors, then k-means on the
// rows of the eigenvector matrix (rows are not normalized).
SpectralGroupingResult SpectralGrouping(const SimilarityGraph& g, int k,
                                        std::uint64_t seed, int restarts = 10);

}  // namespace weakspec

#endif  // WEAKSPEC_SPECTRAL_H_
