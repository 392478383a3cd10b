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

// Independent reference implementations used by the unit tests.

#ifndef WEAKSPEC_TESTS_ORACLES_H_
#define WEAKSPEC_TESTS_ORACLES_H_

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <queue>
#include <random>
#include <string>
#include <vector>

namespace weakspec::testing {

inline Eigen::MatrixXd BruteDistances(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int c = 0; c < x.cols(); ++c) {
        const double diff = x(i, c) - x(j, c);
        sum += diff * diff;
      }
      d(i, j) = std::sqrt(sum);
    }
  }
  return d;
}

// Component count by repeated BFS over the support of `w`.
inline int BfsComponentCount(const Eigen::MatrixXd& w) {
  const int n = static_cast<int>(w.rows());
  std::vector<bool> seen(n, false);
  int count = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++count;
    std::queue<int> q;
    q.push(s);
    seen[s] = true;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int u = 0; u < n; ++u) {
        if (!seen[u] && w(v, u) > 0.0) {
          seen[u] = true;
          q.push(u);
        }
      }
    }
  }
  return count;
}

// Cyclic Jacobi rotations; eigenvalues of a symmetric matrix, ascending.
inline Eigen::VectorXd JacobiEigenvalues(Eigen::MatrixXd a,
                                         Eigen::MatrixXd* vectors = nullptr) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return a(x, x) < a(y, y); });
  Eigen::VectorXd values(n);
  Eigen::MatrixXd sorted(n, n);
  for (int i = 0; i < n; ++i) {
    values(i) = a(order[i], order[i]);
    sorted.col(i) = v.col(order[i]);
  }
  if (vectors) *vectors = sorted;
  return values;
}

// Symmetric random weights; each pair present with probability `density`.
inline Eigen::MatrixXd RandomWeights(int n, double density,
                                     std::mt19937_64& rng, bool unit = false) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (u(rng) < density) {
        const double value = unit ? 1.0 : 0.05 + u(rng);
        w(i, j) = w(j, i) = value;
      }
    }
  }
  return w;
}

// Sum over groups of squared distances to the group mean.
inline double WithinSumOfSquares(const Eigen::MatrixXd& x,
                                 const std::vector<int>& labels, int k) {
  double total = 0.0;
  for (int g = 0; g < k; ++g) {
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
    int count = 0;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == g) {
        mean += x.row(static_cast<Eigen::Index>(i));
        ++count;
      }
    }
    if (count == 0) continue;
    mean /= count;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == g) {
        total += (x.row(static_cast<Eigen::Index>(i)) - mean).squaredNorm();
      }
    }
  }
  return total;
}

// Literal two-group formula evaluated point by point.
inline double DaviesBouldinOracle(const Eigen::MatrixXd& x,
                                  const std::vector<int>& a) {
  std::vector<std::vector<double>> c(2, std::vector<double>(x.cols(), 0.0));
  int n[2] = {0, 0};
  for (int i = 0; i < x.rows(); ++i) {
    for (int f = 0; f < x.cols(); ++f) c[a[i]][f] += x(i, f);
    ++n[a[i]];
  }
  for (int g = 0; g < 2; ++g) {
    for (double& v : c[g]) v /= n[g];
  }
  double s[2] = {0.0, 0.0};
  for (int i = 0; i < x.rows(); ++i) {
    double sq = 0.0;
    for (int f = 0; f < x.cols(); ++f) {
      sq += (x(i, f) - c[a[i]][f]) * (x(i, f) - c[a[i]][f]);
    }
    s[a[i]] += std::sqrt(sq);
  }
  double sep = 0.0;
  for (int f = 0; f < x.cols(); ++f)
    sep += (c[0][f] - c[1][f]) * (c[0][f] - c[1][f]);
  return (s[0] / n[0] + s[1] / n[1]) / std::sqrt(sep);
}

// Enumerates every unordered pair.
inline double F1Oracle(const std::vector<int>& g, const std::vector<int>& t,
                       double beta = 1.0) {
  double tp = 0, fp = 0, fn = 0;
  for (size_t i = 0; i < g.size(); ++i) {
    for (size_t j = i + 1; j < g.size(); ++j) {
      const bool same_group = g[i] == g[j];
      const bool same_truth = t[i] == t[j];
      tp += same_group && same_truth;
      fp += same_group && !same_truth;
      fn += !same_group && same_truth;
    }
  }
  const double p = tp / (tp + fp), r = tp / (tp + fn);
  if (p + r == 0) return 0.0;
  return (beta * beta + 1) * p * r / (beta * beta * p + r);
}

inline double NormalPdf(double x, double mean, double var) {
  return std::exp(-(x - mean) * (x - mean) / (2 * var)) /
         std::sqrt(2 * std::numbers::pi * var);
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("weakspec_test_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string File(const std::string& name, const std::string& contents) const {
    const auto p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string Path(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace weakspec::testing

#endif  // WEAKSPEC_TESTS_ORACLES_H_
