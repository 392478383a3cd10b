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

#include "weakspec/classify.h"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "weakspec/errors.h"

namespace weakspec {
namespace {

// Present classes (ascending) and the compact index of every row.
struct CompactLabels {
  std::vector<int> present;
  std::vector<int> y;
};

CompactLabels Compact(const std::vector<int>& y, int num_classes) {
  std::vector<int> remap(num_classes, -1);
  for (int label : y) {
    if (label < 0 || label >= num_classes) {
      throw InputError("class label out of range");
    }
    remap[label] = 0;
  }
  CompactLabels out;
  for (int c = 0; c < num_classes; ++c) {
    if (remap[c] == 0) {
      remap[c] = static_cast<int>(out.present.size());
      out.present.push_back(c);
    }
  }
  out.y.reserve(y.size());
  for (int label : y) out.y.push_back(remap[label]);
  return out;
}

void CheckTrainingShape(const Eigen::MatrixXd& x, const std::vector<int>& y) {
  if (static_cast<size_t>(x.rows()) != y.size()) {
    throw InputError("feature rows and labels differ in length");
  }
  if (x.rows() == 0) throw TrainingError("empty training set");
}

int ArgMax(const Eigen::RowVectorXd& row) {
  int best = 0;
  for (Eigen::Index c = 1; c < row.size(); ++c) {
    if (row(c) > row(best)) best = static_cast<int>(c);
  }
  return best;
}

// Softmax scores of compact classes for every row; row 0 of beta is the
// reference.
Eigen::MatrixXd LogisticScores(const Eigen::MatrixXd& beta,
                               const Eigen::MatrixXd& x) {
  Eigen::MatrixXd eta = x * beta.rightCols(beta.cols() - 1).transpose();
  eta.rowwise() += beta.col(0).transpose();
  return eta;
}

void SoftmaxRows(Eigen::MatrixXd* m) {
  for (Eigen::Index i = 0; i < m->rows(); ++i) {
    const double top = m->row(i).maxCoeff();
    m->row(i) = (m->row(i).array() - top).exp();
    m->row(i) /= m->row(i).sum();
  }
}

// All other rows of `x`, nearest first, distance ties by lower index.
std::vector<std::vector<int>> NeighbourOrder(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  std::vector<std::vector<int>> order(n);
  std::vector<double> dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) dist[j] = (x.row(i) - x.row(j)).squaredNorm();
    auto& o = order[i];
    o.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) o.push_back(j);
    }
    std::sort(o.begin(), o.end(), [&](int a, int b) {
      if (dist[a] != dist[b]) return dist[a] < dist[b];
      return a < b;
    });
  }
  return order;
}

// First max wins, so ties go to the lower class.
int VoteWinner(const std::vector<int>& votes) {
  return static_cast<int>(std::max_element(votes.begin(), votes.end()) -
                          votes.begin());
}

}  // namespace

std::string_view ClassifierKindName(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::kLogistic:
      return "logistic";
    case ClassifierKind::kKnn:
      return "knn";
    case ClassifierKind::kQda:
      return "qda";
  }
  return "logistic";
}

ClassifierKind ParseClassifierKind(std::string_view name) {
  if (name == "logistic") return ClassifierKind::kLogistic;
  if (name == "knn") return ClassifierKind::kKnn;
  if (name == "qda") return ClassifierKind::kQda;
  throw ParameterError("unknown classifier '" + std::string(name) + "'");
}

std::string_view AggregationName(Aggregation::Rule rule) {
  return rule == Aggregation::Rule::kMajority ? "majority" : "threshold";
}

Aggregation::Rule ParseAggregation(std::string_view name) {
  if (name == "majority") return Aggregation::Rule::kMajority;
  if (name == "threshold") return Aggregation::Rule::kThreshold;
  throw ParameterError("aggregation must be 'majority' or 'threshold'");
}

double LogisticObjective(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, double l2,
                         const Eigen::VectorXd& beta,
                         Eigen::VectorXd* gradient) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const Eigen::Index free_rows = num_classes - 1;
  if (beta.size() != free_rows * (p + 1)) {
    throw InputError("coefficient vector has the wrong length");
  }
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(num_classes, p + 1);
  for (Eigen::Index c = 0; c < free_rows; ++c) {
    full.row(c + 1) = beta.segment(c * (p + 1), p + 1).transpose();
  }
  Eigen::MatrixXd eta = LogisticScores(full, x);
  double loss = 0.0;
  Eigen::MatrixXd prob = eta;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double top = eta.row(i).maxCoeff();
    const double lse = top + std::log((eta.row(i).array() - top).exp().sum());
    loss += lse - eta(i, y[i]);
    prob.row(i) = (eta.row(i).array() - lse).exp();
  }
  loss /= static_cast<double>(n);
  double penalty = 0.0;
  for (Eigen::Index c = 1; c < num_classes; ++c) {
    penalty += full.row(c).tail(p).squaredNorm();
  }
  loss += 0.5 * l2 * penalty;

  if (gradient) {
    gradient->setZero(beta.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index c = 0; c < free_rows; ++c) {
        const double r = prob(i, c + 1) - (y[i] == c + 1 ? 1.0 : 0.0);
        (*gradient)(c*(p + 1)) += r;
        gradient->segment(c * (p + 1) + 1, p) += r * x.row(i).transpose();
      }
    }
    *gradient /= static_cast<double>(n);
    for (Eigen::Index c = 0; c < free_rows; ++c) {
      gradient->segment(c * (p + 1) + 1, p) +=
          l2 * full.row(c + 1).tail(p).transpose();
    }
  }
  return loss;
}

ClassifierModel TrainLogistic(const Eigen::MatrixXd& x,
                              const std::vector<int>& y, int num_classes,
                              const LogisticOptions& options) {
  CheckTrainingShape(x, y);
  CompactLabels labels = Compact(y, num_classes);
  const int classes = static_cast<int>(labels.present.size());
  if (classes < 2) {
    throw TrainingError("logistic regression needs at least two classes");
  }
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  const Eigen::Index block = p + 1;
  const Eigen::Index m = (classes - 1) * block;

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd grad;
  double value =
      LogisticObjective(x, labels.y, classes, options.l2, beta, &grad);
  Eigen::MatrixXd xt(n, block);
  xt.col(0).setOnes();
  xt.rightCols(p) = x;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    if (grad.norm() <= options.tolerance) break;
    // Hessian of the mean log-loss plus the weight penalty.
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(classes, block);
    for (int c = 1; c < classes; ++c) {
      full.row(c) = beta.segment((c - 1) * block, block).transpose();
    }
    Eigen::MatrixXd prob = LogisticScores(full, x);
    SoftmaxRows(&prob);
    Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(m, m);
    for (int a = 1; a < classes; ++a) {
      for (int b = a; b < classes; ++b) {
        Eigen::VectorXd weight(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          weight(i) = prob(i, a) * ((a == b ? 1.0 : 0.0) - prob(i, b));
        }
        Eigen::MatrixXd h =
            xt.transpose() * weight.asDiagonal() * xt / static_cast<double>(n);
        hessian.block((a - 1) * block, (b - 1) * block, block, block) = h;
        if (a != b) {
          hessian.block((b - 1) * block, (a - 1) * block, block, block) =
              h.transpose();
        }
      }
      hessian.block((a - 1) * block + 1, (a - 1) * block + 1, p, p)
          .diagonal()
          .array() += options.l2;
    }
    hessian.diagonal().array() += 1e-12;
    Eigen::VectorXd step = hessian.ldlt().solve(-grad);
    double slope = grad.dot(step);
    if (!step.allFinite() || !(slope < 0.0)) {
      step = -grad;
      slope = -grad.squaredNorm();
    }
    double t = 1.0;
    Eigen::VectorXd trial_grad;
    double trial = 0.0;
    bool accepted = false;
    for (int halving = 0; halving < 60; ++halving) {
      trial = LogisticObjective(x, labels.y, classes, options.l2,
                                beta + t * step, &trial_grad);
      if (trial <= value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;  // no further decrease is representable
    beta += t * step;
    value = trial;
    grad = trial_grad;
  }

  LogisticModel lm;
  lm.beta = Eigen::MatrixXd::Zero(classes, block);
  for (int c = 1; c < classes; ++c) {
    lm.beta.row(c) = beta.segment((c - 1) * block, block).transpose();
  }
  if (!lm.beta.allFinite()) throw TrainingError("logistic fit diverged");
  lm.iterations = iter;
  lm.gradient_norm = grad.norm();
  ClassifierModel model;
  model.kind = ClassifierKind::kLogistic;
  model.num_classes = num_classes;
  model.dim = static_cast<int>(p);
  model.present = labels.present;
  model.params = std::move(lm);
  return model;
}

ClassifierModel TrainKnn(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, int neighbours) {
  CheckTrainingShape(x, y);
  if (neighbours < 1) throw ParameterError("K must be >= 1");
  CompactLabels labels = Compact(y, num_classes);
  KnnModel km;
  km.x = x;
  km.y = labels.y;
  km.neighbours = neighbours;
  ClassifierModel model;
  model.kind = ClassifierKind::kKnn;
  model.num_classes = num_classes;
  model.dim = static_cast<int>(x.cols());
  model.present = labels.present;
  model.params = std::move(km);
  return model;
}

ClassifierModel TrainQda(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, double ridge) {
  CheckTrainingShape(x, y);
  if (!(ridge >= 0.0)) throw ParameterError("ridge must be >= 0");
  CompactLabels labels = Compact(y, num_classes);
  const int classes = static_cast<int>(labels.present.size());
  const Eigen::Index p = x.cols();
  QdaModel qm;
  const double n = static_cast<double>(x.rows());
  for (int c = 0; c < classes; ++c) {
    std::vector<Eigen::Index> rows;
    for (size_t i = 0; i < labels.y.size(); ++i) {
      if (labels.y[i] == c) rows.push_back(static_cast<Eigen::Index>(i));
    }
    const double count = static_cast<double>(rows.size());
    if (rows.size() < 2) {
      throw TrainingError("class " + std::to_string(labels.present[c]) +
                          " has a single sample; its covariance is undefined");
    }
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(p);
    for (auto r : rows) mean += x.row(r).transpose();
    mean /= count;
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
    for (auto r : rows) {
      Eigen::VectorXd centered = x.row(r).transpose() - mean;
      cov.noalias() += centered * centered.transpose();
    }
    cov /= count;
    const bool heavy = static_cast<Eigen::Index>(rows.size()) < p + 1;
    const double strength = heavy ? std::max(ridge, 1e-3) : ridge;
    const double trace = cov.trace();
    const double scale = trace > 0.0 ? trace / static_cast<double>(p) : 1.0;
    // Keeps the covariance positive definite even for ridge = 0 on
    // full-rank data; the floor only matters when data are degenerate.
    cov.diagonal().array() +=
        std::max(strength * scale, std::numeric_limits<double>::min());
    qm.means.push_back(std::move(mean));
    qm.covariances.push_back(std::move(cov));
    qm.log_priors.push_back(std::log(count / n));
    qm.heavy_ridge.push_back(heavy);
  }
  ClassifierModel model;
  model.kind = ClassifierKind::kQda;
  model.num_classes = num_classes;
  model.dim = static_cast<int>(p);
  model.present = labels.present;
  model.params = std::move(qm);
  return model;
}

double QdaLogDensity(const ClassifierModel& model, int class_index,
                     const Eigen::VectorXd& x) {
  const auto& qm = std::get<QdaModel>(model.params);
  auto it = std::find(model.present.begin(), model.present.end(), class_index);
  if (it == model.present.end()) {
    throw InputError("class not present in the QDA model");
  }
  const size_t c = static_cast<size_t>(it - model.present.begin());
  Eigen::LLT<Eigen::MatrixXd> llt(qm.covariances[c]);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("QDA covariance is not positive definite");
  }
  const Eigen::VectorXd z = llt.matrixL().solve(x - qm.means[c]);
  const double log_det =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const double p = static_cast<double>(x.size());
  return -0.5 *
         (p * std::log(2.0 * std::numbers::pi) + log_det + z.squaredNorm());
}

Predictions Predict(const ClassifierModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.dim) {
    std::ostringstream msg;
    msg << "model expects " << model.dim << " features, got " << x.cols();
    throw InputError(msg.str());
  }
  const Eigen::Index n = x.rows();
  const int present = static_cast<int>(model.present.size());
  Predictions out;
  out.labels.resize(n);
  Eigen::MatrixXd compact;
  switch (model.kind) {
    case ClassifierKind::kLogistic: {
      compact = LogisticScores(std::get<LogisticModel>(model.params).beta, x);
      SoftmaxRows(&compact);
      break;
    }
    case ClassifierKind::kQda: {
      const auto& qm = std::get<QdaModel>(model.params);
      compact.resize(n, present);
      for (int c = 0; c < present; ++c) {
        Eigen::LLT<Eigen::MatrixXd> llt(qm.covariances[c]);
        if (llt.info() != Eigen::Success) {
          throw NumericalError("QDA covariance is not positive definite");
        }
        const Eigen::MatrixXd lower = llt.matrixL();
        const double log_det = 2.0 * lower.diagonal().array().log().sum();
        const double p = static_cast<double>(x.cols());
        Eigen::MatrixXd centered =
            (x.rowwise() - qm.means[c].transpose()).transpose();
        Eigen::MatrixXd z = llt.matrixL().solve(centered);
        for (Eigen::Index i = 0; i < n; ++i) {
          compact(i, c) =
              qm.log_priors[c] - 0.5 * (p * std::log(2.0 * std::numbers::pi) +
                                        log_det + z.col(i).squaredNorm());
        }
      }
      SoftmaxRows(&compact);
      break;
    }
    case ClassifierKind::kKnn: {
      const auto& km = std::get<KnnModel>(model.params);
      const int train = static_cast<int>(km.x.rows());
      const int k = std::min(km.neighbours, train);
      std::vector<int> order(train);
      std::vector<double> dist(train);
      std::vector<int> votes(present);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (int j = 0; j < train; ++j) {
          dist[j] = (km.x.row(j) - x.row(i)).squaredNorm();
          order[j] = j;
        }
        std::partial_sort(order.begin(), order.begin() + k, order.end(),
                          [&](int a, int b) {
                            if (dist[a] != dist[b]) return dist[a] < dist[b];
                            return a < b;
                          });
        std::fill(votes.begin(), votes.end(), 0);
        for (int r = 0; r < k; ++r) ++votes[km.y[order[r]]];
        out.labels[i] = model.present[VoteWinner(votes)];
      }
      return out;
    }
  }
  out.probabilities = Eigen::MatrixXd::Zero(n, model.num_classes);
  for (int c = 0; c < present; ++c) {
    out.probabilities.col(model.present[c]) = compact.col(c);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    out.labels[i] = model.present[ArgMax(compact.row(i))];
  }
  return out;
}

int AggregateVotes(const std::vector<int>& votes, int strong_class,
                   const Aggregation& aggregation) {
  const int classes = static_cast<int>(votes.size());
  int total = 0;
  int disordered_total = 0;
  int best_disordered = -1;
  for (int c = 0; c < classes; ++c) {
    total += votes[c];
    if (c == strong_class) continue;
    disordered_total += votes[c];
    if (best_disordered < 0 || votes[c] > votes[best_disordered]) {
      best_disordered = c;
    }
  }
  if (best_disordered < 0) return strong_class;
  if (aggregation.rule == Aggregation::Rule::kThreshold) {
    const double fraction =
        total == 0 ? 0.0 : static_cast<double>(disordered_total) / total;
    return fraction > aggregation.tau ? best_disordered : strong_class;
  }
  return votes[best_disordered] >= votes[strong_class] ? best_disordered
                                                       : strong_class;
}

int SelectNeighbours(const Eigen::MatrixXd& x, const std::vector<int>& y,
                     const std::vector<int>& groups,
                     const std::vector<int>& grid) {
  if (grid.empty()) throw ParameterError("empty K grid");
  if (static_cast<size_t>(x.rows()) != y.size() || y.size() != groups.size()) {
    throw InputError("rows, labels and groups differ in length");
  }
  const int n = static_cast<int>(x.rows());
  const int max_k = *std::max_element(grid.begin(), grid.end());
  const int classes = y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
  const auto order = NeighbourOrder(x);
  std::vector<int> correct(grid.size(), 0);
  std::vector<int> labels;
  std::vector<int> votes(classes);
  for (int i = 0; i < n; ++i) {
    labels.clear();
    for (int j : order[i]) {
      if (groups[j] == groups[i]) continue;
      labels.push_back(y[j]);
      if (static_cast<int>(labels.size()) == max_k) break;
    }
    for (size_t g = 0; g < grid.size(); ++g) {
      const int k = std::min<int>(grid[g], static_cast<int>(labels.size()));
      if (k == 0) continue;
      std::fill(votes.begin(), votes.end(), 0);
      for (int r = 0; r < k; ++r) ++votes[labels[r]];
      correct[g] += VoteWinner(votes) == y[i];
    }
  }
  size_t best = 0;
  for (size_t g = 1; g < grid.size(); ++g) {
    if (correct[g] > correct[best] ||
        (correct[g] == correct[best] && grid[g] < grid[best])) {
      best = g;
    }
  }
  return grid[best];
}

CvResult LeaveOneBagOutCv(const AnnotatedTrainingSet& ts, const Dataset& ds,
                          const CvOptions& options) {
  const int n = ds.size();
  if (static_cast<int>(ts.instances.size()) != n) {
    throw InputError("training set and dataset differ in size");
  }
  const auto& bags = ds.bags();
  if (bags.size() < 2) throw InputError("cross-validation needs >= 2 bags");
  CvResult result;
  result.classes = ds.label_set();
  const int classes = static_cast<int>(result.classes.size());
  auto class_of = [&](const std::string& label) {
    auto it = std::find(result.classes.begin(), result.classes.end(), label);
    if (it == result.classes.end()) {
      throw InputError("label '" + label + "' is not a bag label");
    }
    return static_cast<int>(it - result.classes.begin());
  };
  std::vector<int> y(n);
  for (int i = 0; i < n; ++i) {
    if (ts.instances[i].row != i) {
      throw InputError("training set is not in dataset row order");
    }
    y[i] = class_of(ts.instances[i].label);
  }
  const int strong_class = class_of(ds.strong_label());
  result.confusion.assign(classes, std::vector<int>(classes, 0));

  std::vector<std::vector<int>> order;
  if (options.kind == ClassifierKind::kKnn)
    order = NeighbourOrder(ds.features());
  const int max_k =
      options.knn_grid.empty()
          ? 1
          : *std::max_element(options.knn_grid.begin(), options.knn_grid.end());

  int correct = 0;
  for (size_t b = 0; b < bags.size(); ++b) {
    std::vector<int> train_rows;
    std::vector<bool> held_out(n, false);
    for (int r : bags[b].members) held_out[r] = true;
    for (int i = 0; i < n; ++i) {
      if (!held_out[i]) train_rows.push_back(i);
    }
    for (int r : train_rows) {
      if (ds.bag_of(r) == static_cast<int>(b)) {
        throw Error("test bag leaked into its training fold");
      }
    }
    std::vector<bool> seen(classes, false);
    for (int r : train_rows) seen[y[r]] = true;
    BagPrediction pred;
    pred.bag = static_cast<int>(b);
    pred.bag_id = bags[b].id;
    pred.truth = bags[b].label;
    pred.fold_flagged =
        std::find(seen.begin(), seen.end(), false) != seen.end();
    pred.votes.assign(classes, 0);
    const int present =
        static_cast<int>(std::count(seen.begin(), seen.end(), true));

    std::vector<int> test_labels;
    if (present == 1) {
      const int only = static_cast<int>(
          std::find(seen.begin(), seen.end(), true) - seen.begin());
      test_labels.assign(bags[b].members.size(), only);
    } else if (options.kind == ClassifierKind::kKnn) {
      // Neighbour lists over the whole dataset, skipping held-out rows.
      std::vector<int> correct_at(options.knn_grid.size(), 0);
      std::vector<int> labels;
      std::vector<int> votes(classes);
      for (int i : train_rows) {
        labels.clear();
        for (int j : order[i]) {
          if (held_out[j] || ds.bag_of(j) == ds.bag_of(i)) continue;
          labels.push_back(y[j]);
          if (static_cast<int>(labels.size()) == max_k) break;
        }
        for (size_t g = 0; g < options.knn_grid.size(); ++g) {
          const int k = std::min<int>(options.knn_grid[g],
                                      static_cast<int>(labels.size()));
          if (k == 0) continue;
          std::fill(votes.begin(), votes.end(), 0);
          for (int r = 0; r < k; ++r) ++votes[labels[r]];
          correct_at[g] += VoteWinner(votes) == y[i];
        }
      }
      size_t best = 0;
      for (size_t g = 1; g < options.knn_grid.size(); ++g) {
        if (correct_at[g] > correct_at[best] ||
            (correct_at[g] == correct_at[best] &&
             options.knn_grid[g] < options.knn_grid[best])) {
          best = g;
        }
      }
      pred.neighbours = options.knn_grid[best];
      for (int t : bags[b].members) {
        std::fill(votes.begin(), votes.end(), 0);
        int taken = 0;
        for (int j : order[t]) {
          if (held_out[j]) continue;
          ++votes[y[j]];
          if (++taken == pred.neighbours) break;
        }
        test_labels.push_back(VoteWinner(votes));
      }
    } else {
      Eigen::MatrixXd x_train(static_cast<Eigen::Index>(train_rows.size()),
                              ds.dim());
      std::vector<int> y_train;
      for (size_t r = 0; r < train_rows.size(); ++r) {
        x_train.row(static_cast<Eigen::Index>(r)) =
            ds.features().row(train_rows[r]);
        y_train.push_back(y[train_rows[r]]);
      }
      Eigen::MatrixXd x_test(static_cast<Eigen::Index>(bags[b].members.size()),
                             ds.dim());
      for (size_t r = 0; r < bags[b].members.size(); ++r) {
        x_test.row(static_cast<Eigen::Index>(r)) =
            ds.features().row(bags[b].members[r]);
      }
      ClassifierModel model =
          options.kind == ClassifierKind::kLogistic
              ? TrainLogistic(x_train, y_train, classes, options.logistic)
              : TrainQda(x_train, y_train, classes, options.qda_ridge);
      test_labels = Predict(model, x_test).labels;
    }
    for (int label : test_labels) ++pred.votes[label];
    const int predicted =
        AggregateVotes(pred.votes, strong_class, options.aggregation);
    pred.predicted = result.classes[predicted];
    const int truth = class_of(pred.truth);
    ++result.confusion[truth][predicted];
    correct += truth == predicted;
    result.bags.push_back(std::move(pred));
  }
  result.folds = static_cast<int>(bags.size());
  result.accuracy = static_cast<double>(correct) / result.folds;
  return result;
}

}  // namespace weakspec
