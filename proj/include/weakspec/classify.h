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

#ifndef WEAKSPEC_CLASSIFY_H_
#define WEAKSPEC_CLASSIFY_H_

#include <Eigen/Core>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weakspec/dataset.h"
#include "weakspec/weakanno.h"

namespace weakspec {

enum class ClassifierKind { kLogistic, kKnn, kQda };

std::string_view ClassifierKindName(ClassifierKind kind);
ClassifierKind ParseClassifierKind(std::string_view name);

// Class labels are indices in [0, num_classes). Classes absent from the
// training data are never predicted.

struct LogisticModel {
  // One row per present class: intercept followed by p weights. Row 0 is the
  // reference class and stays zero.
  Eigen::MatrixXd beta;
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct KnnModel {
  Eigen::MatrixXd x;
  std::vector<int> y;  // compact class indices
  int neighbours = 1;
};

struct QdaModel {
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;  // regularized
  std::vector<double> log_priors;
  std::vector<bool> heavy_ridge;  // class had fewer than p + 1 samples
};

struct ClassifierModel {
  ClassifierKind kind = ClassifierKind::kLogistic;
  int num_classes = 0;
  int dim = 0;
  std::vector<int> present;  // compact index -> class index
  std::variant<LogisticModel, KnnModel, QdaModel> params;
};

struct LogisticOptions {
  double l2 = 1e-4;
  double tolerance = 1e-6;
  int max_iterations = 500;
};

// Mean negative log-likelihood of a softmax model plus (l2 / 2) |weights|^2
// (intercepts unpenalized). `beta` stacks the non-reference rows, each
// intercept first, for classes 1..C-1 of `y` (C = num_classes). Writes the
// gradient when `gradient` is non-null.
double LogisticObjective(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, double l2,
                         const Eigen::VectorXd& beta,
                         Eigen::VectorXd* gradient);

// Damped Newton iterations to gradient norm <= tolerance. Throws
// TrainingError when fewer than two classes are present.
ClassifierModel TrainLogistic(const Eigen::MatrixXd& x,
                              const std::vector<int>& y, int num_classes,
                              const LogisticOptions& options = {});

ClassifierModel TrainKnn(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, int neighbours);

// Per-class MLE mean and covariance, covariance + ridge * trace / p * I.
// Classes with fewer than p + 1 samples get max(ridge, 1e-3). Throws
// TrainingError when a present class has a single sample.
ClassifierModel TrainQda(const Eigen::MatrixXd& x, const std::vector<int>& y,
                         int num_classes, double ridge = 1e-6);

// log N(x; mean_c, cov_c) for a present class index.
double QdaLogDensity(const ClassifierModel& model, int class_index,
                     const Eigen::VectorXd& x);

struct Predictions {
  std::vector<int> labels;
  // n x num_classes posteriors for logistic and QDA; empty for kNN.
  Eigen::MatrixXd probabilities;
};

// Argmax posterior (first maximum wins) for logistic and QDA; majority vote
// among the nearest neighbours for kNN (distance ties to the lower training
// row, vote ties to the lower class). Throws InputError on a dimension
// mismatch.
Predictions Predict(const ClassifierModel& model, const Eigen::MatrixXd& x);

// How instance predictions become a bag prediction.
struct Aggregation {
  enum class Rule {
    // Plurality over all classes; ties prefer a non-strong class, then the
    // lower class index.
    kMajority,
    // Non-strong if the fraction of non-strong votes exceeds tau, choosing the
    // plurality non-strong class; strong otherwise.
    kThreshold,
  };
  Rule rule = Rule::kMajority;
  double tau = 0.5;
};

std::string_view AggregationName(Aggregation::Rule rule);
Aggregation::Rule ParseAggregation(std::string_view name);

struct CvOptions {
  ClassifierKind kind = ClassifierKind::kLogistic;
  Aggregation aggregation;
  LogisticOptions logistic;
  double qda_ridge = 1e-6;
  // Candidate K for kNN, chosen per fold by an inner leave-one-bag-out pass.
  std::vector<int> knn_grid = {1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25};
};

struct BagPrediction {
  int bag = 0;
  std::string bag_id;
  std::string truth;
  std::string predicted;
  std::vector<int> votes;  // per class
  // Training fold lacked at least one class.
  bool fold_flagged = false;
  int neighbours = 0;  // K used (kNN only)
};

struct CvResult {
  std::vector<std::string> classes;         // the dataset's label set
  std::vector<BagPrediction> bags;          // in dataset bag order
  std::vector<std::vector<int>> confusion;  // [truth][predicted]
  double accuracy = 0.0;
  int folds = 0;
};

// One fold per bag: train on every other bag's instances with the labels in
// `ts`, predict the held-out bag, aggregate, compare with its bag label.
CvResult LeaveOneBagOutCv(const AnnotatedTrainingSet& ts, const Dataset& ds,
                          const CvOptions& options);

// Bag-level label from per-class votes. `strong_class` is the index of the
// strong label.
int AggregateVotes(const std::vector<int>& votes, int strong_class,
                   const Aggregation& aggregation);

// Inner leave-one-group-out choice of K among `grid` by instance accuracy;
// ties go to the smaller K. `groups` holds a group id per row.
int SelectNeighbours(const Eigen::MatrixXd& x, const std::vector<int>& y,
                     const std::vector<int>& groups,
                     const std::vector<int>& grid);

}  // namespace weakspec

#endif  // WEAKSPEC_CLASSIFY_H_
