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

#include <gtest/gtest.h>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.h"
#include "weakspec/errors.h"

namespace weakspec {
namespace {

using testing::NormalPdf;

struct Sample {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

// Gaussian blobs, one per class, centred at 3 * class along every axis.
Sample Blobs(int per_class, int classes, int dim, double spread,
             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, spread);
  Sample s;
  s.x.resize(per_class * classes, dim);
  for (int c = 0; c < classes; ++c) {
    for (int i = 0; i < per_class; ++i) {
      const int r = c * per_class + i;
      for (int f = 0; f < dim; ++f) s.x(r, f) = 3.0 * c + g(rng);
      s.y.push_back(c);
    }
  }
  return s;
}

TEST(LogisticTest, SeparatedOneDimensionalData) {
  Eigen::MatrixXd x(6, 1);
  x << -3, -2, -1, 1, 2, 3;
  std::vector<int> y = {0, 0, 0, 1, 1, 1};
  auto model = TrainLogistic(x, y, 2);
  auto p = Predict(model, x);
  EXPECT_EQ(p.labels, y);
}

TEST(LogisticTest, IdenticalFeaturesGiveClassFrequencies) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(10, 2, 1.5);
  std::vector<int> y = {0, 0, 0, 1, 1, 1, 1, 1, 2, 2};
  auto model = TrainLogistic(x, y, 3);
  auto p = Predict(model, x.topRows(1));
  EXPECT_NEAR(p.probabilities(0, 0), 0.3, 1e-3);
  EXPECT_NEAR(p.probabilities(0, 1), 0.5, 1e-3);
  EXPECT_NEAR(p.probabilities(0, 2), 0.2, 1e-3);
  EXPECT_EQ(p.labels[0], 1);
}

TEST(LogisticTest, GradientMatchesFiniteDifferences) {
  Sample s = Blobs(15, 3, 2, 1.5, 1);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g(0.0, 0.5);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd beta(2 * 3);
    for (int i = 0; i < beta.size(); ++i) beta(i) = g(rng);
    Eigen::VectorXd grad;
    LogisticObjective(s.x, s.y, 3, 1e-2, beta, &grad);
    const double h = 1e-6;
    for (int i = 0; i < beta.size(); ++i) {
      Eigen::VectorXd up = beta, down = beta;
      up(i) += h;
      down(i) -= h;
      const double fd = (LogisticObjective(s.x, s.y, 3, 1e-2, up, nullptr) -
                         LogisticObjective(s.x, s.y, 3, 1e-2, down, nullptr)) /
                        (2 * h);
      EXPECT_LE(std::abs(fd - grad(i)), 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(LogisticTest, ConvergesToSmallGradient) {
  Sample s = Blobs(20, 3, 2, 2.0, 3);
  auto model = TrainLogistic(s.x, s.y, 3);
  const auto& lm = std::get<LogisticModel>(model.params);
  EXPECT_LE(lm.gradient_norm, 1e-6);
  EXPECT_TRUE(lm.beta.row(0).isZero());
  EXPECT_TRUE(lm.beta.allFinite());
}

TEST(LogisticTest, SingleClassIsTrainingError) {
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(4, 2);
  EXPECT_THROW(TrainLogistic(x, {1, 1, 1, 1}, 3), TrainingError);
}

TEST(LogisticTest, AbsentClassNeverPredicted) {
  Sample s = Blobs(10, 2, 2, 1.0, 4);
  for (int& y : s.y) y = y == 0 ? 0 : 2;
  auto model = TrainLogistic(s.x, s.y, 3);
  auto p = Predict(model, s.x);
  EXPECT_TRUE(p.probabilities.col(1).isZero());
  EXPECT_EQ(std::count(p.labels.begin(), p.labels.end(), 1), 0);
}

TEST(LogisticTest, RowOrderInvariance) {
  Sample s = Blobs(15, 3, 2, 2.0, 5);
  std::vector<int> perm(s.y.size());
  for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  std::mt19937_64 rng(6);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd xp(s.x.rows(), s.x.cols());
  std::vector<int> yp;
  for (size_t i = 0; i < perm.size(); ++i) {
    xp.row(static_cast<Eigen::Index>(i)) = s.x.row(perm[i]);
    yp.push_back(s.y[perm[i]]);
  }
  Sample probe = Blobs(20, 3, 2, 3.0, 7);
  EXPECT_EQ(Predict(TrainLogistic(s.x, s.y, 3), probe.x).labels,
            Predict(TrainLogistic(xp, yp, 3), probe.x).labels);
  EXPECT_EQ(Predict(TrainQda(s.x, s.y, 3), probe.x).labels,
            Predict(TrainQda(xp, yp, 3), probe.x).labels);
}

TEST(PredictTest, DimensionMismatchIsInputError) {
  Sample s = Blobs(5, 2, 2, 1.0, 8);
  auto model = TrainLogistic(s.x, s.y, 2);
  EXPECT_THROW(Predict(model, Eigen::MatrixXd::Zero(1, 3)), InputError);
}

TEST(KnnTest, OneNeighbourPredictsNearestLabel) {
  Eigen::MatrixXd x(3, 1);
  x << 0, 5, 10;
  auto model = TrainKnn(x, {0, 1, 2}, 3, 1);
  Eigen::MatrixXd q(3, 1);
  q << 1, 6, 9;
  EXPECT_EQ(Predict(model, q).labels, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(Predict(model, x).labels, (std::vector<int>{0, 1, 2}));
}

TEST(KnnTest, VoteTieGoesToLowerClass) {
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  auto model = TrainKnn(x, {2, 1}, 3, 2);
  EXPECT_EQ(Predict(model, Eigen::MatrixXd::Zero(1, 1)).labels[0], 1);
}

TEST(KnnTest, DistanceTieGoesToLowerRow) {
  Eigen::MatrixXd x(2, 1);
  x << -1, 1;
  auto model = TrainKnn(x, {2, 1}, 3, 1);
  EXPECT_EQ(Predict(model, Eigen::MatrixXd::Zero(1, 1)).labels[0], 2);
}

TEST(KnnTest, SelectNeighboursPrefersSmallerKOnTies) {
  Sample s = Blobs(12, 2, 2, 0.2, 9);
  std::vector<int> groups;
  for (size_t i = 0; i < s.y.size(); ++i)
    groups.push_back(static_cast<int>(i % 4));
  EXPECT_EQ(SelectNeighbours(s.x, s.y, groups, {5, 3, 1}), 1);
}

TEST(QdaTest, MeansAndCovarianceAreMle) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 0, -1, 0, 0, 1, 0, -1;
  auto model = TrainQda(x, {0, 0, 0, 0}, 1, 0.0);
  const auto& qm = std::get<QdaModel>(model.params);
  EXPECT_TRUE(qm.means[0].isZero());
  EXPECT_NEAR((qm.covariances[0] - 0.5 * Eigen::MatrixXd::Identity(2, 2))
                  .cwiseAbs()
                  .maxCoeff(),
              0.0, 1e-12);
  auto ridged = TrainQda(x, {0, 0, 0, 0}, 1, 1e-6);
  const auto& qr = std::get<QdaModel>(ridged.params);
  EXPECT_NEAR(qr.covariances[0](0, 0), 0.5 + 1e-6 * 0.5, 1e-15);
}

TEST(QdaTest, SmallClassGetsHeavierRidge) {
  Eigen::MatrixXd x(5, 3);
  x << 0, 0, 0, 1, 1, 0, 5, 5, 5, 6, 5, 5, 5, 6, 7;
  auto model = TrainQda(x, {0, 0, 1, 1, 1}, 2);
  const auto& qm = std::get<QdaModel>(model.params);
  EXPECT_TRUE(qm.heavy_ridge[0]);
  EXPECT_TRUE(qm.heavy_ridge[1]);
  Eigen::LLT<Eigen::MatrixXd> llt(qm.covariances[0]);
  EXPECT_EQ(llt.info(), Eigen::Success);
}

TEST(QdaTest, SingleSampleClassIsTrainingError) {
  Eigen::MatrixXd x(3, 1);
  x << 0, 1, 5;
  EXPECT_THROW(TrainQda(x, {0, 0, 1}, 2), TrainingError);
}

TEST(QdaTest, LogDensityMatchesDirectEvaluation) {
  Sample s = Blobs(20, 2, 3, 1.3, 10);
  auto model = TrainQda(s.x, s.y, 2);
  const auto& qm = std::get<QdaModel>(model.params);
  Eigen::VectorXd probe(3);
  probe << 0.3, -0.2, 1.1;
  for (int c = 0; c < 2; ++c) {
    const Eigen::MatrixXd& cov = qm.covariances[c];
    const Eigen::VectorXd diff = probe - qm.means[c];
    const double quad = diff.dot(cov.inverse() * diff);
    const double expected = -0.5 * quad - 0.5 * std::log(cov.determinant()) -
                            1.5 * std::log(2 * std::numbers::pi);
    EXPECT_NEAR(QdaLogDensity(model, c, probe), expected, 1e-9);
  }
}

TEST(QdaTest, PosteriorMatchesClosedFormBayes) {
  Eigen::MatrixXd x(7, 1);
  x << -1.0, 0.2, 0.5, 1.4, 2.5, 4.0, 3.1;
  std::vector<int> y = {0, 0, 0, 1, 1, 1, 1};
  auto model = TrainQda(x, y, 2, 0.0);
  // Hand-computed MLE parameters.
  const double m0 = (-1.0 + 0.2 + 0.5) / 3, m1 = (1.4 + 2.5 + 4.0 + 3.1) / 4;
  double v0 = 0, v1 = 0;
  for (int i = 0; i < 3; ++i) v0 += (x(i, 0) - m0) * (x(i, 0) - m0);
  for (int i = 3; i < 7; ++i) v1 += (x(i, 0) - m1) * (x(i, 0) - m1);
  v0 /= 3;
  v1 /= 4;
  for (double q = -3.0; q <= 6.0; q += 0.25) {
    const double a = 3.0 / 7 * NormalPdf(q, m0, v0);
    const double b = 4.0 / 7 * NormalPdf(q, m1, v1);
    Eigen::MatrixXd probe(1, 1);
    probe << q;
    EXPECT_NEAR(Predict(model, probe).probabilities(0, 1), b / (a + b), 1e-9)
        << "at " << q;
  }
}

TEST(QdaTest, IdenticalClassesPredictHigherPrior) {
  // Both classes hold the same points; class 1 has twice as many copies.
  Eigen::MatrixXd more(12, 1);
  more << -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1, 0;
  std::vector<int> ym = {0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1};
  auto model = TrainQda(more, ym, 2);
  Eigen::MatrixXd probe(5, 1);
  probe << -4, -1, 0, 2, 7;
  for (int label : Predict(model, probe).labels) EXPECT_EQ(label, 1);
}

TEST(QdaTest, EqualCovariancesReduceToLinearRule) {
  Sample base = Blobs(25, 1, 2, 1.0, 11);
  Eigen::MatrixXd x(50, 2);
  x.topRows(25) = base.x;
  Eigen::RowVector2d shift(2.0, -1.0);
  x.bottomRows(25) = base.x.rowwise() + shift;
  std::vector<int> y(50, 0);
  std::fill(y.begin() + 25, y.end(), 1);
  auto model = TrainQda(x, y, 2);
  const auto& qm = std::get<QdaModel>(model.params);
  const Eigen::MatrixXd inv = qm.covariances[0].inverse();
  const Eigen::VectorXd a = inv * (qm.means[1] - qm.means[0]);
  const double b = -0.5 * (qm.means[1].dot(inv * qm.means[1]) -
                           qm.means[0].dot(inv * qm.means[0]));
  Sample probe = Blobs(30, 1, 2, 3.0, 12);
  auto p = Predict(model, probe.x);
  for (int i = 0; i < probe.x.rows(); ++i) {
    const double linear = a.dot(probe.x.row(i).transpose()) + b;
    const double logit =
        std::log(p.probabilities(i, 1)) - std::log(p.probabilities(i, 0));
    EXPECT_NEAR(logit, linear, 1e-9);
  }
}

TEST(AggregateTest, MajorityAndThreshold) {
  Aggregation majority;
  // classes: 0 myo, 1 neuro, 2 normal (strong)
  EXPECT_EQ(AggregateVotes({2, 1, 5}, 2, majority), 2);
  EXPECT_EQ(AggregateVotes({5, 1, 5}, 2, majority), 0);  // tie to disordered
  EXPECT_EQ(AggregateVotes({3, 3, 1}, 2, majority), 0);  // lower class
  Aggregation threshold{Aggregation::Rule::kThreshold, 0.25};
  EXPECT_EQ(AggregateVotes({1, 2, 7}, 2, threshold), 1);
  EXPECT_EQ(AggregateVotes({1, 1, 8}, 2, threshold), 2);
}

AnnotatedTrainingSet LabelsAsBags(const Dataset& ds) {
  AnnotatedTrainingSet ts;
  ts.strong_label = ds.strong_label();
  for (int i = 0; i < ds.size(); ++i) {
    ts.instances.push_back(
        {i, ds.ids()[i], ds.bag_label(i), Provenance::kStrong});
  }
  return ts;
}

Dataset SeparableBags(int bags_per_class) {
  Dataset::Parts p;
  std::vector<std::string> labels = {"normal", "myo", "neuro"};
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0.0, 0.3);
  int rows = 0;
  std::vector<Eigen::RowVector2d> xs;
  for (int c = 0; c < 3; ++c) {
    for (int b = 0; b < bags_per_class; ++b) {
      for (int i = 0; i < 6; ++i) {
        Eigen::RowVector2d v(g(rng), g(rng));
        if (c > 0) v(c - 1) += 5.0;
        xs.push_back(v);
        p.ids.push_back("r" + std::to_string(rows++));
        p.bag_ids.push_back(labels[c] + std::to_string(b));
        p.bag_labels.push_back(labels[c]);
      }
    }
  }
  p.features.resize(rows, 2);
  for (int i = 0; i < rows; ++i) p.features.row(i) = xs[i];
  p.strong_label = "normal";
  return Dataset(p);
}

TEST(CvTest, SeparableBagsPerfectForEveryClassifier) {
  Dataset ds = SeparableBags(2);
  auto ts = LabelsAsBags(ds);
  for (ClassifierKind kind : {ClassifierKind::kLogistic, ClassifierKind::kKnn,
                              ClassifierKind::kQda}) {
    CvOptions options;
    options.kind = kind;
    auto cv = LeaveOneBagOutCv(ts, ds, options);
    EXPECT_EQ(cv.folds, 6);
    EXPECT_EQ(cv.bags.size(), 6u);
    EXPECT_DOUBLE_EQ(cv.accuracy, 1.0) << ClassifierKindName(kind);
    int total = 0;
    for (const auto& row : cv.confusion) {
      for (int c : row) total += c;
    }
    EXPECT_EQ(total, 6);
  }
}

TEST(CvTest, FoldMissingAClassIsFlagged) {
  Dataset ds = SeparableBags(1);
  auto ts = LabelsAsBags(ds);
  auto cv = LeaveOneBagOutCv(ts, ds, {});
  for (const auto& b : cv.bags) EXPECT_TRUE(b.fold_flagged);
  EXPECT_DOUBLE_EQ(cv.accuracy, 0.0);
}

TEST(CvTest, KnnRecordsChosenK) {
  Dataset ds = SeparableBags(3);
  CvOptions options;
  options.kind = ClassifierKind::kKnn;
  auto cv = LeaveOneBagOutCv(LabelsAsBags(ds), ds, options);
  for (const auto& b : cv.bags) EXPECT_GE(b.neighbours, 1);
}

TEST(CvTest, KnnFoldMatchesStandaloneModel) {
  Dataset ds = SeparableBags(3);
  CvOptions options;
  options.kind = ClassifierKind::kKnn;
  options.knn_grid = {3};
  auto ts = LabelsAsBags(ds);
  auto cv = LeaveOneBagOutCv(ts, ds, options);
  // Rebuild fold 0 by hand.
  const auto& held = ds.bags()[0].members;
  std::vector<int> train;
  for (int i = 0; i < ds.size(); ++i) {
    if (std::find(held.begin(), held.end(), i) == held.end())
      train.push_back(i);
  }
  Eigen::MatrixXd xt(train.size(), 2);
  std::vector<int> yt;
  for (size_t r = 0; r < train.size(); ++r) {
    xt.row(r) = ds.features().row(train[r]);
    const auto& label = ds.bag_label(train[r]);
    yt.push_back(static_cast<int>(
        std::find(cv.classes.begin(), cv.classes.end(), label) -
        cv.classes.begin()));
  }
  Eigen::MatrixXd xq(held.size(), 2);
  for (size_t r = 0; r < held.size(); ++r)
    xq.row(r) = ds.features().row(held[r]);
  auto labels = Predict(TrainKnn(xt, yt, 3, 3), xq).labels;
  std::vector<int> votes(3, 0);
  for (int l : labels) ++votes[l];
  EXPECT_EQ(votes, cv.bags[0].votes);
}

TEST(ClassifierNamesTest, RoundTrip) {
  for (auto k : {ClassifierKind::kLogistic, ClassifierKind::kKnn,
                 ClassifierKind::kQda}) {
    EXPECT_EQ(ParseClassifierKind(ClassifierKindName(k)), k);
  }
  EXPECT_THROW(ParseClassifierKind("svm"), ParameterError);
  EXPECT_EQ(ParseAggregation("threshold"), Aggregation::Rule::kThreshold);
}

}  // namespace
}  // namespace weakspec
