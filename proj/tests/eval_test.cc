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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.h"
#include "weakspec/csv.h"
#include "weakspec/errors.h"
#include "weakspec/report.h"

namespace weakspec {
namespace {

using testing::DaviesBouldinOracle;
using testing::F1Oracle;

Grouping Make(std::vector<int> a, int k) {
  Grouping g;
  g.assignments = std::move(a);
  g.k = k;
  return g;
}

TEST(DaviesBouldinTest, SingletonGroupsGiveZero) {
  Eigen::MatrixXd x(2, 2);
  x << 0, 0, 3, 4;
  EXPECT_EQ(DaviesBouldin(x, Make({0, 1}, 2)), 0.0);
}

TEST(DaviesBouldinTest, SymmetricPairsHandComputed) {
  const double delta = 0.3, d = 5.0;
  Eigen::MatrixXd x(4, 1);
  x << -delta, delta, d - delta, d + delta;
  EXPECT_NEAR(DaviesBouldin(x, Make({0, 0, 1, 1}, 2)), 2 * delta / d, 1e-15);
}

TEST(DaviesBouldinTest, IdenticalCentroidsAreDegenerate) {
  Eigen::MatrixXd x(4, 1);
  x << -1, 1, -2, 2;
  EXPECT_THROW(DaviesBouldin(x, Make({0, 0, 1, 1}, 2)), DegenerateError);
  EXPECT_THROW(DaviesBouldin(x, Make({0, 0, 0, 0}, 2)), DegenerateError);
  EXPECT_THROW(DaviesBouldin(x, Make({0, 1, 2, 0}, 3)), ParameterError);
}

TEST(DaviesBouldinTest, GeneralFormAgreesForTwoGroupsAndIsSwapInvariant) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  Eigen::MatrixXd x(20, 3);
  for (int i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
  std::vector<int> a(20), swapped(20);
  for (int i = 0; i < 20; ++i) {
    a[i] = i % 3 == 0;
    swapped[i] = 1 - a[i];
  }
  const double db = DaviesBouldin(x, Make(a, 2));
  EXPECT_EQ(db, DaviesBouldin(x, Make(swapped, 2)));
  EXPECT_NEAR(DaviesBouldinGeneral(x, Make(a, 2)), db, 1e-15);
}

TEST(DaviesBouldinTest, GeneralFormThreeGroupsByHand) {
  Eigen::MatrixXd x(6, 1);
  x << -1, 1, 9, 11, 29, 31;
  // spreads 1, 1, 1; centroids 0, 10, 30.
  const double expected = (2.0 / 10 + 2.0 / 10 + 2.0 / 20) / 3;
  EXPECT_NEAR(DaviesBouldinGeneral(x, Make({0, 0, 1, 1, 2, 2}, 3)), expected,
              1e-15);
}

TEST(DaviesBouldinTest, MatchesLiteralOracleOnRandomInstances) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> size(4, 50);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    Eigen::MatrixXd x(n, 1 + trial % 4);
    for (int i = 0; i < x.size(); ++i) x.data()[i] = g(rng);
    std::vector<int> a(n);
    for (int i = 0; i < n; ++i) a[i] = i < 2 ? i : static_cast<int>(rng() % 2);
    EXPECT_NEAR(DaviesBouldin(x, Make(a, 2)), DaviesBouldinOracle(x, a), 1e-12);
  }
}

TEST(F1Test, IdenticalGroupingScoresOne) {
  std::vector<int> t = {0, 0, 1, 1, 2};
  EXPECT_DOUBLE_EQ(PairCountingF1(t, t).f1, 1.0);
}

TEST(F1Test, OneGiantGroupAgainstBalancedTruth) {
  const int n = 10;
  std::vector<int> g(n, 0), t(n);
  for (int i = 0; i < n; ++i) t[i] = i % 2;
  auto f = PairCountingF1(g, t);
  // Same-truth pairs 2 * C(5,2) = 20 of C(10,2) = 45.
  EXPECT_NEAR(f.precision, 20.0 / 45.0, 1e-15);
  EXPECT_DOUBLE_EQ(f.recall, 1.0);
  EXPECT_NEAR(f.f1, F1Oracle(g, t), 1e-15);
}

TEST(F1Test, EightPointsMatchPairEnumeration) {
  std::vector<int> g = {0, 0, 1, 1, 1, 2, 2, 0};
  std::vector<int> t = {5, 5, 5, 7, 7, 7, 9, 9};
  EXPECT_NEAR(PairCountingF1(g, t).f1, F1Oracle(g, t), 1e-12);
  EXPECT_NEAR(PairCountingF1(g, t, 2.0).f1, F1Oracle(g, t, 2.0), 1e-12);
}

TEST(F1Test, NoPositivePairsIsDegenerate) {
  EXPECT_THROW(PairCountingF1({0, 1, 2}, {0, 0, 1}), DegenerateError);
  EXPECT_THROW(PairCountingF1({0, 0}, {0, 0}, 0.0), ParameterError);
}

TEST(F1Test, MatchesOracleAndIsPermutationInvariant) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> size(3, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    const int kg = 1 + trial % 4, kt = 1 + (trial / 4) % 4;
    std::vector<int> g(n), t(n);
    for (int i = 0; i < n; ++i) {
      g[i] = static_cast<int>(rng() % kg);
      t[i] = static_cast<int>(rng() % kt);
    }
    g[0] = g[1];
    t[0] = t[1];
    const double f = PairCountingF1(g, t).f1;
    EXPECT_NEAR(f, F1Oracle(g, t), 1e-12);
    std::vector<int> g2 = g, t2 = t;
    for (int& v : g2) v = 10 - v;
    for (int& v : t2) v = (v + 1) % kt;
    EXPECT_EQ(PairCountingF1(g2, t2).f1, f);
  }
}

TEST(EncodeLabelsTest, FirstAppearance) {
  EXPECT_EQ(EncodeLabels({"b", "a", "b", "c"}), (std::vector<int>{0, 1, 0, 2}));
}

struct Blobs {
  Eigen::MatrixXd x;
  std::vector<int> truth;
};

Blobs TwoBlobs(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.3);
  Blobs b;
  b.x.resize(30, 2);
  for (int i = 0; i < 30; ++i) {
    b.x(i, 0) = g(rng) + (i < 15 ? 0.0 : 4.0);
    b.x(i, 1) = g(rng);
    b.truth.push_back(i < 15 ? 0 : 1);
  }
  return b;
}

TEST(GridSearchTest, SingleTupleWins) {
  Blobs b = TwoBlobs(4);
  GraphParams p;
  p.k = 5;
  GridSearchOptions o;
  auto r = GridSearch(b.x, PairwiseDistances(b.x), GraphModel::kKnnSymmetric,
                      {p}, o);
  EXPECT_EQ(r.winner, 0);
  EXPECT_EQ(r.grid.size(), 1u);
  EXPECT_TRUE(r.grid[0].davies_bouldin.has_value());
}

TEST(GridSearchTest, FindsPerfectGroupingByF1) {
  Blobs b = TwoBlobs(5);
  GridAxes axes;
  axes.w = {0.03, 0.06, 0.1};
  axes.sigma = {0.01, 0.05};
  axes.symmetrize = {Symmetrization::kMin, Symmetrization::kMax};
  auto tuples = ExpandGrid(GraphModel::kProbThreshold, axes, {});
  EXPECT_EQ(tuples.size(), 12u);
  GridSearchOptions o;
  o.objective = Objective::kF1;
  o.truth = b.truth;
  auto r = GridSearch(b.x, PairwiseDistances(b.x), GraphModel::kProbThreshold,
                      tuples, o);
  EXPECT_DOUBLE_EQ(*r.grid[r.winner].value, 1.0);
  EXPECT_EQ(CanonicalLabels(r.winner_grouping.assignments), b.truth);
}

TEST(GridSearchTest, WorseTupleNeverChangesWinnerAndThreadsAgree) {
  Blobs b = TwoBlobs(6);
  GridAxes axes;
  axes.k = {2, 4, 8};
  auto tuples = ExpandGrid(GraphModel::kKnnMutual, axes, {});
  GridSearchOptions o;
  auto d = PairwiseDistances(b.x);
  auto base = GridSearch(b.x, d, GraphModel::kKnnMutual, tuples, o);
  o.threads = 3;
  auto threaded = GridSearch(b.x, d, GraphModel::kKnnMutual, tuples, o);
  EXPECT_EQ(base.winner, threaded.winner);
  for (size_t t = 0; t < tuples.size(); ++t) {
    EXPECT_EQ(base.grid[t].value, threaded.grid[t].value);
  }
  // Append the worst-scoring tuple again; the winner is unchanged.
  size_t worst = 0;
  for (size_t t = 0; t < tuples.size(); ++t) {
    if (base.grid[t].value && (!base.grid[worst].value ||
                               *base.grid[t].value > *base.grid[worst].value)) {
      worst = t;
    }
  }
  auto extended = tuples;
  extended.push_back(tuples[worst]);
  EXPECT_EQ(GridSearch(b.x, d, GraphModel::kKnnMutual, extended, o).winner,
            base.winner);
}

TEST(GridSearchTest, AllFailuresRaiseSearchError) {
  Blobs b = TwoBlobs(7);
  GraphParams p;
  p.k = 50;  // larger than n - 1
  try {
    GridSearch(b.x, PairwiseDistances(b.x), GraphModel::kKnnSymmetric, {p}, {});
    FAIL();
  } catch (const SearchError& e) {
    EXPECT_NE(std::string(e.what()).find("[0]"), std::string::npos);
  }
  EXPECT_THROW(GridSearch(b.x, PairwiseDistances(b.x),
                          GraphModel::kKnnSymmetric, {}, {}),
               ParameterError);
}

TEST(GridSearchTest, F1NeedsTruth) {
  Blobs b = TwoBlobs(8);
  GridSearchOptions o;
  o.objective = Objective::kF1;
  GraphParams p;
  p.k = 3;
  EXPECT_THROW(GridSearch(b.x, PairwiseDistances(b.x),
                          GraphModel::kKnnSymmetric, {p}, o),
               ParameterError);
}

TEST(GridSearchTest, RepresentativesExpandToOriginalRows) {
  Blobs b = TwoBlobs(9);
  Eigen::MatrixXd doubled(60, 2);
  doubled << b.x, b.x;
  auto dedup = DeduplicateRows(doubled);
  ASSERT_EQ(dedup.unique_rows.rows(), 30);
  GridSearchOptions o;
  o.objective = Objective::kF1;
  o.truth = b.truth;
  o.truth.insert(o.truth.end(), b.truth.begin(), b.truth.end());
  o.representative = dedup.representative;
  GraphParams p;
  p.k = 5;
  auto r = GridSearch(dedup.unique_rows, PairwiseDistances(dedup.unique_rows),
                      GraphModel::kKnnSymmetric, {p}, o);
  EXPECT_EQ(r.winner_grouping.size(), 60);
  EXPECT_DOUBLE_EQ(*r.grid[0].f1, 1.0);
}

TEST(GridSearchTest, MinGroupFractionRejectsSmallGroups) {
  // 26 points near the origin and 4 far away give a 26 / 4 split, so a 20%
  // floor rejects it and a 10% floor keeps it.
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g(0.0, 0.3);
  Eigen::MatrixXd x(30, 2);
  for (int i = 0; i < 30; ++i) {
    x(i, 0) = g(rng) + (i < 26 ? 0.0 : 5.0);
    x(i, 1) = g(rng);
  }
  GraphParams p;
  p.epsilon = 2.0;  // two components: the cluster and the far points
  GridSearchOptions o;
  o.min_group_fraction = 0.1;
  auto kept = GridSearch(x, PairwiseDistances(x), GraphModel::kEpsilon, {p}, o);
  EXPECT_EQ(kept.winner_grouping.GroupSizes(), (std::vector<int>{26, 4}));
  o.min_group_fraction = 0.2;
  EXPECT_THROW(
      GridSearch(x, PairwiseDistances(x), GraphModel::kEpsilon, {p}, o),
      SearchError);
  o.min_group_fraction = 0.6;
  EXPECT_THROW(
      GridSearch(x, PairwiseDistances(x), GraphModel::kEpsilon, {p}, o),
      ParameterError);
}

TEST(ExpandGridTest, OrderAndUntouchedAxes) {
  GridAxes axes;
  axes.w = {0.1, 0.2};
  axes.sigma = {1.0, 2.0};
  axes.k = {3, 4};  // ignored by the threshold graph
  GraphParams base;
  base.k = 9;
  auto t = ExpandGrid(GraphModel::kProbThreshold, axes, base);
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[0].w_thresh, 0.1);
  EXPECT_EQ(*t[1].sigma, 2.0);
  EXPECT_EQ(t[2].w_thresh, 0.2);
  EXPECT_EQ(t[3].k, 9);
  EXPECT_EQ(Linspace(0.0, 1.0, 5)[1], 0.25);
}

TEST(ReportTest, GridCsvHasOneRowPerTupleAndWinnerJson) {
  Blobs b = TwoBlobs(10);
  GridAxes axes;
  axes.k = {3, 5};
  auto tuples = ExpandGrid(GraphModel::kKnnSymmetric, axes, {});
  auto r = GridSearch(b.x, PairwiseDistances(b.x), GraphModel::kKnnSymmetric,
                      tuples, {});
  std::ostringstream out;
  WriteGridCsv(out, r);
  CsvTable table = ParseCsv(out.str());
  EXPECT_EQ(table.rows.size(), 2u);
  EXPECT_GE(table.ColumnIndex("davies_bouldin"), 0);
  Json winner = GridWinnerJson(r);
  EXPECT_EQ(winner["winner_index"], r.winner);
  EXPECT_EQ(winner["objective"], "davies_bouldin");
}

}  // namespace
}  // namespace weakspec
