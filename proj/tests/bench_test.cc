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

#include "weakspec/bench.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include "oracles.h"
#include "weakspec/csv.h"
#include "weakspec/errors.h"

#ifndef WEAKSPEC_DATA_DIR
#define WEAKSPEC_DATA_DIR "data"
#endif

namespace weakspec {
namespace {

using testing::TempDir;

// Two separated 6-dimensional clusters in the banknote layout.
std::string PlantedBanknotes(int rows) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 0.3);
  std::ostringstream out;
  out << "Status,Length,Left,Right,Bottom,Top,Diagonal\n";
  for (int i = 0; i < rows; ++i) {
    const bool genuine = i < rows / 2;
    out << (genuine ? "genuine" : "counterfeit");
    for (int f = 0; f < 6; ++f) out << "," << (genuine ? 0.0 : 3.0) + g(rng);
    out << "\n";
  }
  return out.str();
}

TEST(LoaderTest, MissingFilesGiveFetchInstructions) {
  TempDir dir;
  const std::string empty = dir.Path("");
  for (auto loader : {LoadBanknotes, LoadSegmentation, LoadAbalone}) {
    try {
      loader(empty);
      FAIL() << "expected DataMissingError";
    } catch (const DataMissingError& e) {
      EXPECT_NE(std::string(e.what()).find("Fetch"), std::string::npos);
    }
  }
  EXPECT_THROW(LoadDatasetA(empty), DataMissingError);
}

TEST(LoaderTest, BanknotesVerifiesRowCount) {
  TempDir dir;
  dir.File("banknote.csv", PlantedBanknotes(200));
  Dataset ds = LoadBanknotes(dir.Path(""));
  EXPECT_EQ(ds.size(), 200);
  EXPECT_EQ(ds.dim(), 6);
  EXPECT_TRUE(ds.has_truth());
  dir.File("banknote.csv", PlantedBanknotes(199));
  EXPECT_THROW(LoadBanknotes(dir.Path("")), InputError);
}

TEST(LoaderTest, SegmentationDropsPixelCount) {
  TempDir dir;
  std::ostringstream out;
  out << "region-pixel-count";
  for (int f = 0; f < 18; ++f) out << ",f" << f;
  out << ",category\n";
  for (int r = 0; r < 2310; ++r) {
    out << 9;
    for (int f = 0; f < 18; ++f) out << "," << (r * 7 + f) % 13;
    out << ",class" << r % 7 << "\n";
  }
  dir.File("segmentation.csv", out.str());
  Dataset ds = LoadSegmentation(dir.Path(""));
  EXPECT_EQ(ds.size(), 2310);
  EXPECT_EQ(ds.dim(), 18);
  std::set<std::string> classes(ds.truth().begin(), ds.truth().end());
  EXPECT_EQ(classes.size(), 7u);
}

TEST(LoaderTest, AbaloneOneHotAndRingBins) {
  TempDir dir;
  std::ostringstream out;
  const char* sex[] = {"M", "F", "I"};
  for (int r = 0; r < 4177; ++r) {
    out << sex[r % 3] << ",0.4,0.3,0.1,0.5,0.2,0.1,0.15," << 1 + r % 20 << "\n";
  }
  dir.File("abalone.data", out.str());
  Dataset ds = LoadAbalone(dir.Path(""));
  EXPECT_EQ(ds.size(), 4177);
  EXPECT_EQ(ds.dim(), 10);
  EXPECT_EQ(ds.features().row(0).head(3).sum(), 1.0);
  std::set<std::string> bins(ds.truth().begin(), ds.truth().end());
  EXPECT_EQ(bins.size(), 10u);
  // Rings 1 and 2 fall in the first bin, 19 and 20 in the last.
  EXPECT_EQ(ds.truth()[0], "rings_bin_0");
  EXPECT_EQ(ds.truth()[19], "rings_bin_9");
}

TEST(LoaderTest, BundledDatasetA) {
  Dataset ds = LoadDatasetA(WEAKSPEC_DATA_DIR);
  EXPECT_EQ(ds.size(), 26);
  EXPECT_EQ(ds.dim(), 2);
  int red = 0;
  for (const auto& t : ds.truth()) red += t == "red";
  EXPECT_EQ(red, 14);
}

TEST(BenchTest, ToyFigSuitePassesAndWritesArtifacts) {
  TempDir dir;
  BenchOptions options;
  options.data_dir = WEAKSPEC_DATA_DIR;
  options.artifact_dir = dir.Path("out");
  SuiteReport r = RunToyFig(options);
  ASSERT_EQ(r.checks.size(), 3u);
  for (const Check& c : r.checks) EXPECT_TRUE(c.passed) << c.name << c.detail;
  EXPECT_TRUE(r.AllPassed());
  CsvTable sweeps = ReadCsv(dir.Path("out/toyfig_sweeps.csv"));
  EXPECT_EQ(sweeps.header, (std::vector<std::string>{"model", "parameter",
                                                     "components", "planted"}));
  // 2 x 25 kNN rows plus the epsilon sweep.
  EXPECT_GT(sweeps.rows.size(), 50u);
  EXPECT_TRUE(
      std::filesystem::exists(dir.Path("out/toyfig_prob_threshold.csv")));
}

TEST(BenchTest, BanknotesPipelineOnPlantedStandIn) {
  TempDir dir;
  dir.File("banknote.csv", PlantedBanknotes(200));
  BenchOptions options;
  options.data_dir = dir.Path("");
  Check c = RunBanknotes(options);
  EXPECT_TRUE(c.passed) << c.detail;
  EXPECT_FALSE(c.soft);
  EXPECT_GE(c.metrics["min_f1"].get<double>(), 0.99);
}

TEST(BenchTest, MissingHardDataFailsSuite) {
  TempDir dir;
  BenchOptions options;
  options.data_dir = dir.Path("");
  Check banknotes = RunBanknotes(options);
  EXPECT_TRUE(banknotes.blocked);
  EXPECT_FALSE(banknotes.Ok());
  Check abalone = RunAbalone(options);
  EXPECT_TRUE(abalone.blocked);
  EXPECT_TRUE(abalone.Ok());  // soft
  SuiteReport r{"table1", {banknotes, abalone}};
  EXPECT_FALSE(r.AllPassed());
  Json j = SuiteJson(r);
  EXPECT_EQ(j["checks"][0]["status"], "blocked");
  EXPECT_FALSE(j["passed"].get<bool>());
}

TEST(BenchTest, SynthSeedIsDeterministic) {
  SynthExperiment e = SynthExperiment::Default();
  e.bags.bags_per_class = 6;
  SynthSeedResult a = RunSynthSeed(e, 5, 1);
  SynthSeedResult b = RunSynthSeed(e, 5, 2);
  EXPECT_EQ(a.weak_accuracy, b.weak_accuracy);
  EXPECT_EQ(a.baseline_accuracy, b.baseline_accuracy);
  EXPECT_EQ(a.weak_label_agreement, b.weak_label_agreement);
  EXPECT_GT(a.weak_instances, 0);
}

TEST(BenchTest, UnknownSuiteIsParameterError) {
  EXPECT_THROW(RunSuite("table3", BenchOptions{}), ParameterError);
}

}  // namespace
}  // namespace weakspec
