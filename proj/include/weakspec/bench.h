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

#ifndef WEAKSPEC_BENCH_H_
#define WEAKSPEC_BENCH_H_

#include <cstdint>
#include <string>
#include <vector>

#include "weakspec/classify.h"
#include "weakspec/dataset.h"
#include "weakspec/report.h"
#include "weakspec/weakanno.h"

namespace weakspec {

// Outcome of one benchmark check. Soft checks are reported but never fail a
// suite. Blocked checks could not run because their input data is missing.
struct Check {
  std::string name;
  bool passed = false;
  bool soft = false;
  bool blocked = false;
  std::string detail;
  Json metrics = Json::object();
  double seconds = 0.0;

  // True unless this is a hard check that did not pass.
  bool Ok() const { return soft || passed; }
};

struct SuiteReport {
  std::string suite;
  std::vector<Check> checks;

  bool AllPassed() const;
};

struct BenchOptions {
  std::string data_dir = "data";
  std::uint64_t seed = 0;
  int threads = 1;
  // Directory for per-check CSV artifacts; empty skips them.
  std::string artifact_dir;
};

// Benchmark loaders. Each verifies the expected row and column counts and
// throws DataMissingError with fetch instructions when the file is absent.
// Features are returned as stored; callers standardize.
Dataset LoadBanknotes(const std::string& data_dir);
Dataset LoadSegmentation(const std::string& data_dir);
Dataset LoadAbalone(const std::string& data_dir);
Dataset LoadDatasetA(const std::string& data_dir);

// Settings of the synthetic weak-versus-baseline experiment.
struct SynthExperiment {
  SynthConfig bags;
  int seeds = 20;
  CvOptions cv;
  // Per-label annotation grid over prob_threshold parameters, scored by
  // Davies-Bouldin (no ground truth involved).
  std::vector<double> w_grid;
  std::vector<double> sigma_grid;
  std::vector<Symmetrization> symmetrize_grid;
  // Splits that isolate a handful of outliers score well on Davies-Bouldin
  // without separating the classes; they are rejected.
  double min_group_fraction = 0.1;
  double min_gap = 0.05;  // accuracy gap a seed must reach
  int min_seeds = 18;     // seeds that must reach the gap
  double max_seconds = 120.0;

  // Defaults used by the table2synth suite.
  static SynthExperiment Default();
};

struct SynthSeedResult {
  std::uint64_t seed = 0;
  double weak_accuracy = 0.0;
  double baseline_accuracy = 0.0;
  // Same training sets scored with plain majority aggregation, for reference.
  double weak_majority_accuracy = 0.0;
  double baseline_majority_accuracy = 0.0;
  double weak_label_agreement = 0.0;
  int weak_instances = 0;
};

// One planted data set: annotate, then leave-one-bag-out CV of the weak and
// the fully supervised training sets with the same classifier.
SynthSeedResult RunSynthSeed(const SynthExperiment& experiment,
                             std::uint64_t seed, int threads);

// Table 1 rows. Banknotes is a hard check: every probabilistic graph variant
// must reach F1 >= 0.99 within 30 s. Segmentation and Abalone are soft F1
// bands; exceeding their 5 min budget fails them outright.
Check RunBanknotes(const BenchOptions& options);
Check RunSegmentation(const BenchOptions& options);
Check RunAbalone(const BenchOptions& options);

SuiteReport RunTable1(const BenchOptions& options);
SuiteReport RunTable2Synth(const BenchOptions& options,
                           const SynthExperiment& experiment);
SuiteReport RunToyFig(const BenchOptions& options);

// Dispatches on "table1", "table2synth" or "toyfig". Throws ParameterError
// for other names.
SuiteReport RunSuite(const std::string& suite, const BenchOptions& options);

Json SuiteJson(const SuiteReport& report);

}  // namespace weakspec

#endif  // WEAKSPEC_BENCH_H_
