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

#ifndef WEAKSPEC_WEAKANNO_H_
#define WEAKSPEC_WEAKANNO_H_

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weakspec/dataset.h"
#include "weakspec/simgraph.h"
#include "weakspec/spectral.h"

namespace weakspec {

enum class Provenance { kStrong, kWeak };

struct AnnotatedInstance {
  int row = 0;  // row in the source Dataset
  std::string id;
  std::string label;
  Provenance provenance = Provenance::kStrong;
};

// Per bag label: how the unlabelled pool split.
struct GroupAudit {
  std::string bag_label;
  int instances = 0;
  int strong_group_size = 0;  // group annotated with the strong label
  int bag_group_size = 0;     // group annotated with the bag label
  bool tie = false;
  GraphParams params;
  long edges = 0;
  int components = 0;
};

// Every source instance exactly once, in source row order.
struct AnnotatedTrainingSet {
  std::vector<AnnotatedInstance> instances;
  std::string strong_label;
  GraphModel model = GraphModel::kProbThreshold;
  std::uint64_t seed = 0;
  std::vector<GroupAudit> audits;

  int CountWeak() const;
};

// Rows of every bag labelled `bag_label`, ascending. Throws ParameterError for
// the strong label and InputError when no bag carries the label.
std::vector<int> CollectUnlabelled(const Dataset& ds,
                                   const std::string& bag_label);

struct AnnotatedGroups {
  std::vector<std::string> labels;  // one per grouped instance
  int strong_group = 0;             // group index given the strong label
  bool tie = false;
};

// Two-group annotation: the smaller group takes the strong label, the larger
// the bag label. On equal sizes the group whose centroid lies farther from
// `strong_centroid` takes the bag label. Throws DegenerateError when a group
// is empty or when a tie cannot be resolved (no strong centroid).
AnnotatedGroups AnnotateGroups(
    const Grouping& grouping, const std::string& bag_label,
    const std::string& strong_label, const Eigen::MatrixXd& member_features,
    const std::optional<Eigen::VectorXd>& strong_centroid);

struct AnnotationConfig {
  GraphModel model = GraphModel::kProbThreshold;
  GraphParams params;
  // Per-bag-label overrides of `params`.
  std::map<std::string, GraphParams> label_params;
  int restarts = 10;
};

// For each non-strong bag label, in sorted order: collect its instances, build
// a similarity graph over them alone, split it in two spectrally and annotate
// by group size. Strong instances pass through untouched. Features are used
// as given; standardize beforehand.
AnnotatedTrainingSet BuildTrainingSet(const Dataset& ds,
                                      const AnnotationConfig& config,
                                      std::uint64_t seed);

// Every instance labelled with its bag's label.
AnnotatedTrainingSet FullySupervisedBaseline(const Dataset& ds);

// Fraction of weak-provenance instances whose label equals the ground truth.
// Throws InputError when the dataset carries no truth.
double WeakLabelAgreement(const AnnotatedTrainingSet& ts, const Dataset& ds);

// Planted bags-of-instances. The strong class sits at the origin; disordered
// class c at `separation` along axis c, all with identity covariance. Each
// instance of a disordered bag is disordered with probability `mix_ratio`.
struct SynthConfig {
  int dim = 2;
  int bags_per_class = 20;
  int min_bag_size = 10;
  int max_bag_size = 20;
  double mix_ratio = 0.7;
  double separation = 4.0;
  std::string strong_label = "normal";
  std::vector<std::string> disordered_labels = {"myopathic", "neurogenic"};
  std::uint64_t seed = 0;
};

// Throws ParameterError unless 0.5 < mix_ratio < 1, dim covers every
// disordered axis and the bag sizes are ordered and positive.
Dataset SynthBags(const SynthConfig& config);

}  // namespace weakspec

#endif  // WEAKSPEC_WEAKANNO_H_
