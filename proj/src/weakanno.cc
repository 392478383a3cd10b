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

#include "weakspec/weakanno.h"

#include <algorithm>
#include <random>

#include "weakspec/errors.h"

namespace weakspec {

int AnnotatedTrainingSet::CountWeak() const {
  return static_cast<int>(std::count_if(
      instances.begin(), instances.end(), [](const AnnotatedInstance& a) {
        return a.provenance == Provenance::kWeak;
      }));
}

std::vector<int> CollectUnlabelled(const Dataset& ds,
                                   const std::string& bag_label) {
  if (bag_label == ds.strong_label()) {
    throw ParameterError("'" + bag_label +
                         "' is the strong label; its instances are labelled");
  }
  std::vector<int> rows;
  for (const Bag& bag : ds.bags()) {
    if (bag.label == bag_label) {
      rows.insert(rows.end(), bag.members.begin(), bag.members.end());
    }
  }
  if (rows.empty()) {
    throw InputError("no bags carry the label '" + bag_label + "'");
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

AnnotatedGroups AnnotateGroups(
    const Grouping& grouping, const std::string& bag_label,
    const std::string& strong_label, const Eigen::MatrixXd& member_features,
    const std::optional<Eigen::VectorXd>& strong_centroid) {
  if (grouping.k != 2)
    throw ParameterError("annotation needs exactly 2 groups");
  const std::vector<int> sizes = grouping.GroupSizes();
  if (sizes[0] == 0 || sizes[1] == 0) {
    throw DegenerateError("grouping for '" + bag_label +
                          "' has an empty group");
  }
  AnnotatedGroups out;
  if (sizes[0] != sizes[1]) {
    out.strong_group = sizes[0] < sizes[1] ? 0 : 1;
  } else {
    out.tie = true;
    if (!strong_centroid) {
      throw DegenerateError("equal group sizes for '" + bag_label +
                            "' and no strong instances to break the tie");
    }
    if (member_features.rows() != grouping.size()) {
      throw InputError("member features do not match the grouping");
    }
    Eigen::MatrixXd centroids =
        Eigen::MatrixXd::Zero(2, member_features.cols());
    for (int i = 0; i < grouping.size(); ++i) {
      centroids.row(grouping.assignments[i]) += member_features.row(i);
    }
    centroids.row(0) /= sizes[0];
    centroids.row(1) /= sizes[1];
    const double d0 = (centroids.row(0).transpose() - *strong_centroid).norm();
    const double d1 = (centroids.row(1).transpose() - *strong_centroid).norm();
    // The farther group is disordered; exact distance ties keep group 0.
    out.strong_group = d1 >= d0 ? 0 : 1;
  }
  out.labels.reserve(grouping.assignments.size());
  for (int a : grouping.assignments) {
    out.labels.push_back(a == out.strong_group ? strong_label : bag_label);
  }
  return out;
}

AnnotatedTrainingSet BuildTrainingSet(const Dataset& ds,
                                      const AnnotationConfig& config,
                                      std::uint64_t seed) {
  AnnotatedTrainingSet ts;
  ts.strong_label = ds.strong_label();
  ts.model = config.model;
  ts.seed = seed;
  for (int i = 0; i < ds.size(); ++i) {
    ts.instances.push_back(
        {i, ds.ids()[i], ds.bag_label(i), Provenance::kStrong});
  }

  std::optional<Eigen::VectorXd> strong_centroid;
  {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(ds.dim());
    int count = 0;
    for (int i = 0; i < ds.size(); ++i) {
      if (ds.bag_label(i) == ds.strong_label()) {
        sum += ds.features().row(i).transpose();
        ++count;
      }
    }
    if (count > 0) strong_centroid = sum / count;
  }

  for (const std::string& label : ds.label_set()) {
    if (label == ds.strong_label()) continue;
    try {
      const std::vector<int> rows = CollectUnlabelled(ds, label);
      Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), ds.dim());
      for (size_t r = 0; r < rows.size(); ++r) {
        x.row(static_cast<Eigen::Index>(r)) = ds.features().row(rows[r]);
      }
      auto it = config.label_params.find(label);
      GraphParams params =
          it != config.label_params.end() ? it->second : config.params;
      if (config.model == GraphModel::kProbCriterion && !params.seed) {
        params.seed = seed;
      }
      SimilarityGraph graph =
          BuildGraph(PairwiseDistances(x), config.model, params);
      SpectralGroupingResult grouped =
          SpectralGrouping(graph, 2, seed, config.restarts);
      AnnotatedGroups annotated = AnnotateGroups(
          grouped.grouping, label, ds.strong_label(), x, strong_centroid);
      for (size_t r = 0; r < rows.size(); ++r) {
        ts.instances[rows[r]].label = annotated.labels[r];
        ts.instances[rows[r]].provenance = Provenance::kWeak;
      }
      const std::vector<int> sizes = grouped.grouping.GroupSizes();
      GroupAudit audit;
      audit.bag_label = label;
      audit.instances = static_cast<int>(rows.size());
      audit.strong_group_size = sizes[annotated.strong_group];
      audit.bag_group_size = sizes[1 - annotated.strong_group];
      audit.tie = annotated.tie;
      audit.params = graph.params();
      audit.edges = graph.EdgeCount();
      audit.components = ConnectedComponents(graph).count;
      ts.audits.push_back(std::move(audit));
    } catch (const Error& e) {
      throw Error("annotating bag label '" + label + "': " + e.what());
    }
  }
  return ts;
}

AnnotatedTrainingSet FullySupervisedBaseline(const Dataset& ds) {
  AnnotatedTrainingSet ts;
  ts.strong_label = ds.strong_label();
  ts.model = GraphModel::kCustom;
  for (int i = 0; i < ds.size(); ++i) {
    ts.instances.push_back(
        {i, ds.ids()[i], ds.bag_label(i), Provenance::kStrong});
  }
  return ts;
}

double WeakLabelAgreement(const AnnotatedTrainingSet& ts, const Dataset& ds) {
  if (!ds.has_truth()) throw InputError("dataset carries no truth labels");
  int weak = 0;
  int agree = 0;
  for (const AnnotatedInstance& a : ts.instances) {
    if (a.provenance != Provenance::kWeak) continue;
    ++weak;
    agree += a.label == ds.truth()[a.row];
  }
  return weak == 0 ? 1.0 : static_cast<double>(agree) / weak;
}

Dataset SynthBags(const SynthConfig& c) {
  if (!(c.mix_ratio > 0.5 && c.mix_ratio < 1.0)) {
    throw ParameterError("mix_ratio must lie in (0.5, 1)");
  }
  if (c.disordered_labels.empty()) {
    throw ParameterError("at least one disordered label is required");
  }
  if (c.dim < static_cast<int>(c.disordered_labels.size())) {
    throw ParameterError("dim must be >= the number of disordered labels");
  }
  if (c.min_bag_size < 1 || c.max_bag_size < c.min_bag_size) {
    throw ParameterError("bag sizes must satisfy 1 <= min <= max");
  }
  if (c.bags_per_class < 1) throw ParameterError("bags_per_class must be >= 1");
  if (!(c.separation >= 0.0)) throw ParameterError("separation must be >= 0");

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_int_distribution<int> bag_size(c.min_bag_size, c.max_bag_size);
  std::bernoulli_distribution disordered(c.mix_ratio);

  Dataset::Parts parts;
  std::vector<Eigen::VectorXd> rows;
  std::vector<std::string> classes = {c.strong_label};
  classes.insert(classes.end(), c.disordered_labels.begin(),
                 c.disordered_labels.end());
  for (size_t cls = 0; cls < classes.size(); ++cls) {
    for (int b = 0; b < c.bags_per_class; ++b) {
      const std::string bag_id = classes[cls] + "_" + std::to_string(b + 1);
      const int size = bag_size(rng);
      for (int i = 0; i < size; ++i) {
        size_t truth = 0;
        if (cls > 0 && disordered(rng)) truth = cls;
        Eigen::VectorXd x(c.dim);
        for (int f = 0; f < c.dim; ++f) x(f) = noise(rng);
        if (truth > 0) x(static_cast<Eigen::Index>(truth - 1)) += c.separation;
        rows.push_back(std::move(x));
        parts.ids.push_back(bag_id + "_" + std::to_string(i + 1));
        parts.bag_ids.push_back(bag_id);
        parts.bag_labels.push_back(classes[cls]);
        parts.truth.push_back(classes[truth]);
      }
    }
  }
  parts.features.resize(static_cast<Eigen::Index>(rows.size()), c.dim);
  for (size_t r = 0; r < rows.size(); ++r) {
    parts.features.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  }
  parts.strong_label = c.strong_label;
  return Dataset(std::move(parts));
}

}  // namespace weakspec
