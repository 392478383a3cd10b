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

#include "weakspec/report.h"

#include <fstream>

#include "weakspec/csv.h"
#include "weakspec/errors.h"

namespace weakspec {
namespace {

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatDouble(*v) : std::string();
}

}  // namespace

Json ParamsJson(GraphModel model, const GraphParams& params) {
  Json j;
  j["model"] = GraphModelName(model);
  switch (model) {
    case GraphModel::kEpsilon:
      j["epsilon"] = params.epsilon;
      break;
    case GraphModel::kKnnSymmetric:
    case GraphModel::kKnnMutual:
      j["k"] = params.k;
      if (params.sigma) j["sigma"] = *params.sigma;
      break;
    case GraphModel::kFullyConnected:
      if (params.sigma) j["sigma"] = *params.sigma;
      break;
    case GraphModel::kProbThreshold:
    case GraphModel::kProbCriterion:
      j["w"] = params.w_thresh;
      if (params.sigma) j["sigma"] = *params.sigma;
      j["m"] = params.m;
      j["symmetrize"] = SymmetrizationName(params.symmetrize);
      if (model == GraphModel::kProbThreshold) {
        j["eps_weight"] = params.eps_weight;
      } else if (params.seed) {
        j["seed"] = *params.seed;
      }
      break;
    case GraphModel::kCustom:
      break;
  }
  return j;
}

Json GraphJson(const SimilarityGraph& graph, const Components& components,
               const std::vector<std::string>& ids) {
  Json j;
  j["n"] = graph.size();
  j["model"] = GraphModelName(graph.model());
  j["params"] = ParamsJson(graph.model(), graph.params());
  j["seed"] = graph.params().seed ? Json(*graph.params().seed) : Json(nullptr);
  j["edge_count"] = graph.EdgeCount();
  j["components"] = components.count;
  j["component_labels"] = components.labels;
  if (!ids.empty()) j["ids"] = ids;
  // Nonzero upper-triangle entries as [i, j, weight] with 0-based rows.
  Json triplets = Json::array();
  const auto& w = graph.weights();
  for (int i = 0; i < graph.size(); ++i) {
    for (int k = i + 1; k < graph.size(); ++k) {
      if (w(i, k) > 0.0) triplets.push_back(Json::array({i, k, w(i, k)}));
    }
  }
  j["triplets"] = std::move(triplets);
  return j;
}

Json GroupingJson(const Grouping& grouping,
                  const std::vector<std::string>& ids) {
  Json j;
  j["k"] = grouping.k;
  j["sizes"] = grouping.GroupSizes();
  Json members = Json::array();
  for (int i = 0; i < grouping.size(); ++i) {
    members.push_back({{"id", ids.empty() ? std::to_string(i) : ids[i]},
                       {"group", grouping.assignments[i]}});
  }
  j["assignments"] = std::move(members);
  return j;
}

void WriteEmbeddingCsv(std::ostream& out, const SpectralEmbedding& embedding,
                       const std::vector<std::string>& ids) {
  std::vector<std::string> header = {"id"};
  for (Eigen::Index c = 0; c < embedding.vectors.cols(); ++c) {
    header.push_back("u" + std::to_string(c + 1));
  }
  WriteCsvRow(out, header);
  for (Eigen::Index i = 0; i < embedding.vectors.rows(); ++i) {
    std::vector<std::string> row = {ids.empty() ? std::to_string(i) : ids[i]};
    for (Eigen::Index c = 0; c < embedding.vectors.cols(); ++c) {
      row.push_back(FormatDouble(embedding.vectors(i, c)));
    }
    WriteCsvRow(out, row);
  }
}

void WriteTrainingSetCsv(std::ostream& out, const AnnotatedTrainingSet& ts) {
  WriteCsvRow(out, {"id", "row", "label", "provenance"});
  for (const auto& inst : ts.instances) {
    WriteCsvRow(out,
                {inst.id, std::to_string(inst.row), inst.label,
                 inst.provenance == Provenance::kStrong ? "strong" : "weak"});
  }
}

Json TrainingSetJson(const AnnotatedTrainingSet& ts) {
  Json j;
  j["strong_label"] = ts.strong_label;
  j["model"] = GraphModelName(ts.model);
  j["seed"] = ts.seed;
  j["instances"] = ts.instances.size();
  j["weak"] = ts.CountWeak();
  j["strong"] = static_cast<int>(ts.instances.size()) - ts.CountWeak();
  Json audits = Json::array();
  for (const auto& a : ts.audits) {
    Json row;
    row["bag_label"] = a.bag_label;
    row["instances"] = a.instances;
    row["strong_group_size"] = a.strong_group_size;
    row["bag_group_size"] = a.bag_group_size;
    row["group_size_ratio"] =
        a.bag_group_size > 0
            ? static_cast<double>(a.strong_group_size) / a.bag_group_size
            : 0.0;
    row["tie"] = a.tie;
    row["edges"] = a.edges;
    row["components"] = a.components;
    row["params"] = ParamsJson(ts.model, a.params);
    audits.push_back(std::move(row));
  }
  j["audits"] = std::move(audits);
  return j;
}

Json CvJson(const CvResult& cv, const CvOptions& options) {
  Json j;
  j["classifier"] = ClassifierKindName(options.kind);
  j["aggregation"] = AggregationName(options.aggregation.rule);
  if (options.aggregation.rule == Aggregation::Rule::kThreshold) {
    j["tau"] = options.aggregation.tau;
  }
  j["folds"] = cv.folds;
  j["accuracy"] = cv.accuracy;
  j["classes"] = cv.classes;
  j["confusion"] = cv.confusion;
  int flagged = 0;
  for (const auto& b : cv.bags) flagged += b.fold_flagged;
  j["flagged_folds"] = flagged;
  return j;
}

void WriteCvCsv(std::ostream& out, const CvResult& cv) {
  std::vector<std::string> header = {"bag_id", "truth", "predicted"};
  for (const auto& c : cv.classes) header.push_back("votes_" + c);
  header.push_back("fold_flagged");
  header.push_back("k");
  WriteCsvRow(out, header);
  for (const auto& b : cv.bags) {
    std::vector<std::string> row = {b.bag_id, b.truth, b.predicted};
    for (int v : b.votes) row.push_back(std::to_string(v));
    row.push_back(b.fold_flagged ? "1" : "0");
    row.push_back(b.neighbours > 0 ? std::to_string(b.neighbours) : "");
    WriteCsvRow(out, row);
  }
}

void WriteGridCsv(std::ostream& out, const GridSearchResult& result) {
  WriteCsvRow(out, {"index", "model", "epsilon", "k", "w", "sigma",
                    "symmetrize", "objective", "value", "davies_bouldin", "f1",
                    "edges", "components", "failure"});
  for (size_t t = 0; t < result.grid.size(); ++t) {
    const auto& p = result.grid[t];
    WriteCsvRow(
        out,
        {std::to_string(t), std::string(GraphModelName(result.model)),
         FormatDouble(p.params.epsilon), std::to_string(p.params.k),
         FormatDouble(p.params.w_thresh), OptionalNumber(p.params.sigma),
         std::string(SymmetrizationName(p.params.symmetrize)),
         std::string(ObjectiveName(result.objective)), OptionalNumber(p.value),
         OptionalNumber(p.davies_bouldin), OptionalNumber(p.f1),
         std::to_string(p.edges), std::to_string(p.components), p.failure});
  }
}

Json GridWinnerJson(const GridSearchResult& result) {
  Json j;
  const auto& best = result.grid.at(result.winner);
  j["objective"] = ObjectiveName(result.objective);
  j["tuples"] = result.grid.size();
  int failed = 0;
  for (const auto& p : result.grid) failed += !p.value;
  j["failed"] = failed;
  j["winner_index"] = result.winner;
  j["params"] = ParamsJson(result.model, best.params);
  j["value"] = *best.value;
  if (best.davies_bouldin) j["davies_bouldin"] = *best.davies_bouldin;
  if (best.f1) j["f1"] = *best.f1;
  j["components"] = best.components;
  j["group_sizes"] = result.winner_grouping.GroupSizes();
  return j;
}

void WriteJsonFile(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << value.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path);
}

}  // namespace weakspec
