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

#ifndef WEAKSPEC_REPORT_H_
#define WEAKSPEC_REPORT_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "weakspec/classify.h"
#include "weakspec/eval.h"
#include "weakspec/simgraph.h"
#include "weakspec/spectral.h"
#include "weakspec/weakanno.h"

namespace weakspec {

using Json = nlohmann::ordered_json;

// Serialization of pipeline artifacts. JSON objects keep insertion order so
// equal inputs give byte-identical output.

Json ParamsJson(GraphModel model, const GraphParams& params);

// {n, model, params, seed, components, triplets}. Triplets are the nonzero
// upper-triangle entries [i, j, weight] in row-major order.
Json GraphJson(const SimilarityGraph& graph, const Components& components,
               const std::vector<std::string>& ids);

Json GroupingJson(const Grouping& grouping,
                  const std::vector<std::string>& ids);

// id, then one column per eigenvector.
void WriteEmbeddingCsv(std::ostream& out, const SpectralEmbedding& embedding,
                       const std::vector<std::string>& ids);

// id,row,label,provenance in source row order.
void WriteTrainingSetCsv(std::ostream& out, const AnnotatedTrainingSet& ts);

Json TrainingSetJson(const AnnotatedTrainingSet& ts);

Json CvJson(const CvResult& cv, const CvOptions& options);

// One row per bag: bag_id,truth,predicted,votes_<class>...,fold_flagged,k.
void WriteCvCsv(std::ostream& out, const CvResult& cv);

// One row per grid tuple; failed tuples have an empty value.
void WriteGridCsv(std::ostream& out, const GridSearchResult& result);

Json GridWinnerJson(const GridSearchResult& result);

// Writes `value` indented by two spaces, newline-terminated. Throws Error when
// the file cannot be written.
void WriteJsonFile(const std::string& path, const Json& value);

}  // namespace weakspec

#endif  // WEAKSPEC_REPORT_H_
