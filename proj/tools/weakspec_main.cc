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

// Command-line driver: graph, group, annotate, train, evaluate, bench.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weakspec/bench.h"
#include "weakspec/classify.h"
#include "weakspec/csv.h"
#include "weakspec/dataset.h"
#include "weakspec/errors.h"
#include "weakspec/eval.h"
#include "weakspec/report.h"
#include "weakspec/simgraph.h"
#include "weakspec/spectral.h"
#include "weakspec/weakanno.h"

#ifndef WEAKSPEC_DATA_DIR
#define WEAKSPEC_DATA_DIR "data"
#endif

namespace weakspec {
namespace {

namespace fs = std::filesystem;

enum ExitCode {
  kOk = 0,
  kChecksFailed = 1,
  kUsage = 2,
  kDataMissing = 3,
  kFailure = 4,
};

enum class KeyType { kString, kDouble, kInt, kBool, kDoubles, kInts, kStrings };

struct KeySpec {
  const char* key;
  KeyType type;
  const char* help;
};

// Every accepted config key. Flags use the key name with '-' for '_'.
const std::vector<KeySpec>& Keys() {
  static const std::vector<KeySpec> keys = {
      {"data", KeyType::kString, "input CSV path, or 'synthetic'"},
      {"data_dir", KeyType::kString, "benchmark data directory"},
      {"id_column", KeyType::kString, "instance id column"},
      {"bag_column", KeyType::kString, "bag id column"},
      {"label_column", KeyType::kString, "bag label column"},
      {"truth_column", KeyType::kString, "ground-truth column (scoring only)"},
      {"feature_columns", KeyType::kStrings, "feature columns"},
      {"strong_label", KeyType::kString, "label of the strongly labelled bags"},
      {"delimiter", KeyType::kString, "CSV delimiter"},
      {"standardize", KeyType::kBool, "z-score features first"},
      {"model", KeyType::kString,
       "epsilon | knn | mutual_knn | fully_connected | "
       "prob_threshold | prob_criterion"},
      {"epsilon", KeyType::kDouble, "epsilon-graph radius"},
      {"knn_k", KeyType::kInt, "kNN neighbour count"},
      {"sigma", KeyType::kDouble, "Gaussian width"},
      {"w", KeyType::kDouble, "similarity threshold w"},
      {"eps_weight", KeyType::kDouble, "weight floor of prob_threshold"},
      {"m", KeyType::kDouble, "ratio-similarity exponent (< 0)"},
      {"symmetrize", KeyType::kString, "min | max"},
      {"groups", KeyType::kInt, "number of spectral groups"},
      {"restarts", KeyType::kInt, "k-means restarts"},
      {"objective", KeyType::kString, "grid objective: db | f1"},
      {"grid_epsilon", KeyType::kDoubles, "grid values of epsilon"},
      {"grid_k", KeyType::kInts, "grid values of knn_k"},
      {"grid_sigma", KeyType::kDoubles, "grid values of sigma"},
      {"grid_w", KeyType::kDoubles, "grid values of w"},
      {"grid_symmetrize", KeyType::kStrings, "grid values of symmetrize"},
      {"min_group_fraction", KeyType::kDouble,
       "grid tuples whose smallest group is below this share fail"},
      {"classifier", KeyType::kString, "logistic | knn | qda"},
      {"aggregation", KeyType::kString, "majority | threshold"},
      {"tau", KeyType::kDouble, "disordered-fraction threshold"},
      {"l2", KeyType::kDouble, "logistic L2 penalty"},
      {"qda_ridge", KeyType::kDouble, "QDA covariance ridge"},
      {"knn_grid", KeyType::kInts, "candidate K for kNN"},
      {"training", KeyType::kString, "train on: weak | baseline"},
      {"synth_dim", KeyType::kInt, "synthetic feature dimension"},
      {"synth_bags_per_class", KeyType::kInt, "synthetic bags per class"},
      {"synth_min_bag", KeyType::kInt, "smallest synthetic bag"},
      {"synth_max_bag", KeyType::kInt, "largest synthetic bag"},
      {"synth_mix_ratio", KeyType::kDouble, "disordered share of a bag"},
      {"synth_separation", KeyType::kDouble, "class separation in sd units"},
      {"synth_seeds", KeyType::kInt, "seeds of the table2synth suite"},
      {"seed", KeyType::kInt, "random seed"},
      {"threads", KeyType::kInt, "worker threads"},
      {"out", KeyType::kString, "output directory"},
  };
  return keys;
}

const KeySpec* FindKey(const std::string& key) {
  for (const KeySpec& spec : Keys()) {
    if (key == spec.key) return &spec;
  }
  return nullptr;
}

bool TypeMatches(const Json& v, KeyType type) {
  auto all = [&](auto pred) {
    if (!v.is_array()) return false;
    for (const Json& e : v) {
      if (!pred(e)) return false;
    }
    return true;
  };
  switch (type) {
    case KeyType::kString:
      return v.is_string();
    case KeyType::kDouble:
      return v.is_number();
    case KeyType::kInt:
      return v.is_number_integer();
    case KeyType::kBool:
      return v.is_boolean();
    case KeyType::kDoubles:
      return all([](const Json& e) { return e.is_number(); });
    case KeyType::kInts:
      return all([](const Json& e) { return e.is_number_integer(); });
    case KeyType::kStrings:
      return all([](const Json& e) { return e.is_string(); });
  }
  return false;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// Converts a flag value to the JSON type of its key.
Json ParseFlag(const KeySpec& spec, const std::string& text) {
  try {
    switch (spec.type) {
      case KeyType::kString:
        return text;
      case KeyType::kDouble:
        return std::stod(text);
      case KeyType::kInt:
        return std::stoll(text);
      case KeyType::kBool:
        if (text == "true" || text == "1") return true;
        if (text == "false" || text == "0") return false;
        break;
      case KeyType::kDoubles: {
        Json a = Json::array();
        for (const auto& s : SplitList(text)) a.push_back(std::stod(s));
        return a;
      }
      case KeyType::kInts: {
        Json a = Json::array();
        for (const auto& s : SplitList(text)) a.push_back(std::stoll(s));
        return a;
      }
      case KeyType::kStrings: {
        Json a = Json::array();
        for (const auto& s : SplitList(text)) a.push_back(s);
        return a;
      }
    }
  } catch (const std::exception&) {
  }
  throw SchemaError(std::string("invalid value '") + text + "' for " +
                    spec.key);
}

// Flat key-value configuration with typed accessors.
class Config {
 public:
  explicit Config(Json values) : values_(std::move(values)) {
    if (!values_.is_object()) {
      throw SchemaError("config must be a flat JSON object");
    }
    for (const auto& [key, value] : values_.items()) {
      const KeySpec* spec = FindKey(key);
      if (spec == nullptr)
        throw SchemaError("unknown config key '" + key + "'");
      if (!TypeMatches(value, spec->type)) {
        throw SchemaError("config key '" + key + "' has the wrong type");
      }
    }
  }

  bool Has(const std::string& key) const { return values_.contains(key); }
  const Json& values() const { return values_; }

  std::string String(const std::string& key, const std::string& def) const {
    return Has(key) ? values_[key].get<std::string>() : def;
  }
  double Double(const std::string& key, double def) const {
    return Has(key) ? values_[key].get<double>() : def;
  }
  long long Int(const std::string& key, long long def) const {
    return Has(key) ? values_[key].get<long long>() : def;
  }
  bool Bool(const std::string& key, bool def) const {
    return Has(key) ? values_[key].get<bool>() : def;
  }
  template <typename T>
  std::vector<T> List(const std::string& key) const {
    return Has(key) ? values_[key].get<std::vector<T>>() : std::vector<T>{};
  }
  std::string Require(const std::string& key) const {
    if (!Has(key)) throw SchemaError("missing config key '" + key + "'");
    return String(key, "");
  }

 private:
  Json values_;
};

std::uint64_t Seed(const Config& c) {
  const long long seed = c.Int("seed", 0);
  if (seed < 0) throw ParameterError("seed must be >= 0");
  return static_cast<std::uint64_t>(seed);
}

int Threads(const Config& c) {
  const long long t = c.Int("threads", 1);
  if (t < 1) throw ParameterError("threads must be >= 1");
  return static_cast<int>(t);
}

fs::path OutDir(const Config& c) {
  fs::path out = c.String("out", "out");
  fs::create_directories(out);
  return out;
}

Dataset LoadData(const Config& c) {
  const std::string data = c.Require("data");
  Dataset ds = Dataset::FromFeatures(Eigen::MatrixXd::Identity(2, 2));
  if (data == "synthetic") {
    SynthConfig s;
    s.dim = static_cast<int>(c.Int("synth_dim", s.dim));
    s.bags_per_class =
        static_cast<int>(c.Int("synth_bags_per_class", s.bags_per_class));
    s.min_bag_size = static_cast<int>(c.Int("synth_min_bag", s.min_bag_size));
    s.max_bag_size = static_cast<int>(c.Int("synth_max_bag", s.max_bag_size));
    s.mix_ratio = c.Double("synth_mix_ratio", s.mix_ratio);
    s.separation = c.Double("synth_separation", s.separation);
    s.seed = Seed(c);
    ds = SynthBags(s);
  } else {
    CsvSchema schema;
    schema.id_column = c.String("id_column", "");
    schema.bag_column = c.String("bag_column", "");
    schema.label_column = c.String("label_column", "");
    schema.truth_column = c.String("truth_column", "");
    schema.feature_columns = c.List<std::string>("feature_columns");
    schema.strong_label = c.String("strong_label", "");
    const std::string delimiter = c.String("delimiter", ",");
    if (delimiter.size() != 1) {
      throw ParameterError("delimiter must be a single character");
    }
    schema.delimiter = delimiter[0];
    ds = LoadCsv(data, schema);
  }
  if (c.Bool("standardize", true)) ds = Standardize(ds).dataset;
  return ds;
}

GraphParams ParamsFrom(const Config& c) {
  GraphParams p;
  p.epsilon = c.Double("epsilon", p.epsilon);
  p.k = static_cast<int>(c.Int("knn_k", p.k));
  if (c.Has("sigma")) p.sigma = c.Double("sigma", 0.0);
  p.w_thresh = c.Double("w", p.w_thresh);
  p.eps_weight = c.Double("eps_weight", p.eps_weight);
  p.m = c.Double("m", p.m);
  p.symmetrize = ParseSymmetrization(c.String("symmetrize", "max"));
  p.seed = Seed(c);
  return p;
}

GraphModel ModelFrom(const Config& c) {
  return ParseGraphModel(c.String("model", "prob_threshold"));
}

bool HasGrid(const Config& c) {
  for (const char* key :
       {"grid_epsilon", "grid_k", "grid_sigma", "grid_w", "grid_symmetrize"}) {
    if (c.Has(key)) return true;
  }
  return false;
}

GridAxes AxesFrom(const Config& c) {
  GridAxes axes;
  axes.epsilon = c.List<double>("grid_epsilon");
  axes.k = c.List<int>("grid_k");
  axes.sigma = c.List<double>("grid_sigma");
  axes.w = c.List<double>("grid_w");
  for (const std::string& s : c.List<std::string>("grid_symmetrize")) {
    axes.symmetrize.push_back(ParseSymmetrization(s));
  }
  return axes;
}

CvOptions CvFrom(const Config& c) {
  CvOptions cv;
  cv.kind = ParseClassifierKind(c.String("classifier", "logistic"));
  cv.aggregation.rule = ParseAggregation(c.String("aggregation", "majority"));
  cv.aggregation.tau = c.Double("tau", cv.aggregation.tau);
  cv.logistic.l2 = c.Double("l2", cv.logistic.l2);
  cv.qda_ridge = c.Double("qda_ridge", cv.qda_ridge);
  if (c.Has("knn_grid")) cv.knn_grid = c.List<int>("knn_grid");
  return cv;
}

std::ofstream OpenOut(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::vector<int> TruthCodes(const Dataset& ds) {
  return ds.has_truth() ? EncodeLabels(ds.truth()) : std::vector<int>{};
}

// Index values of a grouping; F1 only when truth is present.
Json IndexJson(const Eigen::MatrixXd& x, const Grouping& g, const Dataset& ds) {
  Json j;
  try {
    j["davies_bouldin"] = DaviesBouldinGeneral(x, g);
  } catch (const Error& e) {
    j["davies_bouldin"] = nullptr;
    j["davies_bouldin_error"] = e.what();
  }
  if (ds.has_truth()) {
    try {
      const F1Score f = PairCountingF1(g.assignments, TruthCodes(ds));
      j["f1"] = f.f1;
      j["precision"] = f.precision;
      j["recall"] = f.recall;
    } catch (const Error& e) {
      j["f1"] = nullptr;
      j["f1_error"] = e.what();
    }
  }
  return j;
}

int CmdGraph(const Config& c, Json& report) {
  const Dataset ds = LoadData(c);
  const GraphModel model = ModelFrom(c);
  const SimilarityGraph g =
      BuildGraph(PairwiseDistances(ds), model, ParamsFrom(c));
  const Components comp = ConnectedComponents(g);
  const fs::path out = OutDir(c);
  WriteJsonFile((out / "graph.json").string(), GraphJson(g, comp, ds.ids()));
  std::ofstream csv = OpenOut(out / "components.csv");
  WriteCsvRow(csv, {"id", "component"});
  for (int i = 0; i < ds.size(); ++i) {
    WriteCsvRow(csv, {ds.ids()[i], std::to_string(comp.labels[i])});
  }
  report["n"] = ds.size();
  report["params"] = ParamsJson(model, g.params());
  report["edges"] = g.EdgeCount();
  report["components"] = comp.count;
  if (ds.has_truth()) {
    std::set<std::string> classes(ds.truth().begin(), ds.truth().end());
    report["matches_truth"] =
        comp.count == static_cast<int>(classes.size()) &&
        CanonicalLabels(comp.labels) == CanonicalLabels(TruthCodes(ds));
  }
  return kOk;
}

int CmdGroup(const Config& c, Json& report) {
  const Dataset ds = LoadData(c);
  const GraphModel model = ModelFrom(c);
  const int k = static_cast<int>(c.Int("groups", 2));
  const int restarts = static_cast<int>(c.Int("restarts", 10));
  const fs::path out = OutDir(c);
  Grouping grouping;
  if (HasGrid(c)) {
    DeduplicatedRows dedup = DeduplicateRows(ds.features());
    GridSearchOptions search;
    search.objective = ParseObjective(c.String("objective", "db"));
    search.k = k;
    search.seed = Seed(c);
    search.restarts = restarts;
    search.threads = Threads(c);
    search.truth = TruthCodes(ds);
    search.representative = dedup.representative;
    search.min_group_fraction = c.Double("min_group_fraction", 0.0);
    const GridSearchResult result = GridSearch(
        dedup.unique_rows, PairwiseDistances(dedup.unique_rows), model,
        ExpandGrid(model, AxesFrom(c), ParamsFrom(c)), search);
    std::ofstream grid_csv = OpenOut(out / "grid.csv");
    WriteGridCsv(grid_csv, result);
    report["grid"] = GridWinnerJson(result);
    grouping = result.winner_grouping;
  } else {
    const SimilarityGraph g =
        BuildGraph(PairwiseDistances(ds), model, ParamsFrom(c));
    const SpectralGroupingResult r = SpectralGrouping(g, k, Seed(c), restarts);
    std::ofstream emb = OpenOut(out / "embedding.csv");
    WriteEmbeddingCsv(emb, r.embedding, ds.ids());
    report["params"] = ParamsJson(model, g.params());
    report["edges"] = g.EdgeCount();
    report["eigenvalues"] = std::vector<double>(r.embedding.eigenvalues.begin(),
                                                r.embedding.eigenvalues.end());
    grouping = r.grouping;
  }
  Json grouping_json = GroupingJson(grouping, ds.ids());
  WriteJsonFile((out / "grouping.json").string(), grouping_json);
  std::ofstream csv = OpenOut(out / "grouping.csv");
  WriteCsvRow(csv, {"id", "group"});
  for (int i = 0; i < ds.size(); ++i) {
    WriteCsvRow(csv, {ds.ids()[i], std::to_string(grouping.assignments[i])});
  }
  report["n"] = ds.size();
  report["k"] = k;
  report["sizes"] = grouping.GroupSizes();
  report["degenerate"] = grouping.Degenerate();
  report["indices"] = IndexJson(ds.features(), grouping, ds);
  return kOk;
}

// Annotation config; with grid keys each bag label gets the prob_threshold
// (or configured model) parameters minimizing Davies-Bouldin on its pool.
AnnotationConfig AnnotationFrom(const Config& c, const Dataset& ds,
                                Json& report) {
  AnnotationConfig config;
  config.model = ModelFrom(c);
  config.params = ParamsFrom(c);
  config.restarts = static_cast<int>(c.Int("restarts", 10));
  if (!HasGrid(c)) return config;
  Json chosen = Json::object();
  for (const std::string& label : ds.label_set()) {
    if (label == ds.strong_label()) continue;
    const std::vector<int> rows = CollectUnlabelled(ds, label);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), ds.dim());
    for (size_t r = 0; r < rows.size(); ++r) {
      x.row(static_cast<Eigen::Index>(r)) = ds.features().row(rows[r]);
    }
    GridSearchOptions search;
    search.objective = Objective::kDaviesBouldin;
    search.min_group_fraction = c.Double("min_group_fraction", 0.1);
    search.seed = Seed(c);
    search.restarts = config.restarts;
    search.threads = Threads(c);
    const GridSearchResult result = GridSearch(
        x, PairwiseDistances(x), config.model,
        ExpandGrid(config.model, AxesFrom(c), config.params), search);
    config.label_params[label] = result.grid[result.winner].params;
    chosen[label] = GridWinnerJson(result);
  }
  report["annotation_grid"] = std::move(chosen);
  return config;
}

AnnotatedTrainingSet TrainingSetFrom(const Config& c, const Dataset& ds,
                                     Json& report) {
  const std::string training = c.String("training", "weak");
  if (training == "baseline") return FullySupervisedBaseline(ds);
  if (training != "weak") {
    throw ParameterError("training must be 'weak' or 'baseline'");
  }
  return BuildTrainingSet(ds, AnnotationFrom(c, ds, report), Seed(c));
}

int CmdAnnotate(const Config& c, Json& report) {
  const Dataset ds = LoadData(c);
  const AnnotatedTrainingSet ts = TrainingSetFrom(c, ds, report);
  const fs::path out = OutDir(c);
  std::ofstream csv = OpenOut(out / "training_set.csv");
  WriteTrainingSetCsv(csv, ts);
  report["training_set"] = TrainingSetJson(ts);
  const int weak = ts.CountWeak();
  report["strong"] = static_cast<int>(ts.instances.size()) - weak;
  report["weak"] = weak;
  report["n"] = ds.size();
  if (ds.has_truth() && weak > 0) {
    report["weak_label_agreement"] = WeakLabelAgreement(ts, ds);
  }
  return kOk;
}

int CmdTrain(const Config& c, Json& report) {
  const Dataset ds = LoadData(c);
  const AnnotatedTrainingSet ts = TrainingSetFrom(c, ds, report);
  const CvOptions cv = CvFrom(c);
  const std::vector<std::string>& classes = ds.label_set();
  std::map<std::string, int> index;
  for (size_t i = 0; i < classes.size(); ++i) {
    index[classes[i]] = static_cast<int>(i);
  }
  std::vector<int> y;
  for (const AnnotatedInstance& a : ts.instances)
    y.push_back(index.at(a.label));
  const int num_classes = static_cast<int>(classes.size());
  ClassifierModel model;
  Json params;
  switch (cv.kind) {
    case ClassifierKind::kLogistic: {
      model = TrainLogistic(ds.features(), y, num_classes, cv.logistic);
      const auto& m = std::get<LogisticModel>(model.params);
      params["iterations"] = m.iterations;
      params["gradient_norm"] = m.gradient_norm;
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < m.beta.rows(); ++r) {
        rows.push_back(
            std::vector<double>(m.beta.row(r).begin(), m.beta.row(r).end()));
      }
      params["beta"] = std::move(rows);
      break;
    }
    case ClassifierKind::kKnn: {
      std::vector<int> groups;
      for (const AnnotatedInstance& a : ts.instances) {
        groups.push_back(ds.bag_of(a.row));
      }
      const int neighbours =
          SelectNeighbours(ds.features(), y, groups, cv.knn_grid);
      model = TrainKnn(ds.features(), y, num_classes, neighbours);
      params["neighbours"] = neighbours;
      break;
    }
    case ClassifierKind::kQda:
      model = TrainQda(ds.features(), y, num_classes, cv.qda_ridge);
      params["ridge"] = cv.qda_ridge;
      break;
  }
  std::vector<std::string> present;
  for (int p : model.present) present.push_back(classes[p]);
  const Predictions pred = Predict(model, ds.features());
  const fs::path out = OutDir(c);
  std::ofstream csv = OpenOut(out / "train_predictions.csv");
  WriteCsvRow(csv, {"id", "label", "provenance", "predicted"});
  int correct = 0;
  for (size_t i = 0; i < ts.instances.size(); ++i) {
    const AnnotatedInstance& a = ts.instances[i];
    correct += pred.labels[i] == y[i];
    WriteCsvRow(csv, {a.id, a.label,
                      a.provenance == Provenance::kStrong ? "strong" : "weak",
                      classes[pred.labels[i]]});
  }
  Json model_json;
  model_json["classifier"] = ClassifierKindName(cv.kind);
  model_json["classes"] = classes;
  model_json["present"] = present;
  model_json["dim"] = model.dim;
  model_json["params"] = std::move(params);
  WriteJsonFile((out / "model.json").string(), model_json);
  report["classifier"] = ClassifierKindName(cv.kind);
  report["training"] = c.String("training", "weak");
  report["instances"] = ds.size();
  report["training_accuracy"] =
      static_cast<double>(correct) / static_cast<double>(ds.size());
  return kOk;
}

int CmdEvaluate(const Config& c, Json& report) {
  const Dataset ds = LoadData(c);
  const CvOptions cv = CvFrom(c);
  const AnnotatedTrainingSet weak =
      BuildTrainingSet(ds, AnnotationFrom(c, ds, report), Seed(c));
  const AnnotatedTrainingSet baseline = FullySupervisedBaseline(ds);
  const CvResult weak_cv = LeaveOneBagOutCv(weak, ds, cv);
  const CvResult base_cv = LeaveOneBagOutCv(baseline, ds, cv);
  const fs::path out = OutDir(c);
  std::ofstream weak_csv = OpenOut(out / "cv_weak.csv");
  WriteCvCsv(weak_csv, weak_cv);
  std::ofstream base_csv = OpenOut(out / "cv_baseline.csv");
  WriteCvCsv(base_csv, base_cv);
  report["weak"] = CvJson(weak_cv, cv);
  report["baseline"] = CvJson(base_cv, cv);
  report["accuracy_gap"] = weak_cv.accuracy - base_cv.accuracy;
  if (ds.has_truth() && weak.CountWeak() > 0) {
    report["weak_label_agreement"] = WeakLabelAgreement(weak, ds);
  }
  return kOk;
}

int CmdBench(const Config& c, const std::string& suite, Json& report) {
  BenchOptions options;
  options.data_dir = c.String("data_dir", WEAKSPEC_DATA_DIR);
  options.seed = Seed(c);
  options.threads = Threads(c);
  options.artifact_dir = OutDir(c).string();
  SuiteReport result;
  if (suite == "table2synth") {
    SynthExperiment e = SynthExperiment::Default();
    if (c.Has("classifier") || c.Has("aggregation") || c.Has("tau")) {
      const CvOptions cv = CvFrom(c);
      if (c.Has("classifier")) e.cv.kind = cv.kind;
      if (c.Has("aggregation")) e.cv.aggregation.rule = cv.aggregation.rule;
      if (c.Has("tau")) e.cv.aggregation.tau = cv.aggregation.tau;
    }
    e.seeds = static_cast<int>(c.Int("synth_seeds", e.seeds));
    if (c.Has("grid_w")) e.w_grid = c.List<double>("grid_w");
    if (c.Has("grid_sigma")) e.sigma_grid = c.List<double>("grid_sigma");
    if (c.Has("grid_symmetrize")) e.symmetrize_grid = AxesFrom(c).symmetrize;
    result = RunTable2Synth(options, e);
  } else {
    result = RunSuite(suite, options);
  }
  for (const Check& check : result.checks) {
    const char* status = check.blocked  ? "BLOCKED"
                         : check.passed ? "PASS"
                                        : "FAIL";
    std::cout << status << (check.soft ? " (soft) " : " ") << check.name << ": "
              << check.detail << " [" << check.seconds << " s]\n";
  }
  report["report"] = SuiteJson(result);
  bool blocked = false;
  for (const Check& check : result.checks) {
    blocked |= check.blocked && !check.soft;
  }
  if (result.AllPassed()) return kOk;
  return blocked ? kDataMissing : kChecksFailed;
}

}  // namespace
}  // namespace weakspec

int main(int argc, char** argv) {
  using namespace weakspec;
  CLI::App app{"Weakly supervised annotation with spectral grouping"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "flat JSON config file");
  std::map<std::string, std::string> flags;
  auto add_keys = [&](CLI::App* target, const std::vector<std::string>& keys) {
    for (const std::string& key : keys) {
      const KeySpec* spec = FindKey(key);
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      target->add_option(flag, flags[key], spec->help);
    }
  };
  add_keys(&app, {"seed", "out", "threads"});

  const std::vector<std::string> data_keys = {"data",
                                              "id_column",
                                              "bag_column",
                                              "label_column",
                                              "truth_column",
                                              "feature_columns",
                                              "strong_label",
                                              "delimiter",
                                              "standardize",
                                              "synth_dim",
                                              "synth_bags_per_class",
                                              "synth_min_bag",
                                              "synth_max_bag",
                                              "synth_mix_ratio",
                                              "synth_separation"};
  const std::vector<std::string> graph_keys = {
      "model", "epsilon",    "knn_k", "sigma",
      "w",     "eps_weight", "m",     "symmetrize"};
  const std::vector<std::string> grid_keys = {
      "groups",       "restarts",        "objective",
      "grid_epsilon", "grid_k",          "grid_sigma",
      "grid_w",       "grid_symmetrize", "min_group_fraction"};
  const std::vector<std::string> cv_keys = {
      "classifier", "aggregation", "tau",     "l2",
      "qda_ridge",  "knn_grid",    "training"};

  auto* graph = app.add_subcommand("graph", "build a similarity graph");
  auto* group = app.add_subcommand("group", "spectral grouping");
  auto* annotate = app.add_subcommand("annotate", "weak annotation");
  auto* train = app.add_subcommand("train", "fit a classifier");
  auto* evaluate = app.add_subcommand(
      "evaluate", "leave-one-bag-out CV, weak versus baseline");
  auto* bench = app.add_subcommand("bench", "benchmark suites");
  std::string suite;
  bench->add_option("suite", suite, "table1 | table2synth | toyfig")
      ->required();
  for (auto* sub : {graph, group, annotate, train, evaluate}) {
    add_keys(sub, data_keys);
    add_keys(sub, graph_keys);
  }
  for (auto* sub : {group, annotate, train, evaluate}) add_keys(sub, grid_keys);
  for (auto* sub : {train, evaluate}) add_keys(sub, cv_keys);
  add_keys(bench, {"data_dir", "classifier", "aggregation", "tau",
                   "synth_seeds", "grid_w", "grid_sigma", "grid_symmetrize"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kUsage;
  }

  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  Json report;
  report["command"] = command;
  fs::path report_path = fs::path("out") / (command + "_report.json");
  int code = kFailure;
  try {
    Json values = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw SchemaError("cannot read config " + config_path);
      try {
        values = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw SchemaError("config is not valid JSON: " + std::string(e.what()));
      }
    }
    for (const auto& [key, text] : flags) {
      bool given = false;
      std::string flag = "--" + key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      for (auto* a : {&app, app.get_subcommands().front()}) {
        try {
          given |= a->count(flag) > 0;
        } catch (const CLI::OptionNotFound&) {
        }
      }
      if (given) values[key] = ParseFlag(*FindKey(key), text);
    }
    const Config config(values);
    report_path = OutDir(config) / (command + "_report.json");
    report["config"] = config.values();
    if (command == "graph") code = CmdGraph(config, report);
    if (command == "group") code = CmdGroup(config, report);
    if (command == "annotate") code = CmdAnnotate(config, report);
    if (command == "train") code = CmdTrain(config, report);
    if (command == "evaluate") code = CmdEvaluate(config, report);
    if (command == "bench") code = CmdBench(config, suite, report);
  } catch (const DataMissingError& e) {
    report["error"] = e.what();
    code = kDataMissing;
  } catch (const SchemaError& e) {
    report["error"] = e.what();
    code = kUsage;
  } catch (const ParameterError& e) {
    report["error"] = e.what();
    code = kUsage;
  } catch (const Error& e) {
    report["error"] = e.what();
    code = kFailure;
  }
  report["exit_code"] = code;
  report["ok"] = code == kOk;
  if (command != "bench" && !report.contains("error")) {
    Json summary = report;
    summary.erase("config");
    summary.erase("training_set");
    std::cout << summary.dump(2) << "\n";
  }
  if (report.contains("error")) {
    std::cerr << "error: " << report["error"].get<std::string>() << "\n";
  }
  try {
    fs::create_directories(report_path.parent_path());
    WriteJsonFile(report_path.string(), report);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (code == kOk) code = kFailure;
  }
  return code;
}
