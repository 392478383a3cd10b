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

#include "weakspec/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "weakspec/csv.h"
#include "weakspec/errors.h"

namespace weakspec {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

double ParseFeature(std::string_view cell, long row,
                    const std::string& column) {
  std::string_view s = Trim(cell);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "row " << row << ", column '" << column << "': "
        << (s.empty() ? "blank feature cell"
                      : "non-numeric feature cell '" + std::string(s) + "'");
    throw ParseError(msg.str(), row);
  }
  return value;
}

}  // namespace

Dataset::Dataset(Parts parts)
    : ids_(std::move(parts.ids)),
      feature_names_(std::move(parts.feature_names)),
      features_(std::move(parts.features)),
      strong_label_(std::move(parts.strong_label)),
      truth_(std::move(parts.truth)) {
  const int n = static_cast<int>(features_.rows());
  if (n < 2) throw InputError("dataset needs at least 2 instances");
  if (static_cast<int>(ids_.size()) != n ||
      static_cast<int>(parts.bag_ids.size()) != n ||
      static_cast<int>(parts.bag_labels.size()) != n) {
    throw InputError("ids, bag ids and bag labels must have one entry per row");
  }
  if (!truth_.empty() && static_cast<int>(truth_.size()) != n) {
    throw InputError("truth labels must have one entry per row");
  }
  if (feature_names_.empty()) {
    for (int j = 0; j < features_.cols(); ++j) {
      feature_names_.push_back("f" + std::to_string(j));
    }
  }
  if (static_cast<int>(feature_names_.size()) != features_.cols()) {
    throw InputError("feature name count does not match feature columns");
  }
  if (!features_.allFinite()) {
    throw InputError("feature matrix contains non-finite values");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) {
      throw IntegrityError("duplicate instance id '" + id + "'");
    }
  }
  std::unordered_map<std::string, int> bag_index;
  bag_of_.resize(n);
  for (int i = 0; i < n; ++i) {
    auto [it, inserted] =
        bag_index.emplace(parts.bag_ids[i], static_cast<int>(bags_.size()));
    if (inserted) {
      bags_.push_back(Bag{parts.bag_ids[i], parts.bag_labels[i], {}});
    } else if (bags_[it->second].label != parts.bag_labels[i]) {
      throw IntegrityError("bag '" + parts.bag_ids[i] +
                           "' carries more than one label");
    }
    bags_[it->second].members.push_back(i);
    bag_of_[i] = it->second;
  }
  std::set<std::string> labels;
  for (const auto& bag : bags_) labels.insert(bag.label);
  label_set_.assign(labels.begin(), labels.end());
  if (!labels.count(strong_label_)) {
    throw IntegrityError("strong label '" + strong_label_ +
                         "' is not a bag label");
  }
}

Dataset Dataset::FromFeatures(Eigen::MatrixXd features,
                              std::vector<std::string> truth) {
  Parts parts;
  const int n = static_cast<int>(features.rows());
  for (int i = 0; i < n; ++i) parts.ids.push_back(std::to_string(i + 1));
  parts.features = std::move(features);
  parts.bag_ids.assign(n, "all");
  parts.bag_labels.assign(n, "all");
  parts.strong_label = "all";
  parts.truth = std::move(truth);
  return Dataset(std::move(parts));
}

Dataset::Parts Dataset::ToParts() const {
  Parts parts;
  parts.ids = ids_;
  parts.feature_names = feature_names_;
  parts.features = features_;
  for (int i = 0; i < size(); ++i) {
    parts.bag_ids.push_back(bags_[bag_of_[i]].id);
    parts.bag_labels.push_back(bags_[bag_of_[i]].label);
  }
  parts.strong_label = strong_label_;
  parts.truth = truth_;
  return parts;
}

Dataset Dataset::WithFeatures(Eigen::MatrixXd features) const {
  if (features.rows() != features_.rows()) {
    throw InputError("replacement features must keep the row count");
  }
  Parts parts = ToParts();
  if (features.cols() != features_.cols()) parts.feature_names.clear();
  parts.features = std::move(features);
  return Dataset(std::move(parts));
}

Dataset Dataset::Subset(std::span<const int> rows) const {
  Parts all = ToParts();
  Parts parts;
  parts.feature_names = all.feature_names;
  parts.strong_label = strong_label_;
  parts.features.resize(static_cast<Eigen::Index>(rows.size()), dim());
  for (size_t r = 0; r < rows.size(); ++r) {
    const int i = rows[r];
    parts.ids.push_back(all.ids[i]);
    parts.bag_ids.push_back(all.bag_ids[i]);
    parts.bag_labels.push_back(all.bag_labels[i]);
    if (!truth_.empty()) parts.truth.push_back(truth_[i]);
    parts.features.row(static_cast<Eigen::Index>(r)) = features_.row(i);
  }
  // The strong label may have no bags left in the subset.
  bool has_strong = std::find(parts.bag_labels.begin(), parts.bag_labels.end(),
                              strong_label_) != parts.bag_labels.end();
  if (!has_strong && !parts.bag_labels.empty()) {
    parts.strong_label = parts.bag_labels.front();
  }
  return Dataset(std::move(parts));
}

Dataset LoadCsv(const std::string& path, const CsvSchema& schema) {
  CsvTable table = ReadCsv(path, schema.delimiter);
  auto require = [&](const std::string& name) {
    int idx = table.ColumnIndex(name);
    if (idx < 0) throw SchemaError("missing column '" + name + "' in " + path);
    return idx;
  };
  int id_col = schema.id_column.empty() ? -1 : require(schema.id_column);
  int bag_col = schema.bag_column.empty() ? -1 : require(schema.bag_column);
  int label_col =
      schema.label_column.empty() ? -1 : require(schema.label_column);
  int truth_col =
      schema.truth_column.empty() ? -1 : require(schema.truth_column);
  if (bag_col >= 0 && label_col < 0) {
    throw SchemaError("a bag column requires a bag-label column");
  }

  std::vector<int> feature_cols;
  std::vector<std::string> feature_names;
  if (schema.feature_columns.empty()) {
    for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
      if (c == id_col || c == bag_col || c == label_col || c == truth_col) {
        continue;
      }
      feature_cols.push_back(c);
      feature_names.push_back(table.header[c]);
    }
  } else {
    for (const auto& name : schema.feature_columns) {
      feature_cols.push_back(require(name));
      feature_names.push_back(name);
    }
  }
  if (feature_cols.empty()) throw SchemaError("no feature columns in " + path);

  Dataset::Parts parts;
  const long n = static_cast<long>(table.rows.size());
  parts.features.resize(n, static_cast<Eigen::Index>(feature_cols.size()));
  parts.feature_names = feature_names;
  std::string single_label =
      schema.strong_label.empty() ? "all" : schema.strong_label;
  for (long r = 0; r < n; ++r) {
    const auto& row = table.rows[r];
    parts.ids.push_back(id_col >= 0 ? std::string(Trim(row[id_col]))
                                    : std::to_string(r + 1));
    parts.bag_ids.push_back(bag_col >= 0 ? std::string(Trim(row[bag_col]))
                                         : "all");
    parts.bag_labels.push_back(
        label_col >= 0 ? std::string(Trim(row[label_col])) : single_label);
    if (truth_col >= 0)
      parts.truth.push_back(std::string(Trim(row[truth_col])));
    for (size_t f = 0; f < feature_cols.size(); ++f) {
      parts.features(r, static_cast<Eigen::Index>(f)) =
          ParseFeature(row[feature_cols[f]], r + 1, feature_names[f]);
    }
  }
  parts.strong_label = label_col >= 0 ? schema.strong_label : single_label;
  if (parts.strong_label.empty()) {
    throw SchemaError("a strong label is required when bag labels are given");
  }
  return Dataset(std::move(parts));
}

StandardizeResult Standardize(const Dataset& ds) {
  Eigen::MatrixXd x = ds.features();
  const double n = static_cast<double>(x.rows());
  std::vector<int> constant;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double mean = x.col(j).mean();
    const double var = (x.col(j).array() - mean).square().sum() / (n - 1.0);
    const double sd = std::sqrt(var);
    if (sd == 0.0 || sd <= 1e-14 * std::abs(mean)) {
      x.col(j).setZero();
      constant.push_back(static_cast<int>(j));
    } else {
      x.col(j) = (x.col(j).array() - mean) / sd;
    }
  }
  return {ds.WithFeatures(std::move(x)), std::move(constant)};
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw InputError("distance matrix not square");
  for (Eigen::Index i = 0; i < d_.rows(); ++i) {
    if (d_(i, i) != 0.0) throw InputError("distance matrix diagonal not zero");
    for (Eigen::Index j = 0; j < d_.cols(); ++j) {
      const double v = d_(i, j);
      if (!std::isfinite(v) || v < 0.0 || v != d_(j, i)) {
        throw InputError(
            "distance matrix must be finite, nonnegative and "
            "symmetric");
      }
    }
  }
}

DistanceMatrix PairwiseDistances(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double dist = (points.row(i) - points.row(j)).norm();
      d(i, j) = dist;
      d(j, i) = dist;
    }
  }
  return DistanceMatrix(std::move(d));
}

DistanceMatrix PairwiseDistances(const Dataset& ds) {
  return PairwiseDistances(ds.features());
}

DeduplicatedRows DeduplicateRows(const Eigen::MatrixXd& points) {
  std::map<std::vector<double>, int> index;
  DeduplicatedRows out;
  std::vector<int> unique_source;
  out.representative.resize(points.rows());
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    std::vector<double> key(points.cols());
    for (Eigen::Index j = 0; j < points.cols(); ++j) key[j] = points(i, j);
    auto [it, inserted] =
        index.emplace(std::move(key), static_cast<int>(unique_source.size()));
    if (inserted) unique_source.push_back(static_cast<int>(i));
    out.representative[i] = it->second;
  }
  out.unique_rows.resize(static_cast<Eigen::Index>(unique_source.size()),
                         points.cols());
  for (size_t u = 0; u < unique_source.size(); ++u) {
    out.unique_rows.row(static_cast<Eigen::Index>(u)) =
        points.row(unique_source[u]);
  }
  return out;
}

}  // namespace weakspec
