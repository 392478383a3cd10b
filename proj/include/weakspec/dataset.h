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

#ifndef WEAKSPEC_DATASET_H_
#define WEAKSPEC_DATASET_H_

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace weakspec {

// A labelled collection of instances. Only the bag carries a label.
struct Bag {
  std::string id;
  std::string label;
  std::vector<int> members;  // row indices into the owning Dataset
};

// Instances grouped into bags. Rows of `features()` are instances; instance
// ids, bag membership and optional ground-truth labels are parallel vectors.
// Immutable once constructed.
class Dataset {
 public:
  struct Parts {
    std::vector<std::string> ids;
    std::vector<std::string> feature_names;
    Eigen::MatrixXd features;
    std::vector<std::string> bag_ids;     // one per instance
    std::vector<std::string> bag_labels;  // one per instance
    std::string strong_label;
    std::vector<std::string> truth;  // empty, or one per instance
  };

  // Validates every invariant: n >= 2, finite features, unique ids, one label
  // per bag, strong_label among the bag labels. Throws IntegrityError or
  // InputError.
  explicit Dataset(Parts parts);

  // Features only, one bag holding every instance. Used for plain grouping
  // problems where no bag structure exists.
  static Dataset FromFeatures(Eigen::MatrixXd features,
                              std::vector<std::string> truth = {});

  int size() const { return static_cast<int>(features_.rows()); }
  int dim() const { return static_cast<int>(features_.cols()); }
  const Eigen::MatrixXd& features() const { return features_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<Bag>& bags() const { return bags_; }
  int bag_of(int instance) const { return bag_of_[instance]; }
  const std::string& bag_label(int instance) const {
    return bags_[bag_of_[instance]].label;
  }
  // Sorted distinct bag labels.
  const std::vector<std::string>& label_set() const { return label_set_; }
  const std::string& strong_label() const { return strong_label_; }
  bool has_truth() const { return !truth_.empty(); }
  const std::vector<std::string>& truth() const { return truth_; }

  // Same instances and bags with replaced feature values.
  Dataset WithFeatures(Eigen::MatrixXd features) const;

  // Rows in the given order; bags keep only the selected members.
  Dataset Subset(std::span<const int> rows) const;

  Parts ToParts() const;

 private:
  std::vector<std::string> ids_;
  std::vector<std::string> feature_names_;
  Eigen::MatrixXd features_;
  std::vector<Bag> bags_;
  std::vector<int> bag_of_;
  std::vector<std::string> label_set_;
  std::string strong_label_;
  std::vector<std::string> truth_;
};

// Column mapping for LoadCsv. Empty `id_column` numbers rows from 1. Empty
// `bag_column` puts every instance into one bag labelled `strong_label` (or
// "all"). Empty `feature_columns` takes every column not named elsewhere.
struct CsvSchema {
  std::string id_column;
  std::string bag_column;
  std::string label_column;
  std::vector<std::string> feature_columns;
  std::string truth_column;
  std::string strong_label;
  char delimiter = ',';
};

// Throws SchemaError (missing column), ParseError (blank or non-numeric
// feature cell, carrying the 1-based row) or IntegrityError (duplicate id).
Dataset LoadCsv(const std::string& path, const CsvSchema& schema);

struct StandardizeResult {
  Dataset dataset;
  // Columns with zero variance. They are set to zero.
  std::vector<int> constant_columns;
};

// Z-scores every feature column with the sample (n-1) standard deviation.
StandardizeResult Standardize(const Dataset& ds);

// Symmetric, zero-diagonal, nonnegative, finite. Checked on construction.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(Eigen::MatrixXd d);

  int size() const { return static_cast<int>(d_.rows()); }
  double operator()(int i, int j) const { return d_(i, j); }
  const Eigen::MatrixXd& matrix() const { return d_; }

 private:
  Eigen::MatrixXd d_;
};

// Euclidean distances between the rows of `points`.
DistanceMatrix PairwiseDistances(const Eigen::MatrixXd& points);
DistanceMatrix PairwiseDistances(const Dataset& ds);

// Collapses rows that are exactly equal. `representative[i]` is the index into
// `unique_rows` for original row i; unique rows keep first-occurrence order.
struct DeduplicatedRows {
  Eigen::MatrixXd unique_rows;
  std::vector<int> representative;
};
DeduplicatedRows DeduplicateRows(const Eigen::MatrixXd& points);

}  // namespace weakspec

#endif  // WEAKSPEC_DATASET_H_
