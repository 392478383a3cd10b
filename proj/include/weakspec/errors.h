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

#ifndef WEAKSPEC_ERRORS_H_
#define WEAKSPEC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace weakspec {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A required CSV column or config key is absent.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A cell could not be parsed. `row` is the 1-based data row (header excluded).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row) : Error(what), row_(row) {}
  long row() const { return row_; }

 private:
  long row_;
};

// Cross-record consistency violations: duplicate ids, bags with mixed labels.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A parameter is outside its documented domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Input data makes a quantity undefined (zero distances under a negative
// exponent, empty groups, coincident centroids, no positive pairs).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Eigen-solver failure or a post-condition residual check that did not hold.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Caller handed in data of the wrong shape.
class InputError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

// Every tuple of a hyperparameter grid failed.
class SearchError : public Error {
 public:
  using Error::Error;
};

// A benchmark dataset is not present in the data directory.
class DataMissingError : public Error {
 public:
  using Error::Error;
};

}  // namespace weakspec

#endif  // WEAKSPEC_ERRORS_H_
