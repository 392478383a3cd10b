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

#ifndef WEAKSPEC_CSV_H_
#define WEAKSPEC_CSV_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace weakspec {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header, or -1.
  int ColumnIndex(std::string_view name) const;
};

// Reads a delimited file with a header row. Quoted fields may contain the
// delimiter, doubled quotes and newlines. A UTF-8 byte-order mark is skipped.
// Throws ParseError on ragged rows and Error if the file cannot be opened.
CsvTable ReadCsv(const std::string& path, char delimiter = ',');
CsvTable ParseCsv(std::string_view text, char delimiter = ',');

// Quotes `field` only when it contains the delimiter, a quote or a newline.
std::string CsvEscape(std::string_view field, char delimiter = ',');

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields,
                 char delimiter = ',');

// Shortest round-trippable decimal form of `value`.
std::string FormatDouble(double value);

}  // namespace weakspec

#endif  // WEAKSPEC_CSV_H_
