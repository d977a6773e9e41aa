/*
 * Copyright 2026 the iebench authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iebench/dataset.hpp"

namespace iebench {

struct RawSurveyTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  char delimiter = ',';
};

// Splits comma- or tab-separated text (delimiter auto-detected from the
// header row) into verbatim string cells. No row is dropped here. Throws
// EmptyInput and MalformedRow(line_no) on cell-count mismatch.
RawSurveyTable parse_raw(std::string_view text);
RawSurveyTable parse_raw_file(const std::string& path);

// Canonical dataset CSV: header = feature names + "label", cells written
// with shortest round-trip formatting, labels written as class names.
void write_dataset_csv(const Dataset& ds, std::ostream& out);
void write_dataset_csv(const Dataset& ds, const std::string& path);

// Re-parses the canonical layout. When `class_names` is given it fixes the
// class index order; otherwise classes are indexed by first appearance.
Dataset read_dataset_csv(std::istream& in,
                         std::optional<std::vector<std::string>> class_names = {});
Dataset read_dataset_csv_file(const std::string& path,
                              std::optional<std::vector<std::string>> class_names = {});

// Shortest exact decimal representation (std::to_chars).
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace iebench
