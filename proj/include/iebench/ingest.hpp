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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "iebench/csv.hpp"
#include "iebench/dataset.hpp"

namespace iebench {

// Country is frequency-encoded against the rows it was fitted on; a one-hot
// encoding over its ~121 levels would blow up the feature count. Gender and
// English-native pass through as their raw integer codes. Unseen countries
// encode as 0.
class DemographicEncoder {
 public:
  void fit_country(const std::vector<std::string>& country_cells);
  double country_frequency(std::string_view country) const;
  // (gender, english-native, country) -> numeric features, in that order.
  std::array<double, 3> encode(std::string_view gender_raw,
                               std::string_view english_raw,
                               std::string_view country_raw) const;

  const std::unordered_map<std::string, double>& table() const { return table_; }

 private:
  std::unordered_map<std::string, double> table_;
};

struct PreprocessResult {
  Dataset dataset;
  std::size_t rows_in = 0;       // data rows in the raw table
  std::size_t rows_removed = 0;  // rows whose target cell was missing/zero
  std::vector<std::string> dropped_columns;
  std::vector<std::string> warnings;
  DemographicEncoder encoder;
};

// Applies the survey preprocessing: drops per-item technical columns
// (QkI = item position, QkE = elapsed time) and the submission-date column,
// removes rows without a target value (empty or 0), encodes demographics,
// and assembles the dataset with features in original header order. Class
// indices follow first appearance of the raw target codes.
PreprocessResult preprocess(const RawSurveyTable& raw);

struct SynthSpec {
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t c = 2;
  std::vector<double> class_proportions;        // simplex over c classes
  std::vector<std::size_t> informative_features;  // subset of [0,p)
  double effect_size = 0.0;                     // per-class mean shift, likert units
  std::uint64_t seed = 0;
};

// Deterministic desk-scale generator used by property tests. Label counts
// follow largest-remainder rounding of n * proportions; informative features
// get class-dependent mean shifts rounded back into {1..5}; the rest are
// uniform on {1..5}.
Dataset generate_synthetic(const SynthSpec& spec);

// Rounds fractional quotas to integers summing to `total`, bumping the
// largest remainders first (ties broken by lower index). Shared by the
// synthetic generator, the stratified splitter, and ADASYN.
std::vector<std::int64_t> largest_remainder_round(const std::vector<double>& quotas,
                                                  std::int64_t total);

}  // namespace iebench
