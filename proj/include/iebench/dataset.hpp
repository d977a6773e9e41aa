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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace iebench {

enum class FeatureKind { kLikert, kDemographicBinary, kDemographicCategorical };

struct FeatureDescriptor {
  std::string name;
  FeatureKind kind = FeatureKind::kLikert;
  // Inclusive valid interval. Likert items span [0,5] where 0 means the
  // item was left unanswered.
  double min_value = 0.0;
  double max_value = 5.0;
};

struct ClassDistribution {
  std::vector<std::int64_t> counts;
  std::vector<double> proportions;
  std::int64_t total = 0;

  // Lowest index wins on ties.
  std::size_t majority_class() const;
  double majority_proportion() const;
};

// Immutable numeric feature matrix plus class labels; the single currency of
// the pipeline. create() validates shape invariants (sizes, unique feature
// names, label range, finite cells). Integrality of likert cells is enforced
// where raw data enters (ingest); oversampled rows interpolate off the
// integer grid by design.
class Dataset {
 public:
  Dataset() = default;

  static Dataset create(std::vector<FeatureDescriptor> features,
                        std::vector<double> matrix_row_major,
                        std::vector<int> labels,
                        std::vector<std::string> class_names);

  std::size_t n_rows() const { return labels_.size(); }
  std::size_t n_features() const { return features_.size(); }
  std::size_t n_classes() const { return class_names_.size(); }

  double value(std::size_t row, std::size_t col) const {
    return matrix_[row * features_.size() + col];
  }
  std::span<const double> row(std::size_t i) const {
    return {matrix_.data() + i * features_.size(), features_.size()};
  }
  const std::vector<double>& matrix() const { return matrix_; }
  int label(std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }

  const std::vector<FeatureDescriptor>& features() const { return features_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  std::vector<std::string> feature_names() const;

  // Throws UnknownFeature.
  std::size_t feature_index(const std::string& name) const;
  bool has_feature(const std::string& name) const;

 private:
  std::vector<FeatureDescriptor> features_;
  std::vector<double> matrix_;  // row-major, n_rows x n_features
  std::vector<int> labels_;
  std::vector<std::string> class_names_;
};

ClassDistribution class_distribution(const Dataset& ds);
ClassDistribution class_distribution(const std::vector<int>& labels,
                                     std::size_t n_classes);

// New dataset holding exactly `names` in the given order; labels unchanged;
// the source is not aliased.
Dataset select_features(const Dataset& ds, const std::vector<std::string>& names);

// Row subset in the given order; keeps the full class universe.
Dataset subset_rows(const Dataset& ds, std::span<const std::size_t> rows);

// Per-class row indices, ascending within each class.
std::vector<std::vector<std::size_t>> rows_by_class(const std::vector<int>& labels,
                                                    std::size_t n_classes);

}  // namespace iebench
