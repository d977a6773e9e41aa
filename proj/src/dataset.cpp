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

#include "iebench/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "iebench/errors.hpp"

namespace iebench {

std::size_t ClassDistribution::majority_class() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return best;
}

double ClassDistribution::majority_proportion() const {
  return proportions.empty() ? 0.0 : proportions[majority_class()];
}

Dataset Dataset::create(std::vector<FeatureDescriptor> features,
                        std::vector<double> matrix_row_major,
                        std::vector<int> labels,
                        std::vector<std::string> class_names) {
  const std::size_t p = features.size();
  const std::size_t n = labels.size();
  if (p == 0) throw InvalidArgument("dataset needs at least one feature");
  if (n == 0) {
    if (!matrix_row_major.empty())
      throw InvalidArgument("matrix rows do not match label count");
  } else if (matrix_row_major.size() != n * p) {
    throw InvalidArgument("matrix size " + std::to_string(matrix_row_major.size()) +
                          " does not equal n*p = " + std::to_string(n * p));
  }
  if (class_names.empty() && n > 0)
    throw InvalidArgument("non-empty dataset needs a class universe");

  std::unordered_set<std::string> seen;
  for (const auto& f : features) {
    if (!seen.insert(f.name).second)
      throw InvalidArgument("duplicate feature name: " + f.name);
  }
  const int c = static_cast<int>(class_names.size());
  for (int label : labels) {
    if (label < 0 || label >= c)
      throw InvalidArgument("label " + std::to_string(label) + " out of range");
  }
  for (double v : matrix_row_major) {
    if (!std::isfinite(v)) throw InvalidArgument("matrix contains a non-finite value");
  }

  Dataset ds;
  ds.features_ = std::move(features);
  ds.matrix_ = std::move(matrix_row_major);
  ds.labels_ = std::move(labels);
  ds.class_names_ = std::move(class_names);
  return ds;
}

std::vector<std::string> Dataset::feature_names() const {
  std::vector<std::string> names;
  names.reserve(features_.size());
  for (const auto& f : features_) names.push_back(f.name);
  return names;
}

std::size_t Dataset::feature_index(const std::string& name) const {
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].name == name) return i;
  }
  throw UnknownFeature(name);
}

bool Dataset::has_feature(const std::string& name) const {
  return std::any_of(features_.begin(), features_.end(),
                     [&](const FeatureDescriptor& f) { return f.name == name; });
}

ClassDistribution class_distribution(const std::vector<int>& labels,
                                     std::size_t n_classes) {
  ClassDistribution dist;
  dist.counts.assign(n_classes, 0);
  for (int label : labels) dist.counts[static_cast<std::size_t>(label)]++;
  dist.total = static_cast<std::int64_t>(labels.size());
  dist.proportions.assign(n_classes, 0.0);
  if (dist.total > 0) {
    for (std::size_t i = 0; i < n_classes; ++i) {
      dist.proportions[i] =
          static_cast<double>(dist.counts[i]) / static_cast<double>(dist.total);
    }
  }
  return dist;
}

ClassDistribution class_distribution(const Dataset& ds) {
  return class_distribution(ds.labels(), ds.n_classes());
}

Dataset select_features(const Dataset& ds, const std::vector<std::string>& names) {
  std::vector<std::size_t> cols;
  cols.reserve(names.size());
  for (const auto& name : names) cols.push_back(ds.feature_index(name));

  std::vector<FeatureDescriptor> features;
  features.reserve(cols.size());
  for (std::size_t col : cols) features.push_back(ds.features()[col]);

  const std::size_t n = ds.n_rows();
  std::vector<double> matrix(n * cols.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      matrix[i * cols.size() + j] = ds.value(i, cols[j]);
    }
  }
  return Dataset::create(std::move(features), std::move(matrix), ds.labels(),
                         ds.class_names());
}

Dataset subset_rows(const Dataset& ds, std::span<const std::size_t> rows) {
  const std::size_t p = ds.n_features();
  std::vector<double> matrix(rows.size() * p);
  std::vector<int> labels(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = ds.row(rows[i]);
    std::copy(src.begin(), src.end(), matrix.begin() + i * p);
    labels[i] = ds.label(rows[i]);
  }
  return Dataset::create(ds.features(), std::move(matrix), std::move(labels),
                         ds.class_names());
}

std::vector<std::vector<std::size_t>> rows_by_class(const std::vector<int>& labels,
                                                    std::size_t n_classes) {
  std::vector<std::vector<std::size_t>> by_class(n_classes);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    by_class[static_cast<std::size_t>(labels[i])].push_back(i);
  }
  return by_class;
}

}  // namespace iebench
