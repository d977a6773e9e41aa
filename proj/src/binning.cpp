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

#include "iebench/binning.hpp"

#include <algorithm>

#include "iebench/errors.hpp"

namespace iebench {

FeatureBins::FeatureBins(std::span<const double> matrix_row_major,
                         std::size_t n_rows, std::size_t n_features,
                         std::size_t max_bins)
    : n_rows_(n_rows), n_features_(n_features) {
  if (n_features == 0) throw InvalidArgument("binning needs features");
  if (max_bins < 2) throw InvalidArgument("max_bins must be at least 2");
  if (matrix_row_major.size() != n_rows * n_features)
    throw InvalidArgument("matrix size does not match shape");

  thresholds_.resize(n_features);
  codes_.resize(n_rows * n_features);

  std::vector<double> column(n_rows);
  for (std::size_t j = 0; j < n_features; ++j) {
    for (std::size_t i = 0; i < n_rows; ++i)
      column[i] = matrix_row_major[i * n_features + j];
    std::sort(column.begin(), column.end());
    std::vector<double> distinct;
    for (double v : column) {
      if (distinct.empty() || v != distinct.back()) distinct.push_back(v);
    }

    auto& cuts = thresholds_[j];
    if (distinct.size() <= max_bins) {
      cuts.reserve(distinct.size() > 0 ? distinct.size() - 1 : 0);
      for (std::size_t d = 0; d + 1 < distinct.size(); ++d) {
        cuts.push_back(distinct[d] + (distinct[d + 1] - distinct[d]) / 2.0);
      }
    } else {
      cuts.reserve(max_bins - 1);
      for (std::size_t b = 1; b < max_bins; ++b) {
        const std::size_t rank = b * distinct.size() / max_bins;
        const double cut =
            distinct[rank - 1] + (distinct[rank] - distinct[rank - 1]) / 2.0;
        if (cuts.empty() || cut > cuts.back()) cuts.push_back(cut);
      }
    }

    for (std::size_t i = 0; i < n_rows; ++i) {
      codes_[i * n_features + j] =
          bin_of(j, matrix_row_major[i * n_features + j]);
    }
  }
}

std::uint16_t FeatureBins::bin_of(std::size_t feature, double value) const {
  const auto& cuts = thresholds_[feature];
  // Bin index b = first threshold >= value, so a split at threshold k keeps
  // exactly the bins 0..k (values <= thresholds[k]) on the left.
  const auto it = std::lower_bound(cuts.begin(), cuts.end(), value);
  return static_cast<std::uint16_t>(it - cuts.begin());
}

}  // namespace iebench
