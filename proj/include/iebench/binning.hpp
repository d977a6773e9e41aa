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

#include <cstdint>
#include <span>
#include <vector>

namespace iebench {

// Per-feature discretization that turns threshold search into histogram
// scans. Features with at most max_bins distinct values keep every midpoint
// between consecutive distinct values as a candidate threshold, so tree
// growth on such features is exact. Wider features fall back to evenly
// spaced rank quantiles of the distinct values.
class FeatureBins {
 public:
  FeatureBins(std::span<const double> matrix_row_major, std::size_t n_rows,
              std::size_t n_features, std::size_t max_bins = 256);

  std::size_t n_rows() const { return n_rows_; }
  std::size_t n_features() const { return n_features_; }

  // Candidate split thresholds of one feature, ascending. A split at
  // threshold index k sends values <= thresholds[k] left.
  const std::vector<double>& thresholds(std::size_t feature) const {
    return thresholds_[feature];
  }

  // Number of bins = thresholds + 1.
  std::uint16_t n_bins(std::size_t feature) const {
    return static_cast<std::uint16_t>(thresholds_[feature].size() + 1);
  }

  // Precomputed bin code of a training cell.
  std::uint16_t code(std::size_t row, std::size_t feature) const {
    return codes_[row * n_features_ + feature];
  }

  std::uint16_t bin_of(std::size_t feature, double value) const;

 private:
  std::size_t n_rows_;
  std::size_t n_features_;
  std::vector<std::vector<double>> thresholds_;
  std::vector<std::uint16_t> codes_;  // row-major, same shape as the matrix
};

}  // namespace iebench
