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
#include <span>
#include <vector>

#include "iebench/parallel.hpp"

namespace iebench {

struct Neighbor {
  std::size_t index = 0;
  double squared_distance = 0.0;
};

inline constexpr int kAnyClass = -1;

// Brute-force nearest-neighbor search over a fixed point set. Distances are
// squared Euclidean; ties break toward the lower row index, which keeps every
// query reproducible across platforms. Rows may carry class labels, in which
// case queries can be restricted to one class.
class KnnIndex {
 public:
  KnnIndex(std::vector<double> points_row_major, std::size_t n_features,
           std::vector<int> labels = {});

  std::size_t size() const { return n_rows_; }
  std::size_t n_features() const { return n_features_; }
  std::span<const double> point(std::size_t i) const;

  // k nearest rows to an external query point, optionally restricted to one
  // class. Throws KTooLarge when fewer than k candidates qualify.
  std::vector<Neighbor> query(std::span<const double> x, std::size_t k,
                              int class_constraint = kAnyClass) const;

  // Same, but returns all candidates when fewer than k exist.
  std::vector<Neighbor> query_relaxed(std::span<const double> x, std::size_t k,
                                      int class_constraint = kAnyClass) const;

  // k nearest rows to a stored row, excluding the row itself.
  std::vector<Neighbor> query_self(std::size_t row, std::size_t k,
                                   int class_constraint = kAnyClass) const;
  std::vector<Neighbor> query_self_relaxed(std::size_t row, std::size_t k,
                                           int class_constraint = kAnyClass) const;

  // One query() per row of the batch, parallel over rows. Results land in
  // preallocated slots, so output bytes never depend on thread count.
  std::vector<std::vector<Neighbor>> query_batch(
      std::span<const double> batch_row_major, std::size_t n_queries,
      std::size_t k, ExecMode mode) const;

 private:
  std::vector<Neighbor> top_k(std::span<const double> x, std::size_t k,
                              std::size_t skip_row, int class_constraint) const;
  std::size_t candidate_count(std::size_t skip_row, int class_constraint) const;

  std::vector<double> points_;
  std::vector<int> labels_;
  std::size_t n_rows_;
  std::size_t n_features_;
};

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace iebench
