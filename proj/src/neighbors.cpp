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

#include "iebench/neighbors.hpp"

#include <algorithm>
#include <limits>

#include "iebench/errors.hpp"

namespace iebench {

namespace {
constexpr std::size_t kNoSkip = std::numeric_limits<std::size_t>::max();
}  // namespace

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double d = a[j] - b[j];
    acc += d * d;
  }
  return acc;
}

KnnIndex::KnnIndex(std::vector<double> points_row_major, std::size_t n_features,
                   std::vector<int> labels)
    : points_(std::move(points_row_major)),
      labels_(std::move(labels)),
      n_features_(n_features) {
  if (n_features == 0) throw InvalidArgument("index needs at least one feature");
  if (points_.size() % n_features != 0)
    throw InvalidArgument("point buffer size is not a multiple of the width");
  n_rows_ = points_.size() / n_features;
  if (!labels_.empty() && labels_.size() != n_rows_)
    throw InvalidArgument("label count does not match row count");
}

std::span<const double> KnnIndex::point(std::size_t i) const {
  return {points_.data() + i * n_features_, n_features_};
}

std::size_t KnnIndex::candidate_count(std::size_t skip_row,
                                      int class_constraint) const {
  if (class_constraint == kAnyClass)
    return n_rows_ - (skip_row == kNoSkip ? 0 : 1);
  if (labels_.empty())
    throw InvalidArgument("class-constrained query on an unlabeled index");
  std::size_t count = 0;
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (i != skip_row && labels_[i] == class_constraint) ++count;
  }
  return count;
}

std::vector<Neighbor> KnnIndex::top_k(std::span<const double> x, std::size_t k,
                                      std::size_t skip_row,
                                      int class_constraint) const {
  // Bounded insertion keeps the running top-k sorted by (distance, index);
  // ties resolve toward the lower index because insertion is strictly-less.
  std::vector<Neighbor> best;
  best.reserve(k + 1);
  for (std::size_t i = 0; i < n_rows_; ++i) {
    if (i == skip_row) continue;
    if (class_constraint != kAnyClass && labels_[i] != class_constraint)
      continue;
    const double d2 = squared_distance(x, point(i));
    if (best.size() == k && d2 >= best.back().squared_distance) continue;
    auto pos = std::upper_bound(
        best.begin(), best.end(), d2,
        [](double v, const Neighbor& nb) { return v < nb.squared_distance; });
    best.insert(pos, Neighbor{i, d2});
    if (best.size() > k) best.pop_back();
  }
  return best;
}

std::vector<Neighbor> KnnIndex::query(std::span<const double> x, std::size_t k,
                                      int class_constraint) const {
  if (k == 0) throw InvalidArgument("k must be positive");
  const std::size_t avail = candidate_count(kNoSkip, class_constraint);
  if (k > avail) throw KTooLarge(k, avail);
  return top_k(x, k, kNoSkip, class_constraint);
}

std::vector<Neighbor> KnnIndex::query_relaxed(std::span<const double> x,
                                              std::size_t k,
                                              int class_constraint) const {
  if (k == 0) throw InvalidArgument("k must be positive");
  const std::size_t avail = candidate_count(kNoSkip, class_constraint);
  return top_k(x, std::min(k, avail), kNoSkip, class_constraint);
}

std::vector<Neighbor> KnnIndex::query_self(std::size_t row, std::size_t k,
                                           int class_constraint) const {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (row >= n_rows_) throw InvalidArgument("row out of range");
  const std::size_t avail = candidate_count(row, class_constraint);
  if (k > avail) throw KTooLarge(k, avail);
  return top_k(point(row), k, row, class_constraint);
}

std::vector<Neighbor> KnnIndex::query_self_relaxed(std::size_t row,
                                                   std::size_t k,
                                                   int class_constraint) const {
  if (k == 0) throw InvalidArgument("k must be positive");
  if (row >= n_rows_) throw InvalidArgument("row out of range");
  const std::size_t avail = candidate_count(row, class_constraint);
  return top_k(point(row), std::min(k, avail), row, class_constraint);
}

std::vector<std::vector<Neighbor>> KnnIndex::query_batch(
    std::span<const double> batch_row_major, std::size_t n_queries,
    std::size_t k, ExecMode mode) const {
  if (n_queries * n_features_ != batch_row_major.size())
    throw InvalidArgument("batch buffer size does not match query count");
  std::vector<std::vector<Neighbor>> out(n_queries);
  parallel_for(n_queries, mode, [&](std::size_t q) {
    out[q] = query(batch_row_major.subspan(q * n_features_, n_features_), k);
  });
  return out;
}

}  // namespace iebench
