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

#include "iebench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iebench/errors.hpp"

namespace iebench {

ConfusionMatrix::ConfusionMatrix(std::size_t n_classes)
    : c_(n_classes), counts_(n_classes * n_classes, 0) {
  if (n_classes == 0) throw InvalidArgument("need at least one class");
}

ConfusionMatrix::ConfusionMatrix(std::size_t n_classes,
                                 std::vector<std::int64_t> counts)
    : c_(n_classes), counts_(std::move(counts)) {
  if (n_classes == 0) throw InvalidArgument("need at least one class");
  if (counts_.size() != c_ * c_)
    throw InvalidArgument("count buffer does not match class count");
  for (auto v : counts_) {
    if (v < 0) throw InvalidArgument("confusion counts must be non-negative");
  }
}

ConfusionMatrix ConfusionMatrix::from_predictions(
    const std::vector<int>& truth, const std::vector<int>& predicted,
    std::size_t n_classes) {
  if (truth.size() != predicted.size())
    throw InvalidArgument("truth and prediction lengths differ");
  ConfusionMatrix cm(n_classes);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    cm.add(truth[i], predicted[i]);
  }
  return cm;
}

void ConfusionMatrix::add(int truth, int predicted, std::int64_t count) {
  if (truth < 0 || predicted < 0 || static_cast<std::size_t>(truth) >= c_ ||
      static_cast<std::size_t>(predicted) >= c_)
    throw InvalidArgument("class index out of range");
  counts_[static_cast<std::size_t>(truth) * c_ +
          static_cast<std::size_t>(predicted)] += count;
}

std::int64_t ConfusionMatrix::at(std::size_t truth, std::size_t predicted) const {
  return counts_[truth * c_ + predicted];
}

std::int64_t ConfusionMatrix::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::trace() const {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < c_; ++i) acc += at(i, i);
  return acc;
}

std::vector<std::int64_t> ConfusionMatrix::row_sums() const {
  std::vector<std::int64_t> sums(c_, 0);
  for (std::size_t i = 0; i < c_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) sums[i] += at(i, j);
  }
  return sums;
}

std::vector<std::int64_t> ConfusionMatrix::col_sums() const {
  std::vector<std::int64_t> sums(c_, 0);
  for (std::size_t i = 0; i < c_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) sums[j] += at(i, j);
  }
  return sums;
}

double accuracy(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw EmptyMatrix();
  return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

double kappa(const ConfusionMatrix& cm) {
  const auto total = cm.total();
  if (total == 0) throw EmptyMatrix();
  const double n = static_cast<double>(total);
  const double p_o = static_cast<double>(cm.trace()) / n;
  const auto rows = cm.row_sums();
  const auto cols = cm.col_sums();
  double p_e = 0.0;
  for (std::size_t j = 0; j < cm.n_classes(); ++j) {
    p_e += static_cast<double>(rows[j]) * static_cast<double>(cols[j]) / (n * n);
  }
  if (p_e >= 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double no_information_rate(const std::vector<int>& labels,
                           std::size_t n_classes) {
  if (labels.empty()) throw InvalidArgument("no labels to score");
  return class_distribution(labels, n_classes).majority_proportion();
}

double no_information_rate(const Dataset& ds) {
  return no_information_rate(ds.labels(), ds.n_classes());
}

CvSummary aggregate(const std::vector<EvalRecord>& records) {
  if (records.empty()) throw InvalidArgument("need at least one record");
  CvSummary sum;
  sum.n_records = records.size();
  const double n = static_cast<double>(records.size());
  for (const auto& r : records) {
    sum.accuracy_mean += r.accuracy;
    sum.kappa_mean += r.kappa;
  }
  sum.accuracy_mean /= n;
  sum.kappa_mean /= n;
  if (records.size() > 1) {
    double acc_ss = 0.0;
    double kap_ss = 0.0;
    for (const auto& r : records) {
      acc_ss += (r.accuracy - sum.accuracy_mean) * (r.accuracy - sum.accuracy_mean);
      kap_ss += (r.kappa - sum.kappa_mean) * (r.kappa - sum.kappa_mean);
    }
    sum.accuracy_sd = std::sqrt(acc_ss / (n - 1.0));
    sum.kappa_sd = std::sqrt(kap_ss / (n - 1.0));
  }
  return sum;
}

}  // namespace iebench
