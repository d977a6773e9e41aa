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
#include <vector>

#include "iebench/dataset.hpp"

namespace iebench {

// Row = true class, column = predicted class.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t n_classes);
  ConfusionMatrix(std::size_t n_classes, std::vector<std::int64_t> counts);

  static ConfusionMatrix from_predictions(const std::vector<int>& truth,
                                          const std::vector<int>& predicted,
                                          std::size_t n_classes);

  void add(int truth, int predicted, std::int64_t count = 1);
  std::int64_t at(std::size_t truth, std::size_t predicted) const;
  std::size_t n_classes() const { return c_; }
  std::int64_t total() const;
  std::int64_t trace() const;
  std::vector<std::int64_t> row_sums() const;
  std::vector<std::int64_t> col_sums() const;

 private:
  std::size_t c_;
  std::vector<std::int64_t> counts_;
};

double accuracy(const ConfusionMatrix& cm);

// Cohen's kappa; chance agreement of 1 maps to 0 by convention (only
// reachable when a single class is present on both axes).
double kappa(const ConfusionMatrix& cm);

double no_information_rate(const Dataset& ds);
double no_information_rate(const std::vector<int>& labels,
                           std::size_t n_classes);

struct EvalRecord {
  int rep = 0;
  int fold = 0;
  double accuracy = 0.0;
  double kappa = 0.0;
};

struct CvSummary {
  double accuracy_mean = 0.0;
  double accuracy_sd = 0.0;
  double kappa_mean = 0.0;
  double kappa_sd = 0.0;
  std::size_t n_records = 0;
};

// Means and sample (n-1) standard deviations over all rep x fold records;
// a single record yields sd = 0.
CvSummary aggregate(const std::vector<EvalRecord>& records);

}  // namespace iebench
