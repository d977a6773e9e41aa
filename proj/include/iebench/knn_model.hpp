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

#include <memory>

#include "iebench/model.hpp"
#include "iebench/neighbors.hpp"

namespace iebench {

// Memorizes the training set; prediction is a majority vote among the k
// Euclidean-nearest training rows. Probabilities are the vote fractions.
class KnnModel : public Model {
 public:
  KnnModel(std::vector<double> train_matrix, std::vector<int> train_labels,
           std::size_t k, std::vector<std::string> feature_names,
           std::vector<std::string> class_names);

  Algorithm algorithm() const override { return Algorithm::kKnn; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  void save(std::ostream& out) const override;

  std::size_t k() const { return k_; }

 private:
  KnnIndex index_;
  std::vector<int> train_labels_;
  std::size_t k_;
};

std::unique_ptr<KnnModel> train_knn(const Dataset& train, const KnnParams& params);

}  // namespace iebench
