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

#include "iebench/knn_model.hpp"

#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/model_io.hpp"

namespace iebench {

KnnModel::KnnModel(std::vector<double> train_matrix,
                   std::vector<int> train_labels, std::size_t k,
                   std::vector<std::string> feature_names,
                   std::vector<std::string> class_names)
    : index_(std::move(train_matrix), feature_names.size()),
      train_labels_(std::move(train_labels)),
      k_(k) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
  if (k_ < 1) throw InvalidArgument("k must be >= 1");
  if (k_ > index_.size()) throw KTooLarge(k_, index_.size());
}

void KnnModel::predict_proba_into(std::span<const double> rows_row_major,
                                  std::size_t n_rows, std::span<double> out,
                                  ExecMode mode) const {
  check_shape(rows_row_major.size(), n_rows);
  const std::size_t p = n_features();
  const std::size_t c = n_classes();
  parallel_for(n_rows, mode, [&](std::size_t i) {
    const auto found = index_.query(rows_row_major.subspan(i * p, p), k_);
    for (std::size_t s = 0; s < c; ++s) out[i * c + s] = 0.0;
    for (const auto& nb : found) {
      out[i * c + static_cast<std::size_t>(train_labels_[nb.index])] +=
          1.0 / static_cast<double>(k_);
    }
  });
}

void KnnModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.scalar("k", k_);
  w.matrix("train", index_.size(), n_features(),
           [&](std::size_t i, std::size_t j) { return index_.point(i)[j]; });
  w.int_list("labels", train_labels_);
}

std::unique_ptr<KnnModel> train_knn(const Dataset& train,
                                    const KnnParams& params) {
  if (train.n_rows() == 0) throw InvalidArgument("cannot train on no rows");
  return std::make_unique<KnnModel>(train.matrix(), train.labels(), params.k,
                                    train.feature_names(), train.class_names());
}

}  // namespace iebench
