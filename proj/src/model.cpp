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

#include "iebench/model.hpp"

#include <fstream>

#include "iebench/cart.hpp"
#include "iebench/errors.hpp"
#include "iebench/forest.hpp"
#include "iebench/gbm.hpp"
#include "iebench/knn_model.hpp"
#include "iebench/model_io.hpp"
#include "iebench/nnet.hpp"
#include "iebench/svm.hpp"

namespace iebench {

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kKnn: return "knn";
    case Algorithm::kNnet: return "nnet";
    case Algorithm::kGbm: return "gbm";
    case Algorithm::kRf: return "rf";
    case Algorithm::kSvmRbf: return "svm";
    case Algorithm::kCart: return "cart";
  }
  throw InvalidArgument("unknown algorithm");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "knn") return Algorithm::kKnn;
  if (name == "nnet") return Algorithm::kNnet;
  if (name == "gbm") return Algorithm::kGbm;
  if (name == "rf") return Algorithm::kRf;
  if (name == "svm" || name == "svm_rbf") return Algorithm::kSvmRbf;
  if (name == "cart") return Algorithm::kCart;
  throw InvalidArgument("unknown algorithm: " + name);
}

std::size_t argmax_row(std::span<const double> row) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < row.size(); ++i) {
    if (row[i] > row[best]) best = i;
  }
  return best;
}

void Model::set_universe(const Dataset& train) {
  feature_names_ = train.feature_names();
  class_names_ = train.class_names();
}

void Model::check_shape(std::size_t buffer_size, std::size_t n_rows) const {
  if (buffer_size != n_rows * n_features())
    throw InvalidArgument("row buffer does not match the model's feature count");
}

std::vector<double> Model::predict_proba(const Dataset& ds,
                                         ExecMode mode) const {
  std::vector<double> out(ds.n_rows() * n_classes());
  predict_proba_into(ds.matrix(), ds.n_rows(), out, mode);
  return out;
}

std::vector<int> Model::predict(std::span<const double> rows_row_major,
                                std::size_t n_rows, ExecMode mode) const {
  std::vector<double> proba(n_rows * n_classes());
  predict_proba_into(rows_row_major, n_rows, proba, mode);
  std::vector<int> labels(n_rows);
  const std::size_t c = n_classes();
  for (std::size_t i = 0; i < n_rows; ++i) {
    labels[i] = static_cast<int>(
        argmax_row(std::span<const double>(proba.data() + i * c, c)));
  }
  return labels;
}

std::vector<int> Model::predict(const Dataset& ds, ExecMode mode) const {
  return predict(ds.matrix(), ds.n_rows(), mode);
}

std::optional<std::vector<double>> Model::importance() const {
  return std::nullopt;
}

std::unique_ptr<Model> train_model(const Dataset& train, const ModelConfig& cfg,
                                   ExecMode mode) {
  switch (cfg.algorithm) {
    case Algorithm::kKnn: return train_knn(train, cfg.knn);
    case Algorithm::kNnet: return train_nnet(train, cfg.nnet, cfg.seed, mode);
    case Algorithm::kGbm: return train_gbm(train, cfg.gbm, cfg.seed);
    case Algorithm::kRf: return train_rf(train, cfg.forest, cfg.seed, mode);
    case Algorithm::kSvmRbf: return train_svm_rbf(train, cfg.svm, cfg.seed, mode);
    case Algorithm::kCart: return train_cart(train, cfg.cart);
  }
  throw InvalidArgument("unknown algorithm");
}

std::unique_ptr<Model> load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open model file: " + path);
  return load_model(in);
}

void save_model_file(const Model& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write model file: " + path);
  model.save(out);
  if (!out) throw IoError("failed writing model file: " + path);
}

}  // namespace iebench
