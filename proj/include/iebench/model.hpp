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
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iebench/dataset.hpp"
#include "iebench/parallel.hpp"

namespace iebench {

enum class Algorithm { kKnn, kNnet, kGbm, kRf, kSvmRbf, kCart };

std::string to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

struct KnnParams {
  std::size_t k = 7;
};

struct CartParams {
  int max_depth = 64;
  std::size_t min_leaf = 1;
  double min_gain = 1e-12;
  std::size_t max_bins = 256;
};

struct ForestParams {
  std::size_t n_trees = 500;
  std::size_t mtry = 0;  // 0 = floor(sqrt(p))
  bool bootstrap = true;
  int max_depth = 64;
  std::size_t min_leaf = 1;
  double min_gain = 1e-12;
  std::size_t max_bins = 256;
};

struct GbmParams {
  std::size_t n_trees = 100;
  int depth = 3;
  double learning_rate = 0.1;
  std::size_t min_leaf = 10;
  std::size_t max_bins = 256;
};

struct NnetParams {
  std::size_t hidden = 5;
  double weight_decay = 1e-4;
  std::size_t max_iter = 500;
  // Halved range of the uniform weight init; 0 selects the all-zero test hook.
  double init_half_range = 0.5;
};

struct SvmParams {
  double cost = 1.0;
  double gamma = 0.0;  // 0 = 1/p
  double tol = 1e-3;
  std::size_t max_passes = 1000;
};

struct ModelConfig {
  Algorithm algorithm = Algorithm::kRf;
  KnnParams knn;
  CartParams cart;
  ForestParams forest;
  GbmParams gbm;
  NnetParams nnet;
  SvmParams svm;
  std::uint64_t seed = 0;
};

// Uniform contract over the fitted classifiers. predict is the argmax of
// predict_proba, with ties resolved toward the lowest class index everywhere.
class Model {
 public:
  virtual ~Model() = default;

  virtual Algorithm algorithm() const = 0;
  std::size_t n_features() const { return feature_names_.size(); }
  std::size_t n_classes() const { return class_names_.size(); }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Writes one length-c probability row (sums to 1) per input row.
  virtual void predict_proba_into(std::span<const double> rows_row_major,
                                  std::size_t n_rows, std::span<double> out,
                                  ExecMode mode) const = 0;

  std::vector<double> predict_proba(const Dataset& ds,
                                    ExecMode mode = ExecMode::kSerial) const;
  std::vector<int> predict(const Dataset& ds,
                           ExecMode mode = ExecMode::kSerial) const;
  std::vector<int> predict(std::span<const double> rows_row_major,
                           std::size_t n_rows,
                           ExecMode mode = ExecMode::kSerial) const;

  // Raw per-feature scores; only tree ensembles provide them.
  virtual std::optional<std::vector<double>> importance() const;

  virtual void save(std::ostream& out) const = 0;

  // Loader hook: reattaches warnings persisted with the model.
  void restore_warnings(std::vector<std::string> warnings) {
    warnings_ = std::move(warnings);
  }

 protected:
  void set_universe(const Dataset& train);
  void check_shape(std::size_t buffer_size, std::size_t n_rows) const;

  std::vector<std::string> feature_names_;
  std::vector<std::string> class_names_;
  std::vector<std::string> warnings_;
};

// Index of the row maximum, first occurrence wins.
std::size_t argmax_row(std::span<const double> row);

std::unique_ptr<Model> train_model(const Dataset& train, const ModelConfig& cfg,
                                   ExecMode mode = ExecMode::kSerial);

std::unique_ptr<Model> load_model(std::istream& in);
std::unique_ptr<Model> load_model_file(const std::string& path);
void save_model_file(const Model& model, const std::string& path);

}  // namespace iebench
