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

namespace iebench {

// Cross-entropy objective of a one-hidden-layer softmax network over a fixed
// (already standardized) matrix: mean CE plus weight_decay times the squared
// norm of every parameter, biases included. Weight layout: hidden units
// first, each as [bias, p input weights]; then output units, each as
// [bias, h hidden weights].
class NnetObjective {
 public:
  NnetObjective(std::vector<double> matrix_row_major, std::vector<int> labels,
                std::size_t n_features, std::size_t hidden,
                std::size_t n_classes, double weight_decay);

  std::size_t dim() const {
    return hidden_ * (n_features_ + 1) + n_classes_ * (hidden_ + 1);
  }
  std::size_t n_rows() const { return labels_.size(); }

  double loss(std::span<const double> w) const;
  // Returns the loss; writes the full gradient. Row contributions reduce in
  // fixed 64-row blocks combined in block order, so parallel and serial
  // execution produce identical bytes.
  double loss_and_grad(std::span<const double> w, std::span<double> grad,
                       ExecMode mode = ExecMode::kSerial) const;

  // Per-row forward pass; probs has length n_classes.
  void forward(std::span<const double> w, std::span<const double> x,
               std::span<double> probs) const;

 private:
  template <bool WithGrad>
  double run(std::span<const double> w, std::span<double> grad,
             ExecMode mode) const;

  std::vector<double> matrix_;
  std::vector<int> labels_;
  std::size_t n_features_;
  std::size_t hidden_;
  std::size_t n_classes_;
  double weight_decay_;
};

class NnetModel : public Model {
 public:
  NnetModel(std::vector<double> weights, std::vector<double> means,
            std::vector<double> sds, std::size_t hidden,
            std::vector<std::string> feature_names,
            std::vector<std::string> class_names);

  Algorithm algorithm() const override { return Algorithm::kNnet; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  void save(std::ostream& out) const override;

  std::size_t hidden() const { return hidden_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
  std::vector<double> means_;  // standardization, applied before the net
  std::vector<double> sds_;    // sd 0 marks a constant feature, mapped to 0
  std::size_t hidden_;
};

// Full-batch gradient descent with backtracking (Armijo) step halving; the
// step doubles again after each accepted iteration. Inputs are standardized
// internally. Throws NonFiniteLoss if the loss leaves the reals.
std::unique_ptr<NnetModel> train_nnet(const Dataset& train,
                                      const NnetParams& params,
                                      std::uint64_t seed,
                                      ExecMode mode = ExecMode::kSerial);

}  // namespace iebench
