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

#include "iebench/cart.hpp"
#include "iebench/model.hpp"

namespace iebench {

// Multinomial-deviance boosting. Per-class score functions start at the log
// class priors; every round fits one shallow regression tree per class to
// the softmax residuals and adds its damped leaf steps. Leaf values already
// include the learning rate, so prediction just sums tree outputs.
class GbmModel : public Model {
 public:
  GbmModel(std::vector<double> f_init, std::vector<std::vector<Tree>> rounds,
           std::vector<double> importance,
           std::vector<double> training_deviance,
           std::vector<std::string> feature_names,
           std::vector<std::string> class_names);

  Algorithm algorithm() const override { return Algorithm::kGbm; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  std::optional<std::vector<double>> importance() const override;
  void save(std::ostream& out) const override;

  // Mean multinomial deviance on the training set: entry 0 before boosting,
  // then one entry per completed round.
  const std::vector<double>& training_deviance() const {
    return training_deviance_;
  }
  const std::vector<std::vector<Tree>>& rounds() const { return rounds_; }

 private:
  void scores_for(std::span<const double> x, std::span<double> f) const;

  std::vector<double> f_init_;  // per class
  std::vector<std::vector<Tree>> rounds_;
  std::vector<double> importance_;
  std::vector<double> training_deviance_;
};

// Writes softmax probabilities of per-class scores into out (length c).
void softmax_into(std::span<const double> scores, std::span<double> out);

std::unique_ptr<GbmModel> train_gbm(const Dataset& train, const GbmParams& params,
                                    std::uint64_t seed);

}  // namespace iebench
