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

// Bagged ensemble of classification trees; prediction is the majority vote,
// probabilities the vote fractions. importance() is the Gini impurity
// decrease per feature summed over every split of every tree.
class ForestModel : public Model {
 public:
  ForestModel(std::vector<Tree> trees, std::vector<double> importance,
              std::vector<std::string> feature_names,
              std::vector<std::string> class_names);

  Algorithm algorithm() const override { return Algorithm::kRf; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  std::optional<std::vector<double>> importance() const override;
  void save(std::ostream& out) const override;

  const std::vector<Tree>& trees() const { return trees_; }

 private:
  std::vector<Tree> trees_;
  std::vector<double> importance_;
};

// Trees train independently on bootstrap resamples, each from its own seed
// stream, so the fit is identical for any thread count.
std::unique_ptr<ForestModel> train_rf(const Dataset& train,
                                      const ForestParams& params,
                                      std::uint64_t seed,
                                      ExecMode mode = ExecMode::kSerial);

}  // namespace iebench
