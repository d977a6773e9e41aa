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

double rbf_kernel(std::span<const double> a, std::span<const double> b,
                  double gamma);

// One binary soft-margin machine of the one-vs-one ensemble. class_a (the
// lower index) plays the +1 role. Support vectors are stored densely;
// alpha_y holds alpha_i * y_i per support vector.
struct BinarySvm {
  int class_a = 0;
  int class_b = 0;
  std::vector<double> support_vectors;  // row-major, n_sv x p
  std::vector<double> alpha_y;
  double bias = 0.0;
  bool converged = true;

  // Diagnostics over the pair's full training slice, for KKT inspection:
  // alpha per slice row and the original training-row index of each.
  std::vector<double> alpha;
  std::vector<std::size_t> train_rows;

  double decision(std::span<const double> x, double gamma) const;
};

class SvmModel : public Model {
 public:
  SvmModel(std::vector<BinarySvm> pairs, double gamma, double cost,
           std::vector<std::string> feature_names,
           std::vector<std::string> class_names,
           std::vector<std::string> warnings);

  Algorithm algorithm() const override { return Algorithm::kSvmRbf; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  void save(std::ostream& out) const override;

  double gamma() const { return gamma_; }
  double cost() const { return cost_; }
  const std::vector<BinarySvm>& pairs() const { return pairs_; }

 private:
  std::vector<BinarySvm> pairs_;
  double gamma_;
  double cost_;
};

// Sequential minimal optimization per class pair; pairs are independent and
// train in parallel, each from its own seed stream. A pair that exhausts
// max_passes keeps its best-so-far state, flags converged=false, and adds a
// model warning.
std::unique_ptr<SvmModel> train_svm_rbf(const Dataset& train,
                                        const SvmParams& params,
                                        std::uint64_t seed,
                                        ExecMode mode = ExecMode::kSerial);

}  // namespace iebench
