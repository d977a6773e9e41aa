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
#include <memory>
#include <span>
#include <vector>

#include "iebench/binning.hpp"
#include "iebench/model.hpp"
#include "iebench/rng.hpp"

namespace iebench {

struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;     // value <= threshold goes left
  std::int32_t left = -1;
  std::int32_t right = -1;
  std::int32_t label = 0;  // classification leaf
  double value = 0.0;      // regression leaf
};

struct Tree {
  std::vector<TreeNode> nodes;  // root at index 0

  std::size_t leaf_for(std::span<const double> x) const;
  int predict_label(std::span<const double> x) const;
  double predict_value(std::span<const double> x) const;
};

struct GrowOptions {
  int max_depth = 64;
  std::size_t min_leaf = 1;
  double min_gain = 1e-12;
  std::size_t mtry = 0;  // 0 = consider every feature
  bool regression = false;
};

// Greedy binary growth over binned thresholds, minimizing count-weighted
// Gini impurity (classification) or squared error (regression). The first
// best split wins ties, with features examined in ascending index order and
// thresholds ascending within a feature.
//
// row_sample may repeat rows (bootstrap). Optional sinks: importance
// accumulates the impurity decrease per split feature; row_leaf records each
// sampled row's final leaf node; leaf_distributions holds class shares per
// leaf, laid out node-major (node_count x n_classes).
Tree grow_tree(const FeatureBins& bins, std::span<const std::uint32_t> row_sample,
               std::span<const int> labels, std::size_t n_classes,
               std::span<const double> targets, const GrowOptions& opt,
               Rng* rng, std::vector<double>* importance,
               std::vector<std::int32_t>* row_leaf,
               std::vector<double>* leaf_distributions);

class CartModel : public Model {
 public:
  CartModel(Tree tree, std::vector<double> leaf_distributions,
            std::vector<std::string> feature_names,
            std::vector<std::string> class_names);

  Algorithm algorithm() const override { return Algorithm::kCart; }
  void predict_proba_into(std::span<const double> rows_row_major,
                          std::size_t n_rows, std::span<double> out,
                          ExecMode mode) const override;
  void save(std::ostream& out) const override;

  const Tree& tree() const { return tree_; }

 private:
  Tree tree_;
  std::vector<double> leaf_distributions_;
};

std::unique_ptr<CartModel> train_cart(const Dataset& train,
                                      const CartParams& params);

void save_tree(const Tree& tree, std::ostream& out);
Tree load_tree(std::istream& in);

}  // namespace iebench
