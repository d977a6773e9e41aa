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

#include "iebench/forest.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/model_io.hpp"

namespace iebench {

ForestModel::ForestModel(std::vector<Tree> trees, std::vector<double> importance,
                         std::vector<std::string> feature_names,
                         std::vector<std::string> class_names)
    : trees_(std::move(trees)), importance_(std::move(importance)) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
  if (trees_.empty()) throw InvalidArgument("forest needs at least one tree");
  if (importance_.size() != feature_names_.size())
    throw InvalidArgument("importance length does not match feature count");
}

void ForestModel::predict_proba_into(std::span<const double> rows_row_major,
                                     std::size_t n_rows, std::span<double> out,
                                     ExecMode mode) const {
  check_shape(rows_row_major.size(), n_rows);
  const std::size_t p = n_features();
  const std::size_t c = n_classes();
  const double weight = 1.0 / static_cast<double>(trees_.size());
  parallel_for(n_rows, mode, [&](std::size_t i) {
    const auto x = rows_row_major.subspan(i * p, p);
    for (std::size_t s = 0; s < c; ++s) out[i * c + s] = 0.0;
    for (const auto& tree : trees_) {
      out[i * c + static_cast<std::size_t>(tree.predict_label(x))] += weight;
    }
  });
}

std::optional<std::vector<double>> ForestModel::importance() const {
  return importance_;
}

void ForestModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.double_list("importance", importance_);
  w.key_line("trees", trees_.size());
  for (const auto& tree : trees_) save_tree(tree, w.raw());
}

std::unique_ptr<ForestModel> train_rf(const Dataset& train,
                                      const ForestParams& params,
                                      std::uint64_t seed, ExecMode mode) {
  const std::size_t n = train.n_rows();
  const std::size_t p = train.n_features();
  if (n < 2) throw InvalidArgument("forest training needs at least 2 rows");
  if (params.n_trees < 1) throw InvalidArgument("n_trees must be >= 1");
  std::size_t mtry = params.mtry;
  if (mtry == 0)
    mtry = static_cast<std::size_t>(std::sqrt(static_cast<double>(p)));
  if (mtry < 1 || mtry > p)
    throw InvalidArgument("mtry must lie in [1, n_features]");

  FeatureBins bins(train.matrix(), n, p, params.max_bins);

  GrowOptions opt;
  opt.max_depth = params.max_depth;
  opt.min_leaf = params.min_leaf;
  opt.min_gain = params.min_gain;
  opt.mtry = mtry;

  std::vector<Tree> trees(params.n_trees);
  std::vector<std::vector<double>> tree_importance(
      params.n_trees, std::vector<double>(p, 0.0));

  parallel_for(params.n_trees, mode, [&](std::size_t t) {
    Rng rng(derive_seed(seed, {hash_tag("tree"), t}));
    std::vector<std::uint32_t> sample(n);
    if (params.bootstrap) {
      for (auto& r : sample)
        r = static_cast<std::uint32_t>(rng.below(n));
    } else {
      std::iota(sample.begin(), sample.end(), 0);
    }
    trees[t] = grow_tree(bins, sample, train.labels(), train.n_classes(), {},
                         opt, &rng, &tree_importance[t], nullptr, nullptr);
  });

  // Summed in tree order so the totals never depend on the thread schedule.
  std::vector<double> importance(p, 0.0);
  for (const auto& contrib : tree_importance) {
    for (std::size_t j = 0; j < p; ++j) importance[j] += contrib[j];
  }

  return std::make_unique<ForestModel>(std::move(trees), std::move(importance),
                                       train.feature_names(),
                                       train.class_names());
}

}  // namespace iebench
