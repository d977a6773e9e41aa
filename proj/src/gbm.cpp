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

#include "iebench/gbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/model_io.hpp"

namespace iebench {

namespace {
constexpr double kPriorFloor = 1e-12;
constexpr double kGammaDenominatorFloor = 1e-12;
}  // namespace

void softmax_into(std::span<const double> scores, std::span<double> out) {
  const double peak = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (std::size_t s = 0; s < scores.size(); ++s) {
    out[s] = std::exp(scores[s] - peak);
    sum += out[s];
  }
  for (std::size_t s = 0; s < scores.size(); ++s) out[s] /= sum;
}

GbmModel::GbmModel(std::vector<double> f_init,
                   std::vector<std::vector<Tree>> rounds,
                   std::vector<double> importance,
                   std::vector<double> training_deviance,
                   std::vector<std::string> feature_names,
                   std::vector<std::string> class_names)
    : f_init_(std::move(f_init)),
      rounds_(std::move(rounds)),
      importance_(std::move(importance)),
      training_deviance_(std::move(training_deviance)) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
  if (f_init_.size() != class_names_.size())
    throw InvalidArgument("initial scores do not match class count");
  if (importance_.size() != feature_names_.size())
    throw InvalidArgument("importance length does not match feature count");
}

void GbmModel::scores_for(std::span<const double> x, std::span<double> f) const {
  std::copy(f_init_.begin(), f_init_.end(), f.begin());
  for (const auto& round : rounds_) {
    for (std::size_t s = 0; s < round.size(); ++s) {
      f[s] += round[s].predict_value(x);
    }
  }
}

void GbmModel::predict_proba_into(std::span<const double> rows_row_major,
                                  std::size_t n_rows, std::span<double> out,
                                  ExecMode mode) const {
  check_shape(rows_row_major.size(), n_rows);
  const std::size_t p = n_features();
  const std::size_t c = n_classes();
  parallel_for(n_rows, mode, [&](std::size_t i) {
    std::vector<double> f(c);
    scores_for(rows_row_major.subspan(i * p, p), f);
    softmax_into(f, out.subspan(i * c, c));
  });
}

std::optional<std::vector<double>> GbmModel::importance() const {
  return importance_;
}

void GbmModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.double_list("f_init", f_init_);
  w.double_list("importance", importance_);
  w.double_list("training_deviance", training_deviance_);
  w.key_line("rounds", rounds_.size());
  for (const auto& round : rounds_) {
    w.key_line("round", round.size());
    for (const auto& tree : round) save_tree(tree, w.raw());
  }
}

std::unique_ptr<GbmModel> train_gbm(const Dataset& train, const GbmParams& params,
                                    std::uint64_t seed) {
  (void)seed;  // boosting is deterministic; kept for the uniform contract
  const std::size_t n = train.n_rows();
  const std::size_t p = train.n_features();
  const std::size_t c = train.n_classes();
  if (n < 2) throw InvalidArgument("boosting needs at least 2 rows");
  if (params.depth < 1) throw InvalidArgument("depth must be >= 1");
  if (!(params.learning_rate >= 0.0))
    throw InvalidArgument("learning_rate must be >= 0");
  if (params.min_leaf < 1) throw InvalidArgument("min_leaf must be >= 1");

  FeatureBins bins(train.matrix(), n, p, params.max_bins);
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0);

  const auto dist = class_distribution(train);
  std::vector<double> f_init(c);
  for (std::size_t s = 0; s < c; ++s) {
    f_init[s] = std::log(std::max(dist.proportions[s], kPriorFloor));
  }

  // f and proba are row-major n x c
  std::vector<double> f(n * c);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(f_init.begin(), f_init.end(), f.begin() + static_cast<std::ptrdiff_t>(i * c));
  }
  std::vector<double> proba(n * c);
  std::vector<double> residual(n);
  std::vector<std::int32_t> row_leaf(n);

  auto refresh_proba = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      softmax_into(std::span<const double>(f.data() + i * c, c),
                   std::span<double>(proba.data() + i * c, c));
    }
  };
  auto mean_deviance = [&] {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += -std::log(std::max(
          proba[i * c + static_cast<std::size_t>(train.label(i))], kPriorFloor));
    }
    return acc / static_cast<double>(n);
  };

  GrowOptions opt;
  opt.max_depth = params.depth;
  opt.min_leaf = params.min_leaf;
  opt.regression = true;

  std::vector<double> importance(p, 0.0);
  std::vector<double> deviance_curve;
  deviance_curve.reserve(params.n_trees + 1);
  refresh_proba();
  deviance_curve.push_back(mean_deviance());

  const double k_factor =
      c > 1 ? static_cast<double>(c - 1) / static_cast<double>(c) : 1.0;

  std::vector<std::vector<Tree>> rounds(params.n_trees);
  for (std::size_t m = 0; m < params.n_trees; ++m) {
    auto& round = rounds[m];
    round.resize(c);
    for (std::size_t s = 0; s < c; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        const double y = train.label(i) == static_cast<int>(s) ? 1.0 : 0.0;
        residual[i] = y - proba[i * c + s];
      }
      std::fill(row_leaf.begin(), row_leaf.end(), -1);
      Tree tree = grow_tree(bins, all, {}, 0, residual, opt, nullptr,
                            &importance, &row_leaf, nullptr);

      // Friedman's per-leaf step for the multinomial loss, damped by the
      // learning rate and baked into the stored leaf value.
      std::vector<double> numer(tree.nodes.size(), 0.0);
      std::vector<double> denom(tree.nodes.size(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const auto leaf = static_cast<std::size_t>(row_leaf[i]);
        const double r = residual[i];
        numer[leaf] += r;
        denom[leaf] += std::abs(r) * (1.0 - std::abs(r));
      }
      for (auto& node : tree.nodes) {
        if (node.feature >= 0) continue;
        const auto id = static_cast<std::size_t>(&node - tree.nodes.data());
        const double gamma = denom[id] > kGammaDenominatorFloor
                                 ? k_factor * numer[id] / denom[id]
                                 : 0.0;
        node.value = params.learning_rate * gamma;
      }
      for (std::size_t i = 0; i < n; ++i) {
        f[i * c + s] += tree.nodes[static_cast<std::size_t>(row_leaf[i])].value;
      }
      round[s] = std::move(tree);
    }
    refresh_proba();
    deviance_curve.push_back(mean_deviance());
  }

  return std::make_unique<GbmModel>(std::move(f_init), std::move(rounds),
                                    std::move(importance),
                                    std::move(deviance_curve),
                                    train.feature_names(), train.class_names());
}

}  // namespace iebench
