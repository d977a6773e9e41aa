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

#include "iebench/cart.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/model_io.hpp"

namespace iebench {

std::size_t Tree::leaf_for(std::span<const double> x) const {
  std::size_t node = 0;
  while (nodes[node].feature >= 0) {
    const auto& nd = nodes[node];
    node = static_cast<std::size_t>(
        x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                : nd.right);
  }
  return node;
}

int Tree::predict_label(std::span<const double> x) const {
  return nodes[leaf_for(x)].label;
}

double Tree::predict_value(std::span<const double> x) const {
  return nodes[leaf_for(x)].value;
}

namespace {

struct Grower {
  const FeatureBins& bins;
  std::span<const int> labels;
  std::size_t n_classes;
  std::span<const double> targets;
  const GrowOptions& opt;
  Rng* rng;
  std::vector<double>* importance;
  std::vector<std::int32_t>* row_leaf;
  std::vector<double>* leaf_dist;

  Tree tree = {};
  std::vector<std::uint32_t> rows = {};
  std::vector<std::size_t> feature_pool = {};

  // per-feature scratch, sized to the widest histogram
  std::vector<std::int64_t> class_hist = {};
  std::vector<std::int64_t> count_hist = {};
  std::vector<double> sum_hist = {};

  struct Split {
    double gain = 0.0;
    std::size_t feature = 0;
    std::size_t threshold_index = 0;
    bool found = false;
  };

  std::int32_t make_leaf(std::size_t begin, std::size_t end) {
    TreeNode node;
    if (opt.regression) {
      double sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) sum += targets[rows[i]];
      node.value = sum / static_cast<double>(end - begin);
    } else {
      std::vector<std::int64_t> counts(n_classes, 0);
      for (std::size_t i = begin; i < end; ++i) ++counts[labels[rows[i]]];
      node.label = static_cast<std::int32_t>(
          std::max_element(counts.begin(), counts.end()) - counts.begin());
      if (leaf_dist) {
        const std::size_t id = tree.nodes.size();
        if (leaf_dist->size() < (id + 1) * n_classes)
          leaf_dist->resize((id + 1) * n_classes, 0.0);
        for (std::size_t s = 0; s < n_classes; ++s) {
          (*leaf_dist)[id * n_classes + s] =
              static_cast<double>(counts[s]) / static_cast<double>(end - begin);
        }
      }
    }
    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.push_back(node);
    if (row_leaf) {
      for (std::size_t i = begin; i < end; ++i)
        (*row_leaf)[rows[i]] = id;
    }
    return id;
  }

  // Count-weighted impurity of a class histogram: n - sum(n_c^2)/n.
  static double gini_term(std::span<const std::int64_t> counts, std::int64_t n) {
    double sq = 0.0;
    for (auto c : counts)
      sq += static_cast<double>(c) * static_cast<double>(c);
    return static_cast<double>(n) - sq / static_cast<double>(n);
  }

  Split best_split_classification(std::size_t begin, std::size_t end,
                                  std::size_t feature, double parent_impurity) {
    const std::size_t nb = bins.n_bins(feature);
    std::fill(class_hist.begin(), class_hist.begin() + nb * n_classes, 0);
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = rows[i];
      ++class_hist[bins.code(r, feature) * n_classes +
                   static_cast<std::size_t>(labels[r])];
    }
    const auto n = static_cast<std::int64_t>(end - begin);

    Split best;
    std::vector<std::int64_t> left(n_classes, 0);
    std::int64_t n_left = 0;
    double left_sq = 0.0;
    // right-side squared sums maintained by subtraction from totals
    std::vector<std::int64_t> total(n_classes, 0);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t s = 0; s < n_classes; ++s)
        total[s] += class_hist[b * n_classes + s];
    }
    double total_sq = 0.0;
    for (auto c : total) total_sq += static_cast<double>(c) * static_cast<double>(c);

    for (std::size_t b = 0; b + 1 < nb; ++b) {
      for (std::size_t s = 0; s < n_classes; ++s) {
        const auto c = class_hist[b * n_classes + s];
        if (c == 0) continue;
        left_sq += static_cast<double>(c) *
                   (2.0 * static_cast<double>(left[s]) + static_cast<double>(c));
        left[s] += c;
        n_left += c;
      }
      const std::int64_t n_right = n - n_left;
      if (n_left < static_cast<std::int64_t>(opt.min_leaf) ||
          n_right < static_cast<std::int64_t>(opt.min_leaf))
        continue;
      double right_sq = total_sq;
      for (std::size_t s = 0; s < n_classes; ++s) {
        const auto lc = static_cast<double>(left[s]);
        const auto tc = static_cast<double>(total[s]);
        right_sq += lc * lc - 2.0 * tc * lc;
      }
      const double child_impurity =
          (static_cast<double>(n_left) - left_sq / static_cast<double>(n_left)) +
          (static_cast<double>(n_right) - right_sq / static_cast<double>(n_right));
      const double gain = parent_impurity - child_impurity;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = feature;
        best.threshold_index = b;
        best.found = true;
      }
    }
    return best;
  }

  Split best_split_regression(std::size_t begin, std::size_t end,
                              std::size_t feature, double parent_score) {
    const std::size_t nb = bins.n_bins(feature);
    std::fill(count_hist.begin(), count_hist.begin() + nb, 0);
    std::fill(sum_hist.begin(), sum_hist.begin() + nb, 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const auto r = rows[i];
      const auto b = bins.code(r, feature);
      ++count_hist[b];
      sum_hist[b] += targets[r];
    }
    const auto n = static_cast<std::int64_t>(end - begin);
    std::int64_t n_total = n;
    double sum_total = 0.0;
    for (std::size_t b = 0; b < nb; ++b) sum_total += sum_hist[b];

    Split best;
    std::int64_t n_left = 0;
    double sum_left = 0.0;
    for (std::size_t b = 0; b + 1 < nb; ++b) {
      n_left += count_hist[b];
      sum_left += sum_hist[b];
      const std::int64_t n_right = n_total - n_left;
      if (n_left < static_cast<std::int64_t>(opt.min_leaf) ||
          n_right < static_cast<std::int64_t>(opt.min_leaf))
        continue;
      const double sum_right = sum_total - sum_left;
      // SSE decrease, with the constant sum-of-squares term cancelled
      const double score =
          sum_left * sum_left / static_cast<double>(n_left) +
          sum_right * sum_right / static_cast<double>(n_right);
      const double gain = score - parent_score;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = feature;
        best.threshold_index = b;
        best.found = true;
      }
    }
    return best;
  }

  std::int32_t grow(std::size_t begin, std::size_t end, int depth) {
    const std::size_t n = end - begin;
    bool pure = true;
    if (opt.regression) {
      for (std::size_t i = begin + 1; i < end && pure; ++i)
        pure = targets[rows[i]] == targets[rows[begin]];
    } else {
      for (std::size_t i = begin + 1; i < end && pure; ++i)
        pure = labels[rows[i]] == labels[rows[begin]];
    }
    if (pure || depth >= opt.max_depth || n < 2 * opt.min_leaf)
      return make_leaf(begin, end);

    // Candidate features, ascending; mtry samples without replacement.
    std::size_t n_candidates = feature_pool.size();
    if (opt.mtry > 0 && opt.mtry < feature_pool.size()) {
      for (std::size_t i = 0; i < opt.mtry; ++i) {
        const auto j = i + static_cast<std::size_t>(rng->below(
                               static_cast<std::uint64_t>(feature_pool.size() - i)));
        std::swap(feature_pool[i], feature_pool[j]);
      }
      n_candidates = opt.mtry;
      std::sort(feature_pool.begin(),
                feature_pool.begin() + static_cast<std::ptrdiff_t>(opt.mtry));
    }

    double parent_score = 0.0;
    if (opt.regression) {
      double sum = 0.0;
      for (std::size_t i = begin; i < end; ++i) sum += targets[rows[i]];
      parent_score = sum * sum / static_cast<double>(n);
    } else {
      std::vector<std::int64_t> counts(n_classes, 0);
      for (std::size_t i = begin; i < end; ++i) ++counts[labels[rows[i]]];
      parent_score = gini_term(counts, static_cast<std::int64_t>(n));
    }

    Split best;
    for (std::size_t f = 0; f < n_candidates; ++f) {
      const std::size_t feature = feature_pool[f];
      if (bins.n_bins(feature) < 2) continue;
      const Split s = opt.regression
                          ? best_split_regression(begin, end, feature, parent_score)
                          : best_split_classification(begin, end, feature,
                                                      parent_score);
      if (s.found && s.gain > best.gain) best = s;
    }
    if (!best.found || best.gain <= opt.min_gain) return make_leaf(begin, end);

    if (importance) (*importance)[best.feature] += best.gain;

    const auto mid = std::partition(
        rows.begin() + static_cast<std::ptrdiff_t>(begin),
        rows.begin() + static_cast<std::ptrdiff_t>(end),
        [&](std::uint32_t r) {
          return bins.code(r, best.feature) <= best.threshold_index;
        });
    const auto split_at =
        static_cast<std::size_t>(mid - rows.begin());

    const auto id = static_cast<std::int32_t>(tree.nodes.size());
    TreeNode node;
    node.feature = static_cast<std::int32_t>(best.feature);
    node.threshold = bins.thresholds(best.feature)[best.threshold_index];
    tree.nodes.push_back(node);
    const auto left = grow(begin, split_at, depth + 1);
    const auto right = grow(split_at, end, depth + 1);
    tree.nodes[static_cast<std::size_t>(id)].left = left;
    tree.nodes[static_cast<std::size_t>(id)].right = right;
    return id;
  }
};

}  // namespace

Tree grow_tree(const FeatureBins& bins, std::span<const std::uint32_t> row_sample,
               std::span<const int> labels, std::size_t n_classes,
               std::span<const double> targets, const GrowOptions& opt,
               Rng* rng, std::vector<double>* importance,
               std::vector<std::int32_t>* row_leaf,
               std::vector<double>* leaf_distributions) {
  if (row_sample.empty()) throw InvalidArgument("cannot grow a tree on no rows");
  if (opt.mtry > 0 && opt.mtry < bins.n_features() && rng == nullptr)
    throw InvalidArgument("feature subsampling needs an RNG");
  if (!opt.regression && n_classes == 0)
    throw InvalidArgument("classification tree needs a class universe");

  Grower g{.bins = bins,
           .labels = labels,
           .n_classes = n_classes,
           .targets = targets,
           .opt = opt,
           .rng = rng,
           .importance = importance,
           .row_leaf = row_leaf,
           .leaf_dist = leaf_distributions};
  g.rows.assign(row_sample.begin(), row_sample.end());
  g.feature_pool.resize(bins.n_features());
  std::iota(g.feature_pool.begin(), g.feature_pool.end(), 0);

  std::size_t widest = 0;
  for (std::size_t j = 0; j < bins.n_features(); ++j)
    widest = std::max<std::size_t>(widest, bins.n_bins(j));
  if (opt.regression) {
    g.count_hist.resize(widest);
    g.sum_hist.resize(widest);
  } else {
    g.class_hist.resize(widest * n_classes);
  }

  g.grow(0, g.rows.size(), 0);
  return std::move(g.tree);
}

CartModel::CartModel(Tree tree, std::vector<double> leaf_distributions,
                     std::vector<std::string> feature_names,
                     std::vector<std::string> class_names)
    : tree_(std::move(tree)),
      leaf_distributions_(std::move(leaf_distributions)) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
}

void CartModel::predict_proba_into(std::span<const double> rows_row_major,
                                   std::size_t n_rows, std::span<double> out,
                                   ExecMode mode) const {
  const std::size_t p = n_features();
  const std::size_t c = n_classes();
  check_shape(rows_row_major.size(), n_rows);
  parallel_for(n_rows, mode, [&](std::size_t i) {
    const auto leaf = tree_.leaf_for(rows_row_major.subspan(i * p, p));
    for (std::size_t s = 0; s < c; ++s)
      out[i * c + s] = leaf_distributions_[leaf * c + s];
  });
}

void CartModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.double_list("leaf_distributions", leaf_distributions_);
  w.key_line("tree", 1);
  save_tree(tree_, w.raw());
}

std::unique_ptr<CartModel> train_cart(const Dataset& train,
                                      const CartParams& params) {
  if (train.n_rows() == 0) throw InvalidArgument("cannot train on no rows");
  if (params.max_depth < 0) throw InvalidArgument("max_depth must be >= 0");
  if (params.min_leaf < 1) throw InvalidArgument("min_leaf must be >= 1");

  FeatureBins bins(train.matrix(), train.n_rows(), train.n_features(),
                   params.max_bins);
  std::vector<std::uint32_t> all(train.n_rows());
  std::iota(all.begin(), all.end(), 0);

  GrowOptions opt;
  opt.max_depth = params.max_depth;
  opt.min_leaf = params.min_leaf;
  opt.min_gain = params.min_gain;

  std::vector<double> leaf_dist;
  Tree tree = grow_tree(bins, all, train.labels(), train.n_classes(), {}, opt,
                        nullptr, nullptr, nullptr, &leaf_dist);
  leaf_dist.resize(tree.nodes.size() * train.n_classes(), 0.0);
  return std::make_unique<CartModel>(std::move(tree), std::move(leaf_dist),
                                     train.feature_names(),
                                     train.class_names());
}

void save_tree(const Tree& tree, std::ostream& out) {
  out << tree.nodes.size() << '\n';
  for (const auto& nd : tree.nodes) {
    out << nd.feature << ' ' << format_double(nd.threshold) << ' ' << nd.left
        << ' ' << nd.right << ' ' << nd.label << ' ' << format_double(nd.value)
        << '\n';
  }
}

Tree load_tree(std::istream& in) {
  std::size_t count = 0;
  in >> count;
  Tree tree;
  tree.nodes.resize(count);
  for (auto& nd : tree.nodes) {
    in >> nd.feature >> nd.threshold >> nd.left >> nd.right >> nd.label >>
        nd.value;
  }
  if (!in) throw IoError("truncated tree record");
  return tree;
}

}  // namespace iebench
