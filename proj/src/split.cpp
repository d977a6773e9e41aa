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

#include "iebench/split.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/ingest.hpp"
#include "iebench/rng.hpp"

namespace iebench {

std::vector<std::size_t> FoldPlan::held_out_rows(int rep, int fold) const {
  std::vector<std::size_t> rows;
  const auto& folds = assignment[static_cast<std::size_t>(rep)];
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] == fold) rows.push_back(i);
  }
  return rows;
}

std::vector<std::size_t> FoldPlan::training_rows(int rep, int fold) const {
  std::vector<std::size_t> rows;
  const auto& folds = assignment[static_cast<std::size_t>(rep)];
  for (std::size_t i = 0; i < folds.size(); ++i) {
    if (folds[i] != fold) rows.push_back(i);
  }
  return rows;
}

SplitPlan stratified_split(const std::vector<int>& labels, std::size_t n_classes,
                           double ratio, std::uint64_t seed) {
  if (!(ratio > 0.0 && ratio < 1.0))
    throw InvalidArgument("split ratio must lie in (0,1)");
  const std::size_t n = labels.size();
  if (n == 0) throw InvalidArgument("cannot split an empty dataset");

  const auto by_class = rows_by_class(labels, n_classes);
  for (std::size_t s = 0; s < n_classes; ++s) {
    if (by_class[s].empty()) throw DegenerateClass(s, "has no rows to split");
  }

  const auto total_train =
      static_cast<std::int64_t>(std::llround(static_cast<double>(n) * ratio));
  std::vector<double> quotas(n_classes);
  for (std::size_t s = 0; s < n_classes; ++s) {
    quotas[s] = static_cast<double>(by_class[s].size()) * ratio;
  }
  const auto train_counts = largest_remainder_round(quotas, total_train);

  SplitPlan plan;
  plan.ratio = ratio;
  plan.seed = seed;
  for (std::size_t s = 0; s < n_classes; ++s) {
    const auto want = static_cast<std::size_t>(train_counts[s]);
    if (want == 0) throw DegenerateClass(s, "would receive no training rows");
    std::vector<std::size_t> rows = by_class[s];
    Rng rng(derive_seed(seed, {hash_tag("split"), s}));
    rng.shuffle(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      (i < want ? plan.train_indices : plan.test_indices).push_back(rows[i]);
    }
  }
  std::sort(plan.train_indices.begin(), plan.train_indices.end());
  std::sort(plan.test_indices.begin(), plan.test_indices.end());
  return plan;
}

SplitPlan stratified_split(const Dataset& ds, double ratio, std::uint64_t seed) {
  return stratified_split(ds.labels(), ds.n_classes(), ratio, seed);
}

FoldPlan repeated_stratified_kfold(const std::vector<int>& labels,
                                   std::size_t n_classes, int k, int reps,
                                   std::uint64_t seed) {
  const std::size_t n = labels.size();
  if (k < 2) throw InvalidK("k must be at least 2");
  if (static_cast<std::size_t>(k) > n)
    throw InvalidK("k exceeds the number of rows");
  if (reps < 1) throw InvalidArgument("need at least one repetition");

  FoldPlan plan;
  plan.k = k;
  plan.reps = reps;
  plan.seed = seed;
  plan.assignment.assign(static_cast<std::size_t>(reps), std::vector<int>(n, -1));

  const auto by_class = rows_by_class(labels, n_classes);
  for (std::size_t s = 0; s < n_classes; ++s) {
    if (!by_class[s].empty() && by_class[s].size() < static_cast<std::size_t>(k)) {
      plan.warnings.push_back("class " + std::to_string(s) + " has " +
                              std::to_string(by_class[s].size()) +
                              " rows, fewer than k=" + std::to_string(k));
    }
  }

  for (int r = 0; r < reps; ++r) {
    auto& folds = plan.assignment[static_cast<std::size_t>(r)];
    // Extra rows (class count mod k) go to the globally least-filled folds so
    // total fold sizes stay balanced; tie on fill picks the lower fold id.
    std::vector<std::size_t> fold_fill(static_cast<std::size_t>(k), 0);
    for (std::size_t s = 0; s < n_classes; ++s) {
      std::vector<std::size_t> rows = by_class[s];
      if (rows.empty()) continue;
      Rng rng(derive_seed(seed, {hash_tag("fold"), static_cast<std::uint64_t>(r), s}));
      rng.shuffle(rows);

      const std::size_t base = rows.size() / static_cast<std::size_t>(k);
      const std::size_t extra = rows.size() % static_cast<std::size_t>(k);
      std::vector<std::size_t> sizes(static_cast<std::size_t>(k), base);
      if (extra > 0) {
        std::vector<std::size_t> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
          return fold_fill[a] < fold_fill[b];
        });
        for (std::size_t e = 0; e < extra; ++e) sizes[order[e]] += 1;
      }

      std::size_t cursor = 0;
      for (int f = 0; f < k; ++f) {
        const std::size_t fi = static_cast<std::size_t>(f);
        for (std::size_t i = 0; i < sizes[fi]; ++i) {
          folds[rows[cursor++]] = f;
        }
        fold_fill[fi] += sizes[fi];
      }
    }
  }
  return plan;
}

FoldPlan repeated_stratified_kfold(const Dataset& ds, int k, int reps,
                                   std::uint64_t seed) {
  return repeated_stratified_kfold(ds.labels(), ds.n_classes(), k, reps, seed);
}

void write_split_csv(const SplitPlan& plan, std::ostream& out) {
  out << "row_index,part\n";
  std::size_t ti = 0;
  std::size_t si = 0;
  const std::size_t n = plan.train_indices.size() + plan.test_indices.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (ti < plan.train_indices.size() && plan.train_indices[ti] == i) {
      out << i << ",train\n";
      ++ti;
    } else {
      out << i << ",test\n";
      ++si;
    }
  }
}

void write_fold_csv(const FoldPlan& plan, std::ostream& out) {
  out << "row_index,rep,fold\n";
  for (int r = 0; r < plan.reps; ++r) {
    const auto& folds = plan.assignment[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < folds.size(); ++i) {
      out << i << ',' << r << ',' << folds[i] << '\n';
    }
  }
}

}  // namespace iebench
