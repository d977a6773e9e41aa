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
#include <string>
#include <vector>

#include "iebench/dataset.hpp"

namespace iebench {

struct SplitPlan {
  std::vector<std::size_t> train_indices;  // ascending
  std::vector<std::size_t> test_indices;   // ascending
  double ratio = 0.0;
  std::uint64_t seed = 0;
};

// Deterministic assignment of rows to (repetition, fold) cells.
struct FoldPlan {
  int k = 0;
  int reps = 0;
  std::vector<std::vector<int>> assignment;  // [rep][row] -> fold id
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  std::vector<std::size_t> held_out_rows(int rep, int fold) const;
  std::vector<std::size_t> training_rows(int rep, int fold) const;
};

// Stratified train/test split. Per-class training counts come from
// largest-remainder rounding of count*ratio against a total of
// round(n*ratio), so every class deviates from its exact quota by less than
// one row. Plans depend only on labels, never on feature values.
SplitPlan stratified_split(const std::vector<int>& labels, std::size_t n_classes,
                           double ratio, std::uint64_t seed);
SplitPlan stratified_split(const Dataset& ds, double ratio, std::uint64_t seed);

// Repeated stratified k-fold plan. Within each repetition the folds
// partition [0,n), and every (fold, class) cell holds either floor or ceil
// of class_count/k rows. Repetition r draws from a seed stream derived from
// (seed, r), so repetitions are independent but reproducible.
FoldPlan repeated_stratified_kfold(const std::vector<int>& labels,
                                   std::size_t n_classes, int k, int reps,
                                   std::uint64_t seed);
FoldPlan repeated_stratified_kfold(const Dataset& ds, int k, int reps,
                                   std::uint64_t seed);

// Audit exports: one row per index.
void write_split_csv(const SplitPlan& plan, std::ostream& out);
void write_fold_csv(const FoldPlan& plan, std::ostream& out);

}  // namespace iebench
