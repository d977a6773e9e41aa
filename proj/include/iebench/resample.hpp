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
#include <optional>
#include <string>
#include <vector>

#include "iebench/dataset.hpp"

namespace iebench {

enum class ResampleMethod { kNone, kSmote, kAdasyn };

std::string to_string(ResampleMethod method);
ResampleMethod resample_method_from_string(const std::string& name);

enum class TargetPolicy { kBalanceToMajority };

struct ResampleConfig {
  ResampleMethod method = ResampleMethod::kNone;
  std::size_t k_neighbors = 5;
  double beta = 1.0;  // ADASYN balance degree
  TargetPolicy target_policy = TargetPolicy::kBalanceToMajority;
  std::uint64_t seed = 0;
  // Test hook: forces the interpolation coefficient instead of drawing it.
  std::optional<double> t_override;
};

struct ParentPair {
  std::size_t seed_row = 0;      // original-dataset row index
  std::size_t neighbor_row = 0;  // original-dataset row index
  double t = 0.0;
};

struct ResampleOutcome {
  Dataset dataset;                  // original rows first, synthetic appended
  std::vector<bool> synthetic_flags;
  std::vector<std::size_t> generated_per_class;
  std::vector<ParentPair> parent_pairs;  // one per synthetic row, in order
};

// Oversamples every minority class up to the majority count by interpolating
// between same-class nearest neighbors. Synthetic rows are appended grouped
// by class, in class order.
ResampleOutcome smote(const Dataset& train, const ResampleConfig& cfg);

// Adaptive variant: each minority row's share of the synthetic budget grows
// with the fraction of other-class rows among its k nearest neighbors in the
// whole training set, so generation concentrates near class boundaries.
ResampleOutcome adasyn(const Dataset& train, const ResampleConfig& cfg);

// Dispatches on cfg.method; kNone returns the input unchanged.
ResampleOutcome resample(const Dataset& train, const ResampleConfig& cfg);

// Canonical dataset CSV plus a trailing `synthetic` 0/1 column.
void write_resampled_csv(const ResampleOutcome& outcome, std::ostream& out);

}  // namespace iebench
