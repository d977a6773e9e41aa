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
#include "iebench/metrics.hpp"
#include "iebench/model.hpp"

namespace iebench {

enum class ImportanceSource { kRfGini, kGbmInfluence, kPermutation };

std::string to_string(ImportanceSource source);
ImportanceSource importance_source_from_string(const std::string& name);

struct ImportanceEntry {
  std::string feature;
  double raw = 0.0;
  double normalized = 0.0;  // 100 * raw / max_raw
};

struct ImportanceRanking {
  std::vector<ImportanceEntry> entries;  // descending by raw, name-ordered ties
  ImportanceSource source = ImportanceSource::kRfGini;

  std::vector<std::string> feature_universe() const;
};

// Sorts descending by raw score (ties by name), then rescales so the top
// entry reads 100. A non-positive maximum zeroes every normalized score.
ImportanceRanking make_ranking(const std::vector<std::string>& names,
                               const std::vector<double>& raw,
                               ImportanceSource source);

struct CvImportanceResult {
  ImportanceRanking ranking;       // averaged over all rep x fold models
  std::vector<EvalRecord> records; // held-out accuracy/kappa per cell
  CvSummary summary;
};

// Repeated stratified CV of a tree ensemble; importance is the mean of the
// per-model raw scores, and the held-out metrics come along for free.
CvImportanceResult cv_importance_full(const Dataset& ds, Algorithm algorithm,
                                      int k, int reps, std::uint64_t seed,
                                      const ModelConfig& base,
                                      ExecMode mode = ExecMode::kSerial);

ImportanceRanking cv_importance(const Dataset& ds, Algorithm algorithm, int k,
                                int reps, std::uint64_t seed,
                                ExecMode mode = ExecMode::kSerial);

// Mean accuracy drop on the holdout when one feature's column is shuffled,
// over n_shuffles independent permutations per feature.
ImportanceRanking permutation_importance(const Model& model,
                                         const Dataset& holdout,
                                         int n_shuffles, std::uint64_t seed,
                                         ExecMode mode = ExecMode::kSerial);

// First k names of the ranking.
std::vector<std::string> select_top_k(const ImportanceRanking& ranking,
                                      std::size_t k);

struct RankingComparison {
  std::size_t top_overlap = 0;  // |top-k intersection|
  double spearman = 0.0;        // over the shared universe, average-rank ties
};

RankingComparison compare_rankings(const ImportanceRanking& a,
                                   const ImportanceRanking& b,
                                   std::size_t top_k = 10);

void write_importance_csv(const ImportanceRanking& ranking, std::ostream& out);
void write_importance_svg(const ImportanceRanking& ranking, std::ostream& out,
                          std::size_t max_entries = 20);
ImportanceRanking read_importance_csv(std::istream& in);
ImportanceRanking read_importance_csv_file(const std::string& path);

}  // namespace iebench
