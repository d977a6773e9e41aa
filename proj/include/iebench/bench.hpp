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
#include <optional>
#include <string>
#include <vector>

#include "iebench/dataset.hpp"
#include "iebench/importance.hpp"
#include "iebench/ingest.hpp"
#include "iebench/metrics.hpp"
#include "iebench/model.hpp"
#include "iebench/report.hpp"
#include "iebench/resample.hpp"

namespace iebench {

// kResampleBeforeCv oversamples the full training set once and then draws CV
// folds from it, so synthetic rows share parents across folds and the CV
// estimate inflates; it is the default because it matches how resampled
// results are usually produced, and run_benchmark attaches a warning.
// kResampleWithinFolds draws folds on the original training set and
// oversamples only each fold's training portion, keeping the estimate honest.
enum class LeakageMode { kResampleBeforeCv, kResampleWithinFolds };

std::string to_string(LeakageMode mode);
LeakageMode leakage_mode_from_string(const std::string& name);

struct BenchConfig {
  // Exactly one input: a survey CSV path (raw export or canonical dataset
  // layout, sniffed from the header) or an in-process synthetic spec.
  std::string input_path;
  std::optional<SynthSpec> synth;

  double split_ratio = 0.85;
  int folds = 10;
  int reps = 10;
  int baseline_reps = 2;
  // Features kept after importance selection; 0 (or >= the feature count)
  // keeps every feature and skips the selection pass.
  std::size_t top_k = 10;
  // Path of a previously written importance CSV; reused instead of running
  // the selection pass when set.
  std::string importance_csv;

  ResampleConfig resample;
  LeakageMode leakage_mode = LeakageMode::kResampleBeforeCv;
  std::vector<Algorithm> algorithms = {Algorithm::kGbm, Algorithm::kRf,
                                       Algorithm::kKnn, Algorithm::kNnet,
                                       Algorithm::kSvmRbf};
  // Hyperparameters shared by every grid cell; algorithm and seed fields are
  // overwritten per cell.
  ModelConfig model_params;
  std::uint64_t seed = 0;

  // Consumed by the CLI when emitting artifacts; run_benchmark itself never
  // writes files.
  std::string out_dir = "bench_out";
  std::vector<ReportFormat> formats = {ReportFormat::kMarkdown,
                                       ReportFormat::kCsv};
};

struct BaselineResult {
  ImportanceRanking ranking;
  CvSummary summary;
  std::vector<EvalRecord> records;
};

// Loads the configured input: synthetic spec, canonical dataset CSV, or raw
// survey export (preprocessed). Preprocessing warnings are appended.
Dataset load_bench_input(const BenchConfig& cfg, std::vector<std::string>* warnings);

// Random-forest CV over the full feature set: mean held-out accuracy is the
// selection baseline, and the averaged impurity importances form the ranking.
BaselineResult run_baseline(const Dataset& full, const BenchConfig& cfg,
                            ExecMode mode = ExecMode::kSerial);

struct BenchOutcome {
  BenchmarkReport report;
  // Set when a selection pass ran or a cached ranking was loaded.
  std::optional<ImportanceRanking> importance;
  // Set only when the selection pass actually ran.
  std::optional<CvSummary> baseline;
};

// Full grid: load -> select features -> stratified split -> per-variant
// resampling -> repeated stratified CV per algorithm -> refit on the full
// resampled training set -> test-set score -> sorted report. The test rows
// are never resampled and depend only on (labels, seed), so they are the
// same for every resampling variant under one seed.
BenchOutcome run_benchmark(const BenchConfig& cfg,
                           ExecMode mode = ExecMode::kSerial);

}  // namespace iebench
