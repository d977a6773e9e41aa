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

#include "iebench/metrics.hpp"
#include "iebench/model.hpp"

namespace iebench {

struct AlgoResult {
  Algorithm algorithm = Algorithm::kRf;
  CvSummary cv;
  std::vector<EvalRecord> cv_records;
  double test_accuracy = 0.0;
  double test_kappa = 0.0;
  bool ok = true;
  std::string error;  // set when !ok; numeric fields are then meaningless
};

struct RunMeta {
  std::uint64_t seed = 0;
  std::string variant;       // resampling method applied to the training data
  std::string leakage_mode;
  double split_ratio = 0.0;
  int folds = 0;
  int reps = 0;
  std::size_t top_k = 0;
  std::size_t n_rows = 0;      // full dataset after preprocessing
  std::size_t n_features = 0;  // features the models saw
  std::size_t n_train = 0;     // training rows before resampling
  std::size_t n_train_resampled = 0;
  std::size_t n_test = 0;
  double nir = 0.0;  // majority-class proportion of the full dataset
  std::vector<std::string> warnings;
};

struct BenchmarkReport {
  std::vector<AlgoResult> rows;  // descending test accuracy; failures last
  RunMeta meta;
  // Stdout display only. Kept out of every emitted file so identical
  // (config, seed) runs stay byte-identical.
  double wall_seconds = 0.0;
};

// Successful rows first, descending test accuracy, original order on ties;
// failed rows keep their relative order at the bottom.
void sort_report_rows(BenchmarkReport& report);

void write_report_md(const BenchmarkReport& report, std::ostream& out);
void write_report_csv(const BenchmarkReport& report, std::ostream& out);
void write_cv_records_csv(const BenchmarkReport& report, std::ostream& out);
void write_run_meta_csv(const RunMeta& meta, std::ostream& out);
// One band per algorithm: every CV accuracy as a dot, a mean +/- sd interval,
// and the test accuracy as a distinct marker.
void write_report_svg(const BenchmarkReport& report, std::ostream& out);

enum class ReportFormat { kMarkdown, kCsv, kSvg };

std::string to_string(ReportFormat format);
ReportFormat report_format_from_string(const std::string& name);

// Writes the requested artifacts into `dir` (report.md / report.csv +
// cv_records.csv + run_meta.csv / report.svg); returns the paths written.
std::vector<std::string> emit_report(const BenchmarkReport& report,
                                     const std::string& dir,
                                     const std::vector<ReportFormat>& formats);

// Rebuilds a report from the csv artifacts emit_report wrote into `dir`.
BenchmarkReport read_report_dir(const std::string& dir);

}  // namespace iebench
