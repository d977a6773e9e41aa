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

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/bench.hpp"
#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/importance.hpp"
#include "iebench/resample.hpp"

using iebench::Algorithm;
using iebench::BenchConfig;
using iebench::ExecMode;
using iebench::InvalidArgument;
using iebench::LeakageMode;
using iebench::ResampleMethod;

namespace {

// Small grid that still exercises every stage: two classes with a real
// signal, three folds, two repetitions, fast algorithms.
BenchConfig synth_cfg(std::vector<double> proportions, double effect,
                      std::uint64_t seed) {
  iebench::SynthSpec spec;
  spec.n = 240;
  spec.p = 6;
  spec.c = proportions.size();
  spec.class_proportions = std::move(proportions);
  spec.informative_features = {0, 1};
  spec.effect_size = effect;
  spec.seed = seed + 1;

  BenchConfig cfg;
  cfg.synth = spec;
  cfg.folds = 3;
  cfg.reps = 2;
  cfg.baseline_reps = 1;
  cfg.top_k = 0;
  cfg.seed = seed;
  cfg.algorithms = {Algorithm::kCart, Algorithm::kKnn};
  cfg.model_params.forest.n_trees = 15;
  cfg.model_params.gbm.n_trees = 8;
  cfg.model_params.gbm.depth = 2;
  return cfg;
}

// Everything a run writes to disk, as one string; wall time stays out of the
// artifacts, so identical runs must produce identical bytes here.
std::string artifact_bytes(const iebench::BenchmarkReport& report) {
  std::ostringstream out;
  iebench::write_report_csv(report, out);
  iebench::write_cv_records_csv(report, out);
  iebench::write_run_meta_csv(report.meta, out);
  return out.str();
}

bool has_warning(const std::vector<std::string>& warnings,
                 const std::string& needle) {
  for (const auto& w : warnings) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name)
      : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

constexpr const char* kRawSurvey =
    "Q1A,Q2A,country,gender,engnat,dateload,IE,junk\n"
    "1,2,US,1,1,2019,3,x\n"
    "2,3,US,2,1,2019,3,y\n"
    "4,4,GB,1,2,2019,1,z\n"
    "5,1,US,2,1,2019,0,w\n";

}  // namespace

TEST_SUITE("bench") {
  TEST_CASE("invalid grids are rejected up front") {
    SUBCASE("split ratio outside (0, 1)") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.split_ratio = 1.0;
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("fewer than two folds") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.folds = 1;
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("zero repetitions") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.reps = 0;
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("zero baseline repetitions") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.baseline_reps = 0;
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("empty algorithm list") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.algorithms.clear();
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("algorithm listed twice") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.algorithms = {Algorithm::kKnn, Algorithm::kKnn};
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("both an input file and a synthetic spec") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.input_path = "whatever.csv";
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
    SUBCASE("no input at all") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 3);
      cfg.synth.reset();
      CHECK_THROWS_AS(iebench::run_benchmark(cfg), InvalidArgument);
    }
  }

  TEST_CASE("a synthetic run fills the report and its bookkeeping") {
    auto cfg = synth_cfg({0.75, 0.25}, 2.0, 11);
    const auto outcome = iebench::run_benchmark(cfg);
    const auto& report = outcome.report;
    const auto& meta = report.meta;

    CHECK(meta.seed == 11);
    CHECK(meta.variant == "none");
    CHECK(meta.leakage_mode == "resample_before_cv");
    CHECK(meta.n_rows == 240);
    CHECK(meta.n_features == 6);
    CHECK(meta.top_k == 6);
    // 240 * 0.85 splits exactly, per class: 153 + 51 train rows.
    CHECK(meta.n_train == 204);
    CHECK(meta.n_test == 36);
    CHECK(meta.n_train + meta.n_test == meta.n_rows);
    CHECK(meta.n_train_resampled == meta.n_train);
    CHECK(meta.nir == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(report.wall_seconds > 0.0);

    CHECK_FALSE(outcome.importance.has_value());
    CHECK_FALSE(outcome.baseline.has_value());

    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
      REQUIRE(row.ok);
      REQUIRE(row.cv_records.size() == 6);
      double sum = 0.0;
      for (const auto& rec : row.cv_records) {
        CHECK(rec.rep >= 0);
        CHECK(rec.rep < 2);
        CHECK(rec.fold >= 0);
        CHECK(rec.fold < 3);
        sum += rec.accuracy;
      }
      CHECK(row.cv.accuracy_mean == doctest::Approx(sum / 6.0).epsilon(1e-12));
      // Two informative features at effect 2.0 leave no excuse for a
      // classifier that cannot beat the majority vote.
      CHECK(row.test_accuracy > meta.nir);
      CHECK(row.test_kappa > 0.0);
    }
    CHECK(report.rows[0].test_accuracy >= report.rows[1].test_accuracy);
  }

  TEST_CASE("execution modes produce byte-identical artifacts") {
    auto cfg = synth_cfg({0.7, 0.3}, 1.5, 21);
    cfg.algorithms = {Algorithm::kGbm, Algorithm::kCart, Algorithm::kKnn};
    cfg.resample.method = ResampleMethod::kSmote;
    cfg.resample.k_neighbors = 5;

    const auto serial = iebench::run_benchmark(cfg, ExecMode::kSerial);
    const auto openmp = iebench::run_benchmark(cfg, ExecMode::kOpenMP);
    CHECK(artifact_bytes(serial.report) == artifact_bytes(openmp.report));
  }

  TEST_CASE("leakage mode changes nothing when no resampling runs") {
    auto before = synth_cfg({0.7, 0.3}, 1.5, 31);
    auto within = before;
    before.leakage_mode = LeakageMode::kResampleBeforeCv;
    within.leakage_mode = LeakageMode::kResampleWithinFolds;

    const auto a = iebench::run_benchmark(before).report;
    const auto b = iebench::run_benchmark(within).report;
    CHECK(a.meta.leakage_mode != b.meta.leakage_mode);

    std::ostringstream csv_a, csv_b, rec_a, rec_b;
    iebench::write_report_csv(a, csv_a);
    iebench::write_report_csv(b, csv_b);
    iebench::write_cv_records_csv(a, rec_a);
    iebench::write_cv_records_csv(b, rec_b);
    CHECK(csv_a.str() == csv_b.str());
    CHECK(rec_a.str() == rec_b.str());
  }

  TEST_CASE("oversampling before the folds inflates CV but not the test") {
    auto cfg = synth_cfg({0.8, 0.2}, 1.5, 41);
    cfg.algorithms = {Algorithm::kKnn};
    cfg.resample.method = ResampleMethod::kSmote;
    cfg.resample.k_neighbors = 5;

    auto leaky_cfg = cfg;
    leaky_cfg.leakage_mode = LeakageMode::kResampleBeforeCv;
    auto honest_cfg = cfg;
    honest_cfg.leakage_mode = LeakageMode::kResampleWithinFolds;

    const auto leaky = iebench::run_benchmark(leaky_cfg).report;
    const auto honest = iebench::run_benchmark(honest_cfg).report;
    REQUIRE(leaky.rows.size() == 1);
    REQUIRE(honest.rows.size() == 1);
    REQUIRE(leaky.rows[0].ok);
    REQUIRE(honest.rows[0].ok);

    // The final refit never depends on the leakage mode, so the held-out
    // test score is bit-for-bit the same; only the CV estimate moves.
    CHECK(leaky.rows[0].test_accuracy == honest.rows[0].test_accuracy);
    CHECK(leaky.rows[0].cv.accuracy_mean > honest.rows[0].cv.accuracy_mean);

    CHECK(leaky.meta.n_train_resampled > leaky.meta.n_train);
    CHECK(has_warning(leaky.meta.warnings, "reads high"));
    CHECK_FALSE(has_warning(honest.meta.warnings, "reads high"));
  }

  TEST_CASE("a failing algorithm is reported without poisoning the rest") {
    auto cfg = synth_cfg({0.5, 0.5}, 1.5, 51);
    cfg.algorithms = {Algorithm::kKnn, Algorithm::kCart};
    cfg.model_params.knn.k = 500;

    const auto report = iebench::run_benchmark(cfg).report;
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].algorithm == Algorithm::kCart);
    CHECK(report.rows[0].ok);
    CHECK(report.rows[0].cv_records.size() == 6);

    CHECK(report.rows[1].algorithm == Algorithm::kKnn);
    CHECK_FALSE(report.rows[1].ok);
    CHECK_FALSE(report.rows[1].error.empty());
    CHECK(report.rows[1].cv_records.empty());
  }

  TEST_CASE("the selection pass ranks features and trims the dataset") {
    auto cfg = synth_cfg({0.5, 0.5}, 2.0, 61);
    cfg.algorithms = {Algorithm::kCart};
    cfg.top_k = 3;

    const auto outcome = iebench::run_benchmark(cfg);
    REQUIRE(outcome.baseline.has_value());
    CHECK(outcome.baseline->accuracy_mean > 0.0);
    CHECK(outcome.baseline->accuracy_mean <= 1.0);

    REQUIRE(outcome.importance.has_value());
    const auto& entries = outcome.importance->entries;
    REQUIRE(entries.size() == 6);
    for (std::size_t i = 1; i < entries.size(); ++i) {
      CHECK(entries[i - 1].raw >= entries[i].raw);
    }
    // The synthetic signal lives on the first two columns.
    const bool top_is_informative =
        entries[0].feature == "F1" || entries[0].feature == "F2";
    CHECK(top_is_informative);

    CHECK(outcome.report.meta.top_k == 3);
    CHECK(outcome.report.meta.n_features == 3);
    CHECK(outcome.report.meta.n_rows == 240);
  }

  TEST_CASE("a cached ranking replaces the selection pass") {
    TempDir dir("iebench_bench_cache");
    const std::string path = (dir.path / "importance.csv").string();
    const auto ranking = iebench::make_ranking(
        {"F1", "F2", "F3", "F4", "F5", "F6"}, {0.0, 0.0, 0.0, 3.0, 2.0, 1.0},
        iebench::ImportanceSource::kRfGini);
    std::ostringstream out;
    iebench::write_importance_csv(ranking, out);
    iebench::write_text_file(path, out.str());

    auto cfg = synth_cfg({0.5, 0.5}, 1.5, 71);
    cfg.algorithms = {Algorithm::kCart};
    cfg.top_k = 3;
    cfg.importance_csv = path;

    const auto outcome = iebench::run_benchmark(cfg);
    CHECK_FALSE(outcome.baseline.has_value());
    REQUIRE(outcome.importance.has_value());
    REQUIRE_FALSE(outcome.importance->entries.empty());
    CHECK(outcome.importance->entries[0].feature == "F4");
    CHECK(outcome.report.meta.n_features == 3);
  }

  TEST_CASE("input files are sniffed by their header") {
    TempDir dir("iebench_bench_inputs");

    SUBCASE("canonical dataset layout is read back exactly") {
      const auto ds = testutil::matrix_data(
          {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, {0, 1, 0}, 2, 2);
      const std::string path = (dir.path / "canon.csv").string();
      std::ostringstream out;
      iebench::write_dataset_csv(ds, out);
      iebench::write_text_file(path, out.str());

      BenchConfig cfg;
      cfg.input_path = path;
      std::vector<std::string> warnings;
      const auto loaded = iebench::load_bench_input(cfg, &warnings);
      CHECK(loaded.n_rows() == 3);
      CHECK(loaded.n_features() == 2);
      CHECK(loaded.feature_names() == ds.feature_names());
      CHECK(loaded.value(1, 1) == 4.0);
      CHECK(warnings.empty());
    }

    SUBCASE("raw survey exports run through preprocessing") {
      const std::string path = (dir.path / "raw.csv").string();
      iebench::write_text_file(path, kRawSurvey);

      BenchConfig cfg;
      cfg.input_path = path;
      std::vector<std::string> warnings;
      const auto loaded = iebench::load_bench_input(cfg, &warnings);
      // The fourth row has target 0 and is dropped as missing.
      CHECK(loaded.n_rows() == 3);
      CHECK(loaded.n_features() == 5);
      CHECK(loaded.class_names() == std::vector<std::string>{"3", "1"});
      CHECK(has_warning(warnings, "unrecognized column dropped: junk"));
    }

    SUBCASE("a synthetic spec needs no file") {
      auto cfg = synth_cfg({0.5, 0.5}, 1.2, 81);
      const auto loaded = iebench::load_bench_input(cfg, nullptr);
      CHECK(loaded.n_rows() == 240);
      CHECK(loaded.n_features() == 6);
    }
  }
}
