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

#include "iebench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <set>
#include <sstream>
#include <utility>

#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/rng.hpp"
#include "iebench/split.hpp"

namespace iebench {

std::string to_string(LeakageMode mode) {
  switch (mode) {
    case LeakageMode::kResampleBeforeCv: return "resample_before_cv";
    case LeakageMode::kResampleWithinFolds: return "resample_within_folds";
  }
  throw InvalidArgument("unknown leakage mode");
}

LeakageMode leakage_mode_from_string(const std::string& name) {
  if (name == "resample_before_cv") return LeakageMode::kResampleBeforeCv;
  if (name == "resample_within_folds" || name == "leak_free")
    return LeakageMode::kResampleWithinFolds;
  throw InvalidArgument("unknown leakage mode: " + name);
}

namespace {

void validate(const BenchConfig& cfg) {
  if (!(cfg.split_ratio > 0.0 && cfg.split_ratio < 1.0))
    throw InvalidArgument("split ratio must lie in (0, 1)");
  if (cfg.folds < 2) throw InvalidArgument("cross-validation needs k >= 2");
  if (cfg.reps < 1 || cfg.baseline_reps < 1)
    throw InvalidArgument("repetition counts must be positive");
  if (cfg.algorithms.empty()) throw InvalidArgument("no algorithms selected");
  std::set<Algorithm> seen;
  for (const auto a : cfg.algorithms) {
    if (!seen.insert(a).second)
      throw InvalidArgument("algorithm listed twice: " + to_string(a));
  }
  if (!cfg.input_path.empty() && cfg.synth)
    throw InvalidArgument("configure either an input file or a synthetic spec, not both");
  if (cfg.input_path.empty() && !cfg.synth)
    throw InvalidArgument("no input configured");
}

}  // namespace

Dataset load_bench_input(const BenchConfig& cfg,
                         std::vector<std::string>* warnings) {
  if (cfg.synth) return generate_synthetic(*cfg.synth);
  if (cfg.input_path.empty()) throw InvalidArgument("no input configured");

  const std::string text = read_text_file(cfg.input_path);
  RawSurveyTable raw = parse_raw(text);
  if (!raw.header.empty() && raw.header.back() == "label") {
    std::istringstream in(text);
    return read_dataset_csv(in);
  }
  PreprocessResult pre = preprocess(raw);
  if (warnings) {
    warnings->insert(warnings->end(), pre.warnings.begin(), pre.warnings.end());
  }
  return std::move(pre.dataset);
}

BaselineResult run_baseline(const Dataset& full, const BenchConfig& cfg,
                            ExecMode mode) {
  CvImportanceResult res = cv_importance_full(
      full, Algorithm::kRf, cfg.folds, cfg.baseline_reps,
      derive_seed(cfg.seed, {hash_tag("baseline")}), cfg.model_params, mode);
  return BaselineResult{std::move(res.ranking), res.summary,
                        std::move(res.records)};
}

BenchOutcome run_benchmark(const BenchConfig& cfg, ExecMode mode) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();

  BenchOutcome outcome;
  RunMeta meta;
  meta.seed = cfg.seed;
  meta.variant = to_string(cfg.resample.method);
  meta.leakage_mode = to_string(cfg.leakage_mode);
  meta.split_ratio = cfg.split_ratio;
  meta.folds = cfg.folds;
  meta.reps = cfg.reps;

  const Dataset full = load_bench_input(cfg, &meta.warnings);
  meta.n_rows = full.n_rows();
  meta.nir = no_information_rate(full);

  Dataset ds;
  if (cfg.top_k == 0 || cfg.top_k >= full.n_features()) {
    ds = full;
  } else {
    ImportanceRanking ranking;
    if (!cfg.importance_csv.empty()) {
      ranking = read_importance_csv_file(cfg.importance_csv);
    } else {
      BaselineResult base = run_baseline(full, cfg, mode);
      outcome.baseline = base.summary;
      ranking = std::move(base.ranking);
    }
    ds = select_features(full, select_top_k(ranking, cfg.top_k));
    outcome.importance = std::move(ranking);
  }
  meta.top_k = ds.n_features();
  meta.n_features = ds.n_features();

  const SplitPlan split = stratified_split(
      ds, cfg.split_ratio, derive_seed(cfg.seed, {hash_tag("split")}));
  const Dataset train = subset_rows(ds, split.train_indices);
  const Dataset test = subset_rows(ds, split.test_indices);
  meta.n_train = train.n_rows();
  meta.n_test = test.n_rows();

  ResampleConfig full_rs = cfg.resample;
  full_rs.seed = derive_seed(cfg.seed, {hash_tag("resample_full")});
  ResampleOutcome resampled = resample(train, full_rs);
  meta.n_train_resampled = resampled.dataset.n_rows();

  const bool resampling = cfg.resample.method != ResampleMethod::kNone;
  const bool before_cv = cfg.leakage_mode == LeakageMode::kResampleBeforeCv;
  if (before_cv && resampling) {
    meta.warnings.push_back(
        "resampling ran before fold assignment, so synthetic rows share "
        "parents across folds and cross-validation accuracy reads high; use "
        "leakage mode resample_within_folds for an unbiased estimate");
  }

  const Dataset& cv_input = before_cv ? resampled.dataset : train;
  const FoldPlan folds = repeated_stratified_kfold(
      cv_input, cfg.folds, cfg.reps, derive_seed(cfg.seed, {hash_tag("cv")}));
  meta.warnings.insert(meta.warnings.end(), folds.warnings.begin(),
                       folds.warnings.end());

  const std::size_t k = static_cast<std::size_t>(cfg.folds);
  const std::size_t cells = k * static_cast<std::size_t>(cfg.reps);

  std::vector<Dataset> cell_train(cells);
  std::vector<Dataset> cell_held(cells);
  std::vector<std::exception_ptr> prep_failures(cells);
  parallel_for(cells, mode, [&](std::size_t i) {
    try {
      const int rep = static_cast<int>(i / k);
      const int fold = static_cast<int>(i % k);
      const auto train_rows = folds.training_rows(rep, fold);
      const auto held_rows = folds.held_out_rows(rep, fold);
      if (!before_cv && resampling) {
        const Dataset fold_train = subset_rows(train, train_rows);
        ResampleConfig cell_rs = cfg.resample;
        cell_rs.seed = derive_seed(
            cfg.seed, {hash_tag("cell_rs"), static_cast<std::uint64_t>(rep),
                       static_cast<std::uint64_t>(fold)});
        ResampleOutcome cell_out = resample(fold_train, cell_rs);
        cell_train[i] = std::move(cell_out.dataset);
        cell_held[i] = subset_rows(train, held_rows);
      } else {
        cell_train[i] = subset_rows(cv_input, train_rows);
        cell_held[i] = subset_rows(cv_input, held_rows);
      }
    } catch (...) {
      prep_failures[i] = std::current_exception();
    }
  });
  for (const auto& failure : prep_failures) {
    if (failure) std::rethrow_exception(failure);
  }

  const std::size_t n_algos = cfg.algorithms.size();
  std::vector<EvalRecord> grid_records(n_algos * cells);
  std::vector<std::string> grid_errors(n_algos * cells);
  parallel_for(n_algos * cells, mode, [&](std::size_t unit) {
    const std::size_t a = unit / cells;
    const std::size_t i = unit % cells;
    const int rep = static_cast<int>(i / k);
    const int fold = static_cast<int>(i % k);
    try {
      ModelConfig mc = cfg.model_params;
      mc.algorithm = cfg.algorithms[a];
      mc.seed = derive_seed(
          cfg.seed, {hash_tag("model"), hash_tag(to_string(mc.algorithm)),
                     static_cast<std::uint64_t>(rep),
                     static_cast<std::uint64_t>(fold)});
      const auto model = train_model(cell_train[i], mc, ExecMode::kSerial);
      const auto predicted = model->predict(cell_held[i]);
      const auto cm = ConfusionMatrix::from_predictions(
          cell_held[i].labels(), predicted, ds.n_classes());
      grid_records[unit] = EvalRecord{rep, fold, accuracy(cm), kappa(cm)};
    } catch (const std::exception& e) {
      grid_errors[unit] = e.what();
    } catch (...) {
      grid_errors[unit] = "unknown failure";
    }
  });

  BenchmarkReport report;
  report.meta = std::move(meta);
  for (std::size_t a = 0; a < n_algos; ++a) {
    AlgoResult row;
    row.algorithm = cfg.algorithms[a];
    for (std::size_t i = 0; i < cells && row.ok; ++i) {
      const auto& err = grid_errors[a * cells + i];
      if (!err.empty()) {
        row.ok = false;
        row.error = err;
      }
    }
    if (row.ok) {
      row.cv_records.assign(grid_records.begin() + static_cast<std::ptrdiff_t>(a * cells),
                            grid_records.begin() + static_cast<std::ptrdiff_t>((a + 1) * cells));
      row.cv = aggregate(row.cv_records);
      try {
        ModelConfig mc = cfg.model_params;
        mc.algorithm = row.algorithm;
        mc.seed = derive_seed(cfg.seed, {hash_tag("final"),
                                         hash_tag(to_string(row.algorithm))});
        const auto model = train_model(resampled.dataset, mc, mode);
        const auto predicted = model->predict(test, mode);
        const auto cm = ConfusionMatrix::from_predictions(
            test.labels(), predicted, ds.n_classes());
        row.test_accuracy = accuracy(cm);
        row.test_kappa = kappa(cm);
        for (const auto& w : model->warnings()) {
          report.meta.warnings.push_back(to_string(row.algorithm) + ": " + w);
        }
      } catch (const std::exception& e) {
        row.ok = false;
        row.error = e.what();
        row.cv_records.clear();
        row.cv = CvSummary{};
      }
    }
    report.rows.push_back(std::move(row));
  }
  sort_report_rows(report);

  const auto t1 = std::chrono::steady_clock::now();
  report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace iebench
