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

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iebench/bench.hpp"
#include "iebench/config.hpp"
#include "iebench/csv.hpp"
#include "iebench/errors.hpp"

namespace {

struct CommonFlags {
  std::string input;
  std::string config_path;
  std::string importance_csv;
  std::string out;
  std::string resample = "none";
  std::string models;
  std::vector<std::string> formats;
  std::uint64_t seed = 0;
  double split = 0.85;
  int folds = 10;
  int reps = 10;
  int baseline_reps = 2;
  std::size_t top_k = 10;
  bool leak_free = false;
  int threads = 0;
  bool serial = false;
};

struct CommonOptions {
  CLI::Option* input = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* split = nullptr;
  CLI::Option* folds = nullptr;
  CLI::Option* reps = nullptr;
  CLI::Option* baseline_reps = nullptr;
  CLI::Option* top_k = nullptr;
  CLI::Option* resample = nullptr;
  CLI::Option* leak_free = nullptr;
  CLI::Option* models = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* formats = nullptr;
  CLI::Option* importance = nullptr;
};

CommonOptions add_bench_flags(CLI::App* cmd, CommonFlags& f) {
  CommonOptions opts;
  opts.input = cmd->add_option("--input", f.input, "survey CSV (raw export or dataset layout)");
  cmd->add_option("--config", f.config_path, "key = value config file; flags override it");
  opts.seed = cmd->add_option("--seed", f.seed, "master seed");
  opts.split = cmd->add_option("--split", f.split, "training fraction of the stratified split");
  opts.folds = cmd->add_option("--folds", f.folds, "cross-validation folds");
  opts.reps = cmd->add_option("--reps", f.reps, "cross-validation repetitions");
  opts.baseline_reps = cmd->add_option("--baseline-reps", f.baseline_reps,
                                       "repetitions of the feature-selection pass");
  opts.top_k = cmd->add_option("--top-k", f.top_k,
                               "features kept after selection (0 keeps all)");
  opts.resample = cmd->add_option("--resample", f.resample, "none|smote|adasyn");
  opts.leak_free = cmd->add_flag("--leak-free", f.leak_free,
                                 "oversample inside each fold instead of before CV");
  opts.models = cmd->add_option("--models", f.models,
                                "comma list from gbm,rf,knn,nnet,svm");
  opts.out = cmd->add_option("--out", f.out, "output directory");
  opts.formats = cmd->add_option("--format", f.formats,
                                 "report formats (md|csv|svg), repeatable");
  opts.importance = cmd->add_option("--importance", f.importance_csv,
                                    "reuse a saved importance ranking");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--serial", f.serial, "run the reference serial path");
  return opts;
}

iebench::BenchConfig build_config(const CommonFlags& f, const CommonOptions& o) {
  iebench::BenchConfig cfg;
  if (!f.config_path.empty()) iebench::apply_config_file(f.config_path, cfg);
  if (o.input->count() > 0) cfg.input_path = f.input;
  if (o.seed->count() > 0) cfg.seed = f.seed;
  if (o.split->count() > 0) cfg.split_ratio = f.split;
  if (o.folds->count() > 0) cfg.folds = f.folds;
  if (o.reps->count() > 0) cfg.reps = f.reps;
  if (o.baseline_reps->count() > 0) cfg.baseline_reps = f.baseline_reps;
  if (o.top_k->count() > 0) cfg.top_k = f.top_k;
  if (o.importance->count() > 0) cfg.importance_csv = f.importance_csv;
  if (o.resample->count() > 0)
    cfg.resample.method = iebench::resample_method_from_string(f.resample);
  if (o.leak_free->count() > 0 && f.leak_free)
    cfg.leakage_mode = iebench::LeakageMode::kResampleWithinFolds;
  if (o.models->count() > 0) {
    cfg.algorithms.clear();
    std::stringstream ss(f.models);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty())
        cfg.algorithms.push_back(iebench::algorithm_from_string(name));
    }
  }
  if (o.out->count() > 0) cfg.out_dir = f.out;
  if (o.formats->count() > 0) {
    cfg.formats.clear();
    for (const auto& chunk : f.formats) {
      std::stringstream ss(chunk);
      std::string name;
      while (std::getline(ss, name, ',')) {
        if (!name.empty())
          cfg.formats.push_back(iebench::report_format_from_string(name));
      }
    }
  }
  return cfg;
}

iebench::ExecMode pick_mode(const CommonFlags& f) {
  iebench::set_threads(f.threads);
  return f.serial ? iebench::ExecMode::kSerial : iebench::ExecMode::kOpenMP;
}

void write_importance_files(const iebench::ImportanceRanking& ranking,
                            const std::string& dir,
                            std::vector<std::string>& written) {
  std::filesystem::create_directories(dir);
  const auto csv_path = (std::filesystem::path(dir) / "importance.csv").string();
  const auto svg_path = (std::filesystem::path(dir) / "importance.svg").string();
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw iebench::IoError("cannot write " + csv_path);
    iebench::write_importance_csv(ranking, out);
  }
  {
    std::ofstream out(svg_path, std::ios::binary);
    if (!out) throw iebench::IoError("cannot write " + svg_path);
    iebench::write_importance_svg(ranking, out);
  }
  written.push_back(csv_path);
  written.push_back(svg_path);
}

int cmd_ingest(const std::string& input, const std::string& out_csv) {
  const auto raw = iebench::parse_raw_file(input);
  iebench::PreprocessResult pre;
  if (!raw.header.empty() && raw.header.back() == "label") {
    // Already in the canonical dataset layout; nothing to preprocess.
    pre.dataset = iebench::read_dataset_csv_file(input);
    pre.rows_in = pre.dataset.n_rows();
  } else {
    pre = iebench::preprocess(raw);
  }
  const auto& ds = pre.dataset;
  const auto dist = iebench::class_distribution(ds);

  std::printf("rows in raw table:  %zu\n", pre.rows_in);
  std::printf("rows removed:       %zu (missing target)\n", pre.rows_removed);
  std::printf("rows kept:          %zu\n", ds.n_rows());
  std::printf("features:           %zu (dropped %zu technical columns)\n",
              ds.n_features(), pre.dropped_columns.size());
  std::printf("classes:\n");
  for (std::size_t s = 0; s < ds.n_classes(); ++s) {
    std::printf("  %-8s %6lld  (%.2f%%)\n", ds.class_names()[s].c_str(),
                static_cast<long long>(dist.counts[s]),
                100.0 * dist.proportions[s]);
  }
  std::printf("no-information rate: %.2f%%\n",
              100.0 * iebench::no_information_rate(ds));
  for (const auto& w : pre.warnings) std::printf("warning: %s\n", w.c_str());
  if (!out_csv.empty()) {
    iebench::write_dataset_csv(ds, out_csv);
    std::printf("wrote %s\n", out_csv.c_str());
  }
  return 0;
}

int cmd_synth(const iebench::SynthSpec& spec, const std::string& out_csv) {
  const auto ds = iebench::generate_synthetic(spec);
  iebench::write_dataset_csv(ds, out_csv);
  std::printf("wrote %s (%zu rows, %zu features, %zu classes)\n",
              out_csv.c_str(), ds.n_rows(), ds.n_features(), ds.n_classes());
  return 0;
}

int cmd_baseline(const CommonFlags& f, const CommonOptions& o) {
  auto cfg = build_config(f, o);
  const auto mode = pick_mode(f);
  std::vector<std::string> warnings;
  const auto ds = iebench::load_bench_input(cfg, &warnings);
  const auto result = iebench::run_baseline(ds, cfg, mode);

  std::printf("dataset: %zu rows, %zu features\n", ds.n_rows(), ds.n_features());
  std::printf("cv accuracy: %.2f%% (sd %.2f) over %d x %d cells\n",
              100.0 * result.summary.accuracy_mean,
              100.0 * result.summary.accuracy_sd, cfg.folds, cfg.baseline_reps);
  std::printf("cv kappa:    %.2f%% (sd %.2f)\n",
              100.0 * result.summary.kappa_mean,
              100.0 * result.summary.kappa_sd);
  std::printf("top features:\n");
  const std::size_t shown = std::min<std::size_t>(
      cfg.top_k == 0 ? 10 : cfg.top_k, result.ranking.entries.size());
  for (std::size_t i = 0; i < shown; ++i) {
    const auto& e = result.ranking.entries[i];
    std::printf("  %2zu. %-10s %8.3f\n", i + 1, e.feature.c_str(), e.normalized);
  }
  std::vector<std::string> written;
  write_importance_files(result.ranking, cfg.out_dir, written);
  for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
  for (const auto& w : warnings) std::printf("warning: %s\n", w.c_str());
  return 0;
}

int cmd_bench(const CommonFlags& f, const CommonOptions& o) {
  auto cfg = build_config(f, o);
  const auto mode = pick_mode(f);
  const auto outcome = iebench::run_benchmark(cfg, mode);

  std::ostringstream md;
  iebench::write_report_md(outcome.report, md);
  std::fputs(md.str().c_str(), stdout);

  std::vector<std::string> written =
      iebench::emit_report(outcome.report, cfg.out_dir, cfg.formats);
  if (outcome.importance) {
    write_importance_files(*outcome.importance, cfg.out_dir, written);
  }
  if (outcome.baseline) {
    std::printf("\nfull-feature baseline cv accuracy: %.2f%%\n",
                100.0 * outcome.baseline->accuracy_mean);
  }
  std::printf("\nwall clock: %.1f s\n", outcome.report.wall_seconds);
  for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
  return 0;
}

int cmd_report(const std::string& dir, const std::string& out,
               const std::vector<std::string>& format_chunks) {
  const auto report = iebench::read_report_dir(dir);
  std::vector<iebench::ReportFormat> formats;
  for (const auto& chunk : format_chunks) {
    std::stringstream ss(chunk);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (!name.empty()) formats.push_back(iebench::report_format_from_string(name));
    }
  }
  if (formats.empty()) formats.push_back(iebench::ReportFormat::kMarkdown);
  const auto written =
      iebench::emit_report(report, out.empty() ? dir : out, formats);
  for (const auto& path : written) std::printf("wrote %s\n", path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"survey classification benchmark toolkit"};
  app.require_subcommand(1);

  auto* ingest = app.add_subcommand("ingest", "validate and summarize a raw survey CSV");
  std::string ingest_input, ingest_out;
  ingest->add_option("--input", ingest_input, "raw survey CSV")->required();
  ingest->add_option("--out", ingest_out, "write the preprocessed dataset CSV here");

  auto* synth = app.add_subcommand("synth", "write a synthetic dataset CSV");
  iebench::SynthSpec spec;
  spec.n = 500;
  spec.p = 10;
  spec.c = 2;
  std::string synth_out = "synth.csv";
  std::vector<double> proportions;
  std::vector<std::size_t> informative;
  synth->add_option("--rows", spec.n, "row count");
  synth->add_option("--features", spec.p, "feature count");
  synth->add_option("--classes", spec.c, "class count");
  synth->add_option("--proportions", proportions, "class proportions, e.g. 0.6 0.4");
  synth->add_option("--informative", informative, "indices of informative features");
  synth->add_option("--effect-size", spec.effect_size,
                    "class mean shift on informative features");
  synth->add_option("--seed", spec.seed, "generator seed");
  synth->add_option("--out", synth_out, "output CSV path");

  auto* baseline = app.add_subcommand(
      "baseline", "full-feature importance ranking and selection baseline");
  CommonFlags baseline_flags;
  const auto baseline_opts = add_bench_flags(baseline, baseline_flags);

  auto* bench = app.add_subcommand("bench", "run the benchmark grid");
  CommonFlags bench_flags;
  const auto bench_opts = add_bench_flags(bench, bench_flags);

  auto* report = app.add_subcommand("report", "re-render saved benchmark results");
  std::string report_dir, report_out;
  std::vector<std::string> report_formats;
  report->add_option("--dir", report_dir, "directory holding report.csv etc.")
      ->required();
  report->add_option("--out", report_out, "output directory (defaults to --dir)");
  report->add_option("--format", report_formats, "md|csv|svg, repeatable");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_out);
    if (*synth) {
      spec.class_proportions =
          proportions.empty()
              ? std::vector<double>(spec.c, 1.0 / static_cast<double>(spec.c))
              : proportions;
      if (!informative.empty()) spec.informative_features = informative;
      return cmd_synth(spec, synth_out);
    }
    if (*baseline) return cmd_baseline(baseline_flags, baseline_opts);
    if (*bench) return cmd_bench(bench_flags, bench_opts);
    if (*report) return cmd_report(report_dir, report_out, report_formats);
  } catch (const iebench::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
