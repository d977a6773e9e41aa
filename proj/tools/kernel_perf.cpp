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

// Times every parallel kernel against its serial reference and verifies the
// two produce identical bytes, which is the contract the test suite relies
// on: parallelism may only change wall clock, never results.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iebench/csv.hpp"
#include "iebench/forest.hpp"
#include "iebench/gbm.hpp"
#include "iebench/importance.hpp"
#include "iebench/ingest.hpp"
#include "iebench/neighbors.hpp"
#include "iebench/nnet.hpp"
#include "iebench/svm.hpp"

namespace {

using iebench::ExecMode;

double seconds(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

struct Row {
  std::string kernel;
  double serial = 0.0;
  double parallel = 0.0;
  bool identical = false;
};

std::string save_to_string(const iebench::Model& model) {
  std::ostringstream out;
  model.save(out);
  return out.str();
}

iebench::Dataset make_data(std::size_t n, std::size_t p, std::size_t c,
                           std::uint64_t seed) {
  iebench::SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.c = c;
  spec.class_proportions.assign(c, 1.0 / static_cast<double>(c));
  spec.informative_features = {0, 1, 2};
  spec.effect_size = 1.2;
  spec.seed = seed;
  return iebench::generate_synthetic(spec);
}

Row bench_rf(std::size_t n, int repeat) {
  const auto ds = make_data(n, 10, 3, 11);
  iebench::ForestParams params;
  params.n_trees = 120;
  Row row{"rf_train (120 trees)", 0, 0, false};
  std::string a, b;
  for (int r = 0; r < repeat; ++r) {
    row.serial += seconds([&] {
      a = save_to_string(*iebench::train_rf(ds, params, 7, ExecMode::kSerial));
    });
    row.parallel += seconds([&] {
      b = save_to_string(*iebench::train_rf(ds, params, 7, ExecMode::kOpenMP));
    });
  }
  row.identical = a == b;
  return row;
}

Row bench_knn(std::size_t n, int repeat) {
  const auto ds = make_data(n * 2, 10, 3, 13);
  const iebench::KnnIndex index(ds.matrix(), ds.n_features());
  Row row{"knn_query_batch (k=7)", 0, 0, false};
  std::vector<std::vector<iebench::Neighbor>> a, b;
  for (int r = 0; r < repeat; ++r) {
    row.serial += seconds([&] {
      a = index.query_batch(ds.matrix(), ds.n_rows(), 7, ExecMode::kSerial);
    });
    row.parallel += seconds([&] {
      b = index.query_batch(ds.matrix(), ds.n_rows(), 7, ExecMode::kOpenMP);
    });
  }
  row.identical = a.size() == b.size();
  for (std::size_t i = 0; row.identical && i < a.size(); ++i) {
    row.identical = a[i].size() == b[i].size();
    for (std::size_t j = 0; row.identical && j < a[i].size(); ++j) {
      row.identical = a[i][j].index == b[i][j].index &&
                      a[i][j].squared_distance == b[i][j].squared_distance;
    }
  }
  return row;
}

Row bench_svm(std::size_t n, int repeat) {
  const auto ds = make_data(n, 8, 3, 17);
  iebench::SvmParams params;
  params.max_passes = 200;
  Row row{"svm_ovo_pairs", 0, 0, false};
  std::string a, b;
  for (int r = 0; r < repeat; ++r) {
    row.serial += seconds([&] {
      a = save_to_string(*iebench::train_svm_rbf(ds, params, 3, ExecMode::kSerial));
    });
    row.parallel += seconds([&] {
      b = save_to_string(*iebench::train_svm_rbf(ds, params, 3, ExecMode::kOpenMP));
    });
  }
  row.identical = a == b;
  return row;
}

Row bench_cv_grid(std::size_t n, int repeat) {
  const auto ds = make_data(n, 10, 3, 19);
  iebench::ModelConfig base;
  base.forest.n_trees = 40;
  Row row{"cv_grid (rf, 5x2 cells)", 0, 0, false};
  std::string a, b;
  const auto run = [&](ExecMode mode) {
    const auto res = iebench::cv_importance_full(ds, iebench::Algorithm::kRf, 5,
                                                 2, 23, base, mode);
    std::ostringstream out;
    iebench::write_importance_csv(res.ranking, out);
    for (const auto& rec : res.records) {
      out << rec.rep << ' ' << rec.fold << ' '
          << iebench::format_double(rec.accuracy) << ' '
          << iebench::format_double(rec.kappa) << '\n';
    }
    return out.str();
  };
  for (int r = 0; r < repeat; ++r) {
    row.serial += seconds([&] { a = run(ExecMode::kSerial); });
    row.parallel += seconds([&] { b = run(ExecMode::kOpenMP); });
  }
  row.identical = a == b;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP kernel comparison"};
  std::size_t n = 1500;
  int repeat = 1;
  int threads = 0;
  app.add_option("--rows", n, "base row count for generated datasets");
  app.add_option("--repeat", repeat, "timing repetitions to accumulate");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  CLI11_PARSE(app, argc, argv);

  iebench::set_threads(threads);
  std::printf("threads: %d\n\n", iebench::max_threads());

  std::vector<Row> rows;
  rows.push_back(bench_knn(n, repeat));
  rows.push_back(bench_rf(n, repeat));
  rows.push_back(bench_svm(n / 2, repeat));
  rows.push_back(bench_cv_grid(n / 2, repeat));

  std::printf("%-24s %10s %10s %8s %10s\n", "kernel", "serial s", "openmp s",
              "speedup", "identical");
  bool all_identical = true;
  for (const auto& row : rows) {
    const double speedup = row.parallel > 0.0 ? row.serial / row.parallel : 0.0;
    std::printf("%-24s %10.3f %10.3f %7.2fx %10s\n", row.kernel.c_str(),
                row.serial, row.parallel, speedup,
                row.identical ? "yes" : "NO");
    all_identical = all_identical && row.identical;
  }
  if (!all_identical) {
    std::printf("\nmismatch: parallel output diverged from the serial reference\n");
    return 1;
  }
  return 0;
}
