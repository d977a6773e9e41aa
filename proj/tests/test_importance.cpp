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

#include <algorithm>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/errors.hpp"
#include "iebench/importance.hpp"

using iebench::ImportanceRanking;
using iebench::ImportanceSource;
using iebench::make_ranking;

namespace {

iebench::ModelConfig quick_models() {
  iebench::ModelConfig cfg;
  cfg.forest.n_trees = 15;
  cfg.gbm.n_trees = 10;
  return cfg;
}

std::size_t rank_of(const ImportanceRanking& ranking, const std::string& name) {
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    if (ranking.entries[i].feature == name) return i;
  }
  return ranking.entries.size();
}

}  // namespace

TEST_SUITE("importance") {
  TEST_CASE("make_ranking sorts, breaks ties by name and rescales to 100") {
    auto ranking = make_ranking({"b", "a", "c", "d"}, {2.0, 8.0, 2.0, 0.5},
                                ImportanceSource::kRfGini);
    REQUIRE(ranking.entries.size() == 4);
    CHECK(ranking.entries[0].feature == "a");
    CHECK(ranking.entries[1].feature == "b");
    CHECK(ranking.entries[2].feature == "c");
    CHECK(ranking.entries[3].feature == "d");
    CHECK(ranking.entries[0].normalized == doctest::Approx(100.0));
    CHECK(ranking.entries[1].normalized == doctest::Approx(25.0));
    CHECK(ranking.entries[3].normalized == doctest::Approx(6.25));
    CHECK(ranking.entries[0].raw == 8.0);

    auto flat = make_ranking({"a", "b"}, {0.0, 0.0}, ImportanceSource::kRfGini);
    CHECK(flat.entries[0].normalized == 0.0);
    CHECK(flat.entries[1].normalized == 0.0);

    CHECK_THROWS_AS(make_ranking({"a"}, {1.0, 2.0}, ImportanceSource::kRfGini),
                    iebench::InvalidArgument);
  }

  TEST_CASE("source names round-trip") {
    for (auto src : {ImportanceSource::kRfGini, ImportanceSource::kGbmInfluence,
                     ImportanceSource::kPermutation}) {
      CHECK(iebench::importance_source_from_string(iebench::to_string(src)) == src);
    }
    CHECK_THROWS_AS(iebench::importance_source_from_string("shap"),
                    iebench::InvalidArgument);
  }

  TEST_CASE("cv importance ranks planted features on top") {
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      auto ds = testutil::grid_data(220, 8, 2, 100 + seed, 1.6);
      auto result = iebench::cv_importance_full(ds, iebench::Algorithm::kRf, 5, 1,
                                                seed, quick_models());
      const auto top = iebench::select_top_k(result.ranking, 3);
      const bool planted =
          std::count_if(top.begin(), top.end(), [](const std::string& name) {
            return name == "F1" || name == "F2" || name == "F3";
          }) == 3;
      if (planted) ++hits;
    }
    CHECK(hits >= 9);
  }

  TEST_CASE("cv importance carries one record per cell and the cv mean") {
    auto ds = testutil::grid_data(120, 5, 2, 101);
    auto result = iebench::cv_importance_full(ds, iebench::Algorithm::kGbm, 4, 3,
                                              5, quick_models());
    CHECK(result.ranking.source == ImportanceSource::kGbmInfluence);
    REQUIRE(result.records.size() == 12);
    for (const auto& record : result.records) {
      CHECK(record.rep < 3);
      CHECK(record.fold < 4);
      CHECK(record.accuracy >= 0.0);
      CHECK(record.accuracy <= 1.0);
    }
    CHECK(result.summary.n_records == 12);
    double mean = 0.0;
    for (const auto& record : result.records) mean += record.accuracy;
    mean /= 12.0;
    CHECK(result.summary.accuracy_mean == doctest::Approx(mean));

    CHECK_THROWS_AS(iebench::cv_importance_full(ds, iebench::Algorithm::kKnn, 4, 1,
                                                5, quick_models()),
                    iebench::InvalidArgument);
  }

  TEST_CASE("cv importance is deterministic across execution modes") {
    auto ds = testutil::grid_data(100, 5, 2, 102);
    auto serial = iebench::cv_importance_full(ds, iebench::Algorithm::kRf, 4, 2, 9,
                                              quick_models(), iebench::ExecMode::kSerial);
    auto parallel = iebench::cv_importance_full(ds, iebench::Algorithm::kRf, 4, 2, 9,
                                                quick_models(), iebench::ExecMode::kOpenMP);
    REQUIRE(serial.ranking.entries.size() == parallel.ranking.entries.size());
    for (std::size_t i = 0; i < serial.ranking.entries.size(); ++i) {
      CHECK(serial.ranking.entries[i].feature == parallel.ranking.entries[i].feature);
      CHECK(serial.ranking.entries[i].raw == parallel.ranking.entries[i].raw);
    }
  }

  TEST_CASE("permutation importance zeroes constant features") {
    // F5 is constant: shuffling it cannot change any prediction.
    auto ds = testutil::grid_data(150, 5, 2, 103, 1.5);
    std::vector<double> matrix = ds.matrix();
    for (std::size_t i = 0; i < ds.n_rows(); ++i) matrix[i * 5 + 4] = 3.0;
    auto fixed = testutil::matrix_data(matrix, ds.labels(), 5, 2);

    iebench::ModelConfig cfg = quick_models();
    cfg.algorithm = iebench::Algorithm::kRf;
    cfg.seed = 3;
    auto model = iebench::train_model(fixed, cfg);
    auto ranking = iebench::permutation_importance(*model, fixed, 4, 7);
    REQUIRE(ranking.entries.size() == 5);
    CHECK(ranking.source == ImportanceSource::kPermutation);
    // Noise columns can come out slightly negative, so the constant column is
    // only guaranteed to trail the informative ones.
    CHECK(rank_of(ranking, "x4") >= 3);
    const auto it = std::find_if(
        ranking.entries.begin(), ranking.entries.end(),
        [](const iebench::ImportanceEntry& e) { return e.feature == "x4"; });
    CHECK(it->raw == 0.0);

    CHECK_THROWS_AS(iebench::permutation_importance(*model, fixed, 0, 7),
                    iebench::InvalidShuffles);
  }

  TEST_CASE("permutation importance is deterministic and mode-independent") {
    auto ds = testutil::grid_data(90, 4, 2, 104, 1.5);
    iebench::ModelConfig cfg = quick_models();
    cfg.algorithm = iebench::Algorithm::kGbm;
    auto model = iebench::train_model(ds, cfg);
    auto a = iebench::permutation_importance(*model, ds, 3, 11,
                                             iebench::ExecMode::kSerial);
    auto b = iebench::permutation_importance(*model, ds, 3, 11,
                                             iebench::ExecMode::kOpenMP);
    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      CHECK(a.entries[i].feature == b.entries[i].feature);
      CHECK(a.entries[i].raw == b.entries[i].raw);
    }
  }

  TEST_CASE("select_top_k returns a prefix and checks bounds") {
    auto ranking = make_ranking({"a", "b", "c"}, {3.0, 2.0, 1.0},
                                ImportanceSource::kRfGini);
    CHECK(iebench::select_top_k(ranking, 2) == std::vector<std::string>{"a", "b"});
    CHECK(iebench::select_top_k(ranking, 3).size() == 3);
    CHECK_THROWS_AS(iebench::select_top_k(ranking, 4), iebench::KTooLarge);
  }

  TEST_CASE("ranking comparison counts overlap and correlates ranks") {
    auto a = make_ranking({"a", "b", "c", "d"}, {4, 3, 2, 1},
                          ImportanceSource::kRfGini);
    auto same = make_ranking({"a", "b", "c", "d"}, {8, 6, 4, 2},
                             ImportanceSource::kGbmInfluence);
    auto comparison = iebench::compare_rankings(a, same, 2);
    CHECK(comparison.top_overlap == 2);
    CHECK(comparison.spearman == doctest::Approx(1.0));

    auto reversed = make_ranking({"a", "b", "c", "d"}, {1, 2, 3, 4},
                                 ImportanceSource::kRfGini);
    comparison = iebench::compare_rankings(a, reversed, 2);
    CHECK(comparison.top_overlap == 0);
    CHECK(comparison.spearman == doctest::Approx(-1.0));

    auto other_universe = make_ranking({"a", "b", "x", "d"}, {4, 3, 2, 1},
                                       ImportanceSource::kRfGini);
    CHECK_THROWS_AS(iebench::compare_rankings(a, other_universe, 2),
                    iebench::UniverseMismatch);
  }

  TEST_CASE("csv round trip preserves scores exactly") {
    auto ranking = make_ranking({"Q83A", "Q91A", "country"},
                                {1.25, 0.7500000000000001, 0.1},
                                ImportanceSource::kPermutation);
    std::stringstream buf;
    iebench::write_importance_csv(ranking, buf);
    auto back = iebench::read_importance_csv(buf);
    CHECK(back.source == ranking.source);
    REQUIRE(back.entries.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back.entries[i].feature == ranking.entries[i].feature);
      CHECK(back.entries[i].raw == ranking.entries[i].raw);
      CHECK(back.entries[i].normalized == ranking.entries[i].normalized);
    }
  }

  TEST_CASE("svg output draws one bar per entry") {
    auto ranking = make_ranking({"alpha", "beta"}, {2.0, 1.0},
                                ImportanceSource::kRfGini);
    std::ostringstream out;
    iebench::write_importance_svg(ranking, out);
    const std::string svg = out.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("alpha") != std::string::npos);
    CHECK(svg.find("beta") != std::string::npos);
    CHECK(std::count(svg.begin(), svg.end(), '\n') > 2);
    const auto bars = [&] {
      std::size_t count = 0;
      std::size_t pos = 0;
      while ((pos = svg.find("<rect", pos)) != std::string::npos) {
        ++count;
        pos += 5;
      }
      return count;
    }();
    CHECK(bars >= 2);
  }
}
