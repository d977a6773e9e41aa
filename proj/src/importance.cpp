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

#include "iebench/importance.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/rng.hpp"
#include "iebench/split.hpp"

namespace iebench {

std::string to_string(ImportanceSource source) {
  switch (source) {
    case ImportanceSource::kRfGini: return "rf_gini";
    case ImportanceSource::kGbmInfluence: return "gbm_influence";
    case ImportanceSource::kPermutation: return "permutation";
  }
  throw InvalidArgument("unknown importance source");
}

ImportanceSource importance_source_from_string(const std::string& name) {
  if (name == "rf_gini") return ImportanceSource::kRfGini;
  if (name == "gbm_influence") return ImportanceSource::kGbmInfluence;
  if (name == "permutation") return ImportanceSource::kPermutation;
  throw InvalidArgument("unknown importance source: " + name);
}

std::vector<std::string> ImportanceRanking::feature_universe() const {
  std::vector<std::string> names;
  names.reserve(entries.size());
  for (const auto& e : entries) names.push_back(e.feature);
  std::sort(names.begin(), names.end());
  return names;
}

ImportanceRanking make_ranking(const std::vector<std::string>& names,
                               const std::vector<double>& raw,
                               ImportanceSource source) {
  if (names.size() != raw.size())
    throw InvalidArgument("names and scores differ in length");
  ImportanceRanking ranking;
  ranking.source = source;
  ranking.entries.resize(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    ranking.entries[i] = ImportanceEntry{names[i], raw[i], 0.0};
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const ImportanceEntry& a, const ImportanceEntry& b) {
              if (a.raw != b.raw) return a.raw > b.raw;
              return a.feature < b.feature;
            });
  const double max_raw = ranking.entries.empty() ? 0.0 : ranking.entries[0].raw;
  for (auto& e : ranking.entries) {
    // Ratio first: raw/max is exactly 1.0 for the top entry, so the leading
    // score reads exactly 100 instead of 100 minus one ulp.
    e.normalized = max_raw > 0.0 ? 100.0 * (e.raw / max_raw) : 0.0;
  }
  return ranking;
}

CvImportanceResult cv_importance_full(const Dataset& ds, Algorithm algorithm,
                                      int k, int reps, std::uint64_t seed,
                                      const ModelConfig& base, ExecMode mode) {
  if (algorithm != Algorithm::kRf && algorithm != Algorithm::kGbm)
    throw InvalidArgument("importance extraction needs a tree ensemble");
  const auto folds = repeated_stratified_kfold(ds, k, reps,
                                               derive_seed(seed, {hash_tag("cv")}));
  const std::size_t p = ds.n_features();
  const std::size_t cells = static_cast<std::size_t>(k) *
                            static_cast<std::size_t>(reps);

  std::vector<std::vector<double>> cell_importance(cells);
  std::vector<EvalRecord> records(cells);
  std::vector<std::exception_ptr> failures(cells);

  parallel_for(cells, mode, [&](std::size_t cell) {
    try {
      const int rep = static_cast<int>(cell) / k;
      const int fold = static_cast<int>(cell) % k;
      const auto train_rows = folds.training_rows(rep, fold);
      const auto test_rows = folds.held_out_rows(rep, fold);
      const Dataset train = subset_rows(ds, train_rows);
      const Dataset held = subset_rows(ds, test_rows);

      ModelConfig cfg = base;
      cfg.algorithm = algorithm;
      cfg.seed = derive_seed(seed, {hash_tag("model"),
                                    static_cast<std::uint64_t>(rep),
                                    static_cast<std::uint64_t>(fold)});
      const auto model = train_model(train, cfg, ExecMode::kSerial);
      cell_importance[cell] = model->importance().value();

      const auto predicted = model->predict(held);
      const auto cm = ConfusionMatrix::from_predictions(held.labels(), predicted,
                                                        ds.n_classes());
      records[cell] = EvalRecord{rep, fold, accuracy(cm), kappa(cm)};
    } catch (...) {
      failures[cell] = std::current_exception();
    }
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<double> mean_raw(p, 0.0);
  for (const auto& contrib : cell_importance) {
    for (std::size_t j = 0; j < p; ++j) mean_raw[j] += contrib[j];
  }
  for (auto& v : mean_raw) v /= static_cast<double>(cells);

  CvImportanceResult result;
  result.ranking = make_ranking(ds.feature_names(), mean_raw,
                                algorithm == Algorithm::kRf
                                    ? ImportanceSource::kRfGini
                                    : ImportanceSource::kGbmInfluence);
  result.summary = aggregate(records);
  result.records = std::move(records);
  return result;
}

ImportanceRanking cv_importance(const Dataset& ds, Algorithm algorithm, int k,
                                int reps, std::uint64_t seed, ExecMode mode) {
  return cv_importance_full(ds, algorithm, k, reps, seed, ModelConfig{}, mode)
      .ranking;
}

ImportanceRanking permutation_importance(const Model& model,
                                         const Dataset& holdout,
                                         int n_shuffles, std::uint64_t seed,
                                         ExecMode mode) {
  if (n_shuffles <= 0) throw InvalidShuffles();
  if (holdout.n_rows() == 0) throw InvalidArgument("holdout is empty");
  const std::size_t n = holdout.n_rows();
  const std::size_t p = holdout.n_features();

  const auto base_predicted = model.predict(holdout, mode);
  const double base_accuracy = accuracy(ConfusionMatrix::from_predictions(
      holdout.labels(), base_predicted, holdout.n_classes()));

  const std::size_t units = p * static_cast<std::size_t>(n_shuffles);
  std::vector<double> drops(units, 0.0);
  parallel_for(units, mode, [&](std::size_t unit) {
    const std::size_t j = unit / static_cast<std::size_t>(n_shuffles);
    const std::size_t shuffle = unit % static_cast<std::size_t>(n_shuffles);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    Rng rng(derive_seed(seed, {hash_tag("perm"), j, shuffle}));
    rng.shuffle(order);

    std::vector<double> matrix = holdout.matrix();
    for (std::size_t i = 0; i < n; ++i) {
      matrix[i * p + j] = holdout.value(order[i], j);
    }
    const auto predicted =
        model.predict(matrix, n, ExecMode::kSerial);
    const double acc = accuracy(ConfusionMatrix::from_predictions(
        holdout.labels(), predicted, holdout.n_classes()));
    drops[unit] = base_accuracy - acc;
  });

  std::vector<double> mean_drop(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    for (int s = 0; s < n_shuffles; ++s) {
      mean_drop[j] += drops[j * static_cast<std::size_t>(n_shuffles) +
                            static_cast<std::size_t>(s)];
    }
    mean_drop[j] /= static_cast<double>(n_shuffles);
  }
  return make_ranking(holdout.feature_names(), mean_drop,
                      ImportanceSource::kPermutation);
}

std::vector<std::string> select_top_k(const ImportanceRanking& ranking,
                                      std::size_t k) {
  if (k > ranking.entries.size()) throw KTooLarge(k, ranking.entries.size());
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back(ranking.entries[i].feature);
  return names;
}

namespace {

// Ranks 1..n with ties sharing their average rank.
std::map<std::string, double> average_ranks(const ImportanceRanking& r) {
  std::map<std::string, double> ranks;
  const auto& e = r.entries;
  std::size_t i = 0;
  while (i < e.size()) {
    std::size_t j = i;
    while (j + 1 < e.size() && e[j + 1].raw == e[i].raw) ++j;
    const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) ranks[e[t].feature] = shared;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

RankingComparison compare_rankings(const ImportanceRanking& a,
                                   const ImportanceRanking& b,
                                   std::size_t top_k) {
  if (a.feature_universe() != b.feature_universe()) throw UniverseMismatch();

  RankingComparison cmp;
  const std::size_t k = std::min(top_k, a.entries.size());
  std::vector<std::string> top_a, top_b;
  for (std::size_t i = 0; i < k; ++i) {
    top_a.push_back(a.entries[i].feature);
    top_b.push_back(b.entries[i].feature);
  }
  std::sort(top_a.begin(), top_a.end());
  std::sort(top_b.begin(), top_b.end());
  std::vector<std::string> shared;
  std::set_intersection(top_a.begin(), top_a.end(), top_b.begin(), top_b.end(),
                        std::back_inserter(shared));
  cmp.top_overlap = shared.size();

  const auto ranks_a = average_ranks(a);
  const auto ranks_b = average_ranks(b);
  const std::size_t n = a.entries.size();
  if (n < 2) {
    cmp.spearman = 1.0;
    return cmp;
  }
  double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0.0, var_a = 0.0, var_b = 0.0;
  for (const auto& [name, ra] : ranks_a) {
    const double rb = ranks_b.at(name);
    cov += (ra - mean) * (rb - mean);
    var_a += (ra - mean) * (ra - mean);
    var_b += (rb - mean) * (rb - mean);
  }
  cmp.spearman =
      var_a > 0.0 && var_b > 0.0 ? cov / std::sqrt(var_a * var_b) : 0.0;
  return cmp;
}

void write_importance_csv(const ImportanceRanking& ranking, std::ostream& out) {
  out << "rank,feature,raw,normalized,source\n";
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    const auto& e = ranking.entries[i];
    out << (i + 1) << ',' << e.feature << ',' << format_double(e.raw) << ','
        << format_double(e.normalized) << ',' << to_string(ranking.source)
        << '\n';
  }
}

void write_importance_svg(const ImportanceRanking& ranking, std::ostream& out,
                          std::size_t max_entries) {
  const std::size_t count = std::min(max_entries, ranking.entries.size());
  const int bar_height = 18;
  const int gap = 6;
  const int label_width = 110;
  const int chart_width = 400;
  const int height = static_cast<int>(count) * (bar_height + gap) + 30;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << (label_width + chart_width + 60) << "\" height=\"" << height
      << "\">\n";
  out << "  <text x=\"" << label_width << "\" y=\"16\" font-size=\"13\" "
         "font-family=\"sans-serif\">feature importance ("
      << to_string(ranking.source) << ")</text>\n";
  for (std::size_t i = 0; i < count; ++i) {
    const auto& e = ranking.entries[i];
    const int y = 26 + static_cast<int>(i) * (bar_height + gap);
    const double frac = std::max(0.0, e.normalized) / 100.0;
    const int w = static_cast<int>(frac * chart_width);
    out << "  <text x=\"" << (label_width - 6) << "\" y=\"" << (y + 13)
        << "\" text-anchor=\"end\" font-size=\"12\" "
           "font-family=\"sans-serif\">" << e.feature << "</text>\n";
    out << "  <rect x=\"" << label_width << "\" y=\"" << y << "\" width=\""
        << w << "\" height=\"" << bar_height << "\" fill=\"#4878a8\"/>\n";
    out << "  <text x=\"" << (label_width + w + 4) << "\" y=\"" << (y + 13)
        << "\" font-size=\"11\" font-family=\"sans-serif\">"
        << format_double(std::round(e.normalized * 1000.0) / 1000.0)
        << "</text>\n";
  }
  out << "</svg>\n";
}

ImportanceRanking read_importance_csv(std::istream& in) {
  ImportanceRanking ranking;
  std::string line;
  if (!std::getline(in, line))
    throw IoError("importance file is empty");
  std::size_t line_no = 1;
  bool source_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::stringstream row(line);
    std::string rank, feature, raw, normalized, source;
    if (!std::getline(row, rank, ',') || !std::getline(row, feature, ',') ||
        !std::getline(row, raw, ',') || !std::getline(row, normalized, ','))
      throw MalformedRow(line_no, "expected rank,feature,raw,normalized,source");
    try {
      ranking.entries.push_back(
          ImportanceEntry{feature, std::stod(raw), std::stod(normalized)});
    } catch (const std::exception&) {
      throw MalformedRow(line_no, "bad numeric value");
    }
    // The source column is optional so hand-written rankings stay easy to
    // feed in; when present, every row must agree.
    if (std::getline(row, source)) {
      ImportanceSource parsed;
      try {
        parsed = importance_source_from_string(source);
      } catch (const std::exception&) {
        throw MalformedRow(line_no, "unknown source: " + source);
      }
      if (source_seen && parsed != ranking.source)
        throw MalformedRow(line_no, "rows disagree on the source");
      ranking.source = parsed;
      source_seen = true;
    }
  }
  return ranking;
}

ImportanceRanking read_importance_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open importance file: " + path);
  return read_importance_csv(in);
}

}  // namespace iebench
