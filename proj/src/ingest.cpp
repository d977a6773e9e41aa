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

#include "iebench/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>

#include "iebench/errors.hpp"
#include "iebench/rng.hpp"

namespace iebench {

namespace {

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool is_missing_cell(std::string_view cell) {
  const std::string low = to_lower(trim(cell));
  return low.empty() || low == "na" || low == "null";
}

// "Q<digits>A" -> answer, "Q<digits>I"/"Q<digits>E" -> technical.
enum class ColumnRole { kAnswer, kTechnical, kTarget, kDate, kCountry, kGender, kEngnat, kUnknown };

ColumnRole classify_column(const std::string& name) {
  const std::string low = to_lower(trim(name));
  if (low == "ie") return ColumnRole::kTarget;
  if (low == "country") return ColumnRole::kCountry;
  if (low == "gender") return ColumnRole::kGender;
  if (low == "engnat") return ColumnRole::kEngnat;
  if (low.find("date") != std::string::npos) return ColumnRole::kDate;
  if (low.size() >= 3 && low.front() == 'q') {
    const char suffix = low.back();
    bool digits = true;
    for (std::size_t i = 1; i + 1 < low.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(low[i]))) {
        digits = false;
        break;
      }
    }
    if (digits) {
      if (suffix == 'a') return ColumnRole::kAnswer;
      if (suffix == 'i' || suffix == 'e') return ColumnRole::kTechnical;
    }
  }
  return ColumnRole::kUnknown;
}

double parse_numeric_cell(std::string_view cell, std::size_t line_no,
                          const std::string& column) {
  if (is_missing_cell(cell)) return 0.0;
  const std::string_view t = trim(cell);
  double v = 0.0;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
  if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
    throw MalformedRow(line_no, "column " + column + ": cell '" + std::string(cell) +
                                    "' is not numeric");
  }
  return v;
}

}  // namespace

void DemographicEncoder::fit_country(const std::vector<std::string>& country_cells) {
  table_.clear();
  if (country_cells.empty()) return;
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& cell : country_cells) counts[std::string(trim(cell))]++;
  const double n = static_cast<double>(country_cells.size());
  for (const auto& [code, count] : counts) {
    table_[code] = static_cast<double>(count) / n;
  }
}

double DemographicEncoder::country_frequency(std::string_view country) const {
  const auto it = table_.find(std::string(trim(country)));
  return it == table_.end() ? 0.0 : it->second;
}

std::array<double, 3> DemographicEncoder::encode(std::string_view gender_raw,
                                                 std::string_view english_raw,
                                                 std::string_view country_raw) const {
  const auto parse_code = [](std::string_view cell) {
    if (is_missing_cell(cell)) return 0.0;
    const std::string_view t = trim(cell);
    double v = 0.0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) return 0.0;
    return v;
  };
  return {parse_code(gender_raw), parse_code(english_raw),
          country_frequency(country_raw)};
}

PreprocessResult preprocess(const RawSurveyTable& raw) {
  PreprocessResult result;
  result.rows_in = raw.rows.size();

  struct KeptColumn {
    std::size_t raw_index;
    ColumnRole role;
  };
  std::vector<KeptColumn> kept;
  std::ptrdiff_t target_col = -1;
  std::size_t answer_count = 0;

  for (std::size_t j = 0; j < raw.header.size(); ++j) {
    const ColumnRole role = classify_column(raw.header[j]);
    switch (role) {
      case ColumnRole::kAnswer:
        ++answer_count;
        kept.push_back({j, role});
        break;
      case ColumnRole::kCountry:
      case ColumnRole::kGender:
      case ColumnRole::kEngnat:
        kept.push_back({j, role});
        break;
      case ColumnRole::kTarget:
        target_col = static_cast<std::ptrdiff_t>(j);
        break;
      case ColumnRole::kTechnical:
      case ColumnRole::kDate:
        result.dropped_columns.push_back(raw.header[j]);
        break;
      case ColumnRole::kUnknown:
        result.dropped_columns.push_back(raw.header[j]);
        result.warnings.push_back("unrecognized column dropped: " + raw.header[j]);
        break;
    }
  }
  if (target_col < 0) throw MissingTargetColumn();
  if (answer_count == 0) throw MissingAnswerColumns();
  for (const char* demo : {"country", "gender", "engnat"}) {
    const bool present =
        std::any_of(kept.begin(), kept.end(), [&](const KeptColumn& col) {
          return to_lower(raw.header[col.raw_index]) == demo;
        });
    if (!present)
      result.warnings.push_back(std::string("demographic column missing: ") + demo);
  }

  // Rows with a missing target (empty cell or the code 0) are removed; the
  // count is surfaced so replications can audit it.
  std::vector<std::size_t> valid_rows;
  valid_rows.reserve(raw.rows.size());
  for (std::size_t i = 0; i < raw.rows.size(); ++i) {
    const std::string_view cell = raw.rows[i][static_cast<std::size_t>(target_col)];
    if (is_missing_cell(cell) || trim(cell) == "0") {
      ++result.rows_removed;
    } else {
      valid_rows.push_back(i);
    }
  }

  // Country frequencies are fitted on the surviving rows.
  std::ptrdiff_t country_raw_col = -1;
  for (const auto& col : kept) {
    if (col.role == ColumnRole::kCountry)
      country_raw_col = static_cast<std::ptrdiff_t>(col.raw_index);
  }
  if (country_raw_col >= 0) {
    std::vector<std::string> cells;
    cells.reserve(valid_rows.size());
    for (std::size_t i : valid_rows)
      cells.push_back(raw.rows[i][static_cast<std::size_t>(country_raw_col)]);
    result.encoder.fit_country(cells);
  }

  std::vector<FeatureDescriptor> features;
  features.reserve(kept.size());
  for (const auto& col : kept) {
    FeatureDescriptor f;
    f.name = std::string(trim(raw.header[col.raw_index]));
    switch (col.role) {
      case ColumnRole::kAnswer:
        f.kind = FeatureKind::kLikert;
        f.min_value = 0.0;
        f.max_value = 5.0;
        break;
      case ColumnRole::kCountry:
        f.kind = FeatureKind::kDemographicCategorical;
        f.min_value = 0.0;
        f.max_value = 1.0;
        break;
      default:
        f.kind = FeatureKind::kDemographicBinary;
        f.min_value = 0.0;
        f.max_value = 3.0;
        break;
    }
    features.push_back(std::move(f));
  }

  std::vector<std::string> class_names;
  std::unordered_map<std::string, int> class_index;
  std::vector<double> matrix;
  matrix.reserve(valid_rows.size() * kept.size());
  std::vector<int> labels;
  labels.reserve(valid_rows.size());

  for (std::size_t i : valid_rows) {
    const auto& cells = raw.rows[i];
    const std::size_t line_no = i + 2;  // header is line 1
    for (const auto& col : kept) {
      const std::string& cell = cells[col.raw_index];
      switch (col.role) {
        case ColumnRole::kAnswer: {
          const double v = parse_numeric_cell(cell, line_no, raw.header[col.raw_index]);
          if (v != std::floor(v) || v < 0.0 || v > 5.0) {
            throw MalformedRow(line_no, "column " + raw.header[col.raw_index] +
                                            ": likert value '" + cell +
                                            "' outside {0..5}");
          }
          matrix.push_back(v);
          break;
        }
        case ColumnRole::kCountry:
          matrix.push_back(result.encoder.country_frequency(cell));
          break;
        default:
          matrix.push_back(parse_numeric_cell(cell, line_no, raw.header[col.raw_index]));
          break;
      }
    }
    const std::string code(trim(cells[static_cast<std::size_t>(target_col)]));
    auto it = class_index.find(code);
    if (it == class_index.end()) {
      it = class_index.emplace(code, static_cast<int>(class_names.size())).first;
      class_names.push_back(code);
    }
    labels.push_back(it->second);
  }

  if (valid_rows.empty()) {
    result.warnings.push_back("all rows removed: no valid target values");
    result.dataset = Dataset();
    // Keep the feature schema visible even for the degenerate empty output.
    if (!features.empty()) {
      result.dataset = Dataset::create(std::move(features), {}, {}, {});
    }
    return result;
  }

  result.dataset = Dataset::create(std::move(features), std::move(matrix),
                                   std::move(labels), std::move(class_names));
  return result;
}

std::vector<std::int64_t> largest_remainder_round(const std::vector<double>& quotas,
                                                  std::int64_t total) {
  const std::size_t m = quotas.size();
  std::vector<std::int64_t> out(m, 0);
  std::vector<double> frac(m, 0.0);
  std::int64_t base_sum = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double q = std::max(0.0, quotas[i]);
    out[i] = static_cast<std::int64_t>(std::floor(q));
    frac[i] = q - std::floor(q);
    base_sum += out[i];
  }
  std::int64_t diff = total - base_sum;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (frac[a] != frac[b]) return frac[a] > frac[b];
    return a < b;
  });

  std::size_t cursor = 0;
  while (diff > 0 && m > 0) {
    out[order[cursor]] += 1;
    cursor = (cursor + 1) % m;
    --diff;
  }
  // Quotas can overshoot `total` when they do not sum to it; trim from the
  // smallest remainders without going negative.
  cursor = m;
  while (diff < 0 && m > 0) {
    cursor = (cursor == 0) ? m - 1 : cursor - 1;
    if (out[order[cursor]] > 0) {
      out[order[cursor]] -= 1;
      ++diff;
    }
  }
  return out;
}

Dataset generate_synthetic(const SynthSpec& spec) {
  if (spec.n < 1 || spec.p < 1) throw InvalidSpec("n and p must be positive");
  if (spec.c < 2) throw InvalidSpec("need at least two classes");
  if (spec.class_proportions.size() != spec.c)
    throw InvalidSpec("class_proportions must have one entry per class");
  double sum = 0.0;
  for (double prop : spec.class_proportions) {
    if (prop < 0.0) throw InvalidSpec("class proportions must be non-negative");
    sum += prop;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidSpec("class proportions must sum to 1");
  for (std::size_t f : spec.informative_features) {
    if (f >= spec.p) throw InvalidSpec("informative feature index out of range");
  }
  if (!std::isfinite(spec.effect_size)) throw InvalidSpec("effect_size must be finite");

  std::vector<double> quotas(spec.c);
  for (std::size_t j = 0; j < spec.c; ++j) {
    quotas[j] = spec.class_proportions[j] * static_cast<double>(spec.n);
  }
  const auto counts = largest_remainder_round(quotas, static_cast<std::int64_t>(spec.n));

  Rng rng(derive_seed(spec.seed, {hash_tag("synth")}));
  std::vector<int> labels;
  labels.reserve(spec.n);
  for (std::size_t j = 0; j < spec.c; ++j) {
    labels.insert(labels.end(), static_cast<std::size_t>(counts[j]),
                  static_cast<int>(j));
  }
  rng.shuffle(labels);

  std::vector<bool> informative(spec.p, false);
  for (std::size_t f : spec.informative_features) informative[f] = true;

  const double center = (static_cast<double>(spec.c) - 1.0) / 2.0;
  std::vector<double> matrix(spec.n * spec.p);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double shift =
        spec.effect_size * (static_cast<double>(labels[i]) - center);
    for (std::size_t j = 0; j < spec.p; ++j) {
      double v;
      if (informative[j]) {
        v = std::round(3.0 + shift + rng.normal());
        v = std::clamp(v, 1.0, 5.0);
      } else {
        v = 1.0 + static_cast<double>(rng.below(5));
      }
      matrix[i * spec.p + j] = v;
    }
  }

  std::vector<FeatureDescriptor> features(spec.p);
  for (std::size_t j = 0; j < spec.p; ++j) {
    features[j].name = "F" + std::to_string(j + 1);
    features[j].kind = FeatureKind::kLikert;
    features[j].min_value = 1.0;
    features[j].max_value = 5.0;
  }
  std::vector<std::string> class_names(spec.c);
  for (std::size_t j = 0; j < spec.c; ++j) class_names[j] = "C" + std::to_string(j);

  return Dataset::create(std::move(features), std::move(matrix), std::move(labels),
                         std::move(class_names));
}

}  // namespace iebench
