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

#include "iebench/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "iebench/errors.hpp"

namespace iebench {

namespace {

std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(ch);
      }
    } else if (ch == '"' && cell.empty()) {
      quoted = true;
    } else if (ch == delim) {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

RawSurveyTable parse_raw(std::string_view text) {
  RawSurveyTable table;

  std::size_t pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= text.size()) return std::nullopt;
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() : nl + 1;
    return strip_cr(line);
  };

  auto header_line = next_line();
  while (header_line && header_line->empty()) header_line = next_line();
  if (!header_line) throw EmptyInput();

  const std::size_t tabs = std::count(header_line->begin(), header_line->end(), '\t');
  const std::size_t commas =
      std::count(header_line->begin(), header_line->end(), ',');
  table.delimiter = tabs >= commas ? '\t' : ',';
  table.header = split_line(*header_line, table.delimiter);
  if (table.header.size() < 2 && header_line->empty()) throw EmptyInput();

  std::size_t line_no = 1;
  while (auto line = next_line()) {
    ++line_no;
    if (line->empty()) continue;  // skip blank lines, common at EOF
    auto cells = split_line(*line, table.delimiter);
    if (cells.size() != table.header.size()) {
      throw MalformedRow(line_no, "expected " + std::to_string(table.header.size()) +
                                      " cells, got " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

RawSurveyTable parse_raw_file(const std::string& path) {
  return parse_raw(read_text_file(path));
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_dataset_csv(const Dataset& ds, std::ostream& out) {
  const auto& features = ds.features();
  for (std::size_t j = 0; j < features.size(); ++j) {
    out << features[j].name << ',';
  }
  out << "label\n";
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    for (std::size_t j = 0; j < features.size(); ++j) {
      out << format_double(ds.value(i, j)) << ',';
    }
    out << ds.class_names()[static_cast<std::size_t>(ds.label(i))] << '\n';
  }
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
  std::ostringstream buf;
  write_dataset_csv(ds, buf);
  write_text_file(path, buf.str());
}

namespace {

FeatureKind kind_from_name(const std::string& name) {
  std::string lower;
  for (char ch : name) lower.push_back(static_cast<char>(std::tolower(ch)));
  if (lower == "country") return FeatureKind::kDemographicCategorical;
  if (lower == "gender" || lower == "engnat") return FeatureKind::kDemographicBinary;
  return FeatureKind::kLikert;
}

}  // namespace

Dataset read_dataset_csv(std::istream& in,
                         std::optional<std::vector<std::string>> class_names) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  RawSurveyTable table = parse_raw(text);

  if (table.header.empty() || table.header.back() != "label")
    throw Error("canonical dataset CSV must end with a 'label' column");
  const std::size_t p = table.header.size() - 1;
  if (p == 0) throw Error("canonical dataset CSV has no feature columns");

  std::vector<FeatureDescriptor> features(p);
  for (std::size_t j = 0; j < p; ++j) {
    features[j].name = table.header[j];
    features[j].kind = kind_from_name(table.header[j]);
  }

  std::unordered_map<std::string, int> class_index;
  std::vector<std::string> names;
  if (class_names) {
    names = *class_names;
    for (std::size_t i = 0; i < names.size(); ++i)
      class_index[names[i]] = static_cast<int>(i);
  }

  std::vector<double> matrix;
  matrix.reserve(table.rows.size() * p);
  std::vector<int> labels;
  labels.reserve(table.rows.size());

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& cells = table.rows[r];
    for (std::size_t j = 0; j < p; ++j) {
      double v = 0.0;
      const auto& cell = cells[j];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw MalformedRow(r + 2, "cell '" + cell + "' is not numeric");
      }
      matrix.push_back(v);
    }
    const std::string& cls = cells[p];
    auto it = class_index.find(cls);
    if (it == class_index.end()) {
      if (class_names)
        throw MalformedRow(r + 2, "label '" + cls + "' not in class universe");
      const int idx = static_cast<int>(names.size());
      names.push_back(cls);
      it = class_index.emplace(cls, idx).first;
    }
    labels.push_back(it->second);
  }

  // Lone class in the file: keep a two-name universe so downstream metrics
  // stay well-defined.
  if (names.size() < 2) names.push_back("(none)");
  for (std::size_t j = 0; j < p; ++j) {
    double lo = 0.0, hi = 5.0;
    if (!table.rows.empty()) {
      lo = matrix[j];
      hi = matrix[j];
      for (std::size_t i = 1; i < table.rows.size(); ++i) {
        lo = std::min(lo, matrix[i * p + j]);
        hi = std::max(hi, matrix[i * p + j]);
      }
    }
    if (features[j].kind != FeatureKind::kLikert) {
      features[j].min_value = lo;
      features[j].max_value = hi;
    }
  }

  return Dataset::create(std::move(features), std::move(matrix), std::move(labels),
                         std::move(names));
}

Dataset read_dataset_csv_file(const std::string& path,
                              std::optional<std::vector<std::string>> class_names) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_dataset_csv(in, std::move(class_names));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("short write to " + path);
}

}  // namespace iebench
