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

#include "iebench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "iebench/csv.hpp"
#include "iebench/errors.hpp"

namespace iebench {

namespace {

// Fraction -> percent string with two decimals, e.g. 0.7383 -> "73.83".
std::string pct(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

std::string sanitize_cell(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_field_double(const std::string& text, std::size_t line_no) {
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw MalformedRow(line_no, "bad numeric value: " + text);
  }
}

long long parse_field_int(const std::string& text, std::size_t line_no) {
  try {
    return std::stoll(text);
  } catch (const std::exception&) {
    throw MalformedRow(line_no, "bad integer value: " + text);
  }
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void sort_report_rows(BenchmarkReport& report) {
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const AlgoResult& a, const AlgoResult& b) {
                     if (a.ok != b.ok) return a.ok;
                     if (!a.ok) return false;
                     return a.test_accuracy > b.test_accuracy;
                   });
}

void write_report_md(const BenchmarkReport& report, std::ostream& out) {
  const RunMeta& m = report.meta;
  out << "# benchmark report\n\n";
  out << "- variant: " << m.variant << "\n";
  out << "- leakage mode: " << m.leakage_mode << "\n";
  out << "- rows: " << m.n_rows << " (train " << m.n_train << ", resampled "
      << m.n_train_resampled << ", test " << m.n_test << ")\n";
  out << "- features: " << m.n_features << "\n";
  out << "- cv: " << m.folds << " folds, " << m.reps << " repetitions\n";
  out << "- no-information rate: " << pct(m.nir) << "%\n";
  out << "- seed: " << m.seed << "\n\n";

  out << "| algorithm | cv accuracy (%) | cv accuracy sd | cv kappa (%) | "
         "cv kappa sd | test accuracy (%) |\n";
  out << "|:----------|----------------:|---------------:|-------------:|"
         "------------:|------------------:|\n";
  for (const auto& row : report.rows) {
    if (!row.ok) continue;
    out << "| " << to_string(row.algorithm) << " | " << pct(row.cv.accuracy_mean)
        << " | " << pct(row.cv.accuracy_sd) << " | " << pct(row.cv.kappa_mean)
        << " | " << pct(row.cv.kappa_sd) << " | " << pct(row.test_accuracy)
        << " |\n";
  }

  bool any_failed = false;
  for (const auto& row : report.rows) {
    if (row.ok) continue;
    if (!any_failed) out << "\nfailed:\n";
    any_failed = true;
    out << "- " << to_string(row.algorithm) << ": " << sanitize_cell(row.error)
        << "\n";
  }
  if (!m.warnings.empty()) {
    out << "\nwarnings:\n";
    for (const auto& w : m.warnings) out << "- " << w << "\n";
  }
}

void write_report_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "algorithm,cv_accuracy_mean,cv_accuracy_sd,cv_kappa_mean,cv_kappa_sd,"
         "test_accuracy,test_kappa,n_records,status,error\n";
  for (const auto& row : report.rows) {
    out << to_string(row.algorithm) << ',' << format_double(row.cv.accuracy_mean)
        << ',' << format_double(row.cv.accuracy_sd) << ','
        << format_double(row.cv.kappa_mean) << ','
        << format_double(row.cv.kappa_sd) << ','
        << format_double(row.test_accuracy) << ','
        << format_double(row.test_kappa) << ',' << row.cv_records.size() << ','
        << (row.ok ? "ok" : "failed") << ',' << sanitize_cell(row.error)
        << '\n';
  }
}

void write_cv_records_csv(const BenchmarkReport& report, std::ostream& out) {
  out << "algorithm,rep,fold,accuracy,kappa\n";
  for (const auto& row : report.rows) {
    for (const auto& rec : row.cv_records) {
      out << to_string(row.algorithm) << ',' << rec.rep << ',' << rec.fold
          << ',' << format_double(rec.accuracy) << ','
          << format_double(rec.kappa) << '\n';
    }
  }
}

void write_run_meta_csv(const RunMeta& meta, std::ostream& out) {
  out << "key,value\n";
  out << "seed," << meta.seed << '\n';
  out << "variant," << meta.variant << '\n';
  out << "leakage_mode," << meta.leakage_mode << '\n';
  out << "split_ratio," << format_double(meta.split_ratio) << '\n';
  out << "folds," << meta.folds << '\n';
  out << "reps," << meta.reps << '\n';
  out << "top_k," << meta.top_k << '\n';
  out << "n_rows," << meta.n_rows << '\n';
  out << "n_features," << meta.n_features << '\n';
  out << "n_train," << meta.n_train << '\n';
  out << "n_train_resampled," << meta.n_train_resampled << '\n';
  out << "n_test," << meta.n_test << '\n';
  out << "nir," << format_double(meta.nir) << '\n';
  // The value field runs to end of line, so commas are fine; only the list
  // separator and newlines must not appear inside one warning.
  std::vector<std::string> cleaned;
  for (const auto& w : meta.warnings) {
    std::string text = w;
    for (char& ch : text) {
      if (ch == '|') ch = '/';
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    cleaned.push_back(std::move(text));
  }
  out << "warnings," << join(cleaned, " | ") << '\n';
}

void write_report_svg(const BenchmarkReport& report, std::ostream& out) {
  std::vector<const AlgoResult*> rows;
  for (const auto& row : report.rows) {
    if (row.ok) rows.push_back(&row);
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto* row : rows) {
    for (const auto& rec : row->cv_records) {
      lo = std::min(lo, rec.accuracy);
      hi = std::max(hi, rec.accuracy);
    }
    lo = std::min({lo, row->test_accuracy, row->cv.accuracy_mean - row->cv.accuracy_sd});
    hi = std::max({hi, row->test_accuracy, row->cv.accuracy_mean + row->cv.accuracy_sd});
  }
  if (rows.empty()) {
    lo = 0.0;
    hi = 1.0;
  }
  lo *= 100.0;
  hi *= 100.0;
  double pad = (hi - lo) * 0.06;
  if (pad <= 0.0) pad = 1.0;
  lo -= pad;
  hi += pad;

  const int label_width = 70;
  const int chart_width = 430;
  const int band = 36;
  const int top = 34;
  const int axis_gap = 30;
  const int height = top + static_cast<int>(rows.size()) * band + axis_gap;
  const auto x_of = [&](double fraction) {
    const double p = fraction * 100.0;
    return label_width + (p - lo) / (hi - lo) * chart_width;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << (label_width + chart_width + 40) << "\" height=\"" << height << "\">\n";
  out << "  <text x=\"" << label_width << "\" y=\"16\" font-size=\"13\" "
         "font-family=\"sans-serif\">cv accuracy per algorithm (dot = fold, "
         "bar = mean +/- sd, square = test)</text>\n";

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const AlgoResult& row = *rows[i];
    const double cy = top + static_cast<double>(i) * band + band / 2.0;
    out << "  <text x=\"" << (label_width - 8) << "\" y=\"" << fixed1(cy + 4)
        << "\" text-anchor=\"end\" font-size=\"12\" "
           "font-family=\"sans-serif\">" << to_string(row.algorithm)
        << "</text>\n";
    for (const auto& rec : row.cv_records) {
      out << "  <circle cx=\"" << fixed1(x_of(rec.accuracy)) << "\" cy=\""
          << fixed1(cy) << "\" r=\"2.5\" fill=\"#4878a8\" "
             "fill-opacity=\"0.45\"/>\n";
    }
    const double x1 = x_of(row.cv.accuracy_mean - row.cv.accuracy_sd);
    const double x2 = x_of(row.cv.accuracy_mean + row.cv.accuracy_sd);
    out << "  <line x1=\"" << fixed1(x1) << "\" y1=\"" << fixed1(cy)
        << "\" x2=\"" << fixed1(x2) << "\" y2=\"" << fixed1(cy)
        << "\" stroke=\"#1f3a5a\" stroke-width=\"2\"/>\n";
    out << "  <circle cx=\"" << fixed1(x_of(row.cv.accuracy_mean)) << "\" cy=\""
        << fixed1(cy) << "\" r=\"4\" fill=\"#1f3a5a\"/>\n";
    out << "  <rect x=\"" << fixed1(x_of(row.test_accuracy) - 3.5) << "\" y=\""
        << fixed1(cy - 3.5)
        << "\" width=\"7\" height=\"7\" fill=\"#b0413e\"/>\n";
  }

  const double axis_y = top + static_cast<double>(rows.size()) * band + 8;
  out << "  <line x1=\"" << label_width << "\" y1=\"" << fixed1(axis_y)
      << "\" x2=\"" << (label_width + chart_width) << "\" y2=\""
      << fixed1(axis_y) << "\" stroke=\"#606060\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double p = lo + (hi - lo) * t / 4.0;
    const double x = label_width + chart_width * t / 4.0;
    out << "  <line x1=\"" << fixed1(x) << "\" y1=\"" << fixed1(axis_y)
        << "\" x2=\"" << fixed1(x) << "\" y2=\"" << fixed1(axis_y + 4)
        << "\" stroke=\"#606060\"/>\n";
    out << "  <text x=\"" << fixed1(x) << "\" y=\"" << fixed1(axis_y + 16)
        << "\" text-anchor=\"middle\" font-size=\"11\" "
           "font-family=\"sans-serif\">" << fixed1(p) << "</text>\n";
  }
  out << "</svg>\n";
}

std::string to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kMarkdown: return "md";
    case ReportFormat::kCsv: return "csv";
    case ReportFormat::kSvg: return "svg";
  }
  throw InvalidArgument("unknown report format");
}

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "md" || name == "markdown") return ReportFormat::kMarkdown;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "svg") return ReportFormat::kSvg;
  throw InvalidArgument("unknown report format: " + name);
}

namespace {

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  writer(out);
  if (!out.good()) throw IoError("failed writing " + path.string());
  written.push_back(path.string());
}

}  // namespace

std::vector<std::string> emit_report(const BenchmarkReport& report,
                                     const std::string& dir,
                                     const std::vector<ReportFormat>& formats) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir);
  const std::filesystem::path base(dir);

  std::vector<std::string> written;
  for (const auto format : formats) {
    switch (format) {
      case ReportFormat::kMarkdown:
        write_file(base / "report.md",
                   [&](std::ostream& o) { write_report_md(report, o); },
                   written);
        break;
      case ReportFormat::kCsv:
        write_file(base / "report.csv",
                   [&](std::ostream& o) { write_report_csv(report, o); },
                   written);
        write_file(base / "cv_records.csv",
                   [&](std::ostream& o) { write_cv_records_csv(report, o); },
                   written);
        write_file(base / "run_meta.csv",
                   [&](std::ostream& o) { write_run_meta_csv(report.meta, o); },
                   written);
        break;
      case ReportFormat::kSvg:
        write_file(base / "report.svg",
                   [&](std::ostream& o) { write_report_svg(report, o); },
                   written);
        break;
    }
  }
  return written;
}

namespace {

void read_meta_file(const std::filesystem::path& path, RunMeta& meta) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw MalformedRow(line_no, "expected key,value");
    const std::string key = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (key == "seed") {
      meta.seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "variant") {
      meta.variant = value;
    } else if (key == "leakage_mode") {
      meta.leakage_mode = value;
    } else if (key == "split_ratio") {
      meta.split_ratio = parse_field_double(value, line_no);
    } else if (key == "folds") {
      meta.folds = static_cast<int>(parse_field_int(value, line_no));
    } else if (key == "reps") {
      meta.reps = static_cast<int>(parse_field_int(value, line_no));
    } else if (key == "top_k") {
      meta.top_k = static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "n_rows") {
      meta.n_rows = static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "n_features") {
      meta.n_features = static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "n_train") {
      meta.n_train = static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "n_train_resampled") {
      meta.n_train_resampled =
          static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "n_test") {
      meta.n_test = static_cast<std::size_t>(parse_field_int(value, line_no));
    } else if (key == "nir") {
      meta.nir = parse_field_double(value, line_no);
    } else if (key == "warnings") {
      meta.warnings.clear();
      std::size_t start = 0;
      while (start < value.size()) {
        auto end = value.find(" | ", start);
        if (end == std::string::npos) end = value.size();
        if (end > start) meta.warnings.push_back(value.substr(start, end - start));
        start = end + 3;
      }
    }
    // Unknown keys are ignored so newer writers stay readable.
  }
}

}  // namespace

BenchmarkReport read_report_dir(const std::string& dir) {
  const std::filesystem::path base(dir);
  BenchmarkReport report;

  {
    std::ifstream in(base / "report.csv");
    if (!in) throw IoError("cannot open " + (base / "report.csv").string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("report.csv is empty");
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      const auto f = split_fields(line);
      if (f.size() != 10)
        throw MalformedRow(line_no, "expected 10 fields in report.csv");
      AlgoResult row;
      row.algorithm = algorithm_from_string(f[0]);
      row.cv.accuracy_mean = parse_field_double(f[1], line_no);
      row.cv.accuracy_sd = parse_field_double(f[2], line_no);
      row.cv.kappa_mean = parse_field_double(f[3], line_no);
      row.cv.kappa_sd = parse_field_double(f[4], line_no);
      row.test_accuracy = parse_field_double(f[5], line_no);
      row.test_kappa = parse_field_double(f[6], line_no);
      row.cv.n_records = static_cast<std::size_t>(parse_field_int(f[7], line_no));
      row.ok = f[8] == "ok";
      row.error = f[9];
      report.rows.push_back(std::move(row));
    }
  }

  {
    std::ifstream in(base / "cv_records.csv");
    if (!in) throw IoError("cannot open " + (base / "cv_records.csv").string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("cv_records.csv is empty");
    std::size_t line_no = 1;
    std::map<std::string, AlgoResult*> by_name;
    for (auto& row : report.rows) by_name[to_string(row.algorithm)] = &row;
    while (std::getline(in, line)) {
      ++line_no;
      line = strip_cr(line);
      if (line.empty()) continue;
      const auto f = split_fields(line);
      if (f.size() != 5)
        throw MalformedRow(line_no, "expected 5 fields in cv_records.csv");
      const auto it = by_name.find(f[0]);
      if (it == by_name.end())
        throw MalformedRow(line_no, "unknown algorithm: " + f[0]);
      EvalRecord rec;
      rec.rep = static_cast<int>(parse_field_int(f[1], line_no));
      rec.fold = static_cast<int>(parse_field_int(f[2], line_no));
      rec.accuracy = parse_field_double(f[3], line_no);
      rec.kappa = parse_field_double(f[4], line_no);
      it->second->cv_records.push_back(rec);
    }
  }

  read_meta_file(base / "run_meta.csv", report.meta);
  return report;
}

}  // namespace iebench
