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

#include "iebench/config.hpp"

#include <fstream>
#include <sstream>
#include <string_view>

#include "iebench/errors.hpp"

namespace iebench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line_no) + ": " + what);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

long long to_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  try {
    // stoull would wrap a leading minus around instead of failing.
    if (!value.empty() && value.front() == '-') throw std::invalid_argument(value);
    std::size_t used = 0;
    const unsigned long long v = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an unsigned integer, got '" + value + "'");
  }
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto t = trim(part);
    if (!t.empty()) parts.emplace_back(t);
  }
  return parts;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> values;
  std::string section;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']') fail(line_no, "unterminated section header");
      const auto name = trim(body.substr(1, body.size() - 2));
      if (name.empty()) fail(line_no, "empty section name");
      section = std::string(name);
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const auto key = trim(body.substr(0, eq));
    const auto value = trim(body.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    std::string full = section.empty() ? std::string(key)
                                       : section + "." + std::string(key);
    if (values.count(full)) fail(line_no, "duplicate key '" + full + "'");
    values.emplace(std::move(full), std::string(value));
  }
  return values;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  return parse_config(in);
}

void apply_config(const std::map<std::string, std::string>& values,
                  BenchConfig& cfg) {
  for (const auto& [key, value] : values) {
    if (key == "input") {
      cfg.input_path = value;
    } else if (key == "seed") {
      cfg.seed = to_u64(key, value);
    } else if (key == "split_ratio" || key == "split") {
      cfg.split_ratio = to_double(key, value);
    } else if (key == "folds") {
      cfg.folds = static_cast<int>(to_int(key, value));
    } else if (key == "reps") {
      cfg.reps = static_cast<int>(to_int(key, value));
    } else if (key == "baseline_reps") {
      cfg.baseline_reps = static_cast<int>(to_int(key, value));
    } else if (key == "top_k") {
      cfg.top_k = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "importance_csv") {
      cfg.importance_csv = value;
    } else if (key == "leakage_mode") {
      try {
        cfg.leakage_mode = leakage_mode_from_string(value);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "algorithms" || key == "models") {
      cfg.algorithms.clear();
      for (const auto& name : split_list(value)) {
        try {
          cfg.algorithms.push_back(algorithm_from_string(name));
        } catch (const InvalidArgument& e) {
          throw ConfigError(e.what());
        }
      }
    } else if (key == "out") {
      cfg.out_dir = value;
    } else if (key == "formats" || key == "format") {
      cfg.formats.clear();
      for (const auto& name : split_list(value)) {
        try {
          cfg.formats.push_back(report_format_from_string(name));
        } catch (const InvalidArgument& e) {
          throw ConfigError(e.what());
        }
      }
    } else if (key == "resample.method") {
      try {
        cfg.resample.method = resample_method_from_string(value);
      } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
      }
    } else if (key == "resample.k_neighbors") {
      cfg.resample.k_neighbors = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "resample.beta") {
      cfg.resample.beta = to_double(key, value);
    } else if (key == "models.knn_k") {
      cfg.model_params.knn.k = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.rf_trees") {
      cfg.model_params.forest.n_trees = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.rf_mtry") {
      cfg.model_params.forest.mtry = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.rf_bootstrap") {
      cfg.model_params.forest.bootstrap = to_bool(key, value);
    } else if (key == "models.rf_max_depth") {
      cfg.model_params.forest.max_depth = static_cast<int>(to_int(key, value));
    } else if (key == "models.rf_min_leaf") {
      cfg.model_params.forest.min_leaf = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.gbm_trees") {
      cfg.model_params.gbm.n_trees = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.gbm_depth") {
      cfg.model_params.gbm.depth = static_cast<int>(to_int(key, value));
    } else if (key == "models.gbm_learning_rate") {
      cfg.model_params.gbm.learning_rate = to_double(key, value);
    } else if (key == "models.gbm_min_leaf") {
      cfg.model_params.gbm.min_leaf = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.nnet_hidden") {
      cfg.model_params.nnet.hidden = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.nnet_decay") {
      cfg.model_params.nnet.weight_decay = to_double(key, value);
    } else if (key == "models.nnet_max_iter") {
      cfg.model_params.nnet.max_iter = static_cast<std::size_t>(to_int(key, value));
    } else if (key == "models.svm_cost") {
      cfg.model_params.svm.cost = to_double(key, value);
    } else if (key == "models.svm_gamma") {
      cfg.model_params.svm.gamma = to_double(key, value);
    } else if (key == "models.svm_tol") {
      cfg.model_params.svm.tol = to_double(key, value);
    } else if (key == "models.svm_max_passes") {
      cfg.model_params.svm.max_passes = static_cast<std::size_t>(to_int(key, value));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

void apply_config_file(const std::string& path, BenchConfig& cfg) {
  apply_config(parse_config_file(path), cfg);
}

}  // namespace iebench
