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

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "iebench/model.hpp"

namespace iebench {

// Versioned text container for fitted models. Line-oriented: every record is
// `key<TAB>payload...` with tab-separated payload tokens; doubles use the
// shortest round-trip decimal form. Tree ensembles embed multi-line tree
// blocks after their own record line.
inline constexpr int kModelFormatVersion = 1;

class ModelWriter {
 public:
  ModelWriter(std::ostream& out, const Model& model);

  void scalar(const std::string& key, std::int64_t value);
  void scalar(const std::string& key, std::uint64_t value);
  void scalar(const std::string& key, double value);
  void int_list(const std::string& key, const std::vector<int>& values);
  void double_list(const std::string& key, const std::vector<double>& values);
  void matrix(const std::string& key, std::size_t rows, std::size_t cols,
              const std::function<double(std::size_t, std::size_t)>& cell);

  // For records that need custom multi-line payloads (trees).
  std::ostream& raw() { return out_; }
  void key_line(const std::string& key, std::size_t count);

 private:
  std::ostream& out_;
};

class ModelReader {
 public:
  explicit ModelReader(std::istream& in);

  Algorithm algorithm() const { return algorithm_; }
  const std::vector<std::string>& feature_names() const { return features_; }
  const std::vector<std::string>& class_names() const { return classes_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::int64_t scalar_int(const std::string& key);
  double scalar_double(const std::string& key);
  std::vector<int> int_list(const std::string& key);
  std::vector<double> double_list(const std::string& key);
  std::vector<double> matrix(const std::string& key, std::size_t& rows,
                             std::size_t& cols);

  std::size_t key_line(const std::string& key);
  std::istream& raw() { return in_; }

 private:
  std::vector<std::string> next_record(const std::string& key);

  std::istream& in_;
  Algorithm algorithm_ = Algorithm::kRf;
  std::vector<std::string> features_;
  std::vector<std::string> classes_;
  std::vector<std::string> warnings_;
};

}  // namespace iebench
