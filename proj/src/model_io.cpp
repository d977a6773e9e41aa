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

#include "iebench/model_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "iebench/cart.hpp"
#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/forest.hpp"
#include "iebench/gbm.hpp"
#include "iebench/knn_model.hpp"
#include "iebench/nnet.hpp"
#include "iebench/svm.hpp"

namespace iebench {

namespace {

void check_token(const std::string& token) {
  if (token.find('\t') != std::string::npos ||
      token.find('\n') != std::string::npos)
    throw IoError("model token may not contain tabs or newlines: " + token);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      break;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("bad numeric token in model file: " + s);
  return v;
}

std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw IoError("bad integer token in model file: " + s);
  return v;
}

void write_string_list(std::ostream& out, const std::string& key,
                       const std::vector<std::string>& items) {
  out << key << '\t' << items.size();
  for (const auto& item : items) {
    check_token(item);
    out << '\t' << item;
  }
  out << '\n';
}

}  // namespace

ModelWriter::ModelWriter(std::ostream& out, const Model& model) : out_(out) {
  out_ << "iebench-model " << kModelFormatVersion << ' '
       << to_string(model.algorithm()) << '\n';
  write_string_list(out_, "features", model.feature_names());
  write_string_list(out_, "classes", model.class_names());
  write_string_list(out_, "warnings", model.warnings());
}

void ModelWriter::scalar(const std::string& key, std::int64_t value) {
  out_ << key << '\t' << value << '\n';
}
void ModelWriter::scalar(const std::string& key, std::uint64_t value) {
  out_ << key << '\t' << value << '\n';
}
void ModelWriter::scalar(const std::string& key, double value) {
  out_ << key << '\t' << format_double(value) << '\n';
}

void ModelWriter::int_list(const std::string& key,
                           const std::vector<int>& values) {
  out_ << key << '\t' << values.size();
  for (int v : values) out_ << '\t' << v;
  out_ << '\n';
}

void ModelWriter::double_list(const std::string& key,
                              const std::vector<double>& values) {
  out_ << key << '\t' << values.size();
  for (double v : values) out_ << '\t' << format_double(v);
  out_ << '\n';
}

void ModelWriter::matrix(
    const std::string& key, std::size_t rows, std::size_t cols,
    const std::function<double(std::size_t, std::size_t)>& cell) {
  out_ << key << '\t' << rows << '\t' << cols;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out_ << '\t' << format_double(cell(i, j));
  }
  out_ << '\n';
}

void ModelWriter::key_line(const std::string& key, std::size_t count) {
  out_ << key << '\t' << count << '\n';
}

ModelReader::ModelReader(std::istream& in) : in_(in) {
  std::string magic;
  int version = 0;
  std::string algorithm;
  in_ >> magic >> version >> algorithm;
  if (!in_ || magic != "iebench-model")
    throw IoError("not a model file (bad magic)");
  if (version != kModelFormatVersion)
    throw IoError("unsupported model format version " + std::to_string(version));
  algorithm_ = algorithm_from_string(algorithm);
  in_.ignore(1, '\n');

  auto read_strings = [&](const std::string& key) {
    const auto parts = next_record(key);
    const auto count = static_cast<std::size_t>(parse_int(parts[0]));
    if (parts.size() != count + 1)
      throw IoError("string list '" + key + "' has wrong item count");
    return std::vector<std::string>(parts.begin() + 1, parts.end());
  };
  features_ = read_strings("features");
  classes_ = read_strings("classes");
  warnings_ = read_strings("warnings");
}

std::vector<std::string> ModelReader::next_record(const std::string& key) {
  std::string line;
  while (std::getline(in_, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto parts = split_tabs(line);
    if (parts.front() != key)
      throw IoError("expected record '" + key + "', found '" + parts.front() + "'");
    parts.erase(parts.begin());
    return parts;
  }
  throw IoError("model file ended before record '" + key + "'");
}

std::int64_t ModelReader::scalar_int(const std::string& key) {
  const auto parts = next_record(key);
  if (parts.size() != 1) throw IoError("scalar '" + key + "' malformed");
  return parse_int(parts[0]);
}

double ModelReader::scalar_double(const std::string& key) {
  const auto parts = next_record(key);
  if (parts.size() != 1) throw IoError("scalar '" + key + "' malformed");
  return parse_double(parts[0]);
}

std::vector<int> ModelReader::int_list(const std::string& key) {
  const auto parts = next_record(key);
  const auto count = static_cast<std::size_t>(parse_int(parts[0]));
  if (parts.size() != count + 1)
    throw IoError("list '" + key + "' has wrong item count");
  std::vector<int> values(count);
  for (std::size_t i = 0; i < count; ++i)
    values[i] = static_cast<int>(parse_int(parts[i + 1]));
  return values;
}

std::vector<double> ModelReader::double_list(const std::string& key) {
  const auto parts = next_record(key);
  const auto count = static_cast<std::size_t>(parse_int(parts[0]));
  if (parts.size() != count + 1)
    throw IoError("list '" + key + "' has wrong item count");
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = parse_double(parts[i + 1]);
  return values;
}

std::vector<double> ModelReader::matrix(const std::string& key,
                                        std::size_t& rows, std::size_t& cols) {
  const auto parts = next_record(key);
  if (parts.size() < 2) throw IoError("matrix '" + key + "' malformed");
  rows = static_cast<std::size_t>(parse_int(parts[0]));
  cols = static_cast<std::size_t>(parse_int(parts[1]));
  if (parts.size() != rows * cols + 2)
    throw IoError("matrix '" + key + "' has wrong cell count");
  std::vector<double> values(rows * cols);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = parse_double(parts[i + 2]);
  return values;
}

std::size_t ModelReader::key_line(const std::string& key) {
  const auto parts = next_record(key);
  if (parts.size() != 1) throw IoError("record '" + key + "' malformed");
  return static_cast<std::size_t>(parse_int(parts[0]));
}

namespace {

std::unique_ptr<Model> load_knn(ModelReader& r) {
  const auto k = static_cast<std::size_t>(r.scalar_int("k"));
  std::size_t rows = 0, cols = 0;
  auto matrix = r.matrix("train", rows, cols);
  auto labels = r.int_list("labels");
  return std::make_unique<KnnModel>(std::move(matrix), std::move(labels), k,
                                    r.feature_names(), r.class_names());
}

std::unique_ptr<Model> load_cart(ModelReader& r) {
  auto leaf_dist = r.double_list("leaf_distributions");
  r.key_line("tree");
  Tree tree = load_tree(r.raw());
  return std::make_unique<CartModel>(std::move(tree), std::move(leaf_dist),
                                     r.feature_names(), r.class_names());
}

std::unique_ptr<Model> load_rf(ModelReader& r) {
  auto importance = r.double_list("importance");
  const auto count = r.key_line("trees");
  std::vector<Tree> trees(count);
  for (auto& tree : trees) tree = load_tree(r.raw());
  r.raw() >> std::ws;
  return std::make_unique<ForestModel>(std::move(trees), std::move(importance),
                                       r.feature_names(), r.class_names());
}

std::unique_ptr<Model> load_gbm(ModelReader& r) {
  auto f_init = r.double_list("f_init");
  auto importance = r.double_list("importance");
  auto deviance = r.double_list("training_deviance");
  const auto n_rounds = r.key_line("rounds");
  std::vector<std::vector<Tree>> rounds(n_rounds);
  for (auto& round : rounds) {
    const auto n_trees = r.key_line("round");
    round.resize(n_trees);
    for (auto& tree : round) tree = load_tree(r.raw());
    r.raw() >> std::ws;
  }
  return std::make_unique<GbmModel>(std::move(f_init), std::move(rounds),
                                    std::move(importance), std::move(deviance),
                                    r.feature_names(), r.class_names());
}

std::unique_ptr<Model> load_nnet(ModelReader& r) {
  const auto hidden = static_cast<std::size_t>(r.scalar_int("hidden"));
  auto weights = r.double_list("weights");
  auto means = r.double_list("means");
  auto sds = r.double_list("sds");
  return std::make_unique<NnetModel>(std::move(weights), std::move(means),
                                     std::move(sds), hidden, r.feature_names(),
                                     r.class_names());
}

std::unique_ptr<Model> load_svm(ModelReader& r) {
  const double gamma = r.scalar_double("gamma");
  const double cost = r.scalar_double("cost");
  const auto n_pairs = r.key_line("pairs");
  std::vector<BinarySvm> pairs(n_pairs);
  for (auto& pair : pairs) {
    pair.class_a = static_cast<int>(r.scalar_int("class_a"));
    pair.class_b = static_cast<int>(r.scalar_int("class_b"));
    pair.bias = r.scalar_double("bias");
    pair.converged = r.scalar_int("converged") != 0;
    std::size_t rows = 0, cols = 0;
    pair.support_vectors = r.matrix("support_vectors", rows, cols);
    pair.alpha_y = r.double_list("alpha_y");
  }
  return std::make_unique<SvmModel>(std::move(pairs), gamma, cost,
                                    r.feature_names(), r.class_names(),
                                    r.warnings());
}

}  // namespace

std::unique_ptr<Model> load_model(std::istream& in) {
  ModelReader reader(in);
  std::unique_ptr<Model> model;
  switch (reader.algorithm()) {
    case Algorithm::kKnn: model = load_knn(reader); break;
    case Algorithm::kCart: model = load_cart(reader); break;
    case Algorithm::kRf: model = load_rf(reader); break;
    case Algorithm::kGbm: model = load_gbm(reader); break;
    case Algorithm::kNnet: model = load_nnet(reader); break;
    case Algorithm::kSvmRbf: model = load_svm(reader); break;
  }
  if (!model) throw IoError("unsupported model algorithm");
  model->restore_warnings(reader.warnings());
  return model;
}

}  // namespace iebench
