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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iebench {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

struct UnknownFeature : Error {
  explicit UnknownFeature(const std::string& name)
      : Error("unknown feature: " + name), feature(name) {}
  std::string feature;
};

struct MalformedRow : Error {
  MalformedRow(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  std::size_t line_no;
};

struct EmptyInput : Error {
  EmptyInput() : Error("input contains no header row") {}
};

struct MissingTargetColumn : Error {
  MissingTargetColumn() : Error("no IE target column in header") {}
};

struct MissingAnswerColumns : Error {
  MissingAnswerColumns() : Error("no QnA answer columns in header") {}
};

struct InvalidSpec : Error {
  using Error::Error;
};

struct DegenerateClass : Error {
  DegenerateClass(std::size_t klass, const std::string& what)
      : Error("class " + std::to_string(klass) + ": " + what), klass(klass) {}
  std::size_t klass;
};

struct InvalidK : Error {
  using Error::Error;
};

struct KTooLarge : Error {
  KTooLarge(std::size_t k, std::size_t available)
      : Error("k=" + std::to_string(k) + " but only " + std::to_string(available) +
              " candidates"),
        k(k),
        available(available) {}
  std::size_t k;
  std::size_t available;
};

struct ClassTooSmall : Error {
  ClassTooSmall(std::size_t klass, std::size_t count)
      : Error("class " + std::to_string(klass) + " has " + std::to_string(count) +
              " rows, need at least 2 to interpolate"),
        klass(klass) {}
  std::size_t klass;
};

struct InvalidShuffles : Error {
  InvalidShuffles() : Error("n_shuffles must be positive") {}
};

struct UniverseMismatch : Error {
  UniverseMismatch() : Error("rankings cover different feature sets") {}
};

struct EmptyMatrix : Error {
  EmptyMatrix() : Error("confusion matrix has no scored rows") {}
};

struct NonFiniteLoss : Error {
  explicit NonFiniteLoss(std::size_t iter)
      : Error("loss became non-finite at iteration " + std::to_string(iter) +
              " (check data scaling)") {}
};

struct IoError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace iebench
