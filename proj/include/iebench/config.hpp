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

#include <iosfwd>
#include <map>
#include <string>

#include "iebench/bench.hpp"

namespace iebench {

// Line-oriented `key = value` pairs under optional `[section]` headers.
// Keys are stored as "section.key" ("" section for the preamble). Blank
// lines and lines starting with '#' or ';' are skipped. Throws ConfigError
// with the offending line number.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

// Applies recognized keys onto cfg; unknown keys or unparsable values throw
// ConfigError. See the repository README for the key list.
void apply_config(const std::map<std::string, std::string>& values,
                  BenchConfig& cfg);

void apply_config_file(const std::string& path, BenchConfig& cfg);

}  // namespace iebench
