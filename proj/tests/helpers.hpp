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
#include <string>
#include <vector>

#include "iebench/dataset.hpp"
#include "iebench/ingest.hpp"
#include "iebench/rng.hpp"

namespace testutil {

// Synthetic classification data with a real signal on the leading features.
inline iebench::Dataset grid_data(std::size_t n, std::size_t p, std::size_t c,
                                  std::uint64_t seed, double effect = 1.2) {
  iebench::SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.c = c;
  spec.class_proportions.assign(c, 1.0 / static_cast<double>(c));
  spec.informative_features = {0, 1, 2};
  for (auto& f : spec.informative_features) {
    if (f >= p) f = p - 1;
  }
  spec.effect_size = effect;
  spec.seed = seed;
  return iebench::generate_synthetic(spec);
}

// Same, but with a skewed class mix (first class dominates).
inline iebench::Dataset imbalanced_data(std::size_t n, std::size_t p,
                                        std::vector<double> proportions,
                                        std::uint64_t seed,
                                        double effect = 1.2) {
  iebench::SynthSpec spec;
  spec.n = n;
  spec.p = p;
  spec.c = proportions.size();
  spec.class_proportions = std::move(proportions);
  spec.informative_features = {0};
  spec.effect_size = effect;
  spec.seed = seed;
  return iebench::generate_synthetic(spec);
}

// Builds a dataset straight from a row-major matrix; descriptor bounds are
// widened to the data so any numeric fixture is accepted.
inline iebench::Dataset matrix_data(std::vector<double> matrix,
                                    std::vector<int> labels, std::size_t p,
                                    std::size_t n_classes) {
  std::vector<iebench::FeatureDescriptor> features(p);
  for (std::size_t j = 0; j < p; ++j) {
    features[j].name = "x" + std::to_string(j);
    features[j].min_value = -1e18;
    features[j].max_value = 1e18;
  }
  std::vector<std::string> classes(n_classes);
  for (std::size_t s = 0; s < n_classes; ++s)
    classes[s] = "c" + std::to_string(s);
  return iebench::Dataset::create(std::move(features), std::move(matrix),
                                  std::move(labels), std::move(classes));
}

// The two-feature parity problem; depth-2 trees solve it, stumps cannot.
inline iebench::Dataset xor_data() {
  std::vector<double> matrix;
  std::vector<int> labels;
  for (double a : {1.0, 5.0}) {
    for (double b : {1.0, 5.0}) {
      // Four copies per corner so min_leaf > 1 settings still split.
      for (int copy = 0; copy < 4; ++copy) {
        matrix.push_back(a);
        matrix.push_back(b);
        labels.push_back(a == b ? 0 : 1);
      }
    }
  }
  return matrix_data(std::move(matrix), std::move(labels), 2, 2);
}

inline std::vector<int> random_labels(std::size_t n, std::size_t c,
                                      std::uint64_t seed) {
  iebench::Rng rng(seed);
  std::vector<int> labels(n);
  for (auto& v : labels) v = static_cast<int>(rng.below(c));
  return labels;
}

}  // namespace testutil
