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

#include <array>
#include <limits>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/dataset.hpp"
#include "iebench/errors.hpp"

using iebench::Dataset;
using iebench::FeatureDescriptor;

namespace {

std::vector<FeatureDescriptor> two_features() {
  FeatureDescriptor a;
  a.name = "a";
  FeatureDescriptor b;
  b.name = "b";
  return {a, b};
}

}  // namespace

TEST_SUITE("dataset") {
  TEST_CASE("create rejects inconsistent shapes") {
    CHECK_THROWS_AS(Dataset::create({}, {}, {}, {"c0"}), iebench::InvalidArgument);
    CHECK_THROWS_AS(Dataset::create(two_features(), {1.0, 2.0, 3.0}, {0}, {"c0"}),
                    iebench::InvalidArgument);
    CHECK_THROWS_AS(Dataset::create(two_features(), {1.0, 2.0}, {0}, {}),
                    iebench::InvalidArgument);
  }

  TEST_CASE("create rejects duplicate feature names") {
    auto features = two_features();
    features[1].name = "a";
    CHECK_THROWS_AS(Dataset::create(std::move(features), {1.0, 2.0}, {0}, {"c0"}),
                    iebench::InvalidArgument);
  }

  TEST_CASE("create rejects out-of-range labels") {
    CHECK_THROWS_AS(Dataset::create(two_features(), {1.0, 2.0}, {1}, {"c0"}),
                    iebench::InvalidArgument);
    CHECK_THROWS_AS(Dataset::create(two_features(), {1.0, 2.0}, {-1}, {"c0"}),
                    iebench::InvalidArgument);
  }

  TEST_CASE("create rejects non-finite cells") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(Dataset::create(two_features(), {1.0, nan}, {0}, {"c0"}),
                    iebench::InvalidArgument);
    CHECK_THROWS_AS(Dataset::create(two_features(), {inf, 2.0}, {0}, {"c0"}),
                    iebench::InvalidArgument);
  }

  TEST_CASE("accessors expose rows and cells") {
    auto ds = testutil::matrix_data({1, 2, 3, 4, 5, 6}, {0, 1, 0}, 2, 2);
    CHECK(ds.n_rows() == 3);
    CHECK(ds.n_features() == 2);
    CHECK(ds.n_classes() == 2);
    CHECK(ds.value(1, 0) == 3.0);
    CHECK(ds.value(2, 1) == 6.0);
    auto row = ds.row(1);
    REQUIRE(row.size() == 2);
    CHECK(row[0] == 3.0);
    CHECK(row[1] == 4.0);
    CHECK(ds.label(1) == 1);
    CHECK(ds.feature_index("x1") == 1);
    CHECK(ds.has_feature("x0"));
    CHECK_FALSE(ds.has_feature("nope"));
    CHECK_THROWS_AS((void)ds.feature_index("nope"), iebench::UnknownFeature);
  }

  TEST_CASE("class distribution counts, proportions and majority") {
    auto dist = iebench::class_distribution({0, 1, 1, 2, 2, 2, 0, 1}, 4);
    REQUIRE(dist.counts.size() == 4);
    CHECK(dist.counts[0] == 2);
    CHECK(dist.counts[1] == 3);
    CHECK(dist.counts[2] == 3);
    CHECK(dist.counts[3] == 0);
    CHECK(dist.total == 8);
    CHECK(dist.proportions[1] == doctest::Approx(3.0 / 8.0));
    // 1 and 2 tie at three rows each; the lower index wins.
    CHECK(dist.majority_class() == 1);
    CHECK(dist.majority_proportion() == doctest::Approx(3.0 / 8.0));
  }

  TEST_CASE("select_features keeps requested order and copies data") {
    auto ds = testutil::grid_data(40, 5, 2, 7);
    auto picked = iebench::select_features(ds, {"F4", "F2"});
    CHECK(picked.n_features() == 2);
    CHECK(picked.n_rows() == ds.n_rows());
    CHECK(picked.feature_names() == std::vector<std::string>{"F4", "F2"});
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      CHECK(picked.value(i, 0) == ds.value(i, 3));
      CHECK(picked.value(i, 1) == ds.value(i, 1));
    }
    CHECK(picked.labels() == ds.labels());
    CHECK_THROWS_AS(iebench::select_features(ds, {"F1", "missing"}),
                    iebench::UnknownFeature);
  }

  TEST_CASE("subset_rows honours order and repeats") {
    auto ds = testutil::matrix_data({1, 2, 3, 4, 5, 6, 7, 8}, {0, 1, 0, 1}, 2, 2);
    std::array<std::size_t, 3> rows = {3, 0, 3};
    auto sub = iebench::subset_rows(ds, rows);
    CHECK(sub.n_rows() == 3);
    CHECK(sub.value(0, 0) == 7.0);
    CHECK(sub.value(1, 0) == 1.0);
    CHECK(sub.value(2, 1) == 8.0);
    CHECK(sub.label(0) == 1);
    CHECK(sub.label(1) == 0);
    CHECK(sub.n_classes() == 2);
  }

  TEST_CASE("rows_by_class groups ascending indices") {
    auto groups = iebench::rows_by_class({1, 0, 1, 2, 0, 1}, 3);
    REQUIRE(groups.size() == 3);
    CHECK(groups[0] == std::vector<std::size_t>{1, 4});
    CHECK(groups[1] == std::vector<std::size_t>{0, 2, 5});
    CHECK(groups[2] == std::vector<std::size_t>{3});
  }
}
