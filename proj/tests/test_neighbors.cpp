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

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/errors.hpp"
#include "iebench/neighbors.hpp"
#include "iebench/rng.hpp"

using iebench::KnnIndex;
using iebench::Neighbor;

namespace {

// Independent oracle: sort all candidates by (squared distance, index).
std::vector<Neighbor> oracle_query(const std::vector<double>& points, std::size_t p,
                                   const std::vector<int>& labels,
                                   std::span<const double> x, std::size_t k,
                                   int class_constraint) {
  const std::size_t n = points.size() / p;
  std::vector<Neighbor> all;
  for (std::size_t i = 0; i < n; ++i) {
    if (class_constraint != iebench::kAnyClass && labels[i] != class_constraint)
      continue;
    const std::span<const double> row(points.data() + i * p, p);
    all.push_back({i, iebench::squared_distance(row, x)});
  }
  std::sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.squared_distance != b.squared_distance)
      return a.squared_distance < b.squared_distance;
    return a.index < b.index;
  });
  all.resize(std::min(k, all.size()));
  return all;
}

bool same_neighbors(const std::vector<Neighbor>& a, const std::vector<Neighbor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index) return false;
    if (a[i].squared_distance != b[i].squared_distance) return false;
  }
  return true;
}

struct Cloud {
  std::vector<double> points;
  std::vector<int> labels;
  std::size_t p = 4;
};

Cloud random_cloud(std::size_t n, std::uint64_t seed) {
  Cloud cloud;
  iebench::Rng rng(seed);
  cloud.points.resize(n * cloud.p);
  // Integer coordinates on a coarse grid force plenty of distance ties.
  for (auto& v : cloud.points) v = static_cast<double>(rng.below(4));
  cloud.labels.resize(n);
  for (auto& l : cloud.labels) l = static_cast<int>(rng.below(3));
  return cloud;
}

}  // namespace

TEST_SUITE("neighbors") {
  TEST_CASE("squared distance") {
    std::vector<double> a = {1.0, 2.0, 3.0};
    std::vector<double> b = {4.0, 2.0, 1.0};
    CHECK(iebench::squared_distance(a, b) == 13.0);
    CHECK(iebench::squared_distance(a, a) == 0.0);
  }

  TEST_CASE("query matches the sort-everything oracle") {
    auto cloud = random_cloud(160, 17);
    KnnIndex index(cloud.points, cloud.p, cloud.labels);
    iebench::Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> x(cloud.p);
      for (auto& v : x) v = static_cast<double>(rng.below(4));
      const std::size_t k = 1 + rng.below(8);
      auto got = index.query(x, k);
      auto want = oracle_query(cloud.points, cloud.p, cloud.labels, x, k,
                               iebench::kAnyClass);
      CHECK(same_neighbors(got, want));
    }
  }

  TEST_CASE("ties break toward the lower row index") {
    // Rows 0 and 2 are identical; both sit at distance 0 from the query.
    std::vector<double> points = {1, 1, 9, 9, 1, 1, 2, 2};
    KnnIndex index(points, 2);
    std::vector<double> x = {1, 1};
    auto got = index.query(x, 2);
    REQUIRE(got.size() == 2);
    CHECK(got[0].index == 0);
    CHECK(got[1].index == 2);
    CHECK(got[0].squared_distance == 0.0);
  }

  TEST_CASE("class constraints filter candidates") {
    auto cloud = random_cloud(120, 3);
    KnnIndex index(cloud.points, cloud.p, cloud.labels);
    std::vector<double> x(cloud.p, 1.5);
    for (int cls = 0; cls < 3; ++cls) {
      auto got = index.query(x, 5, cls);
      auto want = oracle_query(cloud.points, cloud.p, cloud.labels, x, 5, cls);
      CHECK(same_neighbors(got, want));
      for (const auto& nb : got) CHECK(cloud.labels[nb.index] == cls);
    }
  }

  TEST_CASE("query_self skips the anchor row") {
    auto cloud = random_cloud(60, 5);
    KnnIndex index(cloud.points, cloud.p, cloud.labels);
    for (std::size_t row : {0UL, 13UL, 59UL}) {
      auto got = index.query_self(row, 6);
      for (const auto& nb : got) CHECK(nb.index != row);
      REQUIRE(got.size() == 6);
    }
  }

  TEST_CASE("k beyond the candidate pool throws, relaxed truncates") {
    std::vector<double> points = {1, 2, 3, 4, 5, 6};
    std::vector<int> labels = {0, 0, 1};
    KnnIndex index(points, 2, labels);
    std::vector<double> x = {0, 0};
    CHECK_THROWS_AS((void)index.query(x, 4), iebench::KTooLarge);
    CHECK_THROWS_AS((void)index.query(x, 2, 1), iebench::KTooLarge);
    CHECK_THROWS_AS((void)index.query_self(0, 3), iebench::KTooLarge);

    auto relaxed = index.query_relaxed(x, 10);
    CHECK(relaxed.size() == 3);
    auto relaxed_cls = index.query_relaxed(x, 10, 1);
    REQUIRE(relaxed_cls.size() == 1);
    CHECK(relaxed_cls[0].index == 2);
    auto relaxed_self = index.query_self_relaxed(0, 10, 0);
    REQUIRE(relaxed_self.size() == 1);
    CHECK(relaxed_self[0].index == 1);
  }

  TEST_CASE("batch queries agree across execution modes") {
    auto cloud = random_cloud(200, 23);
    KnnIndex index(cloud.points, cloud.p, cloud.labels);
    auto queries = random_cloud(37, 24).points;
    auto serial = index.query_batch(queries, 37, 5, iebench::ExecMode::kSerial);
    auto parallel = index.query_batch(queries, 37, 5, iebench::ExecMode::kOpenMP);
    REQUIRE(serial.size() == 37);
    REQUIRE(parallel.size() == 37);
    for (std::size_t q = 0; q < 37; ++q) {
      CHECK(same_neighbors(serial[q], parallel[q]));
      std::span<const double> x(queries.data() + q * cloud.p, cloud.p);
      auto single = index.query(x, 5);
      CHECK(same_neighbors(serial[q], single));
    }
  }
}
