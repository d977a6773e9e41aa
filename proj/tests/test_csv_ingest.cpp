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
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/ingest.hpp"

using iebench::parse_raw;

namespace {

// Mini survey export exercising every column role: answers, technical
// companions, demographics, a date column, an unrecognized column, and a
// target with valid, zero, empty and NA cells.
const char* kSurveyCsv =
    "Q1A,Q1I,Q1E,Q2A,country,gender,engnat,dateload,IE,junk\n"
    "5,1,300,4,US,1,1,2016-01-01,3,x\n"
    "4,2,250,2,US,2,2,2016-01-02,1,x\n"
    "0,3,100,1,GB,1,1,2016-01-03,2,x\n"
    "3,4,500,5,DE,2,1,2016-01-04,0,x\n"
    "2,5,400,3,US,1,2,2016-01-05,,x\n"
    "1,6,350,2,GB,2,2,2016-01-06,NA,x\n"
    "5,7,200,1,US,1,1,2016-01-07,2,x\n";

bool has_warning(const std::vector<std::string>& warnings, const std::string& part) {
  return std::any_of(warnings.begin(), warnings.end(), [&](const std::string& w) {
    return w.find(part) != std::string::npos;
  });
}

}  // namespace

TEST_SUITE("csv") {
  TEST_CASE("parse_raw splits comma rows verbatim") {
    auto table = parse_raw("a,b,c\n1,2,3\n4,,6\n");
    CHECK(table.delimiter == ',');
    CHECK(table.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(table.rows.size() == 2);
    CHECK(table.rows[0] == std::vector<std::string>{"1", "2", "3"});
    CHECK(table.rows[1] == std::vector<std::string>{"4", "", "6"});
  }

  TEST_CASE("parse_raw auto-detects tab delimiter") {
    auto table = parse_raw("a\tb\n1,5\t2\n");
    CHECK(table.delimiter == '\t');
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == "1,5");
  }

  TEST_CASE("parse_raw handles quotes, escapes and CRLF") {
    auto table = parse_raw("name,text\r\n\"x,y\",\"he said \"\"hi\"\"\"\r\n");
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][0] == "x,y");
    CHECK(table.rows[0][1] == "he said \"hi\"");
  }

  TEST_CASE("parse_raw skips blank lines") {
    auto table = parse_raw("\na,b\n1,2\n\n3,4\n\n");
    CHECK(table.rows.size() == 2);
  }

  TEST_CASE("parse_raw reports ragged rows with their line number") {
    try {
      parse_raw("a,b\n1,2\n1,2,3\n");
      FAIL("expected MalformedRow");
    } catch (const iebench::MalformedRow& e) {
      CHECK(e.line_no == 3);
    }
    CHECK_THROWS_AS(parse_raw(""), iebench::EmptyInput);
    CHECK_THROWS_AS(parse_raw("\n\n"), iebench::EmptyInput);
  }

  TEST_CASE("dataset csv round-trips fractional cells exactly") {
    auto ds = testutil::matrix_data({2.4000000000000004, 1.0, 0.1, 3.3333333333333335},
                                    {0, 1}, 2, 2);
    std::ostringstream out;
    iebench::write_dataset_csv(ds, out);
    std::istringstream in(out.str());
    auto back = iebench::read_dataset_csv(in);
    REQUIRE(back.n_rows() == 2);
    REQUIRE(back.n_features() == 2);
    CHECK(back.feature_names() == ds.feature_names());
    CHECK(back.matrix() == ds.matrix());
    CHECK(back.labels() == ds.labels());
    CHECK(back.class_names() == ds.class_names());
  }

  TEST_CASE("read_dataset_csv honours an explicit class universe") {
    // "c1" appears first in the file; the fixed universe keeps it at index 1.
    std::istringstream in("x0,label\n1,c1\n2,c0\n");
    auto ds = iebench::read_dataset_csv(in, std::vector<std::string>{"c0", "c1"});
    CHECK(ds.labels() == std::vector<int>{1, 0});

    std::istringstream bad("x0,label\n1,c9\n");
    CHECK_THROWS_AS(
        iebench::read_dataset_csv(bad, std::vector<std::string>{"c0", "c1"}),
        iebench::MalformedRow);
  }

  TEST_CASE("read_dataset_csv rejects non-canonical input") {
    std::istringstream no_label("x0,x1\n1,2\n");
    CHECK_THROWS_AS(iebench::read_dataset_csv(no_label), iebench::Error);
    std::istringstream bad_cell("x0,label\noops,c0\n");
    CHECK_THROWS_AS(iebench::read_dataset_csv(bad_cell), iebench::MalformedRow);
  }
}

TEST_SUITE("ingest") {
  TEST_CASE("preprocess keeps answers and demographics, drops the rest") {
    auto result = iebench::preprocess(parse_raw(kSurveyCsv));
    const auto& ds = result.dataset;

    CHECK(result.rows_in == 7);
    CHECK(result.rows_removed == 3);
    CHECK(ds.n_rows() == 4);
    CHECK(ds.feature_names() ==
          std::vector<std::string>{"Q1A", "Q2A", "country", "gender", "engnat"});

    auto dropped = result.dropped_columns;
    std::sort(dropped.begin(), dropped.end());
    CHECK(dropped == std::vector<std::string>{"Q1E", "Q1I", "dateload", "junk"});
    CHECK(has_warning(result.warnings, "junk"));
  }

  TEST_CASE("preprocess indexes classes by first appearance") {
    auto result = iebench::preprocess(parse_raw(kSurveyCsv));
    CHECK(result.dataset.class_names() == std::vector<std::string>{"3", "1", "2"});
    CHECK(result.dataset.labels() == std::vector<int>{0, 1, 2, 2});
  }

  TEST_CASE("preprocess frequency-encodes country on surviving rows") {
    auto result = iebench::preprocess(parse_raw(kSurveyCsv));
    const auto& ds = result.dataset;
    const std::size_t country = ds.feature_index("country");
    // Survivors: US, US, GB, US.
    CHECK(ds.value(0, country) == doctest::Approx(0.75));
    CHECK(ds.value(2, country) == doctest::Approx(0.25));
    CHECK(result.encoder.country_frequency("US") == doctest::Approx(0.75));
    CHECK(result.encoder.country_frequency("XX") == 0.0);
    // Gender and english-native pass through as raw codes.
    CHECK(ds.value(1, ds.feature_index("gender")) == 2.0);
    CHECK(ds.value(1, ds.feature_index("engnat")) == 2.0);
  }

  TEST_CASE("preprocess validates column presence") {
    CHECK_THROWS_AS(iebench::preprocess(parse_raw("Q1A,country\n1,US\n")),
                    iebench::MissingTargetColumn);
    CHECK_THROWS_AS(iebench::preprocess(parse_raw("IE,country\n1,US\n")),
                    iebench::MissingAnswerColumns);
  }

  TEST_CASE("preprocess warns about absent demographics") {
    auto result = iebench::preprocess(parse_raw("Q1A,IE\n1,1\n2,2\n"));
    CHECK(has_warning(result.warnings, "country"));
    CHECK(has_warning(result.warnings, "gender"));
    CHECK(has_warning(result.warnings, "engnat"));
  }

  TEST_CASE("preprocess rejects off-scale answers") {
    CHECK_THROWS_AS(iebench::preprocess(parse_raw("Q1A,IE\n6,1\n")),
                    iebench::MalformedRow);
    CHECK_THROWS_AS(iebench::preprocess(parse_raw("Q1A,IE\n2.5,1\n")),
                    iebench::MalformedRow);
    CHECK_THROWS_AS(iebench::preprocess(parse_raw("Q1A,IE\noops,1\n")),
                    iebench::MalformedRow);
    // Unanswered items are coded 0 and pass.
    auto ok = iebench::preprocess(parse_raw("Q1A,IE\n0,1\nNA,2\n"));
    CHECK(ok.dataset.value(0, 0) == 0.0);
    CHECK(ok.dataset.value(1, 0) == 0.0);
  }

  TEST_CASE("preprocess survives an all-removed table") {
    auto result = iebench::preprocess(parse_raw("Q1A,IE\n1,0\n2,\n"));
    CHECK(result.rows_removed == 2);
    CHECK(result.dataset.n_rows() == 0);
    CHECK(has_warning(result.warnings, "all rows removed"));
  }

  TEST_CASE("demographic encoder parses codes and defaults to zero") {
    iebench::DemographicEncoder enc;
    enc.fit_country({"US", "US", "GB", " US "});
    auto encoded = enc.encode("2", "1", "GB");
    CHECK(encoded[0] == 2.0);
    CHECK(encoded[1] == 1.0);
    CHECK(encoded[2] == doctest::Approx(0.25));
    auto missing = enc.encode("", "NA", "ZZ");
    CHECK(missing[0] == 0.0);
    CHECK(missing[1] == 0.0);
    CHECK(missing[2] == 0.0);
  }

  TEST_CASE("largest remainder rounding hits the total exactly") {
    using iebench::largest_remainder_round;
    CHECK(largest_remainder_round({2.5, 2.5}, 5) ==
          std::vector<std::int64_t>{3, 2});
    CHECK(largest_remainder_round({1.25, 3.5, 5.25}, 10) ==
          std::vector<std::int64_t>{1, 4, 5});
    CHECK(largest_remainder_round({3.0, 3.0}, 4) ==
          std::vector<std::int64_t>{2, 2});
    CHECK(largest_remainder_round({-1.0, 5.0}, 5) ==
          std::vector<std::int64_t>{0, 5});
    for (std::int64_t total : {1, 7, 12, 100}) {
      auto counts = largest_remainder_round({0.17, 0.32, 0.51},
                                            total);  // unnormalized quotas
      std::int64_t sum = 0;
      for (auto c : counts) sum += c;
      CHECK(sum == total);
    }
  }

  TEST_CASE("synthetic generator is deterministic and respects quotas") {
    iebench::SynthSpec spec;
    spec.n = 200;
    spec.p = 6;
    spec.c = 3;
    spec.class_proportions = {0.5, 0.3, 0.2};
    spec.informative_features = {0};
    spec.effect_size = 2.0;
    spec.seed = 11;

    auto a = iebench::generate_synthetic(spec);
    auto b = iebench::generate_synthetic(spec);
    CHECK(a.matrix() == b.matrix());
    CHECK(a.labels() == b.labels());

    auto dist = iebench::class_distribution(a);
    CHECK(dist.counts == std::vector<std::int64_t>{100, 60, 40});
    CHECK(a.feature_names().front() == "F1");
    CHECK(a.class_names() == std::vector<std::string>{"C0", "C1", "C2"});

    for (double v : a.matrix()) {
      CHECK(v == std::floor(v));
      CHECK(v >= 1.0);
      CHECK(v <= 5.0);
    }

    spec.seed = 12;
    auto c = iebench::generate_synthetic(spec);
    CHECK(a.matrix() != c.matrix());
  }

  TEST_CASE("informative features separate class means") {
    auto ds = testutil::grid_data(400, 5, 2, 3, 2.0);
    double mean0 = 0.0, mean1 = 0.0;
    std::size_t n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      if (ds.label(i) == 0) {
        mean0 += ds.value(i, 0);
        ++n0;
      } else {
        mean1 += ds.value(i, 0);
        ++n1;
      }
    }
    mean0 /= static_cast<double>(n0);
    mean1 /= static_cast<double>(n1);
    CHECK(mean1 - mean0 > 1.0);
  }

  TEST_CASE("synthetic generator rejects bad specs") {
    iebench::SynthSpec spec;
    spec.n = 10;
    spec.p = 2;
    spec.c = 2;
    spec.class_proportions = {0.5, 0.5};

    auto broken = spec;
    broken.n = 0;
    CHECK_THROWS_AS(iebench::generate_synthetic(broken), iebench::InvalidSpec);
    broken = spec;
    broken.c = 1;
    broken.class_proportions = {1.0};
    CHECK_THROWS_AS(iebench::generate_synthetic(broken), iebench::InvalidSpec);
    broken = spec;
    broken.class_proportions = {0.5, 0.3};
    CHECK_THROWS_AS(iebench::generate_synthetic(broken), iebench::InvalidSpec);
    broken = spec;
    broken.class_proportions = {0.9, 0.3};
    CHECK_THROWS_AS(iebench::generate_synthetic(broken), iebench::InvalidSpec);
    broken = spec;
    broken.informative_features = {5};
    CHECK_THROWS_AS(iebench::generate_synthetic(broken), iebench::InvalidSpec);
  }
}
