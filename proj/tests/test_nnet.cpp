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

#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "iebench/metrics.hpp"
#include "iebench/nnet.hpp"
#include "iebench/rng.hpp"

using iebench::NnetObjective;
using iebench::NnetParams;

namespace {

NnetObjective small_objective(std::size_t n, std::size_t p, std::size_t h,
                              std::size_t c, double decay, std::uint64_t seed) {
  iebench::Rng rng(seed);
  std::vector<double> matrix(n * p);
  for (auto& v : matrix) v = rng.normal();
  std::vector<int> labels(n);
  for (auto& l : labels) l = static_cast<int>(rng.below(c));
  return NnetObjective(std::move(matrix), std::move(labels), p, h, c, decay);
}

std::vector<double> random_weights(std::size_t dim, std::uint64_t seed) {
  iebench::Rng rng(seed);
  std::vector<double> w(dim);
  for (auto& v : w) v = 0.4 * rng.normal();
  return w;
}

}  // namespace

TEST_SUITE("nnet") {
  TEST_CASE("analytic gradient matches central differences") {
    auto obj = small_objective(40, 4, 3, 3, 1e-3, 61);
    auto w = random_weights(obj.dim(), 62);
    std::vector<double> grad(obj.dim());
    const double loss = obj.loss_and_grad(w, grad);
    CHECK(loss == doctest::Approx(obj.loss(w)).epsilon(1e-12));

    const double eps = 1e-5;
    double worst = 0.0;
    for (std::size_t d = 0; d < obj.dim(); ++d) {
      auto probe = w;
      probe[d] = w[d] + eps;
      const double up = obj.loss(probe);
      probe[d] = w[d] - eps;
      const double down = obj.loss(probe);
      const double numeric = (up - down) / (2.0 * eps);
      const double rel = std::abs(grad[d] - numeric) /
                         std::max(1.0, std::abs(grad[d]) + std::abs(numeric));
      worst = std::max(worst, rel);
    }
    CHECK(worst < 1e-4);
  }

  TEST_CASE("gradient bytes do not depend on the execution mode") {
    auto obj = small_objective(200, 5, 4, 2, 1e-4, 63);
    auto w = random_weights(obj.dim(), 64);
    std::vector<double> grad_serial(obj.dim());
    std::vector<double> grad_parallel(obj.dim());
    const double loss_serial =
        obj.loss_and_grad(w, grad_serial, iebench::ExecMode::kSerial);
    const double loss_parallel =
        obj.loss_and_grad(w, grad_parallel, iebench::ExecMode::kOpenMP);
    CHECK(loss_serial == loss_parallel);
    CHECK(grad_serial == grad_parallel);
  }

  TEST_CASE("forward pass emits a probability row") {
    auto obj = small_objective(10, 4, 3, 3, 0.0, 65);
    auto w = random_weights(obj.dim(), 66);
    std::vector<double> x = {0.3, -1.2, 0.5, 2.0};
    std::vector<double> probs(3);
    obj.forward(w, x, probs);
    CHECK(probs[0] + probs[1] + probs[2] == doctest::Approx(1.0));
    for (double v : probs) CHECK(v >= 0.0);
  }

  TEST_CASE("weight decay adds the squared parameter norm") {
    auto obj_free = small_objective(30, 3, 2, 2, 0.0, 67);
    auto obj_decay = small_objective(30, 3, 2, 2, 0.5, 67);
    auto w = random_weights(obj_free.dim(), 68);
    double norm2 = 0.0;
    for (double v : w) norm2 += v * v;
    CHECK(obj_decay.loss(w) == doctest::Approx(obj_free.loss(w) + 0.5 * norm2));
  }

  TEST_CASE("zero init makes training seed-independent") {
    auto ds = testutil::grid_data(80, 4, 2, 69);
    NnetParams params;
    params.hidden = 3;
    params.max_iter = 40;
    params.init_half_range = 0.0;
    auto a = iebench::train_nnet(ds, params, 1);
    auto b = iebench::train_nnet(ds, params, 2);
    std::ostringstream sa, sb;
    a->save(sa);
    b->save(sb);
    CHECK(sa.str() == sb.str());
  }

  TEST_CASE("learns separable data beyond the no-information rate") {
    auto ds = testutil::grid_data(250, 5, 2, 70, 2.0);
    NnetParams params;
    params.hidden = 4;
    params.max_iter = 200;
    auto model = iebench::train_nnet(ds, params, 3);
    const auto cm = iebench::ConfusionMatrix::from_predictions(
        ds.labels(), model->predict(ds), 2);
    CHECK(iebench::accuracy(cm) > iebench::no_information_rate(ds) + 0.1);

    auto proba = model->predict_proba(ds);
    for (std::size_t i = 0; i < ds.n_rows(); ++i) {
      CHECK(proba[i * 2] + proba[i * 2 + 1] == doctest::Approx(1.0));
    }
    CHECK(model->weights().size() ==
          params.hidden * (ds.n_features() + 1) + 2 * (params.hidden + 1));
  }

  TEST_CASE("training across modes produces identical models") {
    auto ds = testutil::grid_data(100, 4, 3, 71);
    NnetParams params;
    params.hidden = 3;
    params.max_iter = 60;
    auto serial = iebench::train_nnet(ds, params, 4, iebench::ExecMode::kSerial);
    auto parallel = iebench::train_nnet(ds, params, 4, iebench::ExecMode::kOpenMP);
    std::ostringstream ss, sp;
    serial->save(ss);
    parallel->save(sp);
    CHECK(ss.str() == sp.str());
  }
}
