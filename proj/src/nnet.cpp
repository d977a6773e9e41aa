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

#include "iebench/nnet.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/gbm.hpp"
#include "iebench/model_io.hpp"
#include "iebench/rng.hpp"

namespace iebench {

namespace {

constexpr std::size_t kGradBlock = 64;
constexpr double kProbFloor = 1e-12;

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Layout {
  std::size_t p, h, c;
  std::size_t hidden_stride() const { return p + 1; }
  std::size_t output_offset() const { return h * (p + 1); }
  std::size_t output_stride() const { return h + 1; }
};

// Forward pass into activations; returns -log p(label) when label >= 0.
double forward_row(const Layout& lay, std::span<const double> w,
                   std::span<const double> x, int label,
                   std::span<double> z_hidden, std::span<double> probs) {
  for (std::size_t u = 0; u < lay.h; ++u) {
    const double* wu = w.data() + u * lay.hidden_stride();
    double acc = wu[0];
    for (std::size_t j = 0; j < lay.p; ++j) acc += wu[1 + j] * x[j];
    z_hidden[u] = logistic(acc);
  }
  for (std::size_t k = 0; k < lay.c; ++k) {
    const double* wk = w.data() + lay.output_offset() + k * lay.output_stride();
    double acc = wk[0];
    for (std::size_t u = 0; u < lay.h; ++u) acc += wk[1 + u] * z_hidden[u];
    probs[k] = acc;
  }
  softmax_into(std::span<const double>(probs.data(), lay.c), probs);
  if (label < 0) return 0.0;
  return -std::log(std::max(probs[static_cast<std::size_t>(label)], kProbFloor));
}

}  // namespace

NnetObjective::NnetObjective(std::vector<double> matrix_row_major,
                             std::vector<int> labels, std::size_t n_features,
                             std::size_t hidden, std::size_t n_classes,
                             double weight_decay)
    : matrix_(std::move(matrix_row_major)),
      labels_(std::move(labels)),
      n_features_(n_features),
      hidden_(hidden),
      n_classes_(n_classes),
      weight_decay_(weight_decay) {
  if (hidden_ < 1) throw InvalidArgument("need at least one hidden unit");
  if (n_classes_ < 1) throw InvalidArgument("need at least one class");
  if (labels_.empty() || matrix_.size() != labels_.size() * n_features_)
    throw InvalidArgument("matrix shape does not match labels");
  if (weight_decay_ < 0.0) throw InvalidArgument("weight_decay must be >= 0");
}

void NnetObjective::forward(std::span<const double> w, std::span<const double> x,
                            std::span<double> probs) const {
  const Layout lay{n_features_, hidden_, n_classes_};
  std::vector<double> z(hidden_);
  forward_row(lay, w, x, -1, z, probs);
}

double NnetObjective::loss(std::span<const double> w) const {
  return run<false>(w, {}, ExecMode::kSerial);
}

double NnetObjective::loss_and_grad(std::span<const double> w,
                                    std::span<double> grad,
                                    ExecMode mode) const {
  return run<true>(w, grad, mode);
}

template <bool WithGrad>
double NnetObjective::run(std::span<const double> w, std::span<double> grad,
                          ExecMode mode) const {
  const Layout lay{n_features_, hidden_, n_classes_};
  const std::size_t n = labels_.size();
  const std::size_t d = dim();
  if (w.size() != d) throw InvalidArgument("weight vector has wrong length");
  if (WithGrad && grad.size() != d)
    throw InvalidArgument("gradient buffer has wrong length");

  const std::size_t n_blocks = (n + kGradBlock - 1) / kGradBlock;
  std::vector<double> block_loss(n_blocks, 0.0);
  std::vector<std::vector<double>> block_grad;
  if (WithGrad) block_grad.assign(n_blocks, std::vector<double>(d, 0.0));

  parallel_for(n_blocks, mode, [&](std::size_t b) {
    std::vector<double> z(lay.h);
    std::vector<double> probs(lay.c);
    std::vector<double> delta_hidden(lay.h);
    const std::size_t lo = b * kGradBlock;
    const std::size_t hi = std::min(n, lo + kGradBlock);
    double loss_acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::span<const double> x(matrix_.data() + i * lay.p, lay.p);
      loss_acc += forward_row(lay, w, x, labels_[i], z, probs);
      if constexpr (WithGrad) {
        auto& g = block_grad[b];
        // output layer: dL/do_k = p_k - y_k
        for (std::size_t k = 0; k < lay.c; ++k) {
          const double dk =
              probs[k] - (static_cast<int>(k) == labels_[i] ? 1.0 : 0.0);
          double* gk = g.data() + lay.output_offset() + k * lay.output_stride();
          gk[0] += dk;
          for (std::size_t u = 0; u < lay.h; ++u) gk[1 + u] += dk * z[u];
        }
        // hidden layer: back through logistic
        for (std::size_t u = 0; u < lay.h; ++u) {
          double acc = 0.0;
          for (std::size_t k = 0; k < lay.c; ++k) {
            const double dk =
                probs[k] - (static_cast<int>(k) == labels_[i] ? 1.0 : 0.0);
            acc += dk * w[lay.output_offset() + k * lay.output_stride() + 1 + u];
          }
          delta_hidden[u] = acc * z[u] * (1.0 - z[u]);
        }
        for (std::size_t u = 0; u < lay.h; ++u) {
          double* gu = g.data() + u * lay.hidden_stride();
          gu[0] += delta_hidden[u];
          for (std::size_t j = 0; j < lay.p; ++j)
            gu[1 + j] += delta_hidden[u] * x[j];
        }
      }
    }
    block_loss[b] = loss_acc;
  });

  double loss_total = 0.0;
  for (double v : block_loss) loss_total += v;
  loss_total /= static_cast<double>(n);

  double penalty = 0.0;
  for (double v : w) penalty += v * v;
  loss_total += weight_decay_ * penalty;

  if constexpr (WithGrad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& g : block_grad) {
      for (std::size_t idx = 0; idx < d; ++idx) grad[idx] += g[idx];
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t idx = 0; idx < d; ++idx) {
      grad[idx] = grad[idx] * inv_n + 2.0 * weight_decay_ * w[idx];
    }
  }
  return loss_total;
}

NnetModel::NnetModel(std::vector<double> weights, std::vector<double> means,
                     std::vector<double> sds, std::size_t hidden,
                     std::vector<std::string> feature_names,
                     std::vector<std::string> class_names)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      sds_(std::move(sds)),
      hidden_(hidden) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
  const Layout lay{feature_names_.size(), hidden_, class_names_.size()};
  if (weights_.size() != lay.h * lay.hidden_stride() + lay.c * lay.output_stride())
    throw InvalidArgument("weight vector has wrong length");
  if (means_.size() != feature_names_.size() || sds_.size() != means_.size())
    throw InvalidArgument("standardization vectors have wrong length");
}

void NnetModel::predict_proba_into(std::span<const double> rows_row_major,
                                   std::size_t n_rows, std::span<double> out,
                                   ExecMode mode) const {
  check_shape(rows_row_major.size(), n_rows);
  const Layout lay{n_features(), hidden_, n_classes()};
  parallel_for(n_rows, mode, [&](std::size_t i) {
    std::vector<double> x(lay.p);
    std::vector<double> z(lay.h);
    for (std::size_t j = 0; j < lay.p; ++j) {
      const double raw = rows_row_major[i * lay.p + j];
      x[j] = sds_[j] > 0.0 ? (raw - means_[j]) / sds_[j] : 0.0;
    }
    forward_row(lay, weights_, x, -1, z, out.subspan(i * lay.c, lay.c));
  });
}

void NnetModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.scalar("hidden", hidden_);
  w.double_list("weights", weights_);
  w.double_list("means", means_);
  w.double_list("sds", sds_);
}

std::unique_ptr<NnetModel> train_nnet(const Dataset& train,
                                      const NnetParams& params,
                                      std::uint64_t seed, ExecMode mode) {
  const std::size_t n = train.n_rows();
  const std::size_t p = train.n_features();
  const std::size_t c = train.n_classes();
  if (n < 2) throw InvalidArgument("network training needs at least 2 rows");
  if (params.init_half_range < 0.0)
    throw InvalidArgument("init_half_range must be >= 0");

  // Standardize with the sample (n-1) deviation; constant features map to 0.
  std::vector<double> means(p, 0.0);
  std::vector<double> sds(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) means[j] += train.value(i, j);
  }
  for (std::size_t j = 0; j < p; ++j) means[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double d = train.value(i, j) - means[j];
      sds[j] += d * d;
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    sds[j] = n > 1 ? std::sqrt(sds[j] / static_cast<double>(n - 1)) : 0.0;
  }

  std::vector<double> standardized(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      standardized[i * p + j] =
          sds[j] > 0.0 ? (train.value(i, j) - means[j]) / sds[j] : 0.0;
    }
  }

  NnetObjective obj(std::move(standardized), train.labels(), p, params.hidden,
                    c, params.weight_decay);

  std::vector<double> w(obj.dim(), 0.0);
  if (params.init_half_range > 0.0) {
    Rng rng(derive_seed(seed, {hash_tag("init")}));
    for (auto& v : w) v = rng.symmetric(params.init_half_range);
  }

  std::vector<double> grad(obj.dim());
  std::vector<double> trial(obj.dim());
  double eta = 1.0;
  double loss = obj.loss_and_grad(w, grad, mode);
  if (!std::isfinite(loss)) throw NonFiniteLoss(0);

  for (std::size_t iter = 0; iter < params.max_iter; ++iter) {
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    if (gnorm2 < 1e-18) break;

    eta = std::min(eta * 2.0, 1e6);
    double trial_loss = 0.0;
    bool accepted = false;
    while (eta > 1e-20) {
      for (std::size_t idx = 0; idx < w.size(); ++idx)
        trial[idx] = w[idx] - eta * grad[idx];
      trial_loss = obj.loss(trial);
      if (std::isfinite(trial_loss) &&
          trial_loss <= loss - 1e-4 * eta * gnorm2) {
        accepted = true;
        break;
      }
      eta /= 2.0;
    }
    if (!accepted) break;

    w.swap(trial);
    loss = obj.loss_and_grad(w, grad, mode);
    if (!std::isfinite(loss)) throw NonFiniteLoss(iter + 1);
  }

  return std::make_unique<NnetModel>(std::move(w), std::move(means),
                                     std::move(sds), params.hidden,
                                     train.feature_names(),
                                     train.class_names());
}

}  // namespace iebench
