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

#include "iebench/svm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>

#include "iebench/errors.hpp"
#include "iebench/model_io.hpp"
#include "iebench/neighbors.hpp"
#include "iebench/rng.hpp"

namespace iebench {

double rbf_kernel(std::span<const double> a, std::span<const double> b,
                  double gamma) {
  return std::exp(-gamma * squared_distance(a, b));
}

double BinarySvm::decision(std::span<const double> x, double gamma) const {
  const std::size_t p = x.size();
  const std::size_t n_sv = alpha_y.size();
  double acc = bias;
  for (std::size_t i = 0; i < n_sv; ++i) {
    acc += alpha_y[i] *
           rbf_kernel({support_vectors.data() + i * p, p}, x, gamma);
  }
  return acc;
}

namespace {

constexpr double kAlphaEps = 1e-12;

// Platt's SMO over one class pair. X is the pair's row slice, y in {+1,-1}.
class SmoSolver {
 public:
  SmoSolver(std::vector<double> x, std::vector<std::int8_t> y, std::size_t p,
            double cost, double gamma, double tol, std::size_t max_passes,
            Rng rng)
      : x_(std::move(x)),
        y_(std::move(y)),
        p_(p),
        m_(y_.size()),
        cost_(cost),
        gamma_(gamma),
        tol_(tol),
        max_passes_(max_passes),
        rng_(rng),
        alpha_(m_, 0.0),
        error_(m_) {
    for (std::size_t i = 0; i < m_; ++i) error_[i] = -static_cast<double>(y_[i]);
  }

  bool solve() {
    bool examine_all = true;
    std::size_t passes = 0;
    while (passes < max_passes_) {
      std::size_t changed = 0;
      if (examine_all) {
        for (std::size_t i = 0; i < m_; ++i) changed += examine(i);
      } else {
        for (std::size_t i = 0; i < m_; ++i) {
          if (is_free(alpha_[i])) changed += examine(i);
        }
      }
      ++passes;
      if (examine_all) {
        if (changed == 0) return true;
        examine_all = false;
      } else if (changed == 0) {
        examine_all = true;
      }
    }
    return false;
  }

  const std::vector<double>& alpha() const { return alpha_; }
  double bias() const { return bias_; }

 private:
  std::span<const double> row(std::size_t i) const {
    return {x_.data() + i * p_, p_};
  }
  double kernel(std::size_t i, std::size_t j) const {
    return rbf_kernel(row(i), row(j), gamma_);
  }
  bool is_free(double a) const { return a > kAlphaEps && a < cost_ - kAlphaEps; }

  std::size_t examine(std::size_t i2) {
    const double y2 = y_[i2];
    const double e2 = error_[i2];
    const double r2 = e2 * y2;
    const bool violated = (r2 < -tol_ && alpha_[i2] < cost_ - kAlphaEps) ||
                          (r2 > tol_ && alpha_[i2] > kAlphaEps);
    if (!violated) return 0;

    // Second-choice heuristic: the free point with the largest |E1 - E2|.
    std::size_t best = m_;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_free(alpha_[i])) continue;
      const double gap = std::abs(error_[i] - e2);
      if (gap > best_gap) {
        best_gap = gap;
        best = i;
      }
    }
    if (best < m_ && take_step(best, i2)) return 1;

    const std::size_t start =
        static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(m_)));
    for (std::size_t off = 0; off < m_; ++off) {
      const std::size_t i1 = (start + off) % m_;
      if (is_free(alpha_[i1]) && take_step(i1, i2)) return 1;
    }
    const std::size_t start2 =
        static_cast<std::size_t>(rng_.below(static_cast<std::uint64_t>(m_)));
    for (std::size_t off = 0; off < m_; ++off) {
      const std::size_t i1 = (start2 + off) % m_;
      if (take_step(i1, i2)) return 1;
    }
    return 0;
  }

  bool take_step(std::size_t i1, std::size_t i2) {
    if (i1 == i2) return false;
    const double a1_old = alpha_[i1];
    const double a2_old = alpha_[i2];
    const double y1 = y_[i1];
    const double y2 = y_[i2];
    const double e1 = error_[i1];
    const double e2 = error_[i2];
    const double s = y1 * y2;

    double lo, hi;
    if (y1 != y2) {
      lo = std::max(0.0, a2_old - a1_old);
      hi = std::min(cost_, cost_ + a2_old - a1_old);
    } else {
      lo = std::max(0.0, a1_old + a2_old - cost_);
      hi = std::min(cost_, a1_old + a2_old);
    }
    if (lo >= hi) return false;

    const double k11 = kernel(i1, i1);
    const double k12 = kernel(i1, i2);
    const double k22 = kernel(i2, i2);
    const double eta = 2.0 * k12 - k11 - k22;

    double a2;
    if (eta < 0.0) {
      a2 = a2_old - y2 * (e1 - e2) / eta;
      a2 = std::clamp(a2, lo, hi);
    } else {
      // Degenerate curvature: compare the objective at the segment ends.
      const double f1 = y1 * (e1 + bias_) - a1_old * k11 - s * a2_old * k12;
      const double f2 = y2 * (e2 + bias_) - s * a1_old * k12 - a2_old * k22;
      const double l1 = a1_old + s * (a2_old - lo);
      const double h1 = a1_old + s * (a2_old - hi);
      const double obj_lo = l1 * f1 + lo * f2 + 0.5 * l1 * l1 * k11 +
                            0.5 * lo * lo * k22 + s * lo * l1 * k12;
      const double obj_hi = h1 * f1 + hi * f2 + 0.5 * h1 * h1 * k11 +
                            0.5 * hi * hi * k22 + s * hi * h1 * k12;
      if (obj_lo < obj_hi - kAlphaEps) {
        a2 = lo;
      } else if (obj_lo > obj_hi + kAlphaEps) {
        a2 = hi;
      } else {
        return false;
      }
    }
    if (std::abs(a2 - a2_old) < kAlphaEps * (a2 + a2_old + kAlphaEps))
      return false;

    const double a1 = a1_old + s * (a2_old - a2);
    const double d1 = y1 * (a1 - a1_old);
    const double d2 = y2 * (a2 - a2_old);

    const double b1 = e1 + d1 * k11 + d2 * k12 + bias_;
    const double b2 = e2 + d1 * k12 + d2 * k22 + bias_;
    double new_bias;
    if (is_free(a1)) {
      new_bias = b1;
    } else if (is_free(a2)) {
      new_bias = b2;
    } else {
      new_bias = (b1 + b2) / 2.0;
    }

    // Incremental error update; the only kernel rows ever materialized.
    const double bias_shift = bias_ - new_bias;
    const auto x1 = row(i1);
    const auto x2 = row(i2);
    for (std::size_t k = 0; k < m_; ++k) {
      error_[k] += d1 * rbf_kernel(x1, row(k), gamma_) +
                   d2 * rbf_kernel(x2, row(k), gamma_) + bias_shift;
    }
    alpha_[i1] = a1;
    alpha_[i2] = a2;
    bias_ = new_bias;
    return true;
  }

  std::vector<double> x_;
  std::vector<std::int8_t> y_;
  std::size_t p_;
  std::size_t m_;
  double cost_;
  double gamma_;
  double tol_;
  std::size_t max_passes_;
  Rng rng_;
  std::vector<double> alpha_;
  std::vector<double> error_;
  double bias_ = 0.0;
};

}  // namespace

SvmModel::SvmModel(std::vector<BinarySvm> pairs, double gamma, double cost,
                   std::vector<std::string> feature_names,
                   std::vector<std::string> class_names,
                   std::vector<std::string> warnings)
    : pairs_(std::move(pairs)), gamma_(gamma), cost_(cost) {
  feature_names_ = std::move(feature_names);
  class_names_ = std::move(class_names);
  warnings_ = std::move(warnings);
}

void SvmModel::predict_proba_into(std::span<const double> rows_row_major,
                                  std::size_t n_rows, std::span<double> out,
                                  ExecMode mode) const {
  check_shape(rows_row_major.size(), n_rows);
  const std::size_t p = n_features();
  const std::size_t c = n_classes();
  parallel_for(n_rows, mode, [&](std::size_t i) {
    const auto x = rows_row_major.subspan(i * p, p);
    auto probs = out.subspan(i * c, c);
    std::fill(probs.begin(), probs.end(), 0.0);
    if (pairs_.empty()) {
      probs[0] = 1.0;
      return;
    }
    const double vote = 1.0 / static_cast<double>(pairs_.size());
    for (const auto& pair : pairs_) {
      const double f = pair.decision(x, gamma_);
      probs[static_cast<std::size_t>(f >= 0.0 ? pair.class_a : pair.class_b)] +=
          vote;
    }
  });
}

void SvmModel::save(std::ostream& out) const {
  ModelWriter w(out, *this);
  w.scalar("gamma", gamma_);
  w.scalar("cost", cost_);
  w.key_line("pairs", pairs_.size());
  for (const auto& pair : pairs_) {
    w.scalar("class_a", static_cast<std::int64_t>(pair.class_a));
    w.scalar("class_b", static_cast<std::int64_t>(pair.class_b));
    w.scalar("bias", pair.bias);
    w.scalar("converged", static_cast<std::int64_t>(pair.converged ? 1 : 0));
    w.matrix("support_vectors", pair.alpha_y.size(), n_features(),
             [&](std::size_t i, std::size_t j) {
               return pair.support_vectors[i * n_features() + j];
             });
    w.double_list("alpha_y", pair.alpha_y);
  }
}

std::unique_ptr<SvmModel> train_svm_rbf(const Dataset& train,
                                        const SvmParams& params,
                                        std::uint64_t seed, ExecMode mode) {
  const std::size_t n = train.n_rows();
  const std::size_t p = train.n_features();
  const std::size_t c = train.n_classes();
  if (n < 2) throw InvalidArgument("svm training needs at least 2 rows");
  if (!(params.cost > 0.0)) throw InvalidArgument("cost must be positive");
  if (params.gamma < 0.0) throw InvalidArgument("gamma must be >= 0");
  if (!(params.tol > 0.0)) throw InvalidArgument("tol must be positive");
  const double gamma =
      params.gamma > 0.0 ? params.gamma : 1.0 / static_cast<double>(p);

  const auto by_class = rows_by_class(train.labels(), c);
  struct PairTask {
    int a, b;
  };
  std::vector<PairTask> tasks;
  for (int a = 0; a < static_cast<int>(c); ++a) {
    for (int b = a + 1; b < static_cast<int>(c); ++b) {
      if (!by_class[static_cast<std::size_t>(a)].empty() &&
          !by_class[static_cast<std::size_t>(b)].empty())
        tasks.push_back({a, b});
    }
  }

  std::vector<BinarySvm> pairs(tasks.size());
  parallel_for(tasks.size(), mode, [&](std::size_t t) {
    const auto [a, b] = tasks[t];
    const auto& rows_a = by_class[static_cast<std::size_t>(a)];
    const auto& rows_b = by_class[static_cast<std::size_t>(b)];
    const std::size_t m = rows_a.size() + rows_b.size();

    std::vector<std::size_t> slice_rows;
    slice_rows.reserve(m);
    slice_rows.insert(slice_rows.end(), rows_a.begin(), rows_a.end());
    slice_rows.insert(slice_rows.end(), rows_b.begin(), rows_b.end());
    std::sort(slice_rows.begin(), slice_rows.end());

    std::vector<double> x(m * p);
    std::vector<std::int8_t> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto src = train.row(slice_rows[i]);
      std::copy(src.begin(), src.end(), x.begin() + static_cast<std::ptrdiff_t>(i * p));
      y[i] = train.label(slice_rows[i]) == a ? std::int8_t{1} : std::int8_t{-1};
    }

    SmoSolver solver(std::move(x), std::move(y), p, params.cost, gamma,
                     params.tol, params.max_passes,
                     Rng(derive_seed(seed, {hash_tag("pair"),
                                            static_cast<std::uint64_t>(a),
                                            static_cast<std::uint64_t>(b)})));
    const bool converged = solver.solve();

    BinarySvm pair;
    pair.class_a = a;
    pair.class_b = b;
    pair.bias = -solver.bias();
    pair.converged = converged;
    pair.alpha = solver.alpha();
    pair.train_rows = slice_rows;
    for (std::size_t i = 0; i < m; ++i) {
      if (solver.alpha()[i] > kAlphaEps) {
        const auto src = train.row(slice_rows[i]);
        pair.support_vectors.insert(pair.support_vectors.end(), src.begin(),
                                    src.end());
        pair.alpha_y.push_back(solver.alpha()[i] *
                               (train.label(slice_rows[i]) == a ? 1.0 : -1.0));
      }
    }
    pairs[t] = std::move(pair);
  });

  std::vector<std::string> warnings;
  for (const auto& pair : pairs) {
    if (!pair.converged) {
      warnings.push_back("pair (" + train.class_names()[static_cast<std::size_t>(pair.class_a)] +
                         " vs " + train.class_names()[static_cast<std::size_t>(pair.class_b)] +
                         ") hit the pass limit before meeting the KKT tolerance");
    }
  }

  return std::make_unique<SvmModel>(std::move(pairs), gamma, params.cost,
                                    train.feature_names(), train.class_names(),
                                    std::move(warnings));
}

}  // namespace iebench
