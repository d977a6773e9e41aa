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

#include "iebench/resample.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "iebench/csv.hpp"
#include "iebench/errors.hpp"
#include "iebench/ingest.hpp"
#include "iebench/neighbors.hpp"
#include "iebench/rng.hpp"

namespace iebench {

std::string to_string(ResampleMethod method) {
  switch (method) {
    case ResampleMethod::kNone: return "none";
    case ResampleMethod::kSmote: return "smote";
    case ResampleMethod::kAdasyn: return "adasyn";
  }
  throw InvalidArgument("unknown resample method");
}

ResampleMethod resample_method_from_string(const std::string& name) {
  if (name == "none") return ResampleMethod::kNone;
  if (name == "smote") return ResampleMethod::kSmote;
  if (name == "adasyn") return ResampleMethod::kAdasyn;
  throw InvalidArgument("unknown resample method: " + name);
}

namespace {

void validate(const ResampleConfig& cfg) {
  if (cfg.k_neighbors < 1) throw InvalidArgument("k_neighbors must be >= 1");
  if (!(cfg.beta >= 0.0 && cfg.beta <= 1.0))
    throw InvalidArgument("beta must lie in [0,1]");
  if (cfg.t_override && !(*cfg.t_override >= 0.0 && *cfg.t_override < 1.0))
    throw InvalidArgument("t_override must lie in [0,1)");
}

ResampleOutcome identity_outcome(const Dataset& train) {
  return ResampleOutcome{train, std::vector<bool>(train.n_rows(), false),
                         std::vector<std::size_t>(train.n_classes(), 0),
                         {}};
}

// Same-class neighbor lists for every row of one class, indices mapped back
// to the full dataset. k collapses to class_size-1 when the class is small.
std::vector<std::vector<std::size_t>> same_class_neighbors(
    const Dataset& train, const std::vector<std::size_t>& class_rows,
    std::size_t k) {
  const std::size_t m = class_rows.size();
  const std::size_t p = train.n_features();
  std::vector<double> sub(m * p);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = train.row(class_rows[i]);
    std::copy(row.begin(), row.end(), sub.begin() + i * p);
  }
  KnnIndex index(std::move(sub), p);
  const std::size_t k_eff = std::min(k, m - 1);
  std::vector<std::vector<std::size_t>> lists(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto found = index.query_self(i, k_eff);
    lists[i].reserve(found.size());
    for (const auto& nb : found) lists[i].push_back(class_rows[nb.index]);
  }
  return lists;
}

struct SynthBuffer {
  std::vector<double> matrix;
  std::vector<int> labels;
  std::vector<ParentPair> pairs;

  void emit(const Dataset& train, std::size_t seed_row, std::size_t nb_row,
            double t, int label) {
    const auto a = train.row(seed_row);
    const auto b = train.row(nb_row);
    for (std::size_t j = 0; j < a.size(); ++j) {
      matrix.push_back(a[j] + t * (b[j] - a[j]));
    }
    labels.push_back(label);
    pairs.push_back(ParentPair{seed_row, nb_row, t});
  }
};

ResampleOutcome assemble(const Dataset& train, SynthBuffer buf,
                         std::vector<std::size_t> generated) {
  const std::size_t n = train.n_rows();
  const std::size_t extra = buf.labels.size();
  std::vector<double> matrix = train.matrix();
  matrix.insert(matrix.end(), buf.matrix.begin(), buf.matrix.end());
  std::vector<int> labels = train.labels();
  labels.insert(labels.end(), buf.labels.begin(), buf.labels.end());

  std::vector<bool> flags(n + extra, false);
  std::fill(flags.begin() + static_cast<std::ptrdiff_t>(n), flags.end(), true);

  ResampleOutcome outcome{
      Dataset::create(train.features(), std::move(matrix), std::move(labels),
                      train.class_names()),
      std::move(flags), std::move(generated), std::move(buf.pairs)};
  return outcome;
}

}  // namespace

ResampleOutcome smote(const Dataset& train, const ResampleConfig& cfg) {
  validate(cfg);
  const auto dist = class_distribution(train);
  const std::int64_t majority =
      *std::max_element(dist.counts.begin(), dist.counts.end());
  const auto by_class = rows_by_class(train.labels(), train.n_classes());

  SynthBuffer buf;
  std::vector<std::size_t> generated(train.n_classes(), 0);
  for (std::size_t s = 0; s < train.n_classes(); ++s) {
    const std::int64_t need = majority - dist.counts[s];
    if (need <= 0) continue;
    if (dist.counts[s] < 2) throw ClassTooSmall(s, dist.counts[s]);

    const auto& rows = by_class[s];
    const auto neighbor_lists =
        same_class_neighbors(train, rows, cfg.k_neighbors);

    Rng rng(derive_seed(cfg.seed, {hash_tag("smote"), s}));
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) order[i] = i;
    rng.shuffle(order);

    for (std::int64_t i = 0; i < need; ++i) {
      const std::size_t local = order[static_cast<std::size_t>(i) % order.size()];
      const auto& nbs = neighbor_lists[local];
      const std::size_t pick = static_cast<std::size_t>(
          rng.below(static_cast<std::uint64_t>(nbs.size())));
      const double t = cfg.t_override ? *cfg.t_override : rng.real01();
      buf.emit(train, rows[local], nbs[pick], t, static_cast<int>(s));
    }
    generated[s] = static_cast<std::size_t>(need);
  }
  return assemble(train, std::move(buf), std::move(generated));
}

ResampleOutcome adasyn(const Dataset& train, const ResampleConfig& cfg) {
  validate(cfg);
  const auto dist = class_distribution(train);
  const std::int64_t majority =
      *std::max_element(dist.counts.begin(), dist.counts.end());
  const auto by_class = rows_by_class(train.labels(), train.n_classes());

  KnnIndex whole(train.matrix(), train.n_features(), train.labels());

  SynthBuffer buf;
  std::vector<std::size_t> generated(train.n_classes(), 0);
  for (std::size_t s = 0; s < train.n_classes(); ++s) {
    const double g_target =
        static_cast<double>(majority - dist.counts[s]) * cfg.beta;
    const std::int64_t total = std::llround(g_target);
    if (majority - dist.counts[s] <= 0 || total <= 0) continue;
    if (dist.counts[s] < 2) throw ClassTooSmall(s, dist.counts[s]);

    const auto& rows = by_class[s];
    const std::size_t m = rows.size();

    // Boundary weight of each class row: share of other-class rows among its
    // k nearest neighbors over the whole training set.
    std::vector<double> ratio(m, 0.0);
    double ratio_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const auto nbs = whole.query_self_relaxed(rows[i], cfg.k_neighbors);
      std::size_t foreign = 0;
      for (const auto& nb : nbs) {
        if (train.label(nb.index) != static_cast<int>(s)) ++foreign;
      }
      ratio[i] = static_cast<double>(foreign) /
                 static_cast<double>(cfg.k_neighbors);
      ratio_sum += ratio[i];
    }
    std::vector<double> quotas(m);
    if (ratio_sum <= 0.0) {
      for (std::size_t i = 0; i < m; ++i)
        quotas[i] = g_target / static_cast<double>(m);
    } else {
      for (std::size_t i = 0; i < m; ++i)
        quotas[i] = ratio[i] / ratio_sum * g_target;
    }
    const auto counts = largest_remainder_round(quotas, total);

    const auto neighbor_lists =
        same_class_neighbors(train, rows, cfg.k_neighbors);
    Rng rng(derive_seed(cfg.seed, {hash_tag("adasyn"), s}));
    for (std::size_t i = 0; i < m; ++i) {
      const auto& nbs = neighbor_lists[i];
      for (std::int64_t rep = 0; rep < counts[i]; ++rep) {
        const std::size_t pick = static_cast<std::size_t>(
            rng.below(static_cast<std::uint64_t>(nbs.size())));
        const double t = cfg.t_override ? *cfg.t_override : rng.real01();
        buf.emit(train, rows[i], nbs[pick], t, static_cast<int>(s));
      }
    }
    generated[s] = static_cast<std::size_t>(total);
  }
  return assemble(train, std::move(buf), std::move(generated));
}

ResampleOutcome resample(const Dataset& train, const ResampleConfig& cfg) {
  switch (cfg.method) {
    case ResampleMethod::kNone:
      validate(cfg);
      return identity_outcome(train);
    case ResampleMethod::kSmote: return smote(train, cfg);
    case ResampleMethod::kAdasyn: return adasyn(train, cfg);
  }
  throw InvalidArgument("unknown resample method");
}

void write_resampled_csv(const ResampleOutcome& outcome, std::ostream& out) {
  const Dataset& ds = outcome.dataset;
  for (const auto& f : ds.features()) out << f.name << ',';
  out << "label,synthetic\n";
  for (std::size_t i = 0; i < ds.n_rows(); ++i) {
    const auto row = ds.row(i);
    for (double v : row) out << format_double(v) << ',';
    out << ds.class_names()[static_cast<std::size_t>(ds.label(i))] << ','
        << (outcome.synthetic_flags[i] ? 1 : 0) << '\n';
  }
}

}  // namespace iebench
