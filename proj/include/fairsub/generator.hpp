// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSUB_GENERATOR_HPP_
#define FAIRSUB_GENERATOR_HPP_

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fairsub/instance.hpp"

namespace fairsub {

// Raised when generator parameters cannot yield a feasible instance; the
// message names the violated bound.
class InfeasibleGenerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline std::vector<int> random_labels(std::mt19937_64& rng, int n,
                                      int num_labels) {
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i)
    labels[i] = static_cast<int>(rng() % num_labels);
  return labels;
}

inline std::vector<int> label_counts(const std::vector<int>& labels,
                                     int num_labels) {
  std::vector<int> counts(num_labels, 0);
  for (int l : labels) ++counts[l];
  return counts;
}

// Validates the necessary feasibility conditions a generated instance must
// satisfy; sufficiency is certified later by build_fair_base.
inline void check_generated_bounds(const std::vector<int>& lower,
                                   const std::vector<int>& upper,
                                   const std::vector<int>& color_sizes,
                                   int matroid_capacity) {
  int sum_lower = 0;
  for (std::size_t c = 0; c < lower.size(); ++c) {
    if (lower[c] > upper[c])
      throw InfeasibleGenerationError(
          "gen_instance: lower bound " + std::to_string(lower[c]) +
          " > upper bound " + std::to_string(upper[c]) + " for color " +
          std::to_string(c));
    if (lower[c] > color_sizes[c])
      throw InfeasibleGenerationError(
          "gen_instance: lower bound " + std::to_string(lower[c]) +
          " exceeds color size " + std::to_string(color_sizes[c]) +
          " for color " + std::to_string(c));
    sum_lower += lower[c];
  }
  if (sum_lower > matroid_capacity)
    throw InfeasibleGenerationError(
        "gen_instance: sum of lower bounds " + std::to_string(sum_lower) +
        " exceeds matroid capacity " + std::to_string(matroid_capacity));
}

}  // namespace detail

// Synthetic social-network coverage: each node covers itself plus random
// out-neighbors; 4 matroid groups with proportional caps ceil((|V_g|/n) r);
// fairness colors with bounds floor(0.9 (|V_c|/n) r), ceil(1.5 (|V_c|/n) r).
inline Instance gen_coverage(int n, int colors, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int kGroups = 4;
  std::vector<int> groups = detail::random_labels(rng, n, kGroups);
  std::vector<int> color_of = detail::random_labels(rng, n, colors);

  std::vector<std::vector<int>> neighbors(n);
  for (int v = 0; v < n; ++v) {
    int degree = 1 + static_cast<int>(rng() % 20);
    neighbors[v].push_back(v);
    for (int d = 0; d < degree; ++d)
      neighbors[v].push_back(static_cast<int>(rng() % n));
  }

  std::vector<int> gsize = detail::label_counts(groups, kGroups);
  std::vector<int> caps(kGroups);
  int capacity = 0;
  for (int g = 0; g < kGroups; ++g) {
    caps[g] = static_cast<int>(std::ceil(static_cast<double>(gsize[g]) / n * r));
    capacity += caps[g];
  }

  std::vector<int> csize = detail::label_counts(color_of, colors);
  std::vector<int> lower(colors), upper(colors);
  for (int c = 0; c < colors; ++c) {
    double share = static_cast<double>(csize[c]) / n;
    lower[c] = static_cast<int>(std::floor(0.9 * share * r));
    upper[c] = static_cast<int>(std::ceil(1.5 * share * r));
  }
  detail::check_generated_bounds(lower, upper, csize, capacity);

  return Instance(Matroid::Partition(groups, caps),
                  FairnessSpec(color_of, lower, upper),
                  Objective::Coverage(std::move(neighbors), n),
                  InstanceMeta{"coverage", seed, r});
}

// Synthetic exemplar-based clustering: random points in [0,1]^7; 5 matroid
// groups with flat caps r/5; fairness colors with flat bounds
// l = r/10 + 2, u = 2r/5 (integer arithmetic).
inline Instance gen_clustering(int n, int colors, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int kGroups = 5;
  const int kDim = 7;
  std::vector<int> groups = detail::random_labels(rng, n, kGroups);
  std::vector<int> color_of = detail::random_labels(rng, n, colors);

  std::vector<std::vector<double>> points(n, std::vector<double>(kDim));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (auto& p : points)
    for (double& x : p) x = unit(rng);

  const int cap = std::max(1, r / kGroups);
  std::vector<int> caps(kGroups, cap);
  std::vector<int> lower(colors, r / 10 + 2);
  std::vector<int> upper(colors, 2 * r / 5);
  detail::check_generated_bounds(lower, upper,
                                 detail::label_counts(color_of, colors),
                                 kGroups * cap);

  return Instance(Matroid::Partition(groups, caps),
                  FairnessSpec(color_of, lower, upper),
                  Objective::Clustering(std::move(points)),
                  InstanceMeta{"clustering", seed, r});
}

// Synthetic recommender: random nonnegative item vectors in [0,1]^20 plus a
// signed user vector; an appended constant coordinate shifts all user scores
// to be nonnegative, which keeps the alpha = 0.85 blend monotone. 9 matroid
// groups with caps ceil(1.2 (|V_d|/n) r); fairness colors with bounds
// floor(0.8 (|V_c|/n) r), ceil(1.4 (|V_c|/n) r).
inline Instance gen_recommender(int n, int colors, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int kGroups = 9;
  const int kDim = 20;
  std::vector<int> groups = detail::random_labels(rng, n, kGroups);
  std::vector<int> color_of = detail::random_labels(rng, n, colors);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> signed_unit(-1.0, 1.0);
  std::vector<std::vector<double>> items(n, std::vector<double>(kDim + 1));
  for (auto& v : items) {
    for (int d = 0; d < kDim; ++d) v[d] = unit(rng);
    v[kDim] = 1.0;
  }
  std::vector<double> user(kDim + 1, 0.0);
  for (int d = 0; d < kDim; ++d) user[d] = signed_unit(rng);
  double min_score = 0.0;
  for (const auto& v : items) {
    double s = 0;
    for (int d = 0; d < kDim; ++d) s += user[d] * v[d];
    min_score = std::min(min_score, s);
  }
  user[kDim] = -min_score;

  std::vector<int> gsize = detail::label_counts(groups, kGroups);
  std::vector<int> caps(kGroups);
  int capacity = 0;
  for (int g = 0; g < kGroups; ++g) {
    caps[g] = static_cast<int>(
        std::ceil(1.2 * static_cast<double>(gsize[g]) / n * r));
    capacity += caps[g];
  }

  std::vector<int> csize = detail::label_counts(color_of, colors);
  std::vector<int> lower(colors), upper(colors);
  for (int c = 0; c < colors; ++c) {
    double share = static_cast<double>(csize[c]) / n;
    lower[c] = static_cast<int>(std::floor(0.8 * share * r));
    upper[c] = static_cast<int>(std::ceil(1.4 * share * r));
  }
  detail::check_generated_bounds(lower, upper, csize, capacity);

  return Instance(Matroid::Partition(groups, caps),
                  FairnessSpec(color_of, lower, upper),
                  Objective::Recommender(std::move(items), std::move(user),
                                         0.85),
                  InstanceMeta{"recommender", seed, r});
}

// colors <= 0 selects the per-kind default (7 / 6 / 18).
inline Instance gen_instance(const std::string& kind, int n, int colors, int r,
                             std::uint64_t seed) {
  if (n <= 0 || n > 100000)
    throw std::invalid_argument("gen_instance: n out of range (1..100000)");
  if (r <= 0) throw std::invalid_argument("gen_instance: r must be positive");
  if (kind == "coverage")
    return gen_coverage(n, colors > 0 ? colors : 7, r, seed);
  if (kind == "clustering")
    return gen_clustering(n, colors > 0 ? colors : 6, r, seed);
  if (kind == "recommender")
    return gen_recommender(n, colors > 0 ? colors : 18, r, seed);
  throw std::invalid_argument("gen_instance: unknown kind " + kind);
}

}  // namespace fairsub

#endif  // FAIRSUB_GENERATOR_HPP_
