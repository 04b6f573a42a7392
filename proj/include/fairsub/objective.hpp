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

#ifndef FAIRSUB_OBJECTIVE_HPP_
#define FAIRSUB_OBJECTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "fairsub/element_set.hpp"

namespace fairsub {

enum class ObjectiveKind { kCoverage, kClustering, kLinear, kRecommender };

// f(S) = |union of N(v) over v in S|.
struct CoverageData {
  std::vector<std::vector<int>> neighbors;
  int item_count = 0;
};

// f(S) = sum over points e' of (d(e',origin) - min over e in S+{origin} of
// d(e',e)), with d the squared Euclidean distance.
struct ClusteringData {
  std::vector<std::vector<double>> points;
};

struct LinearData {
  std::vector<double> weights;
};

// f(S) = alpha * sum_{m'} max(max_{m in S} v_m . v_{m'}, 0)
//      + (1 - alpha) * sum_{m in S} w_u . v_m
struct RecommenderData {
  std::vector<std::vector<double>> item_vectors;
  std::vector<double> user_vector;
  double alpha = 0.85;
};

class Objective {
 public:
  static Objective Coverage(std::vector<std::vector<int>> neighbors,
                            int item_count) {
    // Neighbor lists are sets: canonicalize to sorted unique ids.
    for (auto& nb : neighbors) {
      for (int v : nb) {
        if (v < 0 || v >= item_count)
          throw std::invalid_argument("Objective::Coverage: item out of range");
      }
      std::sort(nb.begin(), nb.end());
      nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    return Objective(CoverageData{std::move(neighbors), item_count});
  }

  static Objective Clustering(std::vector<std::vector<double>> points) {
    std::size_t dim = points.empty() ? 0 : points[0].size();
    for (const auto& x : points) {
      if (x.size() != dim)
        throw std::invalid_argument("Objective::Clustering: dim mismatch");
    }
    return Objective(ClusteringData{std::move(points)});
  }

  static Objective Linear(std::vector<double> weights) {
    return Objective(LinearData{std::move(weights)});
  }

  static Objective Recommender(std::vector<std::vector<double>> item_vectors,
                               std::vector<double> user_vector, double alpha) {
    for (const auto& v : item_vectors) {
      if (v.size() != user_vector.size())
        throw std::invalid_argument("Objective::Recommender: dim mismatch");
    }
    return Objective(
        RecommenderData{std::move(item_vectors), std::move(user_vector), alpha});
  }

  ObjectiveKind kind() const {
    return static_cast<ObjectiveKind>(data_.index());
  }

  int universe_size() const {
    switch (kind()) {
      case ObjectiveKind::kCoverage:
        return static_cast<int>(coverage().neighbors.size());
      case ObjectiveKind::kClustering:
        return static_cast<int>(clustering().points.size());
      case ObjectiveKind::kLinear:
        return static_cast<int>(linear().weights.size());
      case ObjectiveKind::kRecommender:
        return static_cast<int>(recommender().item_vectors.size());
    }
    return 0;
  }

  const CoverageData& coverage() const { return std::get<CoverageData>(data_); }
  const ClusteringData& clustering() const {
    return std::get<ClusteringData>(data_);
  }
  const LinearData& linear() const { return std::get<LinearData>(data_); }
  const RecommenderData& recommender() const {
    return std::get<RecommenderData>(data_);
  }

 private:
  template <typename T>
  explicit Objective(T data) : data_(std::move(data)) {}

  std::variant<CoverageData, ClusteringData, LinearData, RecommenderData>
      data_;
};

namespace detail {
inline double sq_dist(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double sq_norm(const std::vector<double>& a) {
  double s = 0;
  for (double x : a) s += x * x;
  return s;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
}  // namespace detail

// Value and marginal-gain oracle with incremental per-element state.
// One Evaluator per run; never shared across concurrent runs.
class Evaluator {
 public:
  explicit Evaluator(const Objective& obj) : obj_(obj) { reset(); }

  const Objective& objective() const { return obj_; }
  const ElementSet& current() const { return cur_; }
  double value() const { return value_; }

  void reset() {
    cur_ = ElementSet();
    value_ = 0;
    switch (obj_.kind()) {
      case ObjectiveKind::kCoverage:
        cover_count_.assign(obj_.coverage().item_count, 0);
        break;
      case ObjectiveKind::kClustering: {
        const auto& pts = obj_.clustering().points;
        best_aux_.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
          best_aux_[i] = detail::sq_norm(pts[i]);
        break;
      }
      case ObjectiveKind::kRecommender:
        best_aux_.assign(obj_.recommender().item_vectors.size(), 0.0);
        break;
      case ObjectiveKind::kLinear:
        break;
    }
  }

  // Marginal gain of adding e to the current set.
  double gain(int e) const {
    if (cur_.contains(e))
      throw std::invalid_argument("Evaluator::gain: element already in set");
    switch (obj_.kind()) {
      case ObjectiveKind::kCoverage: {
        double g = 0;
        for (int v : obj_.coverage().neighbors[e]) {
          if (cover_count_[v] == 0) g += 1;
        }
        return g;
      }
      case ObjectiveKind::kClustering: {
        const auto& pts = obj_.clustering().points;
        double g = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
          double d = detail::sq_dist(pts[i], pts[e]);
          if (d < best_aux_[i]) g += best_aux_[i] - d;
        }
        return g;
      }
      case ObjectiveKind::kLinear:
        return obj_.linear().weights[e];
      case ObjectiveKind::kRecommender: {
        const auto& rec = obj_.recommender();
        double g = 0;
        for (std::size_t i = 0; i < rec.item_vectors.size(); ++i) {
          double s = detail::dot(rec.item_vectors[e], rec.item_vectors[i]);
          if (s > best_aux_[i]) g += s - best_aux_[i];
        }
        return rec.alpha * g +
               (1 - rec.alpha) * detail::dot(rec.user_vector,
                                             rec.item_vectors[e]);
      }
    }
    return 0;
  }

  void add(int e) {
    value_ += gain(e);
    switch (obj_.kind()) {
      case ObjectiveKind::kCoverage:
        for (int v : obj_.coverage().neighbors[e]) ++cover_count_[v];
        break;
      case ObjectiveKind::kClustering: {
        const auto& pts = obj_.clustering().points;
        for (std::size_t i = 0; i < pts.size(); ++i)
          best_aux_[i] = std::min(best_aux_[i], detail::sq_dist(pts[i], pts[e]));
        break;
      }
      case ObjectiveKind::kRecommender: {
        const auto& rec = obj_.recommender();
        for (std::size_t i = 0; i < rec.item_vectors.size(); ++i) {
          double s = detail::dot(rec.item_vectors[e], rec.item_vectors[i]);
          best_aux_[i] = std::max(best_aux_[i], s);
        }
        break;
      }
      case ObjectiveKind::kLinear:
        break;
    }
    cur_.insert(e);
  }

  // f(s). Rebuilds internal state when s is not an extension of the current
  // set by additions.
  double evaluate(const ElementSet& s) {
    sync(s);
    return value_;
  }

  // f(s + e) - f(s). Requires e not in s.
  double marginal(const ElementSet& s, int e) {
    if (s.contains(e))
      throw std::invalid_argument("Evaluator::marginal: element in set");
    sync(s);
    return gain(e);
  }

 private:
  void sync(const ElementSet& s) {
    if (s == cur_) return;
    ElementSet extra = s.set_minus(cur_);
    if (cur_.size() + extra.size() != s.size()) {
      reset();
      extra = s;
    }
    for (int e : extra) add(e);
  }

  const Objective& obj_;
  ElementSet cur_;
  double value_ = 0;
  std::vector<int> cover_count_;   // coverage
  std::vector<double> best_aux_;   // clustering / recommender
};

// Stateless from-scratch evaluation, used by oracles and cross-checks.
inline double evaluate_fresh(const Objective& obj, const ElementSet& s) {
  Evaluator ev(obj);
  return ev.evaluate(s);
}

// Verifies monotonicity and diminishing returns. Exhaustive up to 14
// elements; sampled (1e4 triples, fixed seed) above that.
inline bool check_monotone_submodular(const Objective& obj,
                                      int universe_size) {
  if (universe_size != obj.universe_size())
    throw std::invalid_argument("check_monotone_submodular: size mismatch");
  const int n = universe_size;
  if (n <= 14) {
    const std::uint32_t full = (1u << n) - 1u;
    std::vector<double> f(static_cast<std::size_t>(full) + 1);
    for (std::uint32_t s = 0; s <= full; ++s)
      f[s] = evaluate_fresh(obj, ElementSet::FromMask(s));
    const double tol = 1e-9;
    for (std::uint32_t x = 0; x <= full; ++x) {
      for (int e = 0; e < n; ++e) {
        if (x & (1u << e)) continue;
        double mx = f[x | (1u << e)] - f[x];
        double scale = std::max(1.0, std::abs(f[x | (1u << e)]));
        if (mx < -tol * scale) return false;  // monotonicity
        // Diminishing returns against every subset of x.
        for (std::uint32_t y = x;; y = (y - 1) & x) {
          double my = f[y | (1u << e)] - f[y];
          if (my < mx - tol * scale) return false;
          if (y == 0) break;
        }
      }
    }
    return true;
  }
  std::mt19937_64 rng(0x5eedULL);
  Evaluator ev(obj);
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<int> ysel, xsel;
    for (int i = 0; i < n; ++i) {
      int r = static_cast<int>(rng() % 4);
      if (r == 0) {
        ysel.push_back(i);
        xsel.push_back(i);
      } else if (r == 1) {
        xsel.push_back(i);
      }
    }
    ElementSet x(xsel);
    if (x.size() == n) continue;
    int e;
    do {
      e = static_cast<int>(rng() % n);
    } while (x.contains(e));
    ElementSet y(ysel);
    double fy = ev.evaluate(y);
    double my = ev.evaluate(y.plus(e)) - fy;
    double fx = ev.evaluate(x);
    double mx = ev.evaluate(x.plus(e)) - fx;
    double scale = std::max(1.0, std::abs(fx) + std::abs(mx));
    if (mx < -1e-9 * scale) return false;
    if (my < mx - 1e-9 * scale) return false;
  }
  return true;
}

}  // namespace fairsub

#endif  // FAIRSUB_OBJECTIVE_HPP_
