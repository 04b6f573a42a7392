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

#ifndef FAIRSUB_ALGORITHMS_HPP_
#define FAIRSUB_ALGORITHMS_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairsub/element_set.hpp"
#include "fairsub/exchange.hpp"
#include "fairsub/fairness.hpp"
#include "fairsub/matroid.hpp"
#include "fairsub/objective.hpp"

namespace fairsub {

struct RunConfig {
  double epsilon = 0.5;
  std::uint64_t seed = 0;
  bool debug_verify = false;
  // When the constraint matroid is a partition matroid, replace the generic
  // per-iteration path generation by the O(N) multigraph decomposition.
  bool use_fast_paths = false;
};

struct RunRecord {
  ElementSet solution;
  double f_value = 0;
  int size = 0;
  int fav = 0;
  int iterations = 0;    // I
  int k_initial = 0;     // k(Y_0), or |P| - |Y_0| for the two-matroid variant
  int n_max = 0;         // N = |P|
  double f_y0 = 0;       // value of the greedy starting solution
  std::uint64_t seed = 0;
  double wall_ms = 0;
  bool feasible = true;
};

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

}  // namespace detail

// Greedy submodular maximization over the intersection of two matroids:
// repeatedly adds the feasible element of maximum marginal gain (ties break
// toward the smallest id), starting from base, until maximal. Uses lazy gain
// re-evaluation; the output matches the naive greedy exactly.
inline ElementSet greedy_intersection(Evaluator& f, const Matroid& m1,
                                      const Matroid& m2,
                                      const ElementSet& base = ElementSet()) {
  const int n = f.objective().universe_size();
  ElementSet sol = base;
  f.evaluate(sol);

  struct Entry {
    double gain;
    int id;
    int stamp;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);
  for (int e = 0; e < n; ++e) {
    if (!sol.contains(e)) heap.push({f.gain(e), e, sol.size()});
  }

  while (!heap.empty()) {
    SwapOracle o1(m1, sol), o2(m2, sol);
    Entry top = heap.top();
    heap.pop();
    if (!o1.can_add(top.id) || !o2.can_add(top.id)) continue;  // dead forever
    if (top.stamp != sol.size()) {
      top.gain = f.gain(top.id);
      top.stamp = sol.size();
      heap.push(top);
      continue;
    }
    f.add(top.id);
    sol.insert(top.id);
  }
  return sol;
}

// Maximum-cardinality common independent set via shortest augmenting paths
// in the matroid-intersection exchange graph. Deterministic (BFS in
// ascending id order).
inline ElementSet max_card_intersection(const Matroid& m1, const Matroid& m2) {
  const int n = m1.universe_size();
  ElementSet y;
  while (true) {
    SwapOracle o1(m1, y), o2(m2, y);
    // BFS from X1 = {p : y + p in m1} toward X2 = {p : y + p in m2}.
    // Arcs: y_e -> p if y - y_e + p in m1; p -> y_e if y - y_e + p in m2.
    std::vector<int> parent(n, -2);  // -2 unvisited, -1 root
    std::vector<int> queue;
    int goal = -1;
    for (int p = 0; p < n; ++p) {
      if (!y.contains(p) && o1.can_add(p)) {
        parent[p] = -1;
        queue.push_back(p);
        if (o2.can_add(p)) {
          goal = p;
          break;
        }
      }
    }
    for (std::size_t head = 0; head < queue.size() && goal == -1; ++head) {
      int v = queue[head];
      if (!y.contains(v)) {
        // v is outside y: arcs v -> y_e when the m2 swap is legal.
        for (int e : y) {
          if (parent[e] == -2 && o2.can_swap(e, v)) {
            parent[e] = v;
            queue.push_back(e);
          }
        }
      } else {
        // v is in y: arcs v -> p when the m1 swap is legal.
        for (int p = 0; p < n && goal == -1; ++p) {
          if (y.contains(p) || parent[p] != -2) continue;
          if (o1.can_swap(v, p)) {
            parent[p] = v;
            if (o2.can_add(p)) {
              goal = p;
            } else {
              queue.push_back(p);
            }
          }
        }
      }
    }
    if (goal == -1) return y;
    for (int v = goal; v != -1; v = parent[v]) {
      if (y.contains(v)) {
        y.erase(v);
      } else {
        y.insert(v);
      }
    }
  }
}

// Maximum-cardinality fair independent set, or nullopt when no fair
// independent set exists. Phase 1 builds the minimal fair skeleton (one
// element per lower-bound slot); phase 2 grows it with augmenting sets,
// which only ever increment colors, so fairness is preserved.
inline std::optional<ElementSet> fair_skeleton(const Matroid& m,
                                               const FairnessSpec& spec) {
  Matroid lower_matroid = Matroid::Partition(spec.colors(), spec.lower_bounds());
  ElementSet b = max_card_intersection(m, lower_matroid);
  if (b.size() < spec.sum_lower()) return std::nullopt;
  return b;
}

inline std::optional<ElementSet> build_fair_base(const Matroid& m,
                                                 const FairnessSpec& spec) {
  std::optional<ElementSet> b = fair_skeleton(m, spec);
  if (!b.has_value()) return std::nullopt;
  ElementSet cur = *b;
  ElementSet z = max_card_intersection(m, spec.upper_matroid());
  while (cur.size() < z.size()) {
    std::vector<ExchangeSet> paths = generate_paths(m, spec, cur, z);
    const ExchangeSet* aug = nullptr;
    for (const ExchangeSet& x : paths) {
      if (x.kind == ExchangeKind::kAugmenting) {
        aug = &x;
        break;
      }
    }
    if (aug == nullptr)
      throw InternalInvariantError("build_fair_base: no augmenting set");
    cur = apply_exchange(cur, *aug);
  }
  return cur;
}

namespace detail {

inline RunRecord make_record(Evaluator& f, const FairnessSpec& spec,
                             ElementSet solution) {
  RunRecord r;
  r.f_value = f.evaluate(solution);
  r.size = solution.size();
  r.fav = spec.fav(solution);
  r.solution = std::move(solution);
  return r;
}

inline RunRecord infeasible_record() {
  RunRecord r;
  r.feasible = false;
  return r;
}

}  // namespace detail

// Randomized fair matroid submodular maximization: grows a greedy
// high-value solution toward a maximum fair set by applying a uniformly
// random augmenting/alternating set per iteration, for an expected
// (1 - epsilon) fraction of the initial color deficiency.
//
// Callers that rerun the same instance with different seeds may pass the
// (seed-independent) fair base and greedy solution to skip recomputing them.
inline RunRecord run_randomized(Evaluator& f, const Matroid& m,
                                const FairnessSpec& spec, const RunConfig& cfg,
                                const ElementSet* precomputed_p = nullptr,
                                const ElementSet* precomputed_y0 = nullptr) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
    throw std::invalid_argument("run_randomized: epsilon must be in (0,1)");
  detail::Stopwatch timer;

  ElementSet p;
  if (precomputed_p != nullptr) {
    p = *precomputed_p;
  } else {
    std::optional<ElementSet> built = build_fair_base(m, spec);
    if (!built.has_value()) return detail::infeasible_record();
    p = *built;
  }
  const Matroid upper = spec.upper_matroid();
  ElementSet y = precomputed_y0 != nullptr
                     ? *precomputed_y0
                     : greedy_intersection(f, m, upper);

  RunRecord rec;
  rec.seed = cfg.seed;
  rec.n_max = p.size();
  rec.f_y0 = f.evaluate(y);
  const int k = spec.deficiency_k(y, p);
  rec.k_initial = k;

  std::mt19937_64 rng(cfg.seed);
  const double target = (1.0 - cfg.epsilon) * k;
  const double frac = target - std::floor(target);
  int iters = static_cast<int>(std::floor(target));
  if (detail::uniform01(rng) < frac) ++iters;
  rec.iterations = iters;

  const bool fast = cfg.use_fast_paths && m.kind() == MatroidKind::kPartition;
  for (int i = 1; i <= iters; ++i) {
    std::vector<ExchangeSet> paths =
        fast ? fast_paths_partition(m, upper, y, p)
             : generate_paths(m, spec, y, p, cfg.debug_verify);
    if (paths.empty())
      throw InternalInvariantError("run_randomized: ran out of paths");
    const ExchangeSet& x = paths[rng() % paths.size()];
    if (fast && cfg.debug_verify) verify_exchange_set(m, spec, y, x);
    y = apply_exchange(y, x);
    if (cfg.debug_verify) {
      if (!m.is_independent(y) || !upper.is_independent(y))
        throw InternalInvariantError("run_randomized: solution left I ∩ U");
      if (spec.deficiency_k(y, p) != k - i)
        throw InternalInvariantError("run_randomized: k(Y_i) != k - i");
    }
  }

  RunRecord out = detail::make_record(f, spec, std::move(y));
  out.seed = rec.seed;
  out.n_max = rec.n_max;
  out.f_y0 = rec.f_y0;
  out.k_initial = rec.k_initial;
  out.iterations = rec.iterations;
  out.wall_ms = timer.elapsed_ms();
  return out;
}

// Deterministic two-matroid variant: per iteration applies, among all
// |P| - |Y| augmenting sets, the one maximizing the resulting f-value
// (ties break toward the lexicographically smallest applied set).
inline RunRecord run_deterministic_two_matroids(Evaluator& f,
                                                const Matroid& m1,
                                                const Matroid& m2,
                                                double epsilon,
                                                bool debug_verify = false) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument(
        "run_deterministic_two_matroids: epsilon must be in (0,1)");
  detail::Stopwatch timer;
  ElementSet p = max_card_intersection(m1, m2);
  ElementSet y = greedy_intersection(f, m1, m2);

  RunRecord rec;
  rec.n_max = p.size();
  rec.f_y0 = f.evaluate(y);
  rec.k_initial = p.size() - y.size();
  const int iters =
      static_cast<int>(std::floor((1.0 - epsilon) * (p.size() - y.size())));
  rec.iterations = iters;

  for (int i = 1; i <= iters; ++i) {
    std::vector<ExchangeSet> paths =
        generate_paths_two_matroids(m1, m2, y, p, debug_verify);
    const ExchangeSet* best = nullptr;
    double best_value = 0;
    ElementSet best_applied;
    for (const ExchangeSet& x : paths) {
      ElementSet applied = x.as_set();
      double v = f.evaluate(apply_exchange(y, x));
      if (best == nullptr || v > best_value ||
          (v == best_value && applied < best_applied)) {
        best = &x;
        best_value = v;
        best_applied = std::move(applied);
      }
    }
    if (best == nullptr)
      throw InternalInvariantError("run_deterministic: ran out of paths");
    y = apply_exchange(y, *best);
  }

  rec.f_value = f.evaluate(y);
  rec.size = y.size();
  rec.solution = std::move(y);
  rec.wall_ms = timer.elapsed_ms();
  return rec;
}

// LBMI: fair skeleton via augmenting paths, then greedy extension within
// the intersection. Always fair on feasible instances.
inline RunRecord baseline_lbmi(Evaluator& f, const Matroid& m,
                               const FairnessSpec& spec) {
  detail::Stopwatch timer;
  std::optional<ElementSet> skeleton = fair_skeleton(m, spec);
  if (!skeleton.has_value()) return detail::infeasible_record();
  f.reset();
  ElementSet sol = greedy_intersection(f, m, spec.upper_matroid(), *skeleton);
  RunRecord r = detail::make_record(f, spec, std::move(sol));
  r.wall_ms = timer.elapsed_ms();
  return r;
}

// UBMI: greedy matroid intersection, lower bounds ignored.
inline RunRecord baseline_ubmi(Evaluator& f, const Matroid& m,
                               const FairnessSpec& spec) {
  detail::Stopwatch timer;
  f.reset();
  ElementSet sol = greedy_intersection(f, m, spec.upper_matroid());
  RunRecord r = detail::make_record(f, spec, std::move(sol));
  r.wall_ms = timer.elapsed_ms();
  return r;
}

// Random: shuffled single pass, keeping each element that stays independent
// and upper-fair.
inline RunRecord baseline_random(Evaluator& f, const Matroid& m,
                                 const FairnessSpec& spec,
                                 std::uint64_t seed) {
  detail::Stopwatch timer;
  const int n = m.universe_size();
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }
  const Matroid upper = spec.upper_matroid();
  ElementSet sol;
  for (int e : order) {
    SwapOracle o1(m, sol), o2(upper, sol);
    if (o1.can_add(e) && o2.can_add(e)) sol.insert(e);
  }
  RunRecord r = detail::make_record(f, spec, std::move(sol));
  r.seed = seed;
  r.wall_ms = timer.elapsed_ms();
  return r;
}

// TwoPass: fair skeleton split in two (alternating within each color in
// ascending id order), each half greedily extended; returns the better half.
inline RunRecord baseline_twopass(Evaluator& f, const Matroid& m,
                                  const FairnessSpec& spec) {
  detail::Stopwatch timer;
  std::optional<ElementSet> skeleton = fair_skeleton(m, spec);
  if (!skeleton.has_value()) return detail::infeasible_record();

  std::vector<int> half1, half2;
  std::vector<int> seen(spec.num_colors(), 0);
  for (int e : *skeleton) {
    int c = spec.color_of(e);
    (seen[c]++ % 2 == 0 ? half1 : half2).push_back(e);
  }
  const Matroid upper = spec.upper_matroid();
  f.reset();
  ElementSet sol1 = greedy_intersection(f, m, upper, ElementSet(half1));
  double v1 = f.evaluate(sol1);
  f.reset();
  ElementSet sol2 = greedy_intersection(f, m, upper, ElementSet(half2));
  double v2 = f.evaluate(sol2);
  RunRecord r =
      detail::make_record(f, spec, v2 > v1 ? std::move(sol2) : std::move(sol1));
  r.wall_ms = timer.elapsed_ms();
  return r;
}

struct BruteForceResult {
  bool fair_exists = false;
  double opt_fair = 0;     // max f over independent fair sets
  double opt_matint = 0;   // max f over independent upper-fair sets
  int n_max = 0;           // max cardinality over independent upper-fair sets
};

// Exhaustive oracle over all subsets. Universe capped at 16 elements.
inline BruteForceResult brute_force(Evaluator& f, const Matroid& m,
                                    const FairnessSpec& spec) {
  const int n = m.universe_size();
  if (n > 16) throw std::invalid_argument("brute_force: universe size > 16");
  const Matroid upper = spec.upper_matroid();
  BruteForceResult r;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    ElementSet s = ElementSet::FromMask(mask);
    if (!m.is_independent(s) || !upper.is_independent(s)) continue;
    double v = evaluate_fresh(f.objective(), s);
    r.opt_matint = std::max(r.opt_matint, v);
    r.n_max = std::max(r.n_max, s.size());
    if (spec.fav(s) == 0) {
      if (!r.fair_exists || v > r.opt_fair) r.opt_fair = v;
      r.fair_exists = true;
    }
  }
  return r;
}

}  // namespace fairsub

#endif  // FAIRSUB_ALGORITHMS_HPP_
