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

#ifndef FAIRSUB_EXCHANGE_HPP_
#define FAIRSUB_EXCHANGE_HPP_

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairsub/element_set.hpp"
#include "fairsub/fairness.hpp"
#include "fairsub/matroid.hpp"

namespace fairsub {

// Signals a violated construction guarantee (e.g. a perfect matching that
// theory promises but the oracle does not deliver). Always a bug, never a
// caller error.
class InternalInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Maximum-cardinality bipartite matching (Hopcroft-Karp). adj_left[i] lists
// right-side neighbors of left vertex i, in the order edges were added.
// Deterministic given the adjacency order.
struct BipartiteMatching {
  std::vector<int> match_left;   // left index -> right index or -1
  std::vector<int> match_right;  // right index -> left index or -1
  int size = 0;
};

inline BipartiteMatching bipartite_max_matching(
    int left_size, int right_size,
    const std::vector<std::vector<int>>& adj_left) {
  BipartiteMatching m;
  m.match_left.assign(left_size, -1);
  m.match_right.assign(right_size, -1);
  const int kInf = 1 << 29;
  std::vector<int> dist(left_size);

  auto bfs = [&]() {
    std::deque<int> queue;
    for (int u = 0; u < left_size; ++u) {
      if (m.match_left[u] == -1) {
        dist[u] = 0;
        queue.push_back(u);
      } else {
        dist[u] = kInf;
      }
    }
    bool found_free = false;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj_left[u]) {
        int w = m.match_right[v];
        if (w == -1) {
          found_free = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    return found_free;
  };

  std::function<bool(int)> dfs = [&](int u) {
    for (int v : adj_left[u]) {
      int w = m.match_right[v];
      if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
        m.match_left[u] = v;
        m.match_right[v] = u;
        return true;
      }
    }
    dist[u] = kInf;
    return false;
  };

  while (bfs()) {
    for (int u = 0; u < left_size; ++u) {
      if (m.match_left[u] == -1 && dfs(u)) ++m.size;
    }
  }
  return m;
}

// Directed matroid-intersection exchange graph between disjoint residuals
// left = Y \ P and right = P \ Y. Right-to-left edges certify swaps in m1,
// left-to-right edges certify swaps in m2.
struct ExchangeGraph {
  std::vector<int> left;   // ascending element ids
  std::vector<int> right;  // ascending element ids
  // Per right index: left indices j with y - left[j] + right[i] in m1.
  std::vector<std::vector<int>> edges_right_to_left;
  // Per left index: right indices i with y - left[j] + right[i] in m2.
  std::vector<std::vector<int>> edges_left_to_right;
};

inline ExchangeGraph build_exchange_graph(const Matroid& m1, const Matroid& m2,
                                          const ElementSet& y,
                                          const ElementSet& p) {
  if (!y.set_intersect(p).empty())
    throw std::invalid_argument("build_exchange_graph: sets not disjoint");
  if (!m1.is_independent(y) || !m2.is_independent(y))
    throw std::invalid_argument(
        "build_exchange_graph: y not independent in both matroids");
  ExchangeGraph g;
  g.left = y.ids();
  g.right = p.ids();
  g.edges_right_to_left.resize(g.right.size());
  g.edges_left_to_right.resize(g.left.size());
  SwapOracle o1(m1, y), o2(m2, y);
  for (std::size_t i = 0; i < g.right.size(); ++i) {
    for (std::size_t j = 0; j < g.left.size(); ++j) {
      if (o1.can_swap(g.left[j], g.right[i]))
        g.edges_right_to_left[i].push_back(static_cast<int>(j));
      if (o2.can_swap(g.left[j], g.right[i]))
        g.edges_left_to_right[j].push_back(static_cast<int>(i));
    }
  }
  return g;
}

enum class ExchangeKind { kAugmenting, kAlternating };

// An augmenting or alternating subset X of (Y \ P) u (P \ Y), stored as the
// alternating vertex sequence p1, y1, p2, y2, ... starting in P.
struct ExchangeSet {
  std::vector<int> vertices;
  ExchangeKind kind = ExchangeKind::kAugmenting;
  int increased_color = -1;
  int decreased_color = -1;  // alternating only

  ElementSet as_set() const { return ElementSet(vertices); }
};

inline ElementSet apply_exchange(const ElementSet& y, const ExchangeSet& x) {
  return y.sym_diff(x.as_set());
}

namespace detail {

// Removes chords (p_i, y_j) with j > i, scanning i ascending then j
// descending, until no chord remains. seq alternates P (even positions) and
// Y (odd positions). can_swap is queried against the full original Y.
inline void shortcut_right_to_left(std::vector<int>& seq,
                                   const SwapOracle& oracle) {
  bool changed = true;
  while (changed) {
    changed = false;
    int pairs = static_cast<int>(seq.size()) / 2;  // count of (p_i, y_i) pairs
    for (int i = 0; i < pairs && !changed; ++i) {
      for (int j = pairs - 1; j > i; --j) {
        // chord from p at position 2i to y at position 2j+1
        if (oracle.can_swap(seq[2 * j + 1], seq[2 * i])) {
          seq.erase(seq.begin() + 2 * i + 1, seq.begin() + 2 * j + 1);
          changed = true;
          break;
        }
      }
    }
  }
}

}  // namespace detail

// Re-checks an ExchangeSet against the oracle and the exact per-color count
// deltas. Used in debug-mode verification and tests.
inline void verify_exchange_set(const Matroid& m, const FairnessSpec& spec,
                                const ElementSet& y, const ExchangeSet& x) {
  ElementSet y2 = apply_exchange(y, x);
  if (!m.is_independent(y2))
    throw InternalInvariantError("exchange set breaks matroid independence");
  std::vector<int> before = spec.color_counts(y);
  std::vector<int> after = spec.color_counts(y2);
  for (int c = 0; c < spec.num_colors(); ++c) {
    if (after[c] > spec.upper(c))
      throw InternalInvariantError("exchange set breaks upper-fairness");
    int want = (c == x.increased_color ? 1 : 0) -
               (x.kind == ExchangeKind::kAlternating && c == x.decreased_color
                    ? 1
                    : 0);
    if (after[c] - before[c] != want)
      throw InternalInvariantError("exchange set has wrong color delta");
  }
  int want_size = y.size() + (x.kind == ExchangeKind::kAugmenting ? 1 : 0);
  if (y2.size() != want_size)
    throw InternalInvariantError("exchange set has wrong size delta");
}

// Generates exactly k = deficiency_k(y, p) vertex-disjoint augmenting or
// alternating sets over (y \ p) u (p \ y), of which at least |p| - |y| are
// augmenting, and for every undersaturated color c exactly
// |p ∩ V_c| - |y ∩ V_c| increase c.
inline std::vector<ExchangeSet> generate_paths(const Matroid& m,
                                               const FairnessSpec& spec,
                                               const ElementSet& y,
                                               const ElementSet& p,
                                               bool verify = false) {
  const Matroid upper = spec.upper_matroid();
  if (!m.is_independent(y) || !upper.is_independent(y) ||
      !m.is_independent(p) || !upper.is_independent(p))
    throw std::invalid_argument(
        "generate_paths: inputs must be independent and upper-fair");
  if (y.size() > p.size())
    throw std::invalid_argument("generate_paths: |y| > |p|");

  const ElementSet yr = y.set_minus(p);
  const ElementSet pr = p.set_minus(y);
  const int need = pr.size() - yr.size();
  SwapOracle oracle(m, y);

  // P-sinks and their first |P|-|Y| elements in canonical order.
  std::vector<int> t_p;
  for (int e : pr) {
    if (oracle.can_add(e)) t_p.push_back(e);
  }
  if (static_cast<int>(t_p.size()) < need)
    throw InternalInvariantError("generate_paths: |T_P| < |P| - |Y|");
  std::set<int> t_p_all(t_p.begin(), t_p.end());
  std::set<int> t_p_prime(t_p.begin(), t_p.begin() + need);

  // M<-: perfect matching between Y and P \ T_P' in the m-exchange graph.
  std::vector<int> right_rest;
  for (int e : pr) {
    if (!t_p_prime.count(e)) right_rest.push_back(e);
  }
  std::vector<std::vector<int>> adj(yr.size());
  for (std::size_t j = 0; j < yr.ids().size(); ++j) {
    for (std::size_t i = 0; i < right_rest.size(); ++i) {
      if (oracle.can_swap(yr.ids()[j], right_rest[i]))
        adj[j].push_back(static_cast<int>(i));
    }
  }
  BipartiteMatching pm = bipartite_max_matching(
      yr.size(), static_cast<int>(right_rest.size()), adj);
  if (pm.size != yr.size())
    throw InternalInvariantError(
        "generate_paths: no perfect matching between Y and P \\ T_P'");
  std::map<int, int> match_back;  // p -> y along M<-
  for (int j = 0; j < yr.size(); ++j)
    match_back[right_rest[pm.match_left[j]]] = yr.ids()[j];

  // M->: same-color pairing, ascending id within each color.
  std::map<int, int> match_fwd;  // y -> p along M->
  std::set<int> matched_p_fwd;
  std::set<int> y_sinks;
  {
    std::vector<std::vector<int>> yc(spec.num_colors()), pc(spec.num_colors());
    for (int e : yr) yc[spec.color_of(e)].push_back(e);
    for (int e : pr) pc[spec.color_of(e)].push_back(e);
    for (int c = 0; c < spec.num_colors(); ++c) {
      std::size_t pairs = std::min(yc[c].size(), pc[c].size());
      for (std::size_t i = 0; i < pairs; ++i) {
        match_fwd[yc[c][i]] = pc[c][i];
        matched_p_fwd.insert(pc[c][i]);
      }
      for (std::size_t i = pairs; i < yc[c].size(); ++i)
        y_sinks.insert(yc[c][i]);
    }
  }

  // Walk from each source (unmatched P-vertex in M->), ascending id order.
  std::vector<ExchangeSet> out;
  for (int s : pr) {
    if (matched_p_fwd.count(s)) continue;
    std::vector<int> seq;
    int cur = s;
    bool at_p = true;
    while (true) {
      seq.push_back(cur);
      if (at_p) {
        if (t_p_all.count(cur)) break;  // augmenting end
        cur = match_back.at(cur);
      } else {
        if (y_sinks.count(cur)) break;  // alternating end
        cur = match_fwd.at(cur);
      }
      at_p = !at_p;
    }
    detail::shortcut_right_to_left(seq, oracle);

    ExchangeSet x;
    x.kind = (seq.size() % 2 == 1) ? ExchangeKind::kAugmenting
                                   : ExchangeKind::kAlternating;
    x.increased_color = spec.color_of(seq.front());
    if (x.kind == ExchangeKind::kAlternating)
      x.decreased_color = spec.color_of(seq.back());
    x.vertices = std::move(seq);
    if (verify) verify_exchange_set(m, spec, y, x);
    out.push_back(std::move(x));
  }
  if (static_cast<int>(out.size()) != spec.deficiency_k(y, p))
    throw InternalInvariantError("generate_paths: path count != k");
  return out;
}

// Two-matroid analogue: |p| - |y| vertex-disjoint augmenting sets, each of
// whose applications lies in m1 ∩ m2 with size |y| + 1. Shortcutting uses
// chords in both directions and truncates at internal vertices of S or T.
inline std::vector<ExchangeSet> generate_paths_two_matroids(
    const Matroid& m1, const Matroid& m2, const ElementSet& y,
    const ElementSet& p, bool verify = false) {
  if (!m1.is_independent(y) || !m2.is_independent(y) ||
      !m1.is_independent(p) || !m2.is_independent(p))
    throw std::invalid_argument(
        "generate_paths_two_matroids: inputs not in the intersection");
  if (y.size() > p.size())
    throw std::invalid_argument("generate_paths_two_matroids: |y| > |p|");

  const ElementSet yr = y.set_minus(p);
  const ElementSet pr = p.set_minus(y);
  const int need = pr.size() - yr.size();
  if (need == 0) return {};
  SwapOracle o1(m1, y), o2(m2, y);

  std::vector<int> t_all, s_all;
  for (int e : pr) {
    if (o1.can_add(e)) t_all.push_back(e);
    if (o2.can_add(e)) s_all.push_back(e);
  }
  if (static_cast<int>(t_all.size()) < need ||
      static_cast<int>(s_all.size()) < need)
    throw InternalInvariantError("generate_paths_two_matroids: |T| or |S| < need");
  std::set<int> in_t(t_all.begin(), t_all.end());
  std::set<int> in_s(s_all.begin(), s_all.end());
  std::set<int> t_prime(t_all.begin(), t_all.begin() + need);
  std::set<int> s_prime(s_all.begin(), s_all.begin() + need);

  // Perfect matching Y <-> P \ T' in the m1-exchange graph (followed
  // right-to-left) and Y <-> P \ S' in the m2-exchange graph (followed
  // left-to-right).
  auto perfect = [&](const std::set<int>& excluded, const SwapOracle& oracle,
                     const char* what) {
    std::vector<int> rest;
    for (int e : pr) {
      if (!excluded.count(e)) rest.push_back(e);
    }
    std::vector<std::vector<int>> adj(yr.size());
    for (std::size_t j = 0; j < yr.ids().size(); ++j) {
      for (std::size_t i = 0; i < rest.size(); ++i) {
        if (oracle.can_swap(yr.ids()[j], rest[i]))
          adj[j].push_back(static_cast<int>(i));
      }
    }
    BipartiteMatching pm =
        bipartite_max_matching(yr.size(), static_cast<int>(rest.size()), adj);
    if (pm.size != yr.size()) throw InternalInvariantError(what);
    return std::pair<std::vector<int>, BipartiteMatching>(std::move(rest),
                                                          std::move(pm));
  };
  auto [rest1, pm1] = perfect(t_prime, o1, "no perfect matching for M<-");
  auto [rest2, pm2] = perfect(s_prime, o2, "no perfect matching for M->");
  std::map<int, int> match_back;  // p -> y (M<-)
  for (int j = 0; j < yr.size(); ++j)
    match_back[rest1[pm1.match_left[j]]] = yr.ids()[j];
  std::map<int, int> match_fwd;  // y -> p (M->)
  for (int j = 0; j < yr.size(); ++j)
    match_fwd[yr.ids()[j]] = rest2[pm2.match_left[j]];

  std::vector<ExchangeSet> out;
  for (int src : pr) {
    if (!s_prime.count(src)) continue;
    std::vector<int> seq;
    int cur = src;
    bool at_p = true;
    while (true) {
      seq.push_back(cur);
      if (at_p) {
        if (t_prime.count(cur)) break;
        cur = match_back.at(cur);
      } else {
        cur = match_fwd.at(cur);
      }
      at_p = !at_p;
    }

    // Shortcut with chords in both directions; truncate at internal S / T
    // vertices (P vertices sit at even positions).
    bool changed = true;
    while (changed) {
      changed = false;
      int pcount = static_cast<int>(seq.size() + 1) / 2;
      // Truncate the front at the last internal S vertex.
      for (int i = pcount - 1; i > 0 && !changed; --i) {
        if (2 * i == static_cast<int>(seq.size()) - 1) continue;  // endpoint
        if (in_s.count(seq[2 * i])) {
          seq.erase(seq.begin(), seq.begin() + 2 * i);
          changed = true;
        }
      }
      if (changed) continue;
      // Truncate the back at the first internal T vertex.
      for (int i = 1; i < pcount && !changed; ++i) {
        if (2 * i == static_cast<int>(seq.size()) - 1) continue;  // endpoint
        if (in_t.count(seq[2 * i])) {
          seq.erase(seq.begin() + 2 * i + 1, seq.end());
          changed = true;
        }
      }
      if (changed) continue;
      int pairs = static_cast<int>(seq.size()) / 2;
      // Right-to-left chords (p_i, y_j), j > i.
      for (int i = 0; i < pairs && !changed; ++i) {
        for (int j = pairs - 1; j > i; --j) {
          if (o1.can_swap(seq[2 * j + 1], seq[2 * i])) {
            seq.erase(seq.begin() + 2 * i + 1, seq.begin() + 2 * j + 1);
            changed = true;
            break;
          }
        }
      }
      if (changed) continue;
      // Left-to-right chords (y_i, p_j), j > i.
      pcount = static_cast<int>(seq.size() + 1) / 2;
      pairs = static_cast<int>(seq.size()) / 2;
      for (int i = 0; i < pairs && !changed; ++i) {
        for (int j = pcount - 1; j > i + 1; --j) {
          if (o2.can_swap(seq[2 * i + 1], seq[2 * j])) {
            seq.erase(seq.begin() + 2 * i + 2, seq.begin() + 2 * j);
            changed = true;
            break;
          }
        }
      }
    }

    ExchangeSet x;
    x.kind = ExchangeKind::kAugmenting;
    x.vertices = std::move(seq);
    if (verify) {
      ElementSet y2 = apply_exchange(y, x);
      if (!m1.is_independent(y2) || !m2.is_independent(y2) ||
          y2.size() != y.size() + 1)
        throw InternalInvariantError(
            "two-matroid augmenting set fails oracle re-check");
    }
    out.push_back(std::move(x));
  }
  if (static_cast<int>(out.size()) != need)
    throw InternalInvariantError("generate_paths_two_matroids: count != need");
  return out;
}

// Fast path decomposition for the intersection of two partition matroids,
// viewed as a bipartite multigraph between the groups of m1 and of m2.
// All returned sets are simultaneously applicable. Internal right-to-left
// steps pair elements within the same m1-group and left-to-right steps pair
// elements within the same m2-group, so no shortcutting is needed.
inline std::vector<ExchangeSet> fast_paths_partition(const Matroid& m1,
                                                     const Matroid& m2,
                                                     const ElementSet& y,
                                                     const ElementSet& p) {
  if (m1.kind() != MatroidKind::kPartition ||
      m2.kind() != MatroidKind::kPartition)
    throw std::invalid_argument(
        "fast_paths_partition: both matroids must be partition matroids");
  if (!m1.is_independent(y) || !m2.is_independent(y) ||
      !m1.is_independent(p) || !m2.is_independent(p))
    throw std::invalid_argument(
        "fast_paths_partition: inputs not in the intersection");

  const ElementSet yr = y.set_minus(p);
  const ElementSet pr = p.set_minus(y);
  const auto& g1 = m1.partition_groups();
  const auto& g2 = m2.partition_groups();
  int ngroups = static_cast<int>(m1.partition_caps().size());
  int ncolors = static_cast<int>(m2.partition_caps().size());

  // Same-group pairing (M<-) and same-color pairing (M->), ascending ids.
  std::map<int, int> match_back, match_fwd;
  std::set<int> p_matched_fwd;
  {
    std::vector<std::vector<int>> yg(ngroups), pg(ngroups);
    for (int e : yr) yg[g1[e]].push_back(e);
    for (int e : pr) pg[g1[e]].push_back(e);
    for (int g = 0; g < ngroups; ++g) {
      std::size_t pairs = std::min(yg[g].size(), pg[g].size());
      for (std::size_t i = 0; i < pairs; ++i) {
        match_back[pg[g][i]] = yg[g][i];
      }
    }
    std::vector<std::vector<int>> yc(ncolors), pc(ncolors);
    for (int e : yr) yc[g2[e]].push_back(e);
    for (int e : pr) pc[g2[e]].push_back(e);
    for (int c = 0; c < ncolors; ++c) {
      std::size_t pairs = std::min(yc[c].size(), pc[c].size());
      for (std::size_t i = 0; i < pairs; ++i) {
        match_fwd[yc[c][i]] = pc[c][i];
        p_matched_fwd.insert(pc[c][i]);
      }
    }
  }

  std::vector<ExchangeSet> out;
  for (int src : pr) {
    if (p_matched_fwd.count(src)) continue;  // sources: color-excess P elems
    std::vector<int> seq;
    int cur = src;
    bool at_p = true;
    while (true) {
      seq.push_back(cur);
      if (at_p) {
        auto it = match_back.find(cur);
        if (it == match_back.end()) break;  // group-excess: augmenting end
        cur = it->second;
      } else {
        auto it = match_fwd.find(cur);
        if (it == match_fwd.end()) break;  // color-excess in Y: alternating
        cur = it->second;
      }
      at_p = !at_p;
    }
    ExchangeSet x;
    x.kind = (seq.size() % 2 == 1) ? ExchangeKind::kAugmenting
                                   : ExchangeKind::kAlternating;
    x.increased_color = g2[seq.front()];
    if (x.kind == ExchangeKind::kAlternating) x.decreased_color = g2[seq.back()];
    x.vertices = std::move(seq);
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace fairsub

#endif  // FAIRSUB_EXCHANGE_HPP_
