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

#ifndef FAIRSUB_MATROID_HPP_
#define FAIRSUB_MATROID_HPP_

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fairsub/element_set.hpp"

namespace fairsub {

enum class MatroidKind { kPartition, kUniform, kExplicit };

// Independence oracle over subsets of {0, ..., n-1}.
//
// Partition and Uniform answer queries in O(|S|). Explicit stores the whole
// independent-set family as bitmasks and exists for test-scale instances only
// (universe size at most 20).
class Matroid {
 public:
  static Matroid Partition(std::vector<int> groups, std::vector<int> caps) {
    Matroid m;
    m.kind_ = MatroidKind::kPartition;
    m.n_ = static_cast<int>(groups.size());
    for (int g : groups) {
      if (g < 0 || g >= static_cast<int>(caps.size()))
        throw std::invalid_argument("Matroid::Partition: group out of range");
    }
    for (int c : caps) {
      if (c < 0) throw std::invalid_argument("Matroid::Partition: cap < 0");
    }
    m.groups_ = std::move(groups);
    m.caps_ = std::move(caps);
    return m;
  }

  static Matroid Uniform(int universe_size, int rank) {
    if (universe_size < 0 || rank < 0)
      throw std::invalid_argument("Matroid::Uniform: negative parameter");
    Matroid m;
    m.kind_ = MatroidKind::kUniform;
    m.n_ = universe_size;
    m.rank_ = rank;
    return m;
  }

  static Matroid Explicit(int universe_size,
                          const std::vector<ElementSet>& independent_sets) {
    if (universe_size > 20)
      throw std::invalid_argument("Matroid::Explicit: universe size > 20");
    Matroid m;
    m.kind_ = MatroidKind::kExplicit;
    m.n_ = universe_size;
    for (const ElementSet& s : independent_sets) {
      for (int id : s) {
        if (id < 0 || id >= universe_size)
          throw std::invalid_argument("Matroid::Explicit: id out of range");
      }
      m.family_.insert(s.as_mask());
    }
    return m;
  }

  MatroidKind kind() const { return kind_; }
  int universe_size() const { return n_; }
  int uniform_rank() const { return rank_; }
  const std::vector<int>& partition_groups() const { return groups_; }
  const std::vector<int>& partition_caps() const { return caps_; }
  const std::unordered_set<std::uint32_t>& explicit_family() const {
    return family_;
  }

  bool is_independent(const ElementSet& s) const {
    for (int id : s) {
      if (id < 0 || id >= n_)
        throw std::out_of_range("Matroid::is_independent: id out of range");
    }
    switch (kind_) {
      case MatroidKind::kUniform:
        return s.size() <= rank_;
      case MatroidKind::kPartition: {
        std::vector<int> counts(caps_.size(), 0);
        for (int id : s) {
          if (++counts[groups_[id]] > caps_[groups_[id]]) return false;
        }
        return true;
      }
      case MatroidKind::kExplicit:
        return family_.count(s.as_mask()) > 0;
    }
    return false;
  }

  // True iff y_set - y + p is independent. Requires y in y_set, p not in
  // y_set, y_set independent.
  bool can_exchange(const ElementSet& y_set, int y, int p) const {
    if (!y_set.contains(y))
      throw std::invalid_argument("Matroid::can_exchange: y not in set");
    if (y_set.contains(p))
      throw std::invalid_argument("Matroid::can_exchange: p already in set");
    return is_independent(y_set.minus(y).plus(p));
  }

 private:
  Matroid() = default;

  MatroidKind kind_ = MatroidKind::kUniform;
  int n_ = 0;
  int rank_ = 0;                      // uniform
  std::vector<int> groups_;           // partition
  std::vector<int> caps_;             // partition
  std::unordered_set<std::uint32_t> family_;  // explicit
};

// Constant-time add/swap queries against a fixed independent base set.
// For partition matroids the per-group counts of the base are precomputed;
// other kinds fall back to the generic oracle.
class SwapOracle {
 public:
  SwapOracle(const Matroid& m, const ElementSet& base) : m_(m), base_(base) {
    if (m_.kind() == MatroidKind::kPartition) {
      counts_.assign(m_.partition_caps().size(), 0);
      for (int id : base_) ++counts_[m_.partition_groups()[id]];
    }
  }

  // base + p independent?
  bool can_add(int p) const {
    switch (m_.kind()) {
      case MatroidKind::kUniform:
        return base_.size() < m_.uniform_rank();
      case MatroidKind::kPartition: {
        int g = m_.partition_groups()[p];
        return counts_[g] < m_.partition_caps()[g];
      }
      case MatroidKind::kExplicit:
        return m_.is_independent(base_.plus(p));
    }
    return false;
  }

  // base - y + p independent? Requires y in base, p not in base.
  bool can_swap(int y, int p) const {
    switch (m_.kind()) {
      case MatroidKind::kUniform:
        return true;
      case MatroidKind::kPartition: {
        int gy = m_.partition_groups()[y];
        int gp = m_.partition_groups()[p];
        return gy == gp || counts_[gp] < m_.partition_caps()[gp];
      }
      case MatroidKind::kExplicit:
        return m_.is_independent(base_.minus(y).plus(p));
    }
    return false;
  }

 private:
  const Matroid& m_;
  const ElementSet& base_;
  std::vector<int> counts_;
};

// Exhaustively validates the matroid axioms (nonempty, downward-closed,
// augmentation). Refuses universes above 20 elements.
inline bool check_axioms(const Matroid& m, int universe_size) {
  if (universe_size > 20)
    throw std::invalid_argument("check_axioms: universe size > 20");
  const std::uint32_t full = (universe_size == 32)
                                 ? 0xFFFFFFFFu
                                 : ((1u << universe_size) - 1u);
  std::vector<std::uint32_t> independent;
  std::vector<bool> indep(static_cast<std::size_t>(full) + 1, false);
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (m.is_independent(ElementSet::FromMask(s))) {
      indep[s] = true;
      independent.push_back(s);
    }
  }
  if (!indep[0]) return false;
  // Downward closure: removing any single element preserves independence.
  for (std::uint32_t s : independent) {
    for (std::uint32_t t = s; t != 0;) {
      std::uint32_t bit = t & (~t + 1);
      if (!indep[s ^ bit]) return false;
      t ^= bit;
    }
  }
  // Augmentation.
  for (std::uint32_t x : independent) {
    for (std::uint32_t y : independent) {
      if (__builtin_popcount(x) >= __builtin_popcount(y)) continue;
      bool found = false;
      for (std::uint32_t t = y & ~x; t != 0 && !found;) {
        std::uint32_t bit = t & (~t + 1);
        if (indep[x | bit]) found = true;
        t ^= bit;
      }
      if (!found) return false;
    }
  }
  return true;
}

// Extends base by scanning candidates in the given order, keeping each
// element whose addition preserves independence.
inline ElementSet greedy_max_independent(const Matroid& m,
                                         const std::vector<int>& candidates,
                                         const ElementSet& base) {
  if (!m.is_independent(base))
    throw std::invalid_argument("greedy_max_independent: base not independent");
  ElementSet result = base;
  for (int e : candidates) {
    if (result.contains(e)) continue;
    SwapOracle oracle(m, result);
    if (oracle.can_add(e)) result.insert(e);
  }
  return result;
}

}  // namespace fairsub

#endif  // FAIRSUB_MATROID_HPP_
