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

#ifndef FAIRSUB_FAIRNESS_HPP_
#define FAIRSUB_FAIRNESS_HPP_

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairsub/element_set.hpp"
#include "fairsub/matroid.hpp"

namespace fairsub {

enum class Saturation { kUnder, kOver, kExact };

// Per-element colors with lower/upper representation bounds.
class FairnessSpec {
 public:
  FairnessSpec(std::vector<int> color_of, std::vector<int> lower,
               std::vector<int> upper)
      : color_of_(std::move(color_of)),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
      throw std::invalid_argument("FairnessSpec: bound arrays differ in size");
    for (std::size_t c = 0; c < lower_.size(); ++c) {
      if (lower_[c] < 0 || lower_[c] > upper_[c])
        throw std::invalid_argument("FairnessSpec: need 0 <= lower <= upper");
    }
    std::vector<int> sizes(lower_.size(), 0);
    for (int c : color_of_) {
      if (c < 0 || c >= static_cast<int>(lower_.size()))
        throw std::invalid_argument("FairnessSpec: color out of range");
      ++sizes[c];
    }
    // An empty color with a positive lower bound is trivially infeasible.
    for (std::size_t c = 0; c < lower_.size(); ++c) {
      if (sizes[c] == 0 && lower_[c] > 0)
        throw std::invalid_argument(
            "FairnessSpec: empty color with positive lower bound");
    }
  }

  int universe_size() const { return static_cast<int>(color_of_.size()); }
  int num_colors() const { return static_cast<int>(lower_.size()); }
  int color_of(int e) const { return color_of_[e]; }
  const std::vector<int>& colors() const { return color_of_; }
  int lower(int c) const { return lower_[c]; }
  int upper(int c) const { return upper_[c]; }
  const std::vector<int>& lower_bounds() const { return lower_; }
  const std::vector<int>& upper_bounds() const { return upper_; }

  int sum_lower() const {
    int s = 0;
    for (int l : lower_) s += l;
    return s;
  }

  std::vector<int> color_counts(const ElementSet& s) const {
    std::vector<int> counts(num_colors(), 0);
    for (int id : s) ++counts[color_of_[id]];
    return counts;
  }

  // The partition matroid induced by the upper bounds.
  Matroid upper_matroid() const { return Matroid::Partition(color_of_, upper_); }

  // Total fairness violation: sum over colors of the distance of the
  // per-color count from [lower, upper].
  int fav(const ElementSet& s) const {
    std::vector<int> counts = color_counts(s);
    int v = 0;
    for (int c = 0; c < num_colors(); ++c) {
      v += std::max({counts[c] - upper_[c], lower_[c] - counts[c], 0});
    }
    return v;
  }

  bool is_fair(const ElementSet& s) const { return fav(s) == 0; }

  // Per-color comparison of y's counts against the reference set p.
  std::vector<Saturation> classify_saturation(const ElementSet& y,
                                              const ElementSet& p) const {
    std::vector<int> cy = color_counts(y);
    std::vector<int> cp = color_counts(p);
    std::vector<Saturation> out(num_colors());
    for (int c = 0; c < num_colors(); ++c) {
      out[c] = cy[c] < cp[c]   ? Saturation::kUnder
               : cy[c] > cp[c] ? Saturation::kOver
                               : Saturation::kExact;
    }
    return out;
  }

  // k = sum over colors of max(0, |p ∩ V_c| - |y ∩ V_c|).
  int deficiency_k(const ElementSet& y, const ElementSet& p) const {
    std::vector<int> cy = color_counts(y);
    std::vector<int> cp = color_counts(p);
    int k = 0;
    for (int c = 0; c < num_colors(); ++c) k += std::max(0, cp[c] - cy[c]);
    return k;
  }

 private:
  std::vector<int> color_of_;
  std::vector<int> lower_;
  std::vector<int> upper_;
};

}  // namespace fairsub

#endif  // FAIRSUB_FAIRNESS_HPP_
