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

#ifndef FAIRSUB_ELEMENT_SET_HPP_
#define FAIRSUB_ELEMENT_SET_HPP_

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace fairsub {

// A set of ground-set element ids, kept as a sorted unique vector.
// Ascending id order is the canonical iteration order everywhere.
class ElementSet {
 public:
  ElementSet() = default;

  explicit ElementSet(std::vector<int> ids) : ids_(std::move(ids)) {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  static ElementSet FromSorted(std::vector<int> ids) {
    ElementSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  static ElementSet FromMask(std::uint32_t mask) {
    std::vector<int> ids;
    for (int i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1u) ids.push_back(i);
    }
    return FromSorted(std::move(ids));
  }

  bool contains(int id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }

  int size() const { return static_cast<int>(ids_.size()); }
  bool empty() const { return ids_.empty(); }

  void insert(int id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
  }

  void erase(int id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) ids_.erase(it);
  }

  ElementSet plus(int id) const {
    ElementSet r = *this;
    r.insert(id);
    return r;
  }

  ElementSet minus(int id) const {
    ElementSet r = *this;
    r.erase(id);
    return r;
  }

  ElementSet set_union(const ElementSet& o) const {
    std::vector<int> out;
    out.reserve(ids_.size() + o.ids_.size());
    std::set_union(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                   std::back_inserter(out));
    return FromSorted(std::move(out));
  }

  ElementSet set_minus(const ElementSet& o) const {
    std::vector<int> out;
    std::set_difference(ids_.begin(), ids_.end(), o.ids_.begin(), o.ids_.end(),
                        std::back_inserter(out));
    return FromSorted(std::move(out));
  }

  ElementSet set_intersect(const ElementSet& o) const {
    std::vector<int> out;
    std::set_intersection(ids_.begin(), ids_.end(), o.ids_.begin(),
                          o.ids_.end(), std::back_inserter(out));
    return FromSorted(std::move(out));
  }

  ElementSet sym_diff(const ElementSet& o) const {
    std::vector<int> out;
    std::set_symmetric_difference(ids_.begin(), ids_.end(), o.ids_.begin(),
                                  o.ids_.end(), std::back_inserter(out));
    return FromSorted(std::move(out));
  }

  std::uint32_t as_mask() const {
    std::uint32_t m = 0;
    for (int id : ids_) {
      if (id >= 32) throw std::out_of_range("ElementSet::as_mask: id >= 32");
      m |= (1u << id);
    }
    return m;
  }

  const std::vector<int>& ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.ids_ == b.ids_;
  }
  friend bool operator!=(const ElementSet& a, const ElementSet& b) {
    return a.ids_ != b.ids_;
  }
  friend bool operator<(const ElementSet& a, const ElementSet& b) {
    return a.ids_ < b.ids_;
  }

 private:
  std::vector<int> ids_;
};

}  // namespace fairsub

#endif  // FAIRSUB_ELEMENT_SET_HPP_
