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

#ifndef FAIRSUB_INSTANCE_HPP_
#define FAIRSUB_INSTANCE_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairsub/element_set.hpp"
#include "fairsub/fairness.hpp"
#include "fairsub/matroid.hpp"
#include "fairsub/objective.hpp"

namespace fairsub {

struct InstanceMeta {
  std::string generator;  // "coverage", "clustering", "recommender", "manual"
  std::uint64_t seed = 0;
  int r = 0;
};

// A full problem instance: constraint matroid, fairness bounds, objective.
// Serializes to canonical JSON (alphabetically ordered keys, two-space
// indent), so identical instances produce byte-identical files.
class Instance {
 public:
  Instance(Matroid matroid, FairnessSpec fairness, Objective objective,
           InstanceMeta meta)
      : matroid_(std::move(matroid)),
        fairness_(std::move(fairness)),
        objective_(std::move(objective)),
        meta_(std::move(meta)) {
    validate();
  }

  int universe_size() const { return matroid_.universe_size(); }
  const Matroid& matroid() const { return matroid_; }
  const FairnessSpec& fairness() const { return fairness_; }
  const Objective& objective() const { return objective_; }
  const InstanceMeta& meta() const { return meta_; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["n"] = universe_size();
    j["meta"] = {{"generator", meta_.generator},
                 {"r", meta_.r},
                 {"seed", meta_.seed}};
    j["fairness"] = {{"colors", fairness_.colors()},
                     {"lower", fairness_.lower_bounds()},
                     {"upper", fairness_.upper_bounds()}};
    switch (matroid_.kind()) {
      case MatroidKind::kPartition:
        j["matroid"] = {{"kind", "partition"},
                        {"groups", matroid_.partition_groups()},
                        {"caps", matroid_.partition_caps()}};
        break;
      case MatroidKind::kUniform:
        j["matroid"] = {{"kind", "uniform"},
                        {"rank", matroid_.uniform_rank()}};
        break;
      case MatroidKind::kExplicit: {
        std::vector<std::vector<int>> sets;
        for (std::uint32_t mask : matroid_.explicit_family())
          sets.push_back(ElementSet::FromMask(mask).ids());
        std::sort(sets.begin(), sets.end());
        j["matroid"] = {{"kind", "explicit"}, {"sets", sets}};
        break;
      }
    }
    switch (objective_.kind()) {
      case ObjectiveKind::kCoverage:
        j["objective"] = {{"kind", "coverage"},
                          {"neighbors", objective_.coverage().neighbors},
                          {"item_count", objective_.coverage().item_count}};
        break;
      case ObjectiveKind::kClustering:
        j["objective"] = {{"kind", "clustering"},
                          {"points", objective_.clustering().points}};
        break;
      case ObjectiveKind::kLinear:
        j["objective"] = {{"kind", "linear"},
                          {"weights", objective_.linear().weights}};
        break;
      case ObjectiveKind::kRecommender:
        j["objective"] = {
            {"kind", "recommender"},
            {"item_vectors", objective_.recommender().item_vectors},
            {"user_vector", objective_.recommender().user_vector},
            {"alpha", objective_.recommender().alpha}};
        break;
    }
    return j;
  }

  static Instance from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();

    const nlohmann::json& jm = j.at("matroid");
    const std::string mkind = jm.at("kind").get<std::string>();
    Matroid matroid = Matroid::Uniform(0, 0);
    if (mkind == "partition") {
      matroid = Matroid::Partition(jm.at("groups").get<std::vector<int>>(),
                                   jm.at("caps").get<std::vector<int>>());
    } else if (mkind == "uniform") {
      matroid = Matroid::Uniform(n, jm.at("rank").get<int>());
    } else if (mkind == "explicit") {
      std::vector<ElementSet> sets;
      for (const auto& s : jm.at("sets"))
        sets.push_back(ElementSet(s.get<std::vector<int>>()));
      matroid = Matroid::Explicit(n, sets);
    } else {
      throw std::invalid_argument("Instance: unknown matroid kind " + mkind);
    }

    const nlohmann::json& jf = j.at("fairness");
    FairnessSpec fairness(jf.at("colors").get<std::vector<int>>(),
                          jf.at("lower").get<std::vector<int>>(),
                          jf.at("upper").get<std::vector<int>>());

    const nlohmann::json& jo = j.at("objective");
    const std::string okind = jo.at("kind").get<std::string>();
    Objective objective = Objective::Linear({});
    if (okind == "coverage") {
      objective = Objective::Coverage(
          jo.at("neighbors").get<std::vector<std::vector<int>>>(),
          jo.at("item_count").get<int>());
    } else if (okind == "clustering") {
      objective = Objective::Clustering(
          jo.at("points").get<std::vector<std::vector<double>>>());
    } else if (okind == "linear") {
      objective = Objective::Linear(jo.at("weights").get<std::vector<double>>());
    } else if (okind == "recommender") {
      objective = Objective::Recommender(
          jo.at("item_vectors").get<std::vector<std::vector<double>>>(),
          jo.at("user_vector").get<std::vector<double>>(),
          jo.at("alpha").get<double>());
    } else {
      throw std::invalid_argument("Instance: unknown objective kind " + okind);
    }

    InstanceMeta meta;
    if (j.contains("meta")) {
      const nlohmann::json& jme = j.at("meta");
      meta.generator = jme.value("generator", std::string("manual"));
      meta.seed = jme.value("seed", std::uint64_t{0});
      meta.r = jme.value("r", 0);
    }
    return Instance(std::move(matroid), std::move(fairness),
                    std::move(objective), std::move(meta));
  }

  std::string serialize() const { return to_json().dump(2) + "\n"; }

  static Instance deserialize(const std::string& text) {
    return from_json(nlohmann::json::parse(text));
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("Instance: cannot write " + path);
    out << serialize();
  }

  static Instance load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("Instance: cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return deserialize(text);
  }

 private:
  void validate() const {
    const int n = matroid_.universe_size();
    if (fairness_.universe_size() != n)
      throw std::invalid_argument("Instance: fairness size != matroid size");
    if (objective_.universe_size() != n)
      throw std::invalid_argument("Instance: objective size != matroid size");
  }

  Matroid matroid_;
  FairnessSpec fairness_;
  Objective objective_;
  InstanceMeta meta_;
};

// Solution files: {"solution": [sorted ids]}.
inline std::string serialize_solution(const ElementSet& s) {
  nlohmann::json j;
  j["solution"] = s.ids();
  return j.dump(2) + "\n";
}

inline ElementSet deserialize_solution(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  return ElementSet(j.at("solution").get<std::vector<int>>());
}

inline void save_solution(const ElementSet& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("solution: cannot write " + path);
  out << serialize_solution(s);
}

inline ElementSet load_solution(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("solution: cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return deserialize_solution(text);
}

}  // namespace fairsub

#endif  // FAIRSUB_INSTANCE_HPP_
