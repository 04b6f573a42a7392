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

#include "fairsub/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "fairsub/generator.hpp"
#include "fairsub/instance.hpp"

namespace fairsub {
namespace {

constexpr double kTol = 1e-9;

Instance make_manual_instance() {
  Matroid m = Matroid::Partition({0, 0, 1, 1, 1}, {1, 2});
  FairnessSpec spec({0, 1, 0, 1, 0}, {1, 0}, {2, 2});
  Objective f = Objective::Linear({5, 4, 3, 2, 1});
  return Instance(m, spec, f, InstanceMeta{"manual", 42, 3});
}

TEST(InstanceTest, SerializeRoundTripIsByteIdentical) {
  Instance inst = make_manual_instance();
  std::string text = inst.serialize();
  Instance back = Instance::deserialize(text);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_EQ(back.universe_size(), 5);
  EXPECT_EQ(back.meta().generator, "manual");
  EXPECT_EQ(back.meta().seed, 42u);
  EXPECT_EQ(back.meta().r, 3);
}

TEST(InstanceTest, AllKindsRoundTrip) {
  std::vector<Instance> insts;
  insts.push_back(Instance(
      Matroid::Uniform(3, 2), FairnessSpec({0, 0, 0}, {0}, {3}),
      Objective::Coverage({{0}, {1}, {0, 1}}, 2), InstanceMeta{"manual", 0, 1}));
  insts.push_back(Instance(
      Matroid::Explicit(2, {ElementSet(), ElementSet({0}), ElementSet({1})}),
      FairnessSpec({0, 1}, {0, 0}, {1, 1}),
      Objective::Clustering({{0.5, 0.5}, {0.25, 0.75}}),
      InstanceMeta{"manual", 1, 1}));
  insts.push_back(Instance(
      Matroid::Uniform(2, 1), FairnessSpec({0, 0}, {0}, {2}),
      Objective::Recommender({{1, 0}, {0, 1}}, {1, 1}, 0.85),
      InstanceMeta{"manual", 2, 1}));
  for (const Instance& inst : insts) {
    std::string text = inst.serialize();
    EXPECT_EQ(Instance::deserialize(text).serialize(), text);
  }
}

TEST(InstanceTest, SolutionRoundTrip) {
  ElementSet s({4, 1, 7});
  EXPECT_EQ(deserialize_solution(serialize_solution(s)), s);
  // Ids are emitted sorted.
  EXPECT_NE(serialize_solution(s).find("1,\n    4,\n    7"),
            std::string::npos);
  EXPECT_TRUE(deserialize_solution("{\"solution\": []}").empty());
}

TEST(GeneratorTest, SameSeedIsByteIdentical) {
  for (const char* kind : {"coverage", "clustering", "recommender"}) {
    Instance a = gen_instance(kind, 120, 3, 12, 99);
    Instance b = gen_instance(kind, 120, 3, 12, 99);
    EXPECT_EQ(a.serialize(), b.serialize());
    Instance c = gen_instance(kind, 120, 3, 12, 100);
    EXPECT_NE(c.serialize(), a.serialize());
  }
}

TEST(GeneratorTest, ClusteringBoundsFormula) {
  Instance inst = gen_instance("clustering", 200, 0, 30, 7);
  const FairnessSpec& spec = inst.fairness();
  ASSERT_EQ(spec.num_colors(), 6);
  for (int c = 0; c < 6; ++c) {
    EXPECT_EQ(spec.lower(c), 5);   // 30/10 + 2
    EXPECT_EQ(spec.upper(c), 12);  // 2*30/5
  }
  EXPECT_EQ(inst.matroid().partition_caps(), std::vector<int>(5, 6));
}

TEST(GeneratorTest, ClusteringSmallRIsInfeasible) {
  // l = r/10 + 2 summed over 6 colors exceeds capacity 5*(r/5) for r < 30.
  EXPECT_THROW(gen_instance("clustering", 200, 0, 10, 7),
               InfeasibleGenerationError);
}

TEST(GeneratorTest, CoverageCapsAreProportionalCeilings) {
  const int n = 300, r = 17;
  Instance inst = gen_instance("coverage", n, 4, r, 5);
  const Matroid& m = inst.matroid();
  std::vector<int> gsize(4, 0);
  for (int g : m.partition_groups()) ++gsize[g];
  for (int g = 0; g < 4; ++g) {
    EXPECT_EQ(m.partition_caps()[g],
              static_cast<int>(std::ceil(static_cast<double>(gsize[g]) / n * r)));
  }
  // Fairness bounds recomputed from color shares.
  const FairnessSpec& spec = inst.fairness();
  std::vector<int> csize(spec.num_colors(), 0);
  for (int c : spec.colors()) ++csize[c];
  for (int c = 0; c < spec.num_colors(); ++c) {
    double share = static_cast<double>(csize[c]) / n;
    EXPECT_EQ(spec.lower(c), static_cast<int>(std::floor(0.9 * share * r)));
    EXPECT_EQ(spec.upper(c), static_cast<int>(std::ceil(1.5 * share * r)));
  }
}

TEST(GeneratorTest, ParameterValidation) {
  EXPECT_THROW(gen_instance("coverage", 0, 4, 10, 1), std::invalid_argument);
  EXPECT_THROW(gen_instance("coverage", 100, 4, 0, 1), std::invalid_argument);
  EXPECT_THROW(gen_instance("nope", 100, 4, 10, 1), std::invalid_argument);
}

TEST(AlgoSpecTest, Parse) {
  AlgoSpec a = AlgoSpec::parse("our:0.2");
  EXPECT_EQ(a.name, "our");
  EXPECT_DOUBLE_EQ(a.epsilon, 0.2);
  EXPECT_EQ(a.tag(), "our:0.2");
  EXPECT_TRUE(a.is_randomized());

  AlgoSpec b = AlgoSpec::parse("lbmi");
  EXPECT_EQ(b.tag(), "lbmi");
  EXPECT_FALSE(b.is_randomized());
  EXPECT_TRUE(AlgoSpec::parse("random").is_randomized());

  EXPECT_THROW(AlgoSpec::parse("our"), std::invalid_argument);
  EXPECT_THROW(AlgoSpec::parse("our:1.5"), std::invalid_argument);
  EXPECT_THROW(AlgoSpec::parse("our:0"), std::invalid_argument);
  EXPECT_THROW(AlgoSpec::parse("lbmi:0.5"), std::invalid_argument);
  EXPECT_THROW(AlgoSpec::parse("bogus"), std::invalid_argument);
}

TEST(SeedTest, MixSeedIsDeterministicAndSpread) {
  EXPECT_EQ(mix_seed(1, 2, 3, 4), mix_seed(1, 2, 3, 4));
  std::set<std::uint64_t> seen;
  for (int a = 0; a < 4; ++a)
    for (int r = 0; r < 4; ++r)
      for (int rep = 0; rep < 4; ++rep) seen.insert(mix_seed(0, a, r, rep));
  EXPECT_EQ(seen.size(), 64u);
}

TEST(CsvTest, RowFormatting) {
  ResultRow row;
  row.instance_id = "coverage-2000";
  row.algo = "our:0.5";
  row.epsilon = 0.5;
  row.r = 10;
  row.rep = 3;
  row.seed = 12345;
  row.f_value = 1.25;
  row.size = 9;
  row.fav = 0;
  row.runtime_ms = 2.5;
  EXPECT_EQ(to_csv_row(row), "coverage-2000,our:0.5,0.5,10,3,12345,1.25,9,0,2.5");

  row.algo = "lbmi";  // baselines leave epsilon blank
  EXPECT_EQ(to_csv_row(row), "coverage-2000,lbmi,,10,3,12345,1.25,9,0,2.5");

  row.feasible = false;
  EXPECT_EQ(to_csv_row(row),
            "coverage-2000,lbmi,,10,3,12345,infeasible,,,2.5");

  row.instance_id = "weird,\"id\"";
  row.feasible = true;
  EXPECT_EQ(to_csv_row(row),
            "\"weird,\"\"id\"\"\",lbmi,,10,3,12345,1.25,9,0,2.5");
}

TEST(RunOnceTest, LbmiIsFairAndMetricsAreConsistent) {
  Instance inst = gen_instance("coverage", 150, 3, 10, 21);
  RunConfig cfg;
  cfg.seed = 17;
  ResultRow row = run_once(inst, AlgoSpec::parse("lbmi"), cfg);
  ASSERT_TRUE(row.feasible);
  EXPECT_EQ(row.fav, 0);
  EXPECT_EQ(row.instance_id, "coverage-150");
  EXPECT_GT(row.f_value, 0.0);
  EXPECT_GE(row.runtime_ms, 0.0);
}

TEST(RunOnceTest, OurRespectsEpsilonFromSpec) {
  Instance inst = gen_instance("coverage", 150, 3, 10, 21);
  RunConfig cfg;
  cfg.seed = 17;
  cfg.debug_verify = true;
  ResultRow row = run_once(inst, AlgoSpec::parse("our:0.4"), cfg);
  ASSERT_TRUE(row.feasible);
  EXPECT_EQ(row.algo, "our:0.4");
  EXPECT_DOUBLE_EQ(row.epsilon, 0.4);
}

SweepSpec small_sweep_spec() {
  SweepSpec spec;
  spec.kind = "coverage";
  spec.n = 120;
  spec.colors = 3;
  spec.algos = {AlgoSpec::parse("our:0.5"), AlgoSpec::parse("lbmi"),
                AlgoSpec::parse("random")};
  spec.r_start = 5;
  spec.r_stop = 10;
  spec.r_step = 5;
  spec.reps = 3;
  spec.base_seed = 31;
  return spec;
}

TEST(SweepTest, RowCountAndOrdering) {
  SweepSpec spec = small_sweep_spec();
  SweepResult res = sweep(spec);
  // |r values| * |algos| * reps.
  ASSERT_EQ(res.rows.size(), 2u * 3u * 3u);
  std::size_t i = 0;
  for (int r : {5, 10}) {
    for (const std::string& tag : {std::string("our:0.5"), std::string("lbmi"),
                                   std::string("random")}) {
      for (int rep = 0; rep < 3; ++rep, ++i) {
        EXPECT_EQ(res.rows[i].r, r);
        EXPECT_EQ(res.rows[i].algo, tag);
        EXPECT_EQ(res.rows[i].rep, rep);
      }
    }
  }
}

TEST(SweepTest, DeterministicAlgorithmsReplicateRows) {
  SweepResult res = sweep(small_sweep_spec());
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    for (std::size_t j = i + 1; j < res.rows.size(); ++j) {
      const ResultRow& a = res.rows[i];
      const ResultRow& b = res.rows[j];
      if (a.algo != "lbmi" || b.algo != "lbmi" || a.r != b.r) continue;
      EXPECT_EQ(a.f_value, b.f_value);
      EXPECT_EQ(a.size, b.size);
      EXPECT_EQ(a.fav, b.fav);
      EXPECT_NE(a.seed, b.seed);  // seeds still vary by rep
    }
  }
}

TEST(SweepTest, DeterministicModuloRuntime) {
  SweepSpec spec = small_sweep_spec();
  SweepResult a = sweep(spec);
  SweepResult b = sweep(spec);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].instance_id, b.rows[i].instance_id);
    EXPECT_EQ(a.rows[i].algo, b.rows[i].algo);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
    EXPECT_EQ(a.rows[i].feasible, b.rows[i].feasible);
    EXPECT_EQ(a.rows[i].f_value, b.rows[i].f_value);
    EXPECT_EQ(a.rows[i].size, b.rows[i].size);
    EXPECT_EQ(a.rows[i].fav, b.rows[i].fav);
  }
}

TEST(SweepTest, SummaryMatchesRowRecomputation) {
  SweepSpec spec = small_sweep_spec();
  SweepResult res = sweep(spec);
  // Recompute per-(algo, r) means from the raw rows.
  std::map<std::pair<std::string, int>, std::vector<double>> fvals, favvals;
  for (const ResultRow& row : res.rows) {
    if (!row.feasible) continue;
    fvals[{row.algo, row.r}].push_back(row.f_value);
    favvals[{row.algo, row.r}].push_back(row.fav);
  }
  ASSERT_TRUE(res.summary.contains("cells"));
  int checked = 0;
  for (const auto& cell : res.summary["cells"]) {
    std::pair<std::string, int> key = {cell["algo"].get<std::string>(),
                                       cell["r"].get<int>()};
    const std::vector<double>& fs = fvals.at(key);
    ASSERT_EQ(cell["count"].get<int>(), static_cast<int>(fs.size()));
    double mean = 0;
    for (double v : fs) mean += v;
    mean /= fs.size();
    EXPECT_NEAR(cell["f_mean"].get<double>(), mean, kTol * (1 + mean));
    if (fs.size() > 1) {
      double var = 0;
      for (double v : fs) var += (v - mean) * (v - mean);
      var /= (fs.size() - 1);
      EXPECT_NEAR(cell["f_std"].get<double>(), std::sqrt(var),
                  1e-6 * (1 + std::sqrt(var)));
    }
    double fav_mean = 0;
    for (double v : favvals.at(key)) fav_mean += v;
    fav_mean /= favvals.at(key).size();
    EXPECT_NEAR(cell["fav_mean"].get<double>(), fav_mean, kTol);
    ++checked;
  }
  EXPECT_EQ(checked, 2 * 3);  // one cell per (algo, r)
}

TEST(SweepTest, SingleRepHasZeroStd) {
  SweepSpec spec = small_sweep_spec();
  spec.reps = 1;
  SweepResult res = sweep(spec);
  for (const auto& cell : res.summary["cells"]) {
    EXPECT_DOUBLE_EQ(cell["f_std"].get<double>(), 0.0);
    EXPECT_DOUBLE_EQ(cell["fav_std"].get<double>(), 0.0);
  }
}

TEST(SweepTest, RejectsBadParameters) {
  SweepSpec spec = small_sweep_spec();
  spec.reps = 0;
  EXPECT_THROW(sweep(spec), std::invalid_argument);
  spec = small_sweep_spec();
  spec.r_step = 0;
  EXPECT_THROW(sweep(spec), std::invalid_argument);
  spec = small_sweep_spec();
  spec.algos.clear();
  EXPECT_THROW(sweep(spec), std::invalid_argument);
}

TEST(SweepTest, WriteFilesProducesHeaderAndRows) {
  SweepSpec spec = small_sweep_spec();
  spec.reps = 1;
  spec.csv_path = ::testing::TempDir() + "fairsub_sweep_test.csv";
  SweepResult res = sweep(spec);
  write_sweep_files(spec, res);

  std::ifstream csv(spec.csv_path);
  ASSERT_TRUE(csv.good());
  std::string line;
  ASSERT_TRUE(std::getline(csv, line));
  EXPECT_EQ(line, kCsvHeader);
  int count = 0;
  while (std::getline(csv, line)) ++count;
  EXPECT_EQ(count, static_cast<int>(res.rows.size()));

  std::ifstream js(spec.csv_path + ".summary.json");
  ASSERT_TRUE(js.good());
  nlohmann::json summary = nlohmann::json::parse(js);
  EXPECT_EQ(summary["kind"], "coverage");
  std::remove(spec.csv_path.c_str());
  std::remove((spec.csv_path + ".summary.json").c_str());
}

TEST(VerifyTest, EmptySolutionReportsLowerShortfall) {
  Instance inst = make_manual_instance();
  VerifyReport rep = verify_solution(inst, ElementSet());
  EXPECT_TRUE(rep.ok());  // independent and upper-fair, just not lower-fair
  EXPECT_EQ(rep.fav, 1);  // sum of lower bounds
  EXPECT_DOUBLE_EQ(rep.f_value, 0.0);
}

TEST(VerifyTest, OversizedColorFailsUpperCheck) {
  Instance inst = make_manual_instance();
  // Elements 0, 2, 4 are all color 0; upper bound is 2.
  VerifyReport rep = verify_solution(inst, ElementSet({0, 2, 4}));
  EXPECT_FALSE(rep.upper_fair);
  EXPECT_FALSE(rep.ok());
  EXPECT_GT(rep.fav, 0);
}

TEST(VerifyTest, FeasibleSolutionPasses) {
  Instance inst = make_manual_instance();
  // {0, 3}: groups (0, 1) within caps, colors (0, 1) within bounds.
  VerifyReport rep = verify_solution(inst, ElementSet({0, 3}));
  EXPECT_TRUE(rep.independent);
  EXPECT_TRUE(rep.upper_fair);
  EXPECT_EQ(rep.fav, 0);
  EXPECT_DOUBLE_EQ(rep.f_value, 7.0);
}

}  // namespace
}  // namespace fairsub
