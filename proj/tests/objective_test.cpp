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

#include "fairsub/objective.hpp"

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.h"

namespace fairsub {
namespace {

constexpr double kTol = 1e-9;

TEST(ObjectiveTest, CoverageEvaluate) {
  // N(0) = {0,1}, N(1) = {1,2} over 3 items.
  Objective f = Objective::Coverage({{0, 1}, {1, 2}}, 3);
  Evaluator ev(f);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet()), 0.0);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet({0, 1})), 3.0);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet({1})), 2.0);
}

TEST(ObjectiveTest, CoverageMarginalOfCoveredItemIsZero) {
  Objective f = Objective::Coverage({{0, 1}, {1}}, 2);
  Evaluator ev(f);
  EXPECT_DOUBLE_EQ(ev.marginal(ElementSet({0}), 1), 0.0);
}

TEST(ObjectiveTest, LinearEvaluateAndMarginal) {
  Objective f = Objective::Linear({2, 5});
  Evaluator ev(f);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet({1})), 5.0);
  EXPECT_DOUBLE_EQ(ev.marginal(ElementSet({0}), 1), 5.0);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet()), 0.0);
}

TEST(ObjectiveTest, ClusteringHandEvaluation) {
  // Points (1) and (3) on the line; squared distances to the origin are 1
  // and 9. f({0}) = (1 - 0) + (9 - d((3),(1))) = 1 + (9 - 4) = 6.
  Objective f = Objective::Clustering({{1.0}, {3.0}});
  Evaluator ev(f);
  EXPECT_NEAR(ev.evaluate(ElementSet({0})), 6.0, kTol);
  EXPECT_DOUBLE_EQ(ev.evaluate(ElementSet()), 0.0);
  // Selecting everything zeroes all min-distances: f(V) = 1 + 9.
  EXPECT_NEAR(ev.evaluate(ElementSet({0, 1})), 10.0, kTol);
}

TEST(ObjectiveTest, RecommenderHandEvaluation) {
  // Two orthogonal unit items; user aligned with item 0; alpha = 0.5.
  Objective f = Objective::Recommender({{1, 0}, {0, 1}}, {1, 0}, 0.5);
  Evaluator ev(f);
  // S = {0}: coverage term max(v0.v0, 0) + max(v0.v1, 0) = 1; user term 1.
  EXPECT_NEAR(ev.evaluate(ElementSet({0})), 0.5 * 1 + 0.5 * 1, kTol);
  // S = {0,1}: coverage 1 + 1 = 2; user 1 + 0 = 1.
  EXPECT_NEAR(ev.evaluate(ElementSet({0, 1})), 0.5 * 2 + 0.5 * 1, kTol);
}

TEST(ObjectiveTest, MarginalAtEmptySetEqualsSingletonValue) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 6);
    Objective f = testutil::random_objective(rng, n);
    Evaluator ev(f);
    for (int e = 0; e < n; ++e) {
      double direct = evaluate_fresh(f, ElementSet({e}));
      EXPECT_NEAR(ev.marginal(ElementSet(), e), direct,
                  kTol * std::max(1.0, direct));
    }
  }
}

TEST(ObjectiveTest, MarginalPreconditionRejected) {
  Objective f = Objective::Linear({1, 2});
  Evaluator ev(f);
  EXPECT_THROW(ev.marginal(ElementSet({0}), 0), std::invalid_argument);
}

TEST(ObjectiveTest, DimensionMismatchRejected) {
  EXPECT_THROW(Objective::Clustering({{1.0}, {1.0, 2.0}}),
               std::invalid_argument);
  EXPECT_THROW(Objective::Recommender({{1.0, 2.0}}, {1.0}, 0.85),
               std::invalid_argument);
  EXPECT_THROW(Objective::Coverage({{3}}, 2), std::invalid_argument);
}

TEST(ObjectiveTest, IncrementalMatchesFromScratch) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 4 + static_cast<int>(rng() % 8);
    Objective f = testutil::random_objective(rng, n);
    Evaluator ev(f);
    // A stream of evaluate() calls on randomly drifting sets.
    ElementSet s;
    for (int step = 0; step < 20; ++step) {
      int e = static_cast<int>(rng() % n);
      if (rng() % 3 == 0) {
        s.erase(e);
      } else {
        s.insert(e);
      }
      double incremental = ev.evaluate(s);
      double fresh = evaluate_fresh(f, s);
      EXPECT_NEAR(incremental, fresh, kTol * std::max(1.0, std::abs(fresh)));
    }
  }
}

TEST(ObjectiveTest, CheckMonotoneSubmodularAcceptsAllVariants) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    Objective f = testutil::random_objective(rng, n);
    EXPECT_TRUE(check_monotone_submodular(f, n));
  }
}

TEST(ObjectiveTest, CheckMonotoneSubmodularRejectsNegativeWeight) {
  Objective f = Objective::Linear({1.0, -0.5, 2.0});
  EXPECT_FALSE(check_monotone_submodular(f, 3));
}

TEST(ObjectiveTest, CheckMonotoneSubmodularSampledPath) {
  // n > 14 exercises the sampled branch.
  std::mt19937_64 rng(37);
  Objective f = testutil::random_objective(rng, 16);
  EXPECT_TRUE(check_monotone_submodular(f, 16));
  std::vector<double> w(16, 1.0);
  w[7] = -1.0;
  EXPECT_FALSE(check_monotone_submodular(Objective::Linear(w), 16));
}

TEST(ObjectiveTest, SampledDiminishingReturns) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 4 + static_cast<int>(rng() % 8);
    Objective f = testutil::random_objective(rng, n);
    Evaluator ev(f);
    // Random nested pair s ⊆ t and e outside t.
    ElementSet s, t;
    for (int i = 0; i < n; ++i) {
      switch (rng() % 3) {
        case 0:
          s.insert(i);
          t.insert(i);
          break;
        case 1:
          t.insert(i);
          break;
        default:
          break;
      }
    }
    if (t.size() == n) continue;
    int e = 0;
    while (t.contains(e)) ++e;
    double ms = ev.marginal(s, e);
    double mt = ev.marginal(t, e);
    EXPECT_GE(ms, mt - kTol * std::max(1.0, ms));
    EXPECT_GE(mt, -kTol);
  }
}

}  // namespace
}  // namespace fairsub
