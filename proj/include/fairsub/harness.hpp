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

#ifndef FAIRSUB_HARNESS_HPP_
#define FAIRSUB_HARNESS_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairsub/algorithms.hpp"
#include "fairsub/generator.hpp"
#include "fairsub/instance.hpp"

namespace fairsub {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Per-repetition seed derived from (base, algorithm index, r, repetition).
inline std::uint64_t mix_seed(std::uint64_t base, int algo_index, int r,
                              int rep) {
  std::uint64_t s = splitmix64(base);
  s = splitmix64(s ^ static_cast<std::uint64_t>(algo_index));
  s = splitmix64(s ^ static_cast<std::uint64_t>(r));
  s = splitmix64(s ^ static_cast<std::uint64_t>(rep));
  return s;
}

// An algorithm selector: "our" carries an epsilon; baselines do not.
struct AlgoSpec {
  std::string name;  // our | lbmi | ubmi | random | twopass
  double epsilon = 0.5;

  std::string tag() const {
    if (name != "our") return name;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "our:%g", epsilon);
    return buf;
  }

  bool is_randomized() const { return name == "our" || name == "random"; }

  // Parses "our:0.2" / "lbmi" / ...; throws on unknown names or bad epsilon.
  static AlgoSpec parse(const std::string& text) {
    AlgoSpec a;
    std::size_t colon = text.find(':');
    a.name = text.substr(0, colon);
    if (a.name == "our") {
      if (colon == std::string::npos)
        throw std::invalid_argument("algo 'our' requires ':<epsilon>'");
      a.epsilon = std::stod(text.substr(colon + 1));
      if (!(a.epsilon > 0.0 && a.epsilon < 1.0))
        throw std::invalid_argument("epsilon must be in (0,1): " + text);
    } else if (a.name == "lbmi" || a.name == "ubmi" || a.name == "random" ||
               a.name == "twopass") {
      if (colon != std::string::npos)
        throw std::invalid_argument("algo '" + a.name + "' takes no epsilon");
    } else {
      throw std::invalid_argument("unknown algorithm: " + text);
    }
    return a;
  }
};

struct ResultRow {
  std::string instance_id;
  std::string algo;
  double epsilon = 0;   // meaningful only for "our:<eps>" rows
  int r = 0;
  int rep = 0;
  std::uint64_t seed = 0;
  double f_value = 0;
  int size = 0;
  int fav = 0;
  double runtime_ms = 0;
  bool feasible = true;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

// RFC 4180: quote fields containing comma, quote, or newline.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline const char* kCsvHeader =
    "instance,algo,epsilon,r,rep,seed,f_value,size,fav,runtime_ms";

inline std::string to_csv_row(const ResultRow& row) {
  std::ostringstream out;
  out << detail::csv_field(row.instance_id) << ','
      << detail::csv_field(row.algo) << ',';
  if (row.algo.rfind("our", 0) == 0) out << detail::format_double(row.epsilon);
  out << ',' << row.r << ',' << row.rep << ',' << row.seed << ',';
  if (row.feasible) {
    out << detail::format_double(row.f_value) << ',' << row.size << ','
        << row.fav;
  } else {
    out << "infeasible,,";
  }
  out << ',' << detail::format_double(row.runtime_ms);
  return out.str();
}

// Dispatches one algorithm run. f_value, size, and fav in the returned row
// are recomputed from the solution, independently of the algorithm's own
// bookkeeping.
inline ResultRow run_once(const Instance& inst, const AlgoSpec& algo,
                          const RunConfig& cfg) {
  Evaluator f(inst.objective());
  RunRecord rec;
  if (algo.name == "our") {
    RunConfig c = cfg;
    c.epsilon = algo.epsilon;
    rec = run_randomized(f, inst.matroid(), inst.fairness(), c);
  } else if (algo.name == "lbmi") {
    rec = baseline_lbmi(f, inst.matroid(), inst.fairness());
  } else if (algo.name == "ubmi") {
    rec = baseline_ubmi(f, inst.matroid(), inst.fairness());
  } else if (algo.name == "random") {
    rec = baseline_random(f, inst.matroid(), inst.fairness(), cfg.seed);
  } else if (algo.name == "twopass") {
    rec = baseline_twopass(f, inst.matroid(), inst.fairness());
  } else {
    throw std::invalid_argument("run_once: unknown algorithm " + algo.name);
  }

  ResultRow row;
  row.instance_id = inst.meta().generator + "-" +
                    std::to_string(inst.universe_size());
  row.algo = algo.tag();
  row.epsilon = algo.epsilon;
  row.r = inst.meta().r;
  row.seed = cfg.seed;
  row.runtime_ms = rec.wall_ms;
  row.feasible = rec.feasible;
  if (rec.feasible) {
    row.f_value = evaluate_fresh(inst.objective(), rec.solution);
    row.size = rec.solution.size();
    row.fav = inst.fairness().fav(rec.solution);
    if (row.size != rec.size || row.fav != rec.fav)
      throw InternalInvariantError("run_once: recomputed metrics disagree");
  }
  return row;
}

struct SweepSpec {
  std::string kind = "coverage";
  int n = 2000;
  int colors = 0;  // 0 = per-kind default
  std::vector<AlgoSpec> algos;
  int r_start = 10;
  int r_stop = 100;
  int r_step = 10;
  int reps = 40;
  std::uint64_t base_seed = 0;
  std::string csv_path;
  std::string summary_path;  // empty = csv_path + ".summary.json"
  bool debug_verify = false;
};

struct SweepResult {
  std::vector<ResultRow> rows;
  nlohmann::json summary;
};

// Runs every (r, algorithm, repetition) cell in deterministic order.
// Deterministic algorithms run once per (algorithm, r); their rows are
// replicated across repetitions with identical metrics. Randomized runs on
// the same instance share the precomputed fair base and greedy start, both
// of which are seed-independent.
inline SweepResult sweep(const SweepSpec& spec) {
  if (spec.reps < 1) throw std::invalid_argument("sweep: reps must be >= 1");
  if (spec.r_step <= 0 || spec.r_stop < spec.r_start)
    throw std::invalid_argument("sweep: bad r range");
  if (spec.algos.empty()) throw std::invalid_argument("sweep: no algorithms");

  SweepResult result;
  // Aggregates keyed by (algo tag, r): count, sum/sumsq of f and fav.
  struct Agg {
    int count = 0;
    double f_sum = 0, f_sumsq = 0;
    double fav_sum = 0, fav_sumsq = 0;
  };
  std::map<std::pair<std::string, int>, Agg> aggs;

  for (int r = spec.r_start; r <= spec.r_stop; r += spec.r_step) {
    Instance inst = gen_instance(spec.kind, spec.n, spec.colors, r,
                                 mix_seed(spec.base_seed, -1, r, 0));
    Evaluator f(inst.objective());
    // Seed-independent prefixes shared across repetitions.
    std::optional<ElementSet> fair_base =
        build_fair_base(inst.matroid(), inst.fairness());
    ElementSet greedy_start;
    if (fair_base.has_value()) {
      greedy_start = greedy_intersection(f, inst.matroid(),
                                         inst.fairness().upper_matroid());
    }

    for (std::size_t a = 0; a < spec.algos.size(); ++a) {
      const AlgoSpec& algo = spec.algos[a];
      std::optional<ResultRow> fixed;  // deterministic algorithms: run once
      for (int rep = 0; rep < spec.reps; ++rep) {
        RunConfig cfg;
        cfg.seed = mix_seed(spec.base_seed, static_cast<int>(a), r, rep);
        cfg.debug_verify = spec.debug_verify;
        ResultRow row;
        if (algo.name == "our") {
          cfg.epsilon = algo.epsilon;
          RunRecord rec;
          if (!fair_base.has_value()) {
            rec = detail::infeasible_record();
          } else {
            rec = run_randomized(f, inst.matroid(), inst.fairness(), cfg,
                                 &*fair_base, &greedy_start);
          }
          row.algo = algo.tag();
          row.epsilon = algo.epsilon;
          row.feasible = rec.feasible;
          if (rec.feasible) {
            row.f_value = evaluate_fresh(inst.objective(), rec.solution);
            row.size = rec.solution.size();
            row.fav = inst.fairness().fav(rec.solution);
          }
          row.runtime_ms = rec.wall_ms;
          row.instance_id =
              inst.meta().generator + "-" + std::to_string(spec.n);
          row.seed = cfg.seed;
          row.r = r;
        } else if (!algo.is_randomized() && fixed.has_value()) {
          row = *fixed;
          row.seed = cfg.seed;
        } else {
          row = run_once(inst, algo, cfg);
          if (!algo.is_randomized()) fixed = row;
        }
        row.rep = rep;
        if (row.feasible) {
          Agg& agg = aggs[{row.algo, r}];
          ++agg.count;
          agg.f_sum += row.f_value;
          agg.f_sumsq += row.f_value * row.f_value;
          agg.fav_sum += row.fav;
          agg.fav_sumsq += static_cast<double>(row.fav) * row.fav;
        }
        result.rows.push_back(std::move(row));
      }
    }
  }

  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, agg] : aggs) {
    double f_mean = agg.f_sum / agg.count;
    double fav_mean = agg.fav_sum / agg.count;
    double f_std = 0, fav_std = 0;
    if (agg.count > 1) {
      f_std = std::sqrt(std::max(
          0.0, (agg.f_sumsq - agg.count * f_mean * f_mean) / (agg.count - 1)));
      fav_std = std::sqrt(
          std::max(0.0, (agg.fav_sumsq - agg.count * fav_mean * fav_mean) /
                            (agg.count - 1)));
    }
    cells.push_back({{"algo", key.first},
                     {"r", key.second},
                     {"count", agg.count},
                     {"f_mean", f_mean},
                     {"f_std", f_std},
                     {"fav_mean", fav_mean},
                     {"fav_std", fav_std}});
  }
  result.summary = {{"kind", spec.kind},
                    {"n", spec.n},
                    {"reps", spec.reps},
                    {"base_seed", spec.base_seed},
                    {"cells", cells}};
  return result;
}

inline void write_sweep_files(const SweepSpec& spec,
                              const SweepResult& result) {
  std::ofstream csv(spec.csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("sweep: cannot write " + spec.csv_path);
  csv << kCsvHeader << "\n";
  for (const ResultRow& row : result.rows) csv << to_csv_row(row) << "\n";

  std::string summary_path = spec.summary_path.empty()
                                 ? spec.csv_path + ".summary.json"
                                 : spec.summary_path;
  std::ofstream js(summary_path, std::ios::binary);
  if (!js) throw std::runtime_error("sweep: cannot write " + summary_path);
  js << result.summary.dump(2) << "\n";
}

struct VerifyReport {
  bool independent = false;
  bool upper_fair = false;
  int fav = 0;
  double f_value = 0;
  bool ok() const { return independent && upper_fair; }
};

inline VerifyReport verify_solution(const Instance& inst,
                                    const ElementSet& solution) {
  VerifyReport rep;
  rep.independent = inst.matroid().is_independent(solution);
  rep.upper_fair = inst.fairness().upper_matroid().is_independent(solution);
  rep.fav = inst.fairness().fav(solution);
  rep.f_value = evaluate_fresh(inst.objective(), solution);
  return rep;
}

}  // namespace fairsub

#endif  // FAIRSUB_HARNESS_HPP_
