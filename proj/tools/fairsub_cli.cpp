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

// Command-line harness: instance generation, single runs, parameter sweeps,
// and solution verification.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 infeasible instance.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fairsub/generator.hpp"
#include "fairsub/harness.hpp"
#include "fairsub/instance.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;

struct RangeSpec {
  int start = 10;
  int stop = 100;
  int step = 10;
};

RangeSpec parse_range(const std::string& text) {
  RangeSpec r;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> r.start >> c1 >> r.stop >> c2 >> r.step) || c1 != ':' ||
      c2 != ':' || !in.eof() || r.step <= 0 || r.stop < r.start) {
    throw CLI::ValidationError("--r", "expected start:stop:step, got " + text);
  }
  return r;
}

std::vector<fairsub::AlgoSpec> parse_algos(const std::string& text) {
  std::vector<fairsub::AlgoSpec> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(fairsub::AlgoSpec::parse(item));
  }
  if (out.empty())
    throw CLI::ValidationError("--algos", "no algorithms given");
  return out;
}

int cmd_gen(const std::string& kind, int n, int colors, int r,
            std::uint64_t seed, const std::string& out_path) {
  fairsub::Instance inst = fairsub::gen_instance(kind, n, colors, r, seed);
  inst.save(out_path);
  std::cout << "wrote " << out_path << " (n=" << inst.universe_size()
            << ", kind=" << kind << ", r=" << r << ")\n";
  return kExitOk;
}

int cmd_run(const std::string& instance_path, const std::string& algo_text,
            double epsilon, std::uint64_t seed, bool debug_verify,
            const std::string& solution_path) {
  fairsub::Instance inst = fairsub::Instance::load(instance_path);
  fairsub::AlgoSpec algo =
      fairsub::AlgoSpec::parse(algo_text == "our"
                                   ? "our:" + std::to_string(epsilon)
                                   : algo_text);
  fairsub::RunConfig cfg;
  cfg.seed = seed;
  cfg.debug_verify = debug_verify;
  fairsub::ResultRow row = fairsub::run_once(inst, algo, cfg);
  std::cout << fairsub::kCsvHeader << "\n" << fairsub::to_csv_row(row) << "\n";
  if (!row.feasible) {
    std::cerr << "instance is infeasible\n";
    return kExitInfeasible;
  }
  if (!solution_path.empty()) {
    // Re-run is cheap relative to clarity: run_once reports metrics only, so
    // recover the solution itself for -o via the same seeded config.
    fairsub::Evaluator f(inst.objective());
    fairsub::RunRecord rec;
    if (algo.name == "our") {
      cfg.epsilon = algo.epsilon;
      rec = fairsub::run_randomized(f, inst.matroid(), inst.fairness(), cfg);
    } else if (algo.name == "lbmi") {
      rec = fairsub::baseline_lbmi(f, inst.matroid(), inst.fairness());
    } else if (algo.name == "ubmi") {
      rec = fairsub::baseline_ubmi(f, inst.matroid(), inst.fairness());
    } else if (algo.name == "random") {
      rec = fairsub::baseline_random(f, inst.matroid(), inst.fairness(),
                                     cfg.seed);
    } else {
      rec = fairsub::baseline_twopass(f, inst.matroid(), inst.fairness());
    }
    fairsub::save_solution(rec.solution, solution_path);
  }
  return kExitOk;
}

int cmd_sweep(const std::string& kind, int n, int colors,
              const std::string& algos_text, const std::string& range_text,
              int reps, std::uint64_t seed, const std::string& out_path,
              const std::string& summary_path) {
  RangeSpec range = parse_range(range_text);
  fairsub::SweepSpec spec;
  spec.kind = kind;
  spec.n = n;
  spec.colors = colors;
  spec.algos = parse_algos(algos_text);
  spec.r_start = range.start;
  spec.r_stop = range.stop;
  spec.r_step = range.step;
  spec.reps = reps;
  spec.base_seed = seed;
  spec.csv_path = out_path;
  spec.summary_path = summary_path;
  {
    // Fail on unwritable output before any computation.
    std::ofstream probe(out_path, std::ios::binary | std::ios::app);
    if (!probe) {
      std::cerr << "cannot write " << out_path << "\n";
      return kExitUsage;
    }
  }
  fairsub::SweepResult result = fairsub::sweep(spec);
  fairsub::write_sweep_files(spec, result);
  std::cout << "wrote " << result.rows.size() << " rows to " << out_path
            << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& instance_path,
               const std::string& solution_path) {
  fairsub::Instance inst = fairsub::Instance::load(instance_path);
  fairsub::ElementSet sol = fairsub::load_solution(solution_path);
  fairsub::VerifyReport rep = fairsub::verify_solution(inst, sol);
  std::cout << "independent: " << (rep.independent ? "yes" : "no") << "\n"
            << "upper_fair: " << (rep.upper_fair ? "yes" : "no") << "\n"
            << "fav: " << rep.fav << "\n"
            << "f_value: " << rep.f_value << "\n";
  return rep.ok() ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fair matroid submodular maximization harness"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  std::string gen_kind = "coverage";
  int gen_n = 0, gen_colors = 0, gen_r = 10;
  std::uint64_t gen_seed = 0;
  std::string gen_out = "instance.json";
  gen->add_option("--kind", gen_kind, "coverage | clustering | recommender");
  gen->add_option("--n", gen_n, "universe size (0 = per-kind default)");
  gen->add_option("--colors", gen_colors,
                  "number of fairness colors (0 = per-kind default)");
  gen->add_option("--r", gen_r, "solution size scaling factor");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("-o,--out", gen_out, "output instance file");

  // run
  auto* run = app.add_subcommand("run", "Run one algorithm on an instance");
  std::string run_instance, run_algo = "our", run_solution;
  double run_eps = 0.5;
  std::uint64_t run_seed = 0;
  bool run_debug = false;
  run->add_option("instance", run_instance, "instance JSON file")->required();
  run->add_option("--algo", run_algo,
                  "our | our:<eps> | lbmi | ubmi | random | twopass");
  run->add_option("--epsilon", run_eps, "epsilon for --algo our");
  run->add_option("--seed", run_seed, "run seed");
  run->add_flag("--debug-verify", run_debug,
                "assert internal invariants every iteration");
  run->add_option("-o,--out", run_solution, "write solution JSON here");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep algorithms over r");
  std::string sweep_kind = "coverage";
  int sweep_n = 0, sweep_colors = 0, sweep_reps = 40;
  std::string sweep_algos =
      "our:0.2,our:0.5,our:0.8,twopass,lbmi,ubmi,random";
  std::string sweep_range = "10:100:10";
  std::uint64_t sweep_seed = 0;
  std::string sweep_out = "out.csv", sweep_summary;
  sweep->add_option("--kind", sweep_kind, "instance generator kind");
  sweep->add_option("--n", sweep_n, "universe size (0 = per-kind default)");
  sweep->add_option("--colors", sweep_colors, "fairness colors (0 = default)");
  sweep->add_option("--algos", sweep_algos, "comma-separated algorithm list");
  sweep->add_option("--r", sweep_range, "r range as start:stop:step");
  sweep->add_option("--reps", sweep_reps, "repetitions per cell");
  sweep->add_option("--seed", sweep_seed, "base seed");
  sweep->add_option("-o,--out", sweep_out, "output CSV path");
  sweep->add_option("--summary", sweep_summary,
                    "summary JSON path (default <out>.summary.json)");

  // verify
  auto* verify = app.add_subcommand("verify", "Verify a solution file");
  std::string verify_instance, verify_solution;
  verify->add_option("instance", verify_instance, "instance JSON file")
      ->required();
  verify->add_option("solution", verify_solution, "solution JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto default_n = [](const std::string& kind) {
    if (kind == "clustering") return 500;
    if (kind == "recommender") return 1000;
    return 2000;
  };

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_kind, gen_n > 0 ? gen_n : default_n(gen_kind),
                     gen_colors, gen_r, gen_seed, gen_out);
    }
    if (run->parsed()) {
      return cmd_run(run_instance, run_algo, run_eps, run_seed, run_debug,
                     run_solution);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_kind,
                       sweep_n > 0 ? sweep_n : default_n(sweep_kind),
                       sweep_colors, sweep_algos, sweep_range, sweep_reps,
                       sweep_seed, sweep_out, sweep_summary);
    }
    if (verify->parsed()) return cmd_verify(verify_instance, verify_solution);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fairsub::InfeasibleGenerationError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
