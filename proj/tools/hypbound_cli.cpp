// Copyright 2026 The hypbound Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS-IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// hypbound: command-line front end over the C interface.
//
//   hypbound verify --trials N --seed S
//   hypbound run --scenario KIND --k-max K --samples M --decay R --seed S --out PATH
//
// Exit status: 0 all checks pass, 1 some check failed, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "hypbound/hypbound.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int Verify(std::size_t trials, std::uint64_t seed) {
  hb_verify_table* table = nullptr;
  const hb_status st = hb_verify_identities(trials, seed, &table);
  if (st == HB_INVALID_ARGUMENT) {
    std::fprintf(stderr, "hypbound verify: %s\n", hb_last_error());
    return kExitUsage;
  }
  if (st != HB_OK) {
    std::fprintf(stderr, "hypbound verify: %s\n", hb_last_error());
    return kExitFail;
  }
  bool all = true;
  std::printf("%-36s %8s %12s %10s  %s\n", "identity", "trials", "worst", "tol", "result");
  for (std::size_t i = 0; i < hb_verify_row_count(table); ++i) {
    const char* name = nullptr;
    double worst = 0.0, tol = 0.0;
    int passed = 0;
    hb_verify_row(table, i, &name, &worst, &tol, &passed);
    std::printf("%-36s %8zu %12.3e %10.1e  %s\n", name, trials, worst, tol,
                passed ? "PASS" : "FAIL");
    all = all && passed;
  }
  hb_verify_destroy(table);
  std::printf("%s\n", all ? "all identities pass" : "some identities FAILED");
  return all ? kExitPass : kExitFail;
}

int Run(const std::string& kind, std::size_t k_max, std::size_t samples, double decay,
        std::uint64_t seed, const std::string& out) {
  hb_scenario* scenario = nullptr;
  if (hb_scenario_create(kind.c_str(), seed, k_max, decay, &scenario) != HB_OK) {
    std::fprintf(stderr, "hypbound run: %s\n", hb_last_error());
    return kExitUsage;
  }
  hb_report* report = nullptr;
  const hb_status st = hb_scenario_run(scenario, samples, out.c_str(), &report);
  hb_scenario_destroy(scenario);
  if (st != HB_OK) {
    std::fprintf(stderr, "hypbound run: %s\n", hb_last_error());
    return st == HB_INVALID_ARGUMENT ? kExitUsage : kExitFail;
  }
  hb_run_summary s;
  hb_report_summary(report, &s);
  hb_report_destroy(report);

  std::printf("scenario           %s\n", kind.c_str());
  std::printf("samples            %zu (%zu converged)\n", s.sample_count, s.converged_count);
  std::printf("max final gap      %.3e\n", s.max_final_gap);
  std::printf("max gap to iota    %.3e\n", s.max_reference_gap);
  std::printf("sandwich excess    %.3e\n", s.max_sandwich_excess);
  std::printf("angle deficit      %.3e\n", s.max_angle_deficit);
  std::printf("limit defect       %.3e\n", s.limit_moebius_defect);
  std::printf("fit residual       %.3e\n", s.fit_residual);
  if (s.divergence_checked) {
    std::printf("diverged w/o norm  %s\n", s.diverged_without_normalization ? "true" : "false");
  }
  std::printf("elapsed            %.2f s\n", s.elapsed_seconds);
  std::printf("report             %s/report.json\n", out.c_str());
  std::printf("%s\n", s.passed ? "PASS" : "FAIL");
  return s.passed ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary maps of hyperbolic space: identity checks and limit extraction"};
  app.require_subcommand(1);

  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  CLI::App* verify = app.add_subcommand("verify", "Run the randomized identity suite");
  verify->add_option("--trials", trials, "Trials per identity")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "RNG seed");

  std::string kind;
  std::size_t k_max = 200;
  std::size_t samples = 24;
  double decay = 0.3;
  std::string out;
  CLI::App* run = app.add_subcommand("run", "Extract the limit map of a generated sequence");
  run->add_option("--scenario", kind, "Sequence family")
      ->required()
      ->check(CLI::IsMember({"constant_moebius", "isometry_shifted", "decaying_perturbation",
                             "normalized_convergent"}));
  run->add_option("--k-max", k_max, "Last sequence index")->check(CLI::PositiveNumber);
  run->add_option("--samples", samples, "Number of sample points")->check(CLI::PositiveNumber);
  run->add_option("--decay", decay, "Perturbation decay rate")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (verify->parsed()) return Verify(trials, seed);
  return Run(kind, k_max, samples, decay, seed, out);
}
