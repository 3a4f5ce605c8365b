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

// Generators for asymptotically Moebius sequences, the end-to-end extraction
// driver, and the randomized identity suite.

#ifndef HYPBOUND_SCENARIO_HPP_
#define HYPBOUND_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hypbound/limit.hpp"

namespace hypbound {

enum class ScenarioKind {
  kConstantMoebius,        // phi_k = equatorial inclusion
  kIsometryShifted,        // phi_k = h_k o inclusion, h_k translating by 0.5 k
  kDecayingPerturbation,   // inclusion displaced by a tangent field of size decay / k
  kNormalizedConvergent,   // as above, with the displacement vanishing at the anchors
};

std::string_view ScenarioKindName(ScenarioKind kind);
std::optional<ScenarioKind> ParseScenarioKind(std::string_view name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::kConstantMoebius;
  std::uint64_t seed = 1;
  std::size_t k_max = 200;
  double decay_rate = 0.3;
  std::array<double, 3> anchor_angles = {0.0, 2.0 * std::numbers::pi / 3.0,
                                         4.0 * std::numbers::pi / 3.0};

  // Throws kInvalidArgument: k_max >= 1, decay_rate > 0, anchors pairwise
  // at least 1e-6 apart modulo 2 pi.
  void Validate() const;

  AnchorTriple Anchors() const;
};

// Translation length per index for kIsometryShifted.
inline constexpr double kShiftStep = 0.5;

BoundaryMapSequence Generate(const ScenarioSpec& spec);

// Per-k Moebius defect of seq on `suite`, for k = 1..k_max.
std::vector<double> DefectProfile(const BoundaryMapSequence& seq,
                                  std::span<const Quadruple> suite, std::size_t k_max);

// Equispaced sample points, offset half a step from the first anchor.
std::vector<IdealPoint> CircleSamples(std::size_t count, double start_angle);

struct SampleSummary {
  std::size_t index = 0;
  Vec3 target;
  std::optional<std::string> interval;
  std::optional<double> alpha;
  std::optional<Vec3> predicted;
  bool converged = false;
  std::optional<double> final_gap;
  std::optional<double> reference_gap;  // chordal distance of the prediction to the inclusion
  std::size_t steps = 0;
  double max_sandwich_excess = 0.0;  // how far sin^2(beta_k/2) leaves sin^2(alpha/2) +- eps_k
  double max_angle_deficit = 0.0;    // how far theta(xi0', psi_k(eta1)) drops below pi - beta_k
  double max_balance_error = 0.0;
  bool multiple_roots = false;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
};

struct RunReport {
  ScenarioSpec scenario;
  std::size_t sample_count = 0;
  std::vector<SampleSummary> samples;
  bool all_converged = false;
  std::optional<double> limit_moebius_defect;
  std::optional<double> fit_residual;
  bool divergence_checked = false;
  bool diverged_without_normalization = false;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
  bool passed = false;
  double elapsed_seconds = 0.0;
};

struct RunThresholds {
  double limit_defect = 1e-5;
  double fit_residual = 1e-5;
  double bound_slack = 1e-9;
  std::size_t limit_quadruples = 200;
};

struct RunOutput {
  RunReport report;
  std::vector<LimitReport> limits;  // full per-sample trajectories
};

// Generate, normalize, extract and verify. Writes nothing.
RunOutput Execute(const ScenarioSpec& spec, std::size_t sample_count,
                  const ExtractOptions& options = {}, const RunThresholds& thresholds = {});

// Execute and write <out_dir>/report.json and <out_dir>/trajectories.csv.
// Throws kIo on filesystem errors.
RunReport Run(const ScenarioSpec& spec, std::size_t sample_count,
              const std::filesystem::path& out_dir, const ExtractOptions& options = {});

std::string ReportToJson(const RunReport& report, bool include_timing = true);
RunReport ReportFromJson(std::string_view text);
std::string TrajectoriesCsv(const std::vector<LimitReport>& limits);

struct IdentityRow {
  std::string name;
  std::size_t trials;
  double worst_error;
  double tolerance;
  bool passed;
};

// Randomized identity checks over the model, boundary and isometry layers.
// Throws kInvalidArgument when trial_count == 0.
std::vector<IdentityRow> VerifyIdentities(std::size_t trial_count, std::uint64_t seed);

}  // namespace hypbound

#endif  // HYPBOUND_SCENARIO_HPP_
