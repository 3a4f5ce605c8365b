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

#include "hypbound/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "hypbound/boundary.hpp"
#include "hypbound/error.hpp"
#include "hypbound/sampling.hpp"
#include "json.hpp"

namespace hypbound {
namespace {

constexpr double kPi = std::numbers::pi;

ScenarioSpec Spec(ScenarioKind kind, std::size_t k_max) {
  ScenarioSpec s;
  s.kind = kind;
  s.k_max = k_max;
  s.seed = 7;
  return s;
}

std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hypbound_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(ScenarioKind, NamesRoundTrip) {
  for (ScenarioKind k : {ScenarioKind::kConstantMoebius, ScenarioKind::kIsometryShifted,
                         ScenarioKind::kDecayingPerturbation, ScenarioKind::kNormalizedConvergent}) {
    EXPECT_EQ(ParseScenarioKind(ScenarioKindName(k)), k);
  }
  EXPECT_FALSE(ParseScenarioKind("spiral").has_value());
}

TEST(Validate, RejectsBadSpecs) {
  ScenarioSpec s;
  EXPECT_NO_THROW(s.Validate());
  s.k_max = 0;
  EXPECT_THROW(s.Validate(), GeometryError);
  s = ScenarioSpec{};
  s.decay_rate = 0.0;
  EXPECT_THROW(s.Validate(), GeometryError);
  s.decay_rate = -1.0;
  EXPECT_THROW(s.Validate(), GeometryError);
  s = ScenarioSpec{};
  s.anchor_angles = {0.0, 1e-7, 2.0};
  EXPECT_THROW(s.Validate(), GeometryError);
  s.anchor_angles = {0.0, 2.0 * kPi - 1e-7, 2.0};
  EXPECT_THROW(s.Validate(), GeometryError);
}

TEST(Generate, ConstantIsMoebius) {
  const auto suite = QuadrupleSuite(100, 3);
  const auto d = DefectProfile(Generate(Spec(ScenarioKind::kConstantMoebius, 5)), suite, 5);
  ASSERT_EQ(d.size(), 5u);
  for (double v : d) EXPECT_LT(v, 1e-10);
}

TEST(Generate, IsometryShiftedSlicesAreMoebius) {
  const BoundaryMapSequence seq = Generate(Spec(ScenarioKind::kIsometryShifted, 30));
  const auto suite = QuadrupleSuite(100, 3);
  const auto d = DefectProfile(seq, suite, 30);
  for (std::size_t k = 0; k < 20; ++k) EXPECT_LT(d[k], 1e-9) << "k = " << k + 1;
}

TEST(Generate, IsometryShiftedImagesRunAway) {
  const BoundaryMapSequence seq = Generate(Spec(ScenarioKind::kIsometryShifted, 30));
  const IdealPoint xi = IdealPoint::FromAngle(1.0);
  const double step = Chordal(seq.evaluator(20, xi).direction(), seq.evaluator(21, xi).direction());
  EXPECT_GT(step, 0.5);
}

TEST(Generate, DecayingDefectShrinks) {
  ScenarioSpec s = Spec(ScenarioKind::kDecayingPerturbation, 80);
  const auto suite = QuadrupleSuite(100, 3);
  const auto d = DefectProfile(Generate(s), suite, 80);
  for (std::size_t k : {10u, 20u, 40u}) {
    EXPECT_GT(d[k - 1], 0.0);
    EXPECT_LT(d[2 * k - 1], d[k - 1]) << "k = " << k;
  }
}

TEST(Generate, NormalizedConvergentFixesAnchors) {
  const ScenarioSpec s = Spec(ScenarioKind::kNormalizedConvergent, 10);
  const BoundaryMapSequence seq = Generate(s);
  for (const IdealPoint& a : s.Anchors()) {
    for (std::size_t k = 1; k <= 10; ++k) {
      EXPECT_LT(Chordal(seq.evaluator(k, a).direction(), a.direction()), 1e-12);
    }
  }
}

TEST(CircleSamples, HalfStepFromStart) {
  const auto s = CircleSamples(4, 0.5);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(std::atan2(s[0].direction().y, s[0].direction().x), 0.5 + kPi / 4.0, 1e-15);
}

TEST(Execute, ConstantRun) {
  const RunOutput out = Execute(Spec(ScenarioKind::kConstantMoebius, 5), 8);
  const RunReport& r = out.report;
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.all_converged);
  ASSERT_TRUE(r.fit_residual.has_value());
  EXPECT_LT(*r.fit_residual, 1e-8);
  EXPECT_FALSE(r.divergence_checked);
  for (const SampleSummary& s : r.samples) {
    ASSERT_TRUE(s.final_gap.has_value());
    EXPECT_LT(*s.final_gap, 1e-12);
  }
}

TEST(Execute, IsometryShiftedDivergesButNormalizedConverges) {
  const RunOutput out = Execute(Spec(ScenarioKind::kIsometryShifted, 30), 6);
  const RunReport& r = out.report;
  EXPECT_TRUE(r.divergence_checked);
  EXPECT_TRUE(r.diverged_without_normalization);
  EXPECT_TRUE(r.all_converged);
  EXPECT_TRUE(r.passed);
  for (const LimitReport& l : out.limits) {
    ASSERT_FALSE(l.steps.empty());
    EXPECT_LT(l.steps.front().gap, 1e-8);
  }
}

TEST(Execute, DecayingRunConvergesNearInclusion) {
  const RunOutput out = Execute(Spec(ScenarioKind::kDecayingPerturbation, 200), 12);
  const RunReport& r = out.report;
  EXPECT_TRUE(r.all_converged);
  EXPECT_TRUE(r.passed) << r.error_message.value_or("");
  for (const SampleSummary& s : r.samples) {
    ASSERT_TRUE(s.reference_gap.has_value());
    EXPECT_LT(*s.reference_gap, 1e-2);
    EXPECT_LE(s.max_sandwich_excess, 1e-9);
    EXPECT_LE(s.max_angle_deficit, 1e-9);
  }
}

TEST(Execute, RecordsRunLevelFailure) {
  // The shifted sequence leaves the floating point range of the normalizer
  // well before k = 200.
  const RunOutput out = Execute(Spec(ScenarioKind::kIsometryShifted, 200), 4);
  EXPECT_FALSE(out.report.passed);
  ASSERT_TRUE(out.report.error_code.has_value());
  EXPECT_EQ(*out.report.error_code, "DegenerateTriple");
}

TEST(Report, JsonRoundTrip) {
  const RunOutput out = Execute(Spec(ScenarioKind::kDecayingPerturbation, 30), 5);
  const std::string a = ReportToJson(out.report, true);
  const RunReport back = ReportFromJson(a);
  EXPECT_EQ(ReportToJson(back, true), a);
  EXPECT_EQ(back.samples.size(), 5u);
  EXPECT_EQ(back.scenario.k_max, 30u);
}

TEST(Report, EverySampleFieldPresent) {
  const RunOutput out = Execute(Spec(ScenarioKind::kConstantMoebius, 3), 3);
  const auto j = nlohmann::json::parse(ReportToJson(out.report, false));
  EXPECT_FALSE(j.contains("timing"));
  for (const char* key : {"scenario", "sample_count", "samples", "all_converged",
                          "limit_moebius_defect", "fit_residual", "passed", "error"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const auto& s : j["samples"]) {
    for (const char* key : {"index", "target", "interval", "alpha", "predicted", "converged",
                            "final_gap", "reference_gap", "steps", "max_sandwich_excess",
                            "max_angle_deficit", "max_balance_error", "multiple_roots", "error"}) {
      EXPECT_TRUE(s.contains(key)) << key;
    }
  }
}

TEST(Report, Deterministic) {
  const ScenarioSpec s = Spec(ScenarioKind::kDecayingPerturbation, 40);
  const RunOutput a = Execute(s, 6);
  const RunOutput b = Execute(s, 6);
  EXPECT_EQ(ReportToJson(a.report, false), ReportToJson(b.report, false));
  EXPECT_EQ(TrajectoriesCsv(a.limits), TrajectoriesCsv(b.limits));
}

TEST(Report, CsvShape) {
  const RunOutput out = Execute(Spec(ScenarioKind::kConstantMoebius, 4), 3);
  std::istringstream in(TrajectoriesCsv(out.limits));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "sample_index,k,beta_k,alpha,gap_chordal,defect_k");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 5);
  }
  EXPECT_EQ(rows, 12);
}

TEST(Run, WritesArtifacts) {
  const auto dir = TempDir("run");
  const RunReport r = hypbound::Run(Spec(ScenarioKind::kConstantMoebius, 3), 4, dir);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(std::filesystem::exists(dir / "report.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "trajectories.csv"));
  const RunReport back = ReportFromJson(Slurp(dir / "report.json"));
  EXPECT_EQ(back.sample_count, 4u);
  std::filesystem::remove_all(dir);
}

TEST(Run, BadPathRaisesIo) {
  const auto file = TempDir("blocker");
  { std::ofstream(file) << "x"; }
  try {
    hypbound::Run(Spec(ScenarioKind::kConstantMoebius, 2), 2, file / "sub");
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
  std::filesystem::remove_all(file);
}

TEST(VerifyIdentities, AllRowsPass) {
  const auto rows = VerifyIdentities(200, 11);
  EXPECT_GE(rows.size(), 10u);
  for (const IdentityRow& r : rows) {
    EXPECT_TRUE(r.passed) << r.name << " worst " << r.worst_error;
    EXPECT_EQ(r.trials, 200u);
  }
}

TEST(VerifyIdentities, ReproducibleAndValidated) {
  const auto a = VerifyIdentities(50, 4);
  const auto b = VerifyIdentities(50, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].worst_error, b[i].worst_error);
  EXPECT_THROW(VerifyIdentities(0, 4), GeometryError);
}

}  // namespace
}  // namespace hypbound
