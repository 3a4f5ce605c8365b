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

#include "hypbound/limit.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "hypbound/boundary.hpp"
#include "hypbound/error.hpp"
#include "hypbound/sampling.hpp"
#include "oracles.hpp"

namespace hypbound {
namespace {

constexpr double kPi = std::numbers::pi;

IdealPoint Angle(double a) { return IdealPoint::FromAngle(a); }

double Chord(const IdealPoint& a, const IdealPoint& b) {
  return Chordal(a.direction(), b.direction());
}

AnchorTriple ThirdsAnchors() { return {Angle(0.0), Angle(2.0 * kPi / 3.0), Angle(4.0 * kPi / 3.0)}; }

AnchorTriple AxisAnchors() { return {Angle(0.0), Angle(kPi / 2.0), Angle(kPi)}; }

BoundaryMapSequence ConstantInclusion() {
  return {[](std::size_t, const IdealPoint& xi) { return Equatorial(xi); }, std::nullopt};
}

// phi_k = h_k o inclusion with h_k drawn from a per-k stream.
BoundaryMapSequence RandomIsometrySequence(std::uint64_t seed) {
  return {[seed](std::size_t k, const IdealPoint& xi) {
            Rng rng(seed, k);
            return BoundaryAction(RandomIsometry(rng, 3), Equatorial(xi));
          },
          std::nullopt};
}

TEST(Normalize, FixedAnchorsGiveIdentity) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 10);
  Rng rng(71);
  for (std::size_t k = 1; k <= 10; ++k) {
    for (int i = 0; i < 10; ++i) {
      const IdealPoint xi = RandomIdeal(rng, 3);
      EXPECT_LT(Chord(BoundaryAction(ns.normalizer(k), xi), xi), 1e-9);
    }
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(Chord(ns.anchor_dst()[i], Equatorial(ThirdsAnchors()[i])), 1e-15);
  }
}

TEST(Normalize, AbsorbsRandomIsometries) {
  const AnchorTriple anchors = ThirdsAnchors();
  const NormalizedSequence ns = Normalize(RandomIsometrySequence(5), anchors, 25);
  for (std::size_t k = 1; k <= 25; ++k) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_LT(Chord(ns.Evaluate(k, anchors[i]), ns.anchor_dst()[i]), 1e-9);
    }
  }
}

TEST(Normalize, DivergentLoxodromicsHaveConstantAnchorImages) {
  const BoundaryMapSequence seq{[](std::size_t k, const IdealPoint& xi) {
                                  const ModelIsometry h = ModelIsometry::Translation(
                                      3, Vec3{0.3, 0.0, 0.954}, 0.5 * static_cast<double>(k));
                                  return BoundaryAction(h, Equatorial(xi));
                                },
                                std::nullopt};
  const AnchorTriple anchors = ThirdsAnchors();
  const NormalizedSequence ns = Normalize(seq, anchors, 30);
  for (std::size_t k = 1; k <= 30; ++k) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_LT(Chord(ns.Evaluate(k, anchors[i]), ns.Evaluate(1, anchors[i])), 1e-9);
    }
  }
}

TEST(Normalize, ReportsDegenerateIndex) {
  const BoundaryMapSequence seq{[](std::size_t k, const IdealPoint& xi) {
                                  if (k == 3) return IdealPoint(3, Vec3{0.0, 0.0, 1.0});
                                  return Equatorial(xi);
                                },
                                std::nullopt};
  try {
    Normalize(seq, ThirdsAnchors(), 5);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDegenerateTriple);
    EXPECT_NE(std::string(e.what()).find("k = 3"), std::string::npos) << e.what();
  }
}

TEST(IntervalOf, ClassifiesThirds) {
  const AnchorTriple a = ThirdsAnchors();
  EXPECT_EQ(IntervalOf(Angle(3.0 * kPi / 2.0), a), Interval::kXi1Xi0);
  EXPECT_EQ(IntervalOf(Angle(kPi / 3.0), a), Interval::kXi0Eta0);
  EXPECT_EQ(IntervalOf(Angle(kPi), a), Interval::kEta0Xi1);
}

TEST(IntervalOf, RotationInvariant) {
  Rng rng(72);
  const AnchorTriple a = ThirdsAnchors();
  for (int i = 0; i < 200; ++i) {
    const double eta = rng.Uniform(0.0, 2.0 * kPi);
    const double rot = rng.Uniform(-10.0, 10.0);
    const AnchorTriple r = {Angle(rot), Angle(2.0 * kPi / 3.0 + rot), Angle(4.0 * kPi / 3.0 + rot)};
    EXPECT_EQ(IntervalOf(Angle(eta), a), IntervalOf(Angle(eta + rot), r));
  }
}

TEST(IntervalOf, RejectsAnchor) {
  try {
    IntervalOf(Angle(2.0 * kPi / 3.0), ThirdsAnchors());
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOnAnchor);
  }
}

TEST(Relabeling, MovesEveryArcToTheCrossingCase) {
  Rng rng(73);
  for (int i = 0; i < 300; ++i) {
    AnchorTriple a = {RandomIdeal(rng, 2), RandomIdeal(rng, 2), RandomIdeal(rng, 2)};
    const IdealPoint eta = RandomIdeal(rng, 2);
    if (Chord(a[0], a[1]) < 1e-3 || Chord(a[1], a[2]) < 1e-3 || Chord(a[0], a[2]) < 1e-3 ||
        Chord(eta, a[0]) < 1e-3 || Chord(eta, a[1]) < 1e-3 || Chord(eta, a[2]) < 1e-3) {
      continue;
    }
    const AnchorFrame f = FrameFor(eta, a, a);
    EXPECT_EQ(IntervalOf(eta, f.src), Interval::kXi1Xi0);
    EXPECT_NO_THROW(AlphaAngle(eta, f.src));
  }
}

TEST(AlphaAngle, OrthogonalDiameters) {
  const CrossingAngle c = AlphaAngle(Angle(3.0 * kPi / 2.0), AxisAnchors());
  EXPECT_LT(Norm(c.s.coords()), 1e-15);
  EXPECT_NEAR(c.alpha, kPi / 2.0, 1e-15);
}

TEST(AlphaAngle, PerturbedConfigurationResidualAndAngle) {
  Rng rng(74);
  for (int i = 0; i < 300; ++i) {
    const AnchorTriple a = {Angle(rng.Uniform(-0.3, 0.3)), Angle(kPi / 2.0 + rng.Uniform(-0.3, 0.3)),
                            Angle(kPi + rng.Uniform(-0.3, 0.3))};
    const IdealPoint eta1 = Angle(3.0 * kPi / 2.0 + rng.Uniform(-0.3, 0.3));
    const CrossingAngle c = AlphaAngle(eta1, a);
    EXPECT_LT(GeodesicThrough(a[0], a[2]).DistanceTo(c.s), 1e-9);
    EXPECT_LT(GeodesicThrough(a[1], eta1).DistanceTo(c.s), 1e-9);
    const double riemannian =
        oracle::RiemannianAngle(c.s.coords(), a[0].direction(), a[1].direction());
    EXPECT_NEAR(c.alpha, riemannian, 1e-9);
  }
}

TEST(AlphaAngle, NonIncidentWithoutRelabeling) {
  try {
    AlphaAngle(Angle(kPi / 3.0), ThirdsAnchors());
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonIncident);
  }
}

TEST(SolveBalancePoint, ConstantSequenceMatchesPrediction) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 5);
  const IdealPoint eta1 = Angle(3.0 * kPi / 2.0);
  const LimitPrediction pred = PredictLimit(eta1, ns);
  for (std::size_t k = 1; k <= 5; ++k) {
    const BalancePoint bp = SolveBalancePoint(k, eta1, ns);
    EXPECT_LT(Distance(bp.x, pred.x), 1e-7);
    EXPECT_LT(bp.residual, 1e-11);
    EXPECT_FALSE(bp.multiple_roots);
    EXPECT_EQ(bp.sign_changes, 1);
  }
}

TEST(SolveBalancePoint, EndpointSignsDiffer) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 1);
  const IdealPoint eta1 = Angle(3.0 * kPi / 2.0);
  const AnchorFrame f = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
  const Geodesic line = GeodesicThrough(f.dst[0], f.dst[2]);
  const IdealPoint image = ns.Evaluate(1, eta1);
  auto balance = [&](double t) {
    const Vec3 x = line.At(t).coords();
    return oracle::VisualMetricClosedForm(x, f.dst[0].direction(), f.dst[1].direction()) -
           oracle::VisualMetricClosedForm(x, f.dst[2].direction(), image.direction());
  };
  EXPECT_LT(balance(-16.0) * balance(16.0), 0.0);
}

TEST(SolveBalancePoint, BalancedAnglesOnTheGeodesic) {
  const NormalizedSequence ns = Normalize(RandomIsometrySequence(8), ThirdsAnchors(), 20);
  Rng rng(75);
  for (int i = 0; i < 40; ++i) {
    const IdealPoint eta1 = Angle(rng.Uniform(0.0, 2.0 * kPi));
    const std::size_t k = 1 + i % 20;
    const AnchorFrame f = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
    const BalancePoint bp = SolveBalancePoint(k, eta1, ns);
    EXPECT_LT(GeodesicThrough(f.dst[0], f.dst[2]).DistanceTo(bp.x), 1e-8);
    EXPECT_NEAR(bp.beta, ComparisonAngleIdeal(bp.x, f.dst[2], ns.Evaluate(k, eta1)), 1e-9);
    EXPECT_GT(bp.beta, 0.0);
    EXPECT_LT(bp.beta, kPi);
  }
}

TEST(PredictLimit, ReproducesInclusion) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), AxisAnchors(), 1);
  const LimitPrediction p = PredictLimit(Angle(3.0 * kPi / 2.0), ns);
  EXPECT_LT(Chordal(p.eta1_prime.direction(), Vec3{0.0, -1.0, 0.0}), 1e-12);
  EXPECT_NEAR(ComparisonAngleIdeal(p.x, ns.anchor_dst()[2], p.eta1_prime), p.alpha, 1e-6);
}

TEST(PredictLimit, NormalizationAbsorbsFixedIsometry) {
  Rng rng(76);
  const ModelIsometry g0 = RandomIsometry(rng, 3);
  const BoundaryMapSequence seq{[g0](std::size_t, const IdealPoint& xi) {
                                  return BoundaryAction(g0, Equatorial(xi));
                                },
                                std::nullopt};
  const NormalizedSequence ns = Normalize(seq, ThirdsAnchors(), 1);
  for (int i = 0; i < 50; ++i) {
    const IdealPoint eta1 = Angle(2.0 * kPi * (i + 0.5) / 50.0);
    const LimitPrediction p = PredictLimit(eta1, ns);
    EXPECT_LT(Chord(p.eta1_prime, Equatorial(eta1)), 1e-8);
    const AnchorFrame f = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
    EXPECT_LT(std::fabs(ComparisonAngleIdeal(p.x, f.dst[2], p.eta1_prime) - p.alpha), 1e-6);
  }
}

TEST(CauchyWindow, Verdicts) {
  const std::vector<double> decreasing{0.5, 0.1, 0.05, 0.01, 0.005, 0.001, 0.0005};
  EXPECT_TRUE(CauchyWindow(decreasing, 1e-3, 5));
  EXPECT_FALSE(CauchyWindow(decreasing, 1e-4, 5));
  const std::vector<double> bump{0.01, 0.005, 0.0009, 0.0002, 0.0004, 0.0001};
  EXPECT_FALSE(CauchyWindow(bump, 1e-3, 5));
  const std::vector<double> flat{1e-16, 2e-16, 1e-16, 0.0, 1e-16};
  EXPECT_TRUE(CauchyWindow(flat, 1e-3, 5));
  EXPECT_FALSE(CauchyWindow({}, 1e-3, 5));
  const std::vector<double> alternating{2.0, 0.0, 2.0, 0.0, 2.0};
  EXPECT_FALSE(CauchyWindow(alternating, 1e-3, 5));
}

TEST(ExtractLimitMap, ConstantSequenceConvergesImmediately) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 6);
  std::vector<IdealPoint> samples;
  for (int i = 0; i < 12; ++i) samples.push_back(Angle(2.0 * kPi * (i + 0.5) / 12.0));
  const auto reports = ExtractLimitMap(ns, samples, 6);
  ASSERT_EQ(reports.size(), samples.size());
  int seen[3] = {0, 0, 0};
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const LimitReport& r = reports[i];
    ASSERT_FALSE(r.error.has_value()) << r.error->message;
    EXPECT_LT(Chord(r.target, samples[i]), 1e-15);
    EXPECT_TRUE(r.converged);
    EXPECT_LT(r.steps.front().gap, 1e-9);
    ++seen[static_cast<int>(*r.interval)];
  }
  for (int c : seen) EXPECT_GT(c, 0);
}

TEST(ExtractLimitMap, SandwichAndAngleBoundsUnderPerturbation) {
  // Inclusion displaced by a rotation whose angle decays like 1/k about an
  // axis off the equatorial plane; the rotation is Moebius, so each slice is
  // exact and the bounds must hold with zero defect.
  const BoundaryMapSequence seq{[](std::size_t k, const IdealPoint& xi) {
                                  const ModelIsometry r = ModelIsometry::Rotation(
                                      3, Vec3{0.2, 0.5, 0.8}, 1.0 / static_cast<double>(k));
                                  const Vec3 p = Equatorial(xi).direction();
                                  const Vec3 q = BoundaryAction(r, Equatorial(xi)).direction();
                                  // Blend toward the rotated point: not Moebius for k small.
                                  return IdealPoint(3, p + (q - p) / static_cast<double>(k));
                                },
                                std::nullopt};
  const NormalizedSequence ns = Normalize(seq, ThirdsAnchors(), 30);
  std::vector<IdealPoint> samples;
  for (int i = 0; i < 9; ++i) samples.push_back(Angle(2.0 * kPi * (i + 0.5) / 9.0));
  const auto reports = ExtractLimitMap(ns, samples, 30);
  for (const LimitReport& r : reports) {
    ASSERT_FALSE(r.error.has_value()) << r.error->message;
    const double s2a = std::pow(std::sin(*r.alpha / 2.0), 2);
    for (const LimitStep& st : r.steps) {
      const double s2b = std::pow(std::sin(st.beta / 2.0), 2);
      EXPECT_GE(s2b, s2a - st.defect - 1e-9);
      EXPECT_LE(s2b, s2a + st.defect + 1e-9);
      EXPECT_GE(st.opposite_angle, kPi - st.beta - 1e-9);
      EXPECT_LT(st.balance_error, 1e-9);
    }
  }
}

TEST(ExtractLimitMap, SampleOnAnchorIsReportedNotThrown) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 3);
  const std::vector<IdealPoint> samples{Angle(1.0), Angle(2.0 * kPi / 3.0), Angle(5.0)};
  const auto reports = ExtractLimitMap(ns, samples, 3);
  ASSERT_EQ(reports.size(), 3u);
  EXPECT_FALSE(reports[0].error.has_value());
  ASSERT_TRUE(reports[1].error.has_value());
  EXPECT_EQ(reports[1].error->code, ErrorCode::kOnAnchor);
  EXPECT_FALSE(reports[1].converged);
  EXPECT_FALSE(reports[2].error.has_value());
}

TEST(ExtractLimitMap, IndependentOfThreadCount) {
  const NormalizedSequence ns = Normalize(RandomIsometrySequence(3), ThirdsAnchors(), 15);
  std::vector<IdealPoint> samples;
  for (int i = 0; i < 10; ++i) samples.push_back(Angle(0.1 + 0.6 * i));
  ExtractOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const auto a = ExtractLimitMap(ns, samples, 15, one);
  const auto b = ExtractLimitMap(ns, samples, 15, many);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].steps.size(), b[i].steps.size());
    for (std::size_t k = 0; k < a[i].steps.size(); ++k) {
      EXPECT_EQ(a[i].steps[k].beta, b[i].steps[k].beta);
      EXPECT_EQ(a[i].steps[k].gap, b[i].steps[k].gap);
    }
  }
}

TEST(ExtractLimitMap, RejectsRangeBeyondNormalization) {
  const NormalizedSequence ns = Normalize(ConstantInclusion(), ThirdsAnchors(), 3);
  const std::vector<IdealPoint> samples{Angle(1.0)};
  EXPECT_THROW(ExtractLimitMap(ns, samples, 4), GeometryError);
}

}  // namespace
}  // namespace hypbound
