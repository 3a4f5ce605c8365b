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

#include "hypbound/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypbound/error.hpp"

namespace hypbound {

namespace {

constexpr double kClampTolerance = 1e-12;

// Relative slack allowed on the triangle inequality between computed sides.
constexpr double kTriangleSlack = 1e-9;

}  // namespace

double ClampDomain(double v, double lo, double hi, const char* what) {
  if (std::isnan(v) || v < lo - kClampTolerance || v > hi + kClampTolerance) {
    Fail(ErrorCode::kNumericDomain, std::string(what) + " out of range: " + FormatReal(v));
  }
  return std::clamp(v, lo, hi);
}

Quadruple::Quadruple(const IdealPoint& xi0, const IdealPoint& eta0, const IdealPoint& xi1,
                     const IdealPoint& eta1)
    : pts_{xi0, eta0, xi1, eta1} {
  for (int i = 0; i < 4; ++i) {
    if (pts_[i].dim() != pts_[0].dim()) {
      Fail(ErrorCode::kDimensionMismatch, "quadruple mixes dimensions");
    }
    for (int j = i + 1; j < 4; ++j) {
      const double sep = Chordal(pts_[i].direction(), pts_[j].direction());
      if (sep <= kMinSeparation) {
        Fail(ErrorCode::kDegenerateQuadruple, "points " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " are " +
                                                  FormatReal(sep) + " apart");
      }
    }
  }
}

double VisualMetric(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta) {
  if (Chordal(xi.direction(), eta.direction()) <= kMinSeparation) return 0.0;
  // The product is nonnegative; rounding can push it a few ulps below zero.
  return std::exp(-std::max(0.0, GromovProductIdeal(x, xi, eta)));
}

double BasepointChange(double rho_x, const IdealPoint& xi, const IdealPoint& eta,
                       const BallPoint& x, const BallPoint& y) {
  return rho_x * std::exp(0.5 * (Busemann(xi, x, y) + Busemann(eta, x, y)));
}

CrossRatioValue CrossRatio(const Quadruple& q, const BallPoint& x) {
  const double num = VisualMetric(x, q.xi0(), q.xi1()) * VisualMetric(x, q.eta0(), q.eta1());
  const double den = VisualMetric(x, q.xi0(), q.eta1()) * VisualMetric(x, q.eta0(), q.xi1());
  const double value = num / den;
  if (!std::isfinite(value) || !(value > 0.0)) {
    Fail(ErrorCode::kDegenerateQuadruple, "cross ratio is not a positive finite number");
  }
  return {value};
}

double CrossRatioLimit(const Quadruple& q, double t) {
  if (!(t >= 1.0)) Fail(ErrorCode::kInvalidArgument, "radial parameter must be >= 1");
  const BallPoint o = BallPoint::Origin(q.dim());
  const BallPoint x0 = RayPoint(o, q.xi0(), t);
  const BallPoint y0 = RayPoint(o, q.eta0(), t);
  const BallPoint x1 = RayPoint(o, q.xi1(), t);
  const BallPoint y1 = RayPoint(o, q.eta1(), t);
  const double exponent =
      Distance(x0, x1) + Distance(y0, y1) - Distance(x0, y1) - Distance(x1, y0);
  return std::exp(0.5 * exponent);
}

double ComparisonAngle(const BallPoint& x, const BallPoint& y, const BallPoint& z) {
  const double a = Distance(x, y);
  const double b = Distance(x, z);
  double c = Distance(y, z);
  if (a <= 1e-12 || b <= 1e-12) {
    Fail(ErrorCode::kDegenerateTriangle, "comparison angle at a vertex shared with a side end");
  }
  // Law of cosines in half-angle form:
  // sin^2(theta/2) = sinh((c+a-b)/2) sinh((c-a+b)/2) / (sinh a sinh b).
  const double slack = kTriangleSlack * (1.0 + a + b);
  if (c > a + b) {
    if (c - (a + b) > slack) Fail(ErrorCode::kNumericDomain, "triangle inequality violated");
    c = a + b;
  }
  double s1 = 0.5 * (c + a - b);
  double s2 = 0.5 * (c - a + b);
  if (s1 < -slack || s2 < -slack) Fail(ErrorCode::kNumericDomain, "triangle inequality violated");
  s1 = std::max(s1, 0.0);
  s2 = std::max(s2, 0.0);
  const double half_sin2 = std::sinh(s1) * std::sinh(s2) / (std::sinh(a) * std::sinh(b));
  const double half_sin = std::sqrt(ClampDomain(half_sin2, 0.0, 1.0, "sin^2 of half angle"));
  return 2.0 * std::asin(half_sin);
}

double ComparisonAngleIdeal(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta) {
  const double rho = ClampDomain(VisualMetric(x, xi, eta), 0.0, 1.0, "visual metric");
  return 2.0 * std::asin(rho);
}

}  // namespace hypbound
