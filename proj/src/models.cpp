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

#include "hypbound/models.hpp"

#include <cmath>
#include <string>

#include "hypbound/error.hpp"

namespace hypbound {

namespace {

bool Finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

void CheckDim(int dim, const Vec3& v) {
  if (dim != 2 && dim != 3) {
    Fail(ErrorCode::kInvalidArgument, "dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (dim == 2 && v.z != 0.0) {
    Fail(ErrorCode::kInvalidArgument, "two-dimensional point with nonzero z coordinate");
  }
}

template <typename A, typename B>
void SameDim(const A& a, const B& b) {
  if (a.dim() != b.dim()) {
    Fail(ErrorCode::kDimensionMismatch,
         "dimensions " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
  }
}

Vec3 Flatten(int dim, Vec3 v) {
  if (dim == 2) v.z = 0.0;
  return v;
}

// Moebius addition base (+) v for |v| <= 1 with known gap 1 - |v|^2.
// Uses 1 - |b (+) v|^2 = (1 - |b|^2)(1 - |v|^2) / (1 + 2 b.v + |b|^2 |v|^2).
struct Added {
  Vec3 coords;
  double gap;
};

Added MobiusAdd(const BallPoint& base, const Vec3& v, double v_gap) {
  const Vec3& b = base.coords();
  const double bv = Dot(b, v);
  const double bb = Norm2(b);
  const double vv = Norm2(v);
  const double denom = 1.0 + 2.0 * bv + bb * vv;
  const Vec3 num = (1.0 + 2.0 * bv + vv) * b + base.gap() * v;
  return {num / denom, base.gap() * v_gap / denom};
}

// Point at hyperbolic distance t from the origin along unit direction u.
Added Radial(const Vec3& u, double t) {
  const double half = 0.5 * t;
  const double c = std::cosh(half);
  return {std::tanh(half) * u, 1.0 / (c * c)};
}

}  // namespace

// ---------------------------------------------------------------------------

BallPoint::BallPoint(int dim, const Vec3& coords) {
  CheckDim(dim, coords);
  if (!Finite(coords)) Fail(ErrorCode::kInvalidArgument, "non-finite ball coordinates");
  const double r = Norm(coords);
  if (r >= 1.0 - kBallGuard) {
    Fail(ErrorCode::kInvalidArgument, "ball point too close to the boundary (|x| = " +
                                          FormatReal(r) + ")");
  }
  dim_ = dim;
  coords_ = coords;
  gap_ = (1.0 - r) * (1.0 + r);
}

BallPoint BallPoint::FromParts(int dim, const Vec3& coords, double gap) {
  CheckDim(dim, coords);
  if (!Finite(coords) || !(gap > 0.0) || !std::isfinite(gap)) {
    Fail(ErrorCode::kNumericDomain, "ball point left the open ball");
  }
  BallPoint p;
  p.dim_ = dim;
  p.coords_ = coords;
  p.gap_ = gap;
  return p;
}

IdealPoint::IdealPoint(int dim, const Vec3& direction) {
  CheckDim(dim, direction);
  const double n = Norm(direction);
  if (!std::isfinite(n) || n == 0.0) {
    Fail(ErrorCode::kInvalidArgument, "ideal point needs a finite nonzero direction");
  }
  dim_ = dim;
  direction_ = Flatten(dim, direction / n);
}

IdealPoint IdealPoint::FromAngle(double angle) {
  return IdealPoint(2, Vec3{std::cos(angle), std::sin(angle), 0.0});
}

// ---------------------------------------------------------------------------

BallPoint TranslateFromOrigin(const BallPoint& base, const BallPoint& z) {
  SameDim(base, z);
  const Added r = MobiusAdd(base, z.coords(), z.gap());
  return BallPoint::FromParts(base.dim(), Flatten(base.dim(), r.coords), r.gap);
}

IdealPoint TranslateFromOrigin(const BallPoint& base, const IdealPoint& z) {
  SameDim(base, z);
  const Added r = MobiusAdd(base, z.direction(), 0.0);
  return IdealPoint(base.dim(), r.coords);
}

BallPoint Negated(const BallPoint& x) {
  return BallPoint::FromParts(x.dim(), -x.coords(), x.gap());
}

double Distance(const BallPoint& x, const BallPoint& y) {
  SameDim(x, y);
  // sinh(d/2) = |x - y| / sqrt((1 - |x|^2)(1 - |y|^2))
  const double s = Norm(x.coords() - y.coords()) / std::sqrt(x.gap() * y.gap());
  return 2.0 * std::asinh(s);
}

Vec3 DirectionAt(const BallPoint& x, const IdealPoint& a) {
  return TranslateFromOrigin(Negated(x), a).direction();
}

BallPoint RayPoint(const BallPoint& x, const IdealPoint& a, double t) {
  SameDim(x, a);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    Fail(ErrorCode::kInvalidArgument, "ray parameter must be finite and nonnegative");
  }
  const Added v = Radial(DirectionAt(x, a), t);
  const Added r = MobiusAdd(x, v.coords, v.gap);
  return BallPoint::FromParts(x.dim(), Flatten(x.dim(), r.coords), r.gap);
}

BallPoint SegmentPoint(const BallPoint& x, const BallPoint& y, double t) {
  SameDim(x, y);
  const Vec3 u = TranslateFromOrigin(Negated(x), y).coords();
  const double n = Norm(u);
  if (n == 0.0) Fail(ErrorCode::kInvalidArgument, "segment endpoints coincide");
  const Added v = Radial(u / n, t);
  const Added r = MobiusAdd(x, v.coords, v.gap);
  return BallPoint::FromParts(x.dim(), Flatten(x.dim(), r.coords), r.gap);
}

// ---------------------------------------------------------------------------

Geodesic GeodesicThrough(const IdealPoint& a, const IdealPoint& b) {
  SameDim(a, b);
  const double sep = Chordal(a.direction(), b.direction());
  if (sep <= kMinSeparation) {
    Fail(ErrorCode::kCoincidentEndpoints,
         "geodesic endpoints are " + FormatReal(sep) + " apart");
  }
  // Closest point to the origin: (a + b) / (2 + |a - b|), with
  // 1 - |m|^2 = 2|a - b| / (2 + |a - b|).
  const double denom = 2.0 + sep;
  const BallPoint mid = BallPoint::FromParts(
      a.dim(), Flatten(a.dim(), (a.direction() + b.direction()) / denom), 2.0 * sep / denom);
  const Vec3 heading = DirectionAt(mid, b);
  return Geodesic(a, b, mid, heading);
}

BallPoint Geodesic::At(double t) const {
  if (!std::isfinite(t)) Fail(ErrorCode::kInvalidArgument, "non-finite geodesic parameter");
  const Added v = Radial(heading_, t);
  const Added r = MobiusAdd(mid_, v.coords, v.gap);
  return BallPoint::FromParts(dim(), Flatten(dim(), r.coords), r.gap);
}

bool Geodesic::is_diameter() const {
  return Norm(neg_.direction() + pos_.direction()) < 1e-12;
}

Vec3 Geodesic::euclidean_center() const {
  // Circle orthogonal to the unit sphere through a, b: c = (a + b) / (1 + a.b).
  const Vec3 s = neg_.direction() + pos_.direction();
  return 2.0 * s / Norm2(s);
}

double Geodesic::euclidean_radius() const {
  return Chordal(neg_.direction(), pos_.direction()) /
         Norm(neg_.direction() + pos_.direction());
}

double Geodesic::DistanceTo(const BallPoint& x) const {
  SameDim(x, neg_);
  const BallPoint back = Negated(x);
  const Vec3 a = TranslateFromOrigin(back, neg_).direction();
  const Vec3 b = TranslateFromOrigin(back, pos_).direction();
  const double r = Norm(a + b) / (2.0 + Chordal(a, b));
  return 2.0 * std::atanh(r);
}

Geodesic GeodesicThroughPoint(const BallPoint& x, const IdealPoint& a) {
  SameDim(x, a);
  const Vec3 w = DirectionAt(x, a);
  const IdealPoint other = TranslateFromOrigin(x, IdealPoint(x.dim(), -w));
  return GeodesicThrough(a, other);
}

// ---------------------------------------------------------------------------

namespace {

double HoroHeight(const IdealPoint& xi, const BallPoint& z) {
  return std::log(Norm2(z.coords() - xi.direction())) - std::log(z.gap());
}

}  // namespace

double Busemann(const IdealPoint& xi, const BallPoint& x, const BallPoint& p) {
  SameDim(xi, x);
  SameDim(x, p);
  return HoroHeight(xi, x) - HoroHeight(xi, p);
}

double GromovProduct(const BallPoint& x, const BallPoint& y, const BallPoint& z) {
  return 0.5 * (Distance(x, y) + Distance(x, z) - Distance(y, z));
}

double GromovProductIdeal(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta) {
  SameDim(x, xi);
  const Geodesic line = GeodesicThrough(xi, eta);
  const BallPoint& p = line.closest_point();
  return 0.5 * (Busemann(xi, x, p) + Busemann(eta, x, p));
}

IdealPoint Equatorial(const IdealPoint& xi) {
  if (xi.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "equatorial inclusion expects dim 2");
  return IdealPoint(3, xi.direction());
}

BallPoint Equatorial(const BallPoint& x) {
  if (x.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "equatorial inclusion expects dim 2");
  return BallPoint::FromParts(3, x.coords(), x.gap());
}

}  // namespace hypbound
