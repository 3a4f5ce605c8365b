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

// Closed-form geometry of the Poincare ball models of H^2 and H^3.
//
// Points of H^2 are stored as 3-vectors with z = 0 and a dimension tag of 2,
// so that the equatorial inclusion H^2 -> H^3 is the identity on coordinates.
// Every interior point also carries its "gap" 1 - |x|^2. Points produced by
// the library (rays, geodesics, isometries) compute the gap from exact
// identities instead of from the rounded coordinates, which keeps distances
// and Busemann functions accurate far out toward the boundary.

#ifndef HYPBOUND_MODELS_HPP_
#define HYPBOUND_MODELS_HPP_

#include "hypbound/vec.hpp"

namespace hypbound {

inline constexpr double kBallGuard = 1e-12;       // |x| >= 1 - kBallGuard is rejected
inline constexpr double kIdealTolerance = 1e-12;  // unit-norm tolerance for ideal points
inline constexpr double kMinSeparation = 1e-10;   // chordal floor between ideal points

class BallPoint {
 public:
  // Rejects |coords| >= 1 - 1e-12. For dim 2 the z coordinate must be zero.
  BallPoint(int dim, const Vec3& coords);

  static BallPoint Origin(int dim) { return BallPoint(dim, Vec3{}); }

  // For points whose gap 1 - |coords|^2 is known more accurately than the
  // coordinates themselves. Only requires gap > 0.
  static BallPoint FromParts(int dim, const Vec3& coords, double gap);

  int dim() const { return dim_; }
  const Vec3& coords() const { return coords_; }
  double gap() const { return gap_; }

 private:
  BallPoint() = default;

  int dim_ = 3;
  Vec3 coords_;
  double gap_ = 1.0;
};

class IdealPoint {
 public:
  // Renormalizes `direction`; rejects zero or non-finite input.
  IdealPoint(int dim, const Vec3& direction);

  // Point of the boundary circle of H^2 at the given polar angle.
  static IdealPoint FromAngle(double angle);

  int dim() const { return dim_; }
  const Vec3& direction() const { return direction_; }

 private:
  int dim_ = 3;
  Vec3 direction_;
};

// Unit-speed geodesic line from endpoint_neg (t -> -inf) to endpoint_pos
// (t -> +inf), with t = 0 at the point of the line closest to the origin.
class Geodesic {
 public:
  const IdealPoint& endpoint_neg() const { return neg_; }
  const IdealPoint& endpoint_pos() const { return pos_; }
  int dim() const { return neg_.dim(); }

  const BallPoint& closest_point() const { return mid_; }
  BallPoint At(double t) const;

  // Euclidean description of the model arc. For diameters the center and
  // radius are meaningless and is_diameter() is true.
  bool is_diameter() const;
  Vec3 euclidean_center() const;
  double euclidean_radius() const;

  // Hyperbolic distance from x to the line.
  double DistanceTo(const BallPoint& x) const;

 private:
  friend Geodesic GeodesicThrough(const IdealPoint& a, const IdealPoint& b);

  Geodesic(const IdealPoint& neg, const IdealPoint& pos, const BallPoint& mid,
           const Vec3& heading)
      : neg_(neg), pos_(pos), mid_(mid), heading_(heading) {}

  IdealPoint neg_;
  IdealPoint pos_;
  BallPoint mid_;
  Vec3 heading_;  // direction at the origin of the line translated to pass through 0
};

// Hyperbolic isometry z -> base (+) z (Moebius addition), which maps the
// origin to `base` with derivative (1 - |base|^2) * Id there.
BallPoint TranslateFromOrigin(const BallPoint& base, const BallPoint& z);
IdealPoint TranslateFromOrigin(const BallPoint& base, const IdealPoint& z);
BallPoint Negated(const BallPoint& x);

double Distance(const BallPoint& x, const BallPoint& y);

// Throws kCoincidentEndpoints when |a - b| <= 1e-10.
Geodesic GeodesicThrough(const IdealPoint& a, const IdealPoint& b);

// The geodesic through x with endpoint_neg() == a; endpoint_pos() is the
// other ideal endpoint.
Geodesic GeodesicThroughPoint(const BallPoint& x, const IdealPoint& a);

// Point at arclength t >= 0 along the ray [x, a).
BallPoint RayPoint(const BallPoint& x, const IdealPoint& a, double t);

// Point at arclength t along the geodesic from x through y (t may exceed d(x, y)).
BallPoint SegmentPoint(const BallPoint& x, const BallPoint& y, double t);

// Unit tangent direction at the origin of the geodesic from x towards a,
// after translating x to the origin.
Vec3 DirectionAt(const BallPoint& x, const IdealPoint& a);

// B_xi(x, p) = b(x) - b(p) with b(z) = log(|z - xi|^2 / (1 - |z|^2)).
double Busemann(const IdealPoint& xi, const BallPoint& x, const BallPoint& p);

double GromovProduct(const BallPoint& x, const BallPoint& y, const BallPoint& z);

// (xi|eta)_x, evaluated through Busemann functions at the closest point of (xi, eta).
double GromovProductIdeal(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta);

// Equatorial inclusion of H^2 into H^3.
IdealPoint Equatorial(const IdealPoint& xi);
BallPoint Equatorial(const BallPoint& x);

}  // namespace hypbound

#endif  // HYPBOUND_MODELS_HPP_
