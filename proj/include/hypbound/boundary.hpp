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

// Visual metrics, cross ratios and comparison angles on the boundary sphere.

#ifndef HYPBOUND_BOUNDARY_HPP_
#define HYPBOUND_BOUNDARY_HPP_

#include <array>

#include "hypbound/models.hpp"

namespace hypbound {

// Four pairwise distinct ideal points (xi0, eta0, xi1, eta1) of one dimension.
class Quadruple {
 public:
  // Throws kDegenerateQuadruple if two points are within 1e-10 chordal.
  Quadruple(const IdealPoint& xi0, const IdealPoint& eta0, const IdealPoint& xi1,
            const IdealPoint& eta1);

  const IdealPoint& xi0() const { return pts_[0]; }
  const IdealPoint& eta0() const { return pts_[1]; }
  const IdealPoint& xi1() const { return pts_[2]; }
  const IdealPoint& eta1() const { return pts_[3]; }
  const std::array<IdealPoint, 4>& points() const { return pts_; }
  int dim() const { return pts_[0].dim(); }

 private:
  std::array<IdealPoint, 4> pts_;
};

struct CrossRatioValue {
  double value;
};

// rho_x(xi, eta) = exp(-(xi|eta)_x); zero when xi and eta coincide.
double VisualMetric(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta);

// rho_y from rho_x through the Busemann cocycle.
double BasepointChange(double rho_x, const IdealPoint& xi, const IdealPoint& eta,
                       const BallPoint& x, const BallPoint& y);

// rho(xi0, xi1) rho(eta0, eta1) / (rho(xi0, eta1) rho(eta0, xi1)), any basepoint.
CrossRatioValue CrossRatio(const Quadruple& q, const BallPoint& x);

// Finite-t form of the radial-limit definition, using points at distance t
// from the origin. Requires t >= 1. Slow to converge and cancellation prone;
// kept as an oracle.
double CrossRatioLimit(const Quadruple& q, double t);

// Angle at the vertex corresponding to x in the comparison triangle in H^2.
// Throws kDegenerateTriangle when y or z coincides with x.
double ComparisonAngle(const BallPoint& x, const BallPoint& y, const BallPoint& z);

// 2 asin(rho_x(xi, eta)).
double ComparisonAngleIdeal(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta);

// Clamps v into [lo, hi] when it is within 1e-12 outside, otherwise throws
// kNumericDomain naming `what`.
double ClampDomain(double v, double lo, double hi, const char* what);

}  // namespace hypbound

#endif  // HYPBOUND_BOUNDARY_HPP_
