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

// Orientation-preserving isometries of H^3 (and of the equatorial H^2) as
// unimodular 2x2 complex matrices.
//
// Chart convention: an ideal point (x1, x2, x3) of the unit sphere is sent to
// w = (x1 + i x2) / (1 - x3) in the extended plane (stereographic projection
// from the north pole). So w = 0 is the south pole (0, 0, -1), w = 1 is
// (1, 0, 0) and w = infinity is the north pole (0, 0, 1). The boundary circle
// of H^2 is the unit circle |w| = 1. Chart points are handled in homogeneous
// form [p : q], which makes the point at infinity an ordinary value.

#ifndef HYPBOUND_ISOMETRY_HPP_
#define HYPBOUND_ISOMETRY_HPP_

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hypbound/boundary.hpp"
#include "hypbound/models.hpp"

namespace hypbound {

using Complex = std::complex<double>;

// Homogeneous chart coordinates [p : q] of an ideal point, w = p / q.
struct ChartPoint {
  Complex p;
  Complex q;
};

ChartPoint ToChart(const IdealPoint& xi);
IdealPoint FromChart(int dim, const ChartPoint& w);

// Ideal points of H^3 at chart values 0, 1 and infinity.
std::array<IdealPoint, 3> ChartReferenceTriple();

class ModelIsometry {
 public:
  // Row-major (a, b, c, d) for w -> (a w + b) / (c w + d).
  using Matrix = std::array<Complex, 4>;

  // Requires |det - 1| <= 1e-10. A dimension-2 isometry must preserve the
  // unit circle, i.e. have the form [[a, b], [conj(b), conj(a)]].
  ModelIsometry(int dim, const Matrix& m);

  // Rescales an invertible matrix to unit determinant first.
  static ModelIsometry Normalized(int dim, const Matrix& m);

  static ModelIsometry Identity(int dim);

  // Rotation by `angle` about the unit axis `axis` of the ball (dim 3), or
  // about the origin of the disk (dim 2, axis ignored).
  static ModelIsometry Rotation(int dim, const Vec3& axis, double angle);

  // Hyperbolic translation by `length` along the geodesic from -u to u
  // (u a unit vector; dim 2 requires u in the plane).
  static ModelIsometry Translation(int dim, const Vec3& u, double length);

  int dim() const { return dim_; }
  const Matrix& matrix() const { return m_; }
  Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  ModelIsometry Inverse() const;

  // Action on the hyperboloid model R^{3,1}, row-major 4x4, coordinate 0 timelike.
  std::array<double, 16> Lorentz() const;

 private:
  int dim_;
  Matrix m_;
};

// (g h)(x) = g(h(x)).
ModelIsometry Compose(const ModelIsometry& g, const ModelIsometry& h);

IdealPoint BoundaryAction(const ModelIsometry& g, const IdealPoint& xi);
BallPoint InteriorAction(const ModelIsometry& g, const BallPoint& x);

// The isometry sending src[i] to dst[i] for i = 0, 1, 2 (dimension 3). Goes
// through the chart triple (0, 1, infinity). Throws kDegenerateTriple when a
// triple has two points within 1e-10 chordal.
ModelIsometry TripleNormalizer(std::span<const IdealPoint, 3> src,
                               std::span<const IdealPoint, 3> dst);

// A map from the boundary circle of H^2 to the boundary sphere of H^3.
// Evaluators must be stateless: they are called concurrently.
using BoundaryMap = std::function<IdealPoint(const IdealPoint&)>;

// Per-quadruple |bir_H3(phi(q)) - bir_H2(q)|. Throws kImageDegenerate when
// phi brings two sampled points within 1e-10 chordal.
std::vector<double> MoebiusDefects(const BoundaryMap& phi, std::span<const Quadruple> samples);

// Maximum of MoebiusDefects (0 for an empty sample).
double MoebiusDefect(const BoundaryMap& phi, std::span<const Quadruple> samples);

struct IsometricFit {
  ModelIsometry isometry;
  double residual;  // max chordal distance between phi and the fitted map
};

// Fits phi by g o (equatorial inclusion), with g pinned on three reference
// samples (indices 0, n/3 and 2n/3), and measures the worst chordal residual
// over all samples.
IsometricFit FitIsometricExtension(const BoundaryMap& phi, std::span<const IdealPoint> samples);

}  // namespace hypbound

#endif  // HYPBOUND_ISOMETRY_HPP_
