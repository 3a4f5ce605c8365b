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

#include "hypbound/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hypbound/error.hpp"

namespace hypbound {

namespace {

constexpr double kDetTolerance = 1e-10;

using Matrix = ModelIsometry::Matrix;

Matrix Multiply(const Matrix& g, const Matrix& h) {
  return {g[0] * h[0] + g[1] * h[2], g[0] * h[1] + g[1] * h[3],
          g[2] * h[0] + g[3] * h[2], g[2] * h[1] + g[3] * h[3]};
}

double FrobeniusSquared(const Matrix& m) {
  return std::norm(m[0]) + std::norm(m[1]) + std::norm(m[2]) + std::norm(m[3]);
}

// Projects onto the [[a, b], [conj(b), conj(a)]] form that preserves the unit circle.
Matrix CircleForm(const Matrix& m) {
  const Complex a = 0.5 * (m[0] + std::conj(m[3]));
  const Complex b = 0.5 * (m[1] + std::conj(m[2]));
  return {a, b, std::conj(b), std::conj(a)};
}

Complex Det2(const ChartPoint& u, const ChartPoint& v) { return u.p * v.q - u.q * v.p; }

// Sends (v1, v2, v3) to the chart triple (0, 1, infinity).
Matrix ToReference(const ChartPoint& v1, const ChartPoint& v2, const ChartPoint& v3) {
  const Complex mu = Det2(v3, v2);
  const Complex nu = Det2(v1, v2);
  return {-mu * v1.q, mu * v1.p, -nu * v3.q, nu * v3.p};
}

void CheckTriple(std::span<const IdealPoint, 3> t, const char* which) {
  for (int i = 0; i < 3; ++i) {
    if (t[i].dim() != 3) Fail(ErrorCode::kDimensionMismatch, "triple normalizer works in H^3");
    for (int j = i + 1; j < 3; ++j) {
      const double sep = Chordal(t[i].direction(), t[j].direction());
      if (sep <= kMinSeparation) {
        Fail(ErrorCode::kDegenerateTriple, std::string(which) + " triple has points " +
                                               std::to_string(i) + " and " + std::to_string(j) +
                                               " " + FormatReal(sep) + " apart");
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

ChartPoint ToChart(const IdealPoint& xi) {
  const Vec3& v = xi.direction();
  // w = (x1 + i x2) / (1 - x3) = (1 + x3) / (x1 - i x2); pick the
  // representative without cancellation.
  if (v.z <= 0.0) return {Complex(v.x, v.y), Complex(1.0 - v.z, 0.0)};
  return {Complex(1.0 + v.z, 0.0), Complex(v.x, -v.y)};
}

IdealPoint FromChart(int dim, const ChartPoint& w) {
  const double pp = std::norm(w.p);
  const double qq = std::norm(w.q);
  const double denom = pp + qq;
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    Fail(ErrorCode::kNumericDomain, "homogeneous chart point [0 : 0]");
  }
  const Complex xy = 2.0 * w.p * std::conj(w.q) / denom;
  const double z = dim == 2 ? 0.0 : (pp - qq) / denom;
  return IdealPoint(dim, Vec3{xy.real(), xy.imag(), z});
}

std::array<IdealPoint, 3> ChartReferenceTriple() {
  return {FromChart(3, {Complex(0.0), Complex(1.0)}), FromChart(3, {Complex(1.0), Complex(1.0)}),
          FromChart(3, {Complex(1.0), Complex(0.0)})};
}

// ---------------------------------------------------------------------------

ModelIsometry::ModelIsometry(int dim, const Matrix& m) : dim_(dim), m_(m) {
  if (dim != 2 && dim != 3) Fail(ErrorCode::kInvalidArgument, "isometry dimension must be 2 or 3");
  for (const Complex& e : m_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      Fail(ErrorCode::kNumericDomain, "non-finite isometry matrix entry");
    }
  }
  // Rounding in a*d - b*c scales with the squared entries.
  const double scale = std::max(1.0, FrobeniusSquared(m_));
  if (std::abs(determinant() - 1.0) > kDetTolerance * scale) {
    Fail(ErrorCode::kInvalidArgument, "isometry matrix must have unit determinant");
  }
  if (dim == 2) {
    const double tol = kDetTolerance * std::sqrt(scale);
    if (std::abs(m_[3] - std::conj(m_[0])) > tol || std::abs(m_[2] - std::conj(m_[1])) > tol) {
      Fail(ErrorCode::kInvalidArgument, "dimension-2 isometry must preserve the unit circle");
    }
  }
}

ModelIsometry ModelIsometry::Normalized(int dim, const Matrix& m) {
  const Complex det = m[0] * m[3] - m[1] * m[2];
  if (det == Complex(0.0)) Fail(ErrorCode::kInvalidArgument, "singular isometry matrix");
  const Complex s = std::sqrt(det);
  Matrix n = {m[0] / s, m[1] / s, m[2] / s, m[3] / s};
  if (dim == 2) n = CircleForm(n);
  return ModelIsometry(dim, n);
}

ModelIsometry ModelIsometry::Identity(int dim) {
  return ModelIsometry(dim, {Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)});
}

ModelIsometry ModelIsometry::Rotation(int dim, const Vec3& axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  if (dim == 2) {
    return ModelIsometry(2, {Complex(c, s), Complex(0.0), Complex(0.0), Complex(c, -s)});
  }
  const double n = Norm(axis);
  if (!(n > 0.0)) Fail(ErrorCode::kInvalidArgument, "rotation axis must be nonzero");
  const Vec3 u = axis / n;
  // cos(angle/2) I + i sin(angle/2) (u . sigma)
  const Complex is(0.0, s);
  return ModelIsometry(dim, {c + is * u.z, is * Complex(u.x, u.y), is * Complex(u.x, -u.y),
                             c - is * u.z});
}

ModelIsometry ModelIsometry::Translation(int dim, const Vec3& u, double length) {
  const Vec3 north{0.0, 0.0, 1.0};
  const double h = 0.5 * length;
  const ModelIsometry boost(3, {Complex(std::exp(h)), Complex(0.0), Complex(0.0),
                                Complex(std::exp(-h))});
  // Rotate the north pole onto u.
  Vec3 axis = Cross(north, u);
  double angle = std::atan2(Norm(axis), Dot(north, u));
  if (Norm(axis) < 1e-15) axis = Vec3{1.0, 0.0, 0.0};
  const ModelIsometry r = Rotation(3, axis, angle);
  const ModelIsometry g = Compose(Compose(r, boost), r.Inverse());
  if (dim == 3) return g;
  if (std::fabs(u.z) > 1e-12) Fail(ErrorCode::kInvalidArgument, "planar translation needs u.z = 0");
  return Normalized(2, g.matrix());
}

ModelIsometry ModelIsometry::Inverse() const {
  return ModelIsometry(dim_, {m_[3], -m_[1], -m_[2], m_[0]});
}

std::array<double, 16> ModelIsometry::Lorentz() const {
  // Hermitian form H(X) = [[X0 + X3, X1 + i X2], [X1 - i X2, X0 - X3]],
  // transformed as H -> g H g^*.
  const Complex i(0.0, 1.0);
  const std::array<Matrix, 4> basis = {Matrix{1.0, 0.0, 0.0, 1.0}, Matrix{0.0, 1.0, 1.0, 0.0},
                                       Matrix{0.0, i, -i, 0.0}, Matrix{1.0, 0.0, 0.0, -1.0}};
  const Matrix gstar = {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]), std::conj(m_[3])};
  std::array<double, 16> out{};
  for (int col = 0; col < 4; ++col) {
    const Matrix h = Multiply(Multiply(m_, basis[col]), gstar);
    out[0 * 4 + col] = 0.5 * (h[0].real() + h[3].real());
    out[1 * 4 + col] = h[1].real();
    out[2 * 4 + col] = h[1].imag();
    out[3 * 4 + col] = 0.5 * (h[0].real() - h[3].real());
  }
  return out;
}

ModelIsometry Compose(const ModelIsometry& g, const ModelIsometry& h) {
  if (g.dim() != h.dim()) Fail(ErrorCode::kDimensionMismatch, "composing isometries");
  const Matrix m = Multiply(g.matrix(), h.matrix());
  if (g.dim() == 2) return ModelIsometry(2, CircleForm(m));
  return ModelIsometry(3, m);
}

// ---------------------------------------------------------------------------

IdealPoint BoundaryAction(const ModelIsometry& g, const IdealPoint& xi) {
  if (g.dim() != xi.dim()) Fail(ErrorCode::kDimensionMismatch, "boundary action");
  const ChartPoint w = ToChart(xi);
  const Matrix& m = g.matrix();
  return FromChart(g.dim(), {m[0] * w.p + m[1] * w.q, m[2] * w.p + m[3] * w.q});
}

BallPoint InteriorAction(const ModelIsometry& g, const BallPoint& x) {
  if (g.dim() != x.dim()) Fail(ErrorCode::kDimensionMismatch, "interior action");
  const Vec3& c = x.coords();
  const double inv = 1.0 / x.gap();
  const std::array<double, 4> hx = {(1.0 + Norm2(c)) * inv, 2.0 * c.x * inv, 2.0 * c.y * inv,
                                    2.0 * c.z * inv};
  const std::array<double, 16> l = g.Lorentz();
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r) {
    for (int k = 0; k < 4; ++k) out[r] += l[r * 4 + k] * hx[k];
  }
  const double denom = 1.0 + out[0];
  const double z = g.dim() == 2 ? 0.0 : out[3] / denom;
  return BallPoint::FromParts(g.dim(), Vec3{out[1] / denom, out[2] / denom, z}, 2.0 / denom);
}

ModelIsometry TripleNormalizer(std::span<const IdealPoint, 3> src,
                               std::span<const IdealPoint, 3> dst) {
  CheckTriple(src, "source");
  CheckTriple(dst, "target");
  const Matrix to_ref = ToReference(ToChart(src[0]), ToChart(src[1]), ToChart(src[2]));
  const Matrix from_ref = ToReference(ToChart(dst[0]), ToChart(dst[1]), ToChart(dst[2]));
  // Adjugate stands in for the inverse; the scale is removed by Normalized.
  const Matrix back = {from_ref[3], -from_ref[1], -from_ref[2], from_ref[0]};
  return ModelIsometry::Normalized(3, Multiply(back, to_ref));
}

// ---------------------------------------------------------------------------

std::vector<double> MoebiusDefects(const BoundaryMap& phi, std::span<const Quadruple> samples) {
  const BallPoint o2 = BallPoint::Origin(2);
  const BallPoint o3 = BallPoint::Origin(3);
  std::vector<double> out;
  out.reserve(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const Quadruple& q = samples[s];
    if (q.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "Moebius defect expects H^2 quadruples");
    std::array<Vec3, 4> img;
    std::array<IdealPoint, 4> pts = q.points();
    for (int i = 0; i < 4; ++i) {
      pts[i] = phi(q.points()[i]);
      if (pts[i].dim() != 3) Fail(ErrorCode::kDimensionMismatch, "boundary map must land in H^3");
      img[i] = pts[i].direction();
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (Chordal(img[i], img[j]) <= kMinSeparation) {
          Fail(ErrorCode::kImageDegenerate,
               "map collapses points " + std::to_string(i) + ", " + std::to_string(j) +
                   " of sample " + std::to_string(s));
        }
      }
    }
    const Quadruple image(pts[0], pts[1], pts[2], pts[3]);
    out.push_back(std::fabs(CrossRatio(image, o3).value - CrossRatio(q, o2).value));
  }
  return out;
}

double MoebiusDefect(const BoundaryMap& phi, std::span<const Quadruple> samples) {
  const std::vector<double> d = MoebiusDefects(phi, samples);
  return d.empty() ? 0.0 : *std::max_element(d.begin(), d.end());
}

IsometricFit FitIsometricExtension(const BoundaryMap& phi, std::span<const IdealPoint> samples) {
  const std::size_t n = samples.size();
  if (n < 3) Fail(ErrorCode::kInvalidArgument, "isometric fit needs at least three samples");
  const std::array<std::size_t, 3> ref = {0, n / 3, 2 * n / 3};
  const std::array<IdealPoint, 3> src = {Equatorial(samples[ref[0]]), Equatorial(samples[ref[1]]),
                                         Equatorial(samples[ref[2]])};
  const std::array<IdealPoint, 3> dst = {phi(samples[ref[0]]), phi(samples[ref[1]]),
                                         phi(samples[ref[2]])};
  const ModelIsometry g = TripleNormalizer(src, dst);
  double residual = 0.0;
  for (const IdealPoint& xi : samples) {
    const Vec3 fitted = BoundaryAction(g, Equatorial(xi)).direction();
    residual = std::max(residual, Chordal(phi(xi).direction(), fitted));
  }
  return {g, residual};
}

}  // namespace hypbound
