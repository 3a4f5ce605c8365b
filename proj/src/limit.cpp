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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>
#include <utility>

#include "hypbound/boundary.hpp"

namespace hypbound {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPredictionTolerance = 1e-6;
constexpr double kGapRoundoff = 1e-12;

// Counter-clockwise angle from `from` to `to` on the circle, in [0, 2 pi).
double CcwAngle(const IdealPoint& from, const IdealPoint& to) {
  const Vec3& a = from.direction();
  const Vec3& b = to.direction();
  double ang = std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
  if (ang < 0.0) ang += kTwoPi;
  return ang;
}

struct Root {
  double t;
  double value;
  int sign_changes;
};

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

// Root of a continuous function with a sign change on [-T, T]: bracket
// expansion with T doubling, a coarse scan for extra sign changes, then
// bisection on the leftmost bracket.
template <typename F>
Root FindRoot(const F& f, const RootOptions& opt, const char* what) {
  double half = opt.initial_half_width;
  double flo = f(-half);
  double fhi = f(half);
  while (!(Sign(flo) * Sign(fhi) <= 0) && half < opt.max_half_width) {
    half = std::min(2.0 * half, opt.max_half_width);
    flo = f(-half);
    fhi = f(half);
  }
  if (!std::isfinite(flo) || !std::isfinite(fhi) || Sign(flo) * Sign(fhi) > 0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": no sign change on [-" << half << ", " << half << "], f(-T) = " << flo
        << ", f(T) = " << fhi;
    Fail(ErrorCode::kNoBracket, msg.str());
  }

  // Zero counts as positive, so an exact root still registers as a change.
  const auto positive = [](double v) { return v >= 0.0; };
  const int n = std::max(opt.scan_samples, 2);
  double lo = -half;
  double hi = half;
  double prev_t = -half;
  double prev_f = flo;
  int changes = 0;
  for (int i = 1; i < n; ++i) {
    const double t = i == n - 1 ? half : -half + 2.0 * half * i / (n - 1);
    const double v = i == n - 1 ? fhi : f(t);
    if (positive(prev_f) != positive(v)) {
      if (changes == 0) {
        lo = prev_t;
        hi = t;
      }
      ++changes;
    }
    prev_t = t;
    prev_f = v;
  }
  const bool lo_positive = positive(f(lo));

  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (positive(f(mid)) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double t = 0.5 * (lo + hi);
  const double value = f(t);
  if (!(std::fabs(value) < opt.residual_tolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": bisection stalled with residual " << value << " at t = " << t;
    Fail(ErrorCode::kNumericDomain, msg.str());
  }
  return {t, value, changes};
}

void RequireSeparated(const IdealPoint& a, const IdealPoint& b, const char* what) {
  if (Chordal(a.direction(), b.direction()) <= kMinSeparation) {
    Fail(ErrorCode::kImageDegenerate, std::string(what) + " coincide");
  }
}

// Minkowski space R^{2,1} with coordinates (t, x, y) stored in a Vec3.
double Minkowski(const Vec3& u, const Vec3& v) { return -u.x * v.x + u.y * v.y + u.z * v.z; }

// A vector Minkowski-orthogonal to both u and v.
Vec3 MinkowskiCross(const Vec3& u, const Vec3& v) {
  const Vec3 c = Cross(u, v);
  return {-c.x, c.y, c.z};
}

Vec3 NullVector(const IdealPoint& xi) {
  return {1.0, xi.direction().x, xi.direction().y};
}

}  // namespace

// ---------------------------------------------------------------------------

BoundaryMap BoundaryMapSequence::Slice(std::size_t k) const {
  return [eval = evaluator, k](const IdealPoint& xi) { return eval(k, xi); };
}

NormalizedSequence::NormalizedSequence(BoundaryMapSequence base, AnchorTriple anchor_src,
                                       AnchorTriple anchor_dst,
                                       std::vector<ModelIsometry> normalizers)
    : base_(std::move(base)),
      src_(std::move(anchor_src)),
      dst_(std::move(anchor_dst)),
      normalizers_(std::move(normalizers)) {}

const ModelIsometry& NormalizedSequence::normalizer(std::size_t k) const {
  if (k < 1 || k > normalizers_.size()) {
    Fail(ErrorCode::kInvalidArgument, "sequence index " + std::to_string(k) + " outside 1.." +
                                          std::to_string(normalizers_.size()));
  }
  return normalizers_[k - 1];
}

IdealPoint NormalizedSequence::Evaluate(std::size_t k, const IdealPoint& xi) const {
  return BoundaryAction(normalizer(k), base_.evaluator(k, xi));
}

BoundaryMap NormalizedSequence::Slice(std::size_t k) const {
  return [this, k](const IdealPoint& xi) { return Evaluate(k, xi); };
}

NormalizedSequence Normalize(const BoundaryMapSequence& seq, const AnchorTriple& anchor_src,
                             std::size_t k_max, const std::optional<AnchorTriple>& anchor_dst) {
  for (const IdealPoint& a : anchor_src) {
    if (a.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "anchors live on the circle of H^2");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (Chordal(anchor_src[i].direction(), anchor_src[j].direction()) <= kMinSeparation) {
        Fail(ErrorCode::kDegenerateTriple, "anchor triple has coincident points");
      }
    }
  }
  const AnchorTriple dst = anchor_dst.value_or(AnchorTriple{
      Equatorial(anchor_src[0]), Equatorial(anchor_src[1]), Equatorial(anchor_src[2])});
  std::vector<ModelIsometry> gs;
  gs.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const AnchorTriple images = {seq.evaluator(k, anchor_src[0]), seq.evaluator(k, anchor_src[1]),
                                 seq.evaluator(k, anchor_src[2])};
    try {
      gs.push_back(TripleNormalizer(images, dst));
    } catch (const GeometryError& e) {
      std::string detail = e.what();
      const std::string prefix = std::string(ErrorCodeName(e.code())) + ": ";
      if (detail.rfind(prefix, 0) == 0) detail.erase(0, prefix.size());
      Fail(e.code(), "at index k = " + std::to_string(k) + ": " + detail);
    }
  }
  return NormalizedSequence(seq, anchor_src, dst, std::move(gs));
}

// ---------------------------------------------------------------------------

const char* IntervalName(Interval interval) {
  switch (interval) {
    case Interval::kXi1Xi0: return "I(xi1,xi0)";
    case Interval::kXi0Eta0: return "I(xi0,eta0)";
    case Interval::kEta0Xi1: return "I(eta0,xi1)";
  }
  return "?";
}

Interval IntervalOf(const IdealPoint& eta1, const AnchorTriple& anchors) {
  if (eta1.dim() != 2) Fail(ErrorCode::kDimensionMismatch, "interval classification is on S^1");
  for (const IdealPoint& a : anchors) {
    if (Chordal(a.direction(), eta1.direction()) <= kMinSeparation) {
      Fail(ErrorCode::kOnAnchor, "point coincides with an anchor");
    }
  }
  const double to_eta0 = CcwAngle(anchors[0], anchors[1]);
  const double to_xi1 = CcwAngle(anchors[0], anchors[2]);
  const double to_eta1 = CcwAngle(anchors[0], eta1);
  if (to_eta0 < to_xi1) {
    // xi0 -> eta0 -> xi1 counter-clockwise.
    if (to_eta1 < to_eta0) return Interval::kXi0Eta0;
    if (to_eta1 < to_xi1) return Interval::kEta0Xi1;
    return Interval::kXi1Xi0;
  }
  // xi0 -> xi1 -> eta0 counter-clockwise.
  if (to_eta1 < to_xi1) return Interval::kXi1Xi0;
  if (to_eta1 < to_eta0) return Interval::kEta0Xi1;
  return Interval::kXi0Eta0;
}

std::array<int, 3> Relabeling(Interval interval) {
  switch (interval) {
    case Interval::kXi1Xi0: return {0, 1, 2};
    case Interval::kXi0Eta0: return {1, 2, 0};
    case Interval::kEta0Xi1: return {2, 0, 1};
  }
  return {0, 1, 2};
}

AnchorFrame FrameFor(const IdealPoint& eta1, const AnchorTriple& src, const AnchorTriple& dst) {
  const Interval interval = IntervalOf(eta1, src);
  const std::array<int, 3> p = Relabeling(interval);
  return {interval, {src[p[0]], src[p[1]], src[p[2]]}, {dst[p[0]], dst[p[1]], dst[p[2]]}};
}

CrossingAngle AlphaAngle(const IdealPoint& eta1, const AnchorTriple& anchors) {
  const Vec3 n1 = MinkowskiCross(NullVector(anchors[0]), NullVector(anchors[2]));
  const Vec3 n2 = MinkowskiCross(NullVector(anchors[1]), NullVector(eta1));
  Vec3 x = MinkowskiCross(n1, n2);
  const double q = Minkowski(x, x);
  if (!(q < -1e-14 * Norm2(x))) {
    Fail(ErrorCode::kNonIncident, "geodesics (xi0, xi1) and (eta0, eta1) do not meet");
  }
  x = x / std::sqrt(-q);
  if (x.x < 0.0) x = -x;
  const double denom = 1.0 + x.x;
  const BallPoint s = BallPoint::FromParts(2, Vec3{x.y / denom, x.z / denom, 0.0}, 2.0 / denom);
  return {s, ComparisonAngleIdeal(s, anchors[0], anchors[1])};
}

// ---------------------------------------------------------------------------

BalancePoint SolveBalancePoint(std::size_t k, const IdealPoint& eta1, const NormalizedSequence& ns,
                               const RootOptions& options) {
  const AnchorFrame frame = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
  const IdealPoint& xi0 = frame.dst[0];
  const IdealPoint& eta0 = frame.dst[1];
  const IdealPoint& xi1 = frame.dst[2];
  const IdealPoint image = ns.Evaluate(k, eta1);
  RequireSeparated(image, xi1, "psi_k(eta1) and xi1'");
  RequireSeparated(eta0, xi0, "eta0' and xi0'");

  const Geodesic line = GeodesicThrough(xi0, xi1);
  const auto f = [&](double t) {
    const BallPoint x = line.At(t);
    return VisualMetric(x, xi0, eta0) - VisualMetric(x, xi1, image);
  };
  const Root root = FindRoot(f, options, "balance point");
  const BallPoint x = line.At(root.t);
  return {x,
          root.t,
          ComparisonAngleIdeal(x, xi0, eta0),
          std::fabs(root.value),
          root.sign_changes,
          root.sign_changes > 1};
}

LimitPrediction PredictLimit(const IdealPoint& eta1, const NormalizedSequence& ns,
                             const RootOptions& options) {
  const AnchorFrame frame = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
  const CrossingAngle crossing = AlphaAngle(eta1, frame.src);
  const IdealPoint& xi0 = frame.dst[0];
  const IdealPoint& eta0 = frame.dst[1];
  const IdealPoint& xi1 = frame.dst[2];
  RequireSeparated(eta0, xi0, "eta0' and xi0'");

  const double target = std::sin(0.5 * crossing.alpha);
  const Geodesic line = GeodesicThrough(xi0, xi1);
  const auto g = [&](double t) { return VisualMetric(line.At(t), xi0, eta0) - target; };
  const Root root = FindRoot(g, options, "limit point");
  const BallPoint x = line.At(root.t);
  const IdealPoint eta1_prime = GeodesicThroughPoint(x, eta0).endpoint_pos();

  const double check = ComparisonAngleIdeal(x, xi1, eta1_prime);
  if (!(std::fabs(check - crossing.alpha) < kPredictionTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "theta_x(xi1', eta1') = " << check << " but alpha = " << crossing.alpha;
    Fail(ErrorCode::kConstructionInconsistent, msg.str());
  }
  return {frame.interval, crossing.s, crossing.alpha, x, root.t, eta1_prime};
}

// ---------------------------------------------------------------------------

bool CauchyWindow(std::span<const double> gaps, double tolerance, std::size_t window) {
  if (gaps.empty() || !(gaps.back() < tolerance)) return false;
  const std::size_t n = std::min(window, gaps.size());
  for (std::size_t i = gaps.size() - n + 1; i < gaps.size(); ++i) {
    if (gaps[i] > gaps[i - 1] + kGapRoundoff) return false;
  }
  return true;
}

namespace {

LimitReport ExtractOne(const NormalizedSequence& ns, const IdealPoint& eta1, std::size_t k_max,
                       const ExtractOptions& options) {
  LimitReport report{eta1, std::nullopt, std::nullopt, {}, std::nullopt, false, std::nullopt,
                     std::nullopt};
  try {
    const LimitPrediction prediction = PredictLimit(eta1, ns, options.root);
    report.interval = prediction.interval;
    report.alpha = prediction.alpha;
    report.predicted = prediction.eta1_prime;

    const AnchorFrame frame = FrameFor(eta1, ns.anchor_src(), ns.anchor_dst());
    const IdealPoint& s_xi0 = frame.src[0];
    const IdealPoint& s_eta0 = frame.src[1];
    const IdealPoint& s_xi1 = frame.src[2];
    // The two quadruples whose cross ratios bound sin^2(beta_k / 2).
    const std::array<Quadruple, 2> quads = {Quadruple(s_xi0, eta1, s_eta0, s_xi1),
                                            Quadruple(s_xi0, s_eta0, eta1, s_xi1)};

    std::vector<double> gaps;
    gaps.reserve(k_max);
    report.steps.reserve(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
      const BalancePoint bp = SolveBalancePoint(k, eta1, ns, options.root);
      const IdealPoint image = ns.Evaluate(k, eta1);
      const double gap = Chordal(image.direction(), prediction.eta1_prime.direction());
      const double defect = MoebiusDefect(ns.Slice(k), quads);
      const double opposite = ComparisonAngleIdeal(bp.x, frame.dst[0], image);
      const double other = ComparisonAngleIdeal(bp.x, frame.dst[2], image);
      report.steps.push_back({k, bp.x, bp.t, bp.beta, image, gap, defect, opposite,
                              std::fabs(bp.beta - other), bp.multiple_roots});
      gaps.push_back(gap);
    }
    report.final_gap = gaps.empty() ? std::optional<double>{} : gaps.back();
    report.converged = CauchyWindow(gaps, options.tolerance, options.window);
  } catch (const GeometryError& e) {
    report.error = ReportError{e.code(), e.what()};
    report.converged = false;
  }
  return report;
}

}  // namespace

std::vector<LimitReport> ExtractLimitMap(const NormalizedSequence& ns,
                                         std::span<const IdealPoint> eta_samples,
                                         std::size_t k_max, const ExtractOptions& options) {
  if (k_max > ns.k_max()) {
    Fail(ErrorCode::kInvalidArgument, "k_max exceeds the normalized range");
  }
  std::vector<std::optional<LimitReport>> slots(eta_samples.size());
  unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(eta_samples.size())));

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < eta_samples.size(); i = next++) {
      slots[i] = ExtractOne(ns, eta_samples[i], k_max, options);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  std::vector<LimitReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace hypbound
