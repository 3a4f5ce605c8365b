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

// Extraction of the limit of an asymptotically Moebius sequence of boundary
// maps from the circle at infinity of H^2 to the sphere at infinity of H^3.
//
// Pipeline:
//   1. Normalize: post-compose each map phi_k with the isometry g_k that pins
//      the images of an anchor triple (xi0, eta0, xi1) to a fixed target
//      triple (xi0', eta0', xi1').
//   2. For a further point eta1, relabel the anchors cyclically so that eta1
//      lies on the arc between xi1 and xi0 away from eta0. Then the
//      geodesics (xi0, xi1) and (eta0, eta1) of H^2 cross at a point s, and
//      alpha is the angle they make there.
//   3. For each k, the balance point x_k on (xi0', xi1') sees the pairs
//      (xi0', eta0') and (xi1', psi_k(eta1)) under the same comparison angle
//      beta_k.
//   4. The limit eta1' is the far endpoint of the geodesic from eta0' through
//      the point x of (xi0', xi1') where the angle to (xi0', eta0') is alpha.

#ifndef HYPBOUND_LIMIT_HPP_
#define HYPBOUND_LIMIT_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypbound/error.hpp"
#include "hypbound/isometry.hpp"
#include "hypbound/models.hpp"

namespace hypbound {

// (xi0, eta0, xi1).
using AnchorTriple = std::array<IdealPoint, 3>;

// k -> phi_k, k >= 1. Evaluators must be stateless.
using SequenceEvaluator = std::function<IdealPoint(std::size_t k, const IdealPoint& xi)>;

struct BoundaryMapSequence {
  SequenceEvaluator evaluator;
  // Optional per-k Moebius defect on a fixed quadruple suite (index k - 1).
  std::optional<std::vector<double>> defect_profile;

  BoundaryMap Slice(std::size_t k) const;
};

class NormalizedSequence {
 public:
  NormalizedSequence(BoundaryMapSequence base, AnchorTriple anchor_src, AnchorTriple anchor_dst,
                     std::vector<ModelIsometry> normalizers);

  const BoundaryMapSequence& base() const { return base_; }
  const AnchorTriple& anchor_src() const { return src_; }
  const AnchorTriple& anchor_dst() const { return dst_; }
  std::size_t k_max() const { return normalizers_.size(); }

  // g_k, 1 <= k <= k_max().
  const ModelIsometry& normalizer(std::size_t k) const;

  // psi_k(xi) = g_k(phi_k(xi)).
  IdealPoint Evaluate(std::size_t k, const IdealPoint& xi) const;
  BoundaryMap Slice(std::size_t k) const;

 private:
  BoundaryMapSequence base_;
  AnchorTriple src_;
  AnchorTriple dst_;
  std::vector<ModelIsometry> normalizers_;
};

// Builds g_1..g_{k_max}. The target triple defaults to the equatorial images
// of anchor_src, so a sequence that already fixes them gets identities.
// Throws kDegenerateTriple (message names k) if phi_k collapses the anchors.
NormalizedSequence Normalize(const BoundaryMapSequence& seq, const AnchorTriple& anchor_src,
                             std::size_t k_max,
                             const std::optional<AnchorTriple>& anchor_dst = std::nullopt);

// The three arcs cut out by the anchors, named by their bounding anchors.
// For a counter-clockwise anchor triple these are the arcs I(xi1, xi0),
// I(xi0, eta0), I(eta0, xi1); for a clockwise one the tag still names the
// arc between those two anchors that avoids the third.
enum class Interval { kXi1Xi0 = 0, kXi0Eta0 = 1, kEta0Xi1 = 2 };

const char* IntervalName(Interval interval);

// Throws kOnAnchor if eta1 is within 1e-10 of an anchor.
Interval IntervalOf(const IdealPoint& eta1, const AnchorTriple& anchors);

// Cyclic relabeling that moves the given arc to the (xi1, xi0) arc: entry i is
// the index of the original anchor playing role i.
std::array<int, 3> Relabeling(Interval interval);

// Anchors after relabeling for eta1, on both sides.
struct AnchorFrame {
  Interval interval;
  AnchorTriple src;
  AnchorTriple dst;
};

AnchorFrame FrameFor(const IdealPoint& eta1, const AnchorTriple& src, const AnchorTriple& dst);

struct CrossingAngle {
  BallPoint s;   // (xi0, xi1) meets (eta0, eta1)
  double alpha;  // comparison angle at s between xi0 and eta0
};

// For anchors already relabeled so that eta1 lies in I(xi1, xi0). Throws
// kNonIncident if the two geodesics do not meet.
CrossingAngle AlphaAngle(const IdealPoint& eta1, const AnchorTriple& anchors);

struct RootOptions {
  double initial_half_width = 8.0;
  double max_half_width = 64.0;
  int scan_samples = 257;
  double residual_tolerance = 1e-11;
};

struct BalancePoint {
  BallPoint x;
  double t;         // parameter on the geodesic (xi0', xi1')
  double beta;      // theta_x(xi0', eta0')
  double residual;  // |rho_x(xi0', eta0') - rho_x(xi1', psi_k(eta1))|
  int sign_changes;
  bool multiple_roots;  // more than one sign change seen; smallest-t root kept
};

BalancePoint SolveBalancePoint(std::size_t k, const IdealPoint& eta1, const NormalizedSequence& ns,
                               const RootOptions& options = {});

struct LimitPrediction {
  Interval interval;
  BallPoint s;
  double alpha;
  BallPoint x;  // point of (xi0', xi1') with theta_x(xi0', eta0') = alpha
  double t;
  IdealPoint eta1_prime;
};

// Throws kNoBracket or kConstructionInconsistent.
LimitPrediction PredictLimit(const IdealPoint& eta1, const NormalizedSequence& ns,
                             const RootOptions& options = {});

struct LimitStep {
  std::size_t k;
  BallPoint x;
  double t;
  double beta;
  IdealPoint image;       // psi_k(eta1)
  double gap;             // chordal |psi_k(eta1) - eta1'|
  double defect;          // epsilon_k on the two quadruples used by the angle bounds
  double opposite_angle;  // theta_{x_k}(xi0', psi_k(eta1))
  double balance_error;   // |theta(xi0', eta0') - theta(xi1', psi_k(eta1))|
  bool multiple_roots;
};

struct ReportError {
  ErrorCode code;
  std::string message;
};

struct LimitReport {
  IdealPoint target;  // eta1
  std::optional<Interval> interval;
  std::optional<double> alpha;
  std::vector<LimitStep> steps;
  std::optional<IdealPoint> predicted;
  bool converged = false;
  std::optional<double> final_gap;
  std::optional<ReportError> error;
};

struct ExtractOptions {
  double tolerance = 1e-3;
  std::size_t window = 5;
  // Samples are processed on this many threads; 0 picks the hardware count.
  unsigned threads = 0;
  RootOptions root;
};

// Per-sample reports in input order. Per-sample failures are recorded in
// LimitReport::error and do not abort the batch.
std::vector<LimitReport> ExtractLimitMap(const NormalizedSequence& ns,
                                         std::span<const IdealPoint> eta_samples,
                                         std::size_t k_max, const ExtractOptions& options = {});

// Convergence verdict: final gap below tolerance and the last `window` gaps
// non-increasing (up to 1e-12 of rounding).
bool CauchyWindow(std::span<const double> gaps, double tolerance, std::size_t window);

}  // namespace hypbound

#endif  // HYPBOUND_LIMIT_HPP_
