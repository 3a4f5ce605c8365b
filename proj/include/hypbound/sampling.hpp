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

// Seeded random samples of points, quadruples and isometries. Streams are
// split by index so that parallel consumers see the same values as serial ones.

#ifndef HYPBOUND_SAMPLING_HPP_
#define HYPBOUND_SAMPLING_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "hypbound/boundary.hpp"
#include "hypbound/isometry.hpp"
#include "hypbound/models.hpp"

namespace hypbound {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();

 private:
  std::mt19937_64 engine_;
};

IdealPoint RandomIdeal(Rng& rng, int dim);

// Uniform in the Euclidean ball of radius max_radius.
BallPoint RandomBall(Rng& rng, int dim, double max_radius = 0.9);

// Rotation, translation of length <= max_translation, rotation.
ModelIsometry RandomIsometry(Rng& rng, int dim, double max_translation = 2.0);

// Rejection-sampled quadruple with all pairwise chordal distances >= min_separation.
Quadruple RandomQuadruple(Rng& rng, int dim, double min_separation = 0.1);

// Fixed H^2 quadruple suite used for Moebius-defect measurements.
std::vector<Quadruple> QuadrupleSuite(std::size_t count, std::uint64_t seed,
                                      double min_separation = 0.1);

}  // namespace hypbound

#endif  // HYPBOUND_SAMPLING_HPP_
