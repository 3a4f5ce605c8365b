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

#include "hypbound/sampling.hpp"

#include <cmath>
#include <numbers>

#include "hypbound/error.hpp"

namespace hypbound {

namespace {

std::uint64_t SplitMix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(SplitMix(SplitMix(seed) ^ SplitMix(stream + 0x632be59bd9b4e019ULL))) {}

double Rng::Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::Normal() {
  // Box-Muller; std::normal_distribution is not reproducible across libraries.
  const double u1 = 1.0 - Uniform();
  const double u2 = Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

IdealPoint RandomIdeal(Rng& rng, int dim) {
  if (dim == 2) return IdealPoint::FromAngle(rng.Uniform(0.0, 2.0 * std::numbers::pi));
  for (;;) {
    const Vec3 v{rng.Normal(), rng.Normal(), rng.Normal()};
    if (Norm(v) > 1e-6) return IdealPoint(3, v);
  }
}

BallPoint RandomBall(Rng& rng, int dim, double max_radius) {
  const Vec3 u = RandomIdeal(rng, dim).direction();
  const double r = max_radius * std::pow(rng.Uniform(), 1.0 / dim);
  return BallPoint(dim, r * u);
}

ModelIsometry RandomIsometry(Rng& rng, int dim, double max_translation) {
  const Vec3 axis1 = RandomIdeal(rng, 3).direction();
  const Vec3 axis2 = RandomIdeal(rng, 3).direction();
  const double a1 = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const double a2 = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  const Vec3 u = RandomIdeal(rng, dim).direction();
  const double len = rng.Uniform(0.0, max_translation);
  const ModelIsometry r1 = ModelIsometry::Rotation(dim, axis1, a1);
  const ModelIsometry r2 = ModelIsometry::Rotation(dim, axis2, a2);
  return Compose(Compose(r1, ModelIsometry::Translation(dim, u, len)), r2);
}

Quadruple RandomQuadruple(Rng& rng, int dim, double min_separation) {
  for (;;) {
    std::array<Vec3, 4> v;
    for (Vec3& p : v) p = RandomIdeal(rng, dim).direction();
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      for (int j = i + 1; j < 4 && ok; ++j) ok = Chordal(v[i], v[j]) >= min_separation;
    }
    if (ok) {
      return Quadruple(IdealPoint(dim, v[0]), IdealPoint(dim, v[1]), IdealPoint(dim, v[2]),
                       IdealPoint(dim, v[3]));
    }
  }
}

std::vector<Quadruple> QuadrupleSuite(std::size_t count, std::uint64_t seed,
                                      double min_separation) {
  Rng rng(seed, 0x5157);
  std::vector<Quadruple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(RandomQuadruple(rng, 2, min_separation));
  return out;
}

}  // namespace hypbound
