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

#include "hypbound/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <system_error>

#include "json.hpp"

#include "hypbound/error.hpp"
#include "hypbound/sampling.hpp"

namespace hypbound {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kAnchorSeparation = 1e-6;
constexpr int kFieldGrid = 4096;

// Smooth tangent field V(p) = P_p(A p + b) on the unit sphere, scaled to
// sup norm 1 on a Fibonacci grid.
struct TangentField {
  std::array<double, 9> a{};
  Vec3 b;
  double scale = 1.0;

  Vec3 Raw(const Vec3& p) const {
    const Vec3 q{a[0] * p.x + a[1] * p.y + a[2] * p.z + b.x,
                 a[3] * p.x + a[4] * p.y + a[5] * p.z + b.y,
                 a[6] * p.x + a[7] * p.y + a[8] * p.z + b.z};
    return q - Dot(q, p) * p;
  }

  Vec3 operator()(const Vec3& p) const { return scale * Raw(p); }
};

TangentField MakeField(std::uint64_t seed) {
  Rng rng(seed, 0x7e1d);
  TangentField f;
  for (double& v : f.a) v = rng.Normal();
  f.b = Vec3{rng.Normal(), rng.Normal(), rng.Normal()};
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  double sup = 0.0;
  for (int i = 0; i < kFieldGrid; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / kFieldGrid;
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 p{r * std::cos(golden * i), r * std::sin(golden * i), z};
    sup = std::max(sup, Norm(f.Raw(p)));
  }
  f.scale = 1.0 / sup;
  return f;
}

IdealPoint Displace(const Vec3& p, const Vec3& v, double size) {
  return IdealPoint(3, p + size * v);
}

double AngleGap(double a, double b) {
  const double d = std::fmod(std::fabs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

Json VecJson(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 VecFrom(const Json& j) {
  return Vec3{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

template <typename T>
Json OptJson(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <typename T>
std::optional<T> OptFrom(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

Json ErrorJson(const std::optional<std::string>& code, const std::optional<std::string>& msg) {
  if (!code) return nullptr;
  return Json{{"code", *code}, {"message", msg.value_or("")}};
}

void ErrorFrom(const Json& j, std::optional<std::string>& code, std::optional<std::string>& msg) {
  if (j.is_null()) {
    code.reset();
    msg.reset();
    return;
  }
  code = j.at("code").get<std::string>();
  msg = j.at("message").get<std::string>();
}

double SinHalfSquared(double angle) {
  const double s = std::sin(0.5 * angle);
  return s * s;
}

SampleSummary Summarize(std::size_t index, const LimitReport& lr) {
  SampleSummary s;
  s.index = index;
  s.target = lr.target.direction();
  if (lr.interval) s.interval = IntervalName(*lr.interval);
  s.alpha = lr.alpha;
  if (lr.predicted) {
    s.predicted = lr.predicted->direction();
    s.reference_gap = Chordal(lr.predicted->direction(), Equatorial(lr.target).direction());
  }
  s.converged = lr.converged;
  s.final_gap = lr.final_gap;
  s.steps = lr.steps.size();
  for (const LimitStep& st : lr.steps) {
    if (lr.alpha) {
      const double lo = SinHalfSquared(*lr.alpha) - st.defect;
      const double hi = SinHalfSquared(*lr.alpha) + st.defect;
      const double b2 = SinHalfSquared(st.beta);
      s.max_sandwich_excess = std::max({s.max_sandwich_excess, lo - b2, b2 - hi});
    }
    s.max_angle_deficit =
        std::max(s.max_angle_deficit, (std::numbers::pi - st.beta) - st.opposite_angle);
    s.max_balance_error = std::max(s.max_balance_error, st.balance_error);
    s.multiple_roots = s.multiple_roots || st.multiple_roots;
  }
  if (lr.error) {
    s.error_code = std::string(ErrorCodeName(lr.error->code));
    s.error_message = lr.error->message;
  }
  return s;
}

// phi_infinity as a lookup table on the sampled points.
BoundaryMap LookupMap(std::vector<IdealPoint> src, std::vector<IdealPoint> dst) {
  return [src = std::move(src), dst = std::move(dst)](const IdealPoint& xi) {
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (Chordal(src[i].direction(), xi.direction()) <= 1e-12) return dst[i];
    }
    Fail(ErrorCode::kInvalidArgument, "point outside the sampled domain of the limit map");
  };
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot open " + path.string());
  out << text;
  out.close();
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
}

}  // namespace

std::string_view ScenarioKindName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kConstantMoebius:
      return "constant_moebius";
    case ScenarioKind::kIsometryShifted:
      return "isometry_shifted";
    case ScenarioKind::kDecayingPerturbation:
      return "decaying_perturbation";
    case ScenarioKind::kNormalizedConvergent:
      return "normalized_convergent";
  }
  return "unknown";
}

std::optional<ScenarioKind> ParseScenarioKind(std::string_view name) {
  for (ScenarioKind k : {ScenarioKind::kConstantMoebius, ScenarioKind::kIsometryShifted,
                         ScenarioKind::kDecayingPerturbation,
                         ScenarioKind::kNormalizedConvergent}) {
    if (ScenarioKindName(k) == name) return k;
  }
  return std::nullopt;
}

void ScenarioSpec::Validate() const {
  if (k_max < 1) Fail(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    Fail(ErrorCode::kInvalidArgument, "decay_rate must be a positive real");
  }
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(anchor_angles[i])) {
      Fail(ErrorCode::kInvalidArgument, "anchor angles must be finite");
    }
    for (int j = i + 1; j < 3; ++j) {
      if (AngleGap(anchor_angles[i], anchor_angles[j]) < kAnchorSeparation) {
        Fail(ErrorCode::kInvalidArgument, "anchor angles must differ by at least 1e-6");
      }
    }
  }
}

AnchorTriple ScenarioSpec::Anchors() const {
  return {IdealPoint::FromAngle(anchor_angles[0]), IdealPoint::FromAngle(anchor_angles[1]),
          IdealPoint::FromAngle(anchor_angles[2])};
}

BoundaryMapSequence Generate(const ScenarioSpec& spec) {
  spec.Validate();
  BoundaryMapSequence seq;
  switch (spec.kind) {
    case ScenarioKind::kConstantMoebius:
      seq.evaluator = [](std::size_t, const IdealPoint& xi) { return Equatorial(xi); };
      break;
    case ScenarioKind::kIsometryShifted:
      // Alternating direction along the polar axis: the images of a fixed
      // point swing between the poles and never settle.
      seq.evaluator = [](std::size_t k, const IdealPoint& xi) {
        const double len = (k % 2 == 0 ? 1.0 : -1.0) * kShiftStep * static_cast<double>(k);
        const ModelIsometry h = ModelIsometry::Translation(3, Vec3{0.0, 0.0, 1.0}, len);
        return BoundaryAction(h, Equatorial(xi));
      };
      break;
    case ScenarioKind::kDecayingPerturbation: {
      const TangentField field = MakeField(spec.seed);
      const double rate = spec.decay_rate;
      seq.evaluator = [field, rate](std::size_t k, const IdealPoint& xi) {
        const Vec3 p = Equatorial(xi).direction();
        return Displace(p, field(p), rate / static_cast<double>(k));
      };
      break;
    }
    case ScenarioKind::kNormalizedConvergent: {
      const TangentField field = MakeField(spec.seed);
      const double rate = spec.decay_rate;
      std::array<Vec3, 3> fixed;
      const AnchorTriple anchors = spec.Anchors();
      for (int i = 0; i < 3; ++i) fixed[i] = Equatorial(anchors[i]).direction();
      seq.evaluator = [field, rate, fixed](std::size_t k, const IdealPoint& xi) {
        const Vec3 p = Equatorial(xi).direction();
        double w = 1.0;
        for (const Vec3& a : fixed) w *= 0.25 * Norm2(p - a);
        if (w == 0.0) return IdealPoint(3, p);
        return Displace(p, w * field(p), rate / static_cast<double>(k));
      };
      break;
    }
  }
  return seq;
}

std::vector<double> DefectProfile(const BoundaryMapSequence& seq,
                                  std::span<const Quadruple> suite, std::size_t k_max) {
  std::vector<double> out;
  out.reserve(k_max);
  for (std::size_t k = 1; k <= k_max; ++k) out.push_back(MoebiusDefect(seq.Slice(k), suite));
  return out;
}

std::vector<IdealPoint> CircleSamples(std::size_t count, double start_angle) {
  std::vector<IdealPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double frac = (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    out.push_back(IdealPoint::FromAngle(start_angle + kTwoPi * frac));
  }
  return out;
}

RunOutput Execute(const ScenarioSpec& spec, std::size_t sample_count,
                  const ExtractOptions& options, const RunThresholds& thresholds) {
  const auto start = std::chrono::steady_clock::now();
  spec.Validate();
  if (sample_count < 1) Fail(ErrorCode::kInvalidArgument, "sample_count must be >= 1");

  RunOutput out;
  RunReport& r = out.report;
  r.scenario = spec;
  r.sample_count = sample_count;

  const BoundaryMapSequence seq = Generate(spec);
  const AnchorTriple anchors = spec.Anchors();
  const std::vector<IdealPoint> samples = CircleSamples(sample_count, spec.anchor_angles[0]);

  try {
    const NormalizedSequence ns = Normalize(seq, anchors, spec.k_max);
    out.limits = ExtractLimitMap(ns, samples, spec.k_max, options);

    bool all = true;
    bool have_all_predictions = true;
    for (std::size_t i = 0; i < out.limits.size(); ++i) {
      r.samples.push_back(Summarize(i, out.limits[i]));
      all = all && out.limits[i].converged && !out.limits[i].error;
      have_all_predictions = have_all_predictions && out.limits[i].predicted.has_value();
    }
    r.all_converged = all;

    if (have_all_predictions) {
      std::vector<IdealPoint> src(samples.begin(), samples.end());
      std::vector<IdealPoint> dst;
      for (const LimitReport& lr : out.limits) dst.push_back(*lr.predicted);
      for (int i = 0; i < 3; ++i) {
        src.push_back(ns.anchor_src()[i]);
        dst.push_back(ns.anchor_dst()[i]);
      }
      const BoundaryMap limit = LookupMap(src, dst);

      Rng rng(spec.seed, 0x4c1d);
      const std::size_t n = src.size();
      std::vector<Quadruple> quads;
      quads.reserve(thresholds.limit_quadruples);
      while (quads.size() < thresholds.limit_quadruples) {
        std::array<std::size_t, 4> idx;
        for (auto& v : idx) {
          v = std::min(n - 1, static_cast<std::size_t>(rng.Uniform() * static_cast<double>(n)));
        }
        bool distinct = true;
        for (int a = 0; a < 4; ++a) {
          for (int b = a + 1; b < 4; ++b) distinct = distinct && idx[a] != idx[b];
        }
        if (distinct) quads.emplace_back(src[idx[0]], src[idx[1]], src[idx[2]], src[idx[3]]);
      }
      r.limit_moebius_defect = MoebiusDefect(limit, quads);
      const std::span<const IdealPoint> fit_on =
          samples.size() >= 3 ? std::span<const IdealPoint>(samples) : std::span(src);
      r.fit_residual = FitIsometricExtension(limit, fit_on).residual;
    }
  } catch (const GeometryError& e) {
    r.error_code = std::string(ErrorCodeName(e.code()));
    r.error_message = e.what();
  }

  if (spec.kind == ScenarioKind::kIsometryShifted) {
    const IdealPoint eta1 = samples.front();
    std::vector<double> steps;
    Vec3 prev = seq.evaluator(1, eta1).direction();
    for (std::size_t k = 2; k <= spec.k_max; ++k) {
      const Vec3 cur = seq.evaluator(k, eta1).direction();
      steps.push_back(Chordal(prev, cur));
      prev = cur;
    }
    r.divergence_checked = true;
    const bool cauchy = CauchyWindow(steps, options.tolerance, options.window);
    r.diverged_without_normalization = !cauchy && r.all_converged;
  }

  bool ok = !r.error_code && r.all_converged && r.limit_moebius_defect &&
            *r.limit_moebius_defect < thresholds.limit_defect && r.fit_residual &&
            *r.fit_residual < thresholds.fit_residual;
  for (const SampleSummary& s : r.samples) {
    ok = ok && s.max_sandwich_excess <= thresholds.bound_slack &&
         s.max_angle_deficit <= thresholds.bound_slack;
  }
  if (r.divergence_checked) ok = ok && r.diverged_without_normalization;
  r.passed = ok;
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunReport Run(const ScenarioSpec& spec, std::size_t sample_count,
              const std::filesystem::path& out_dir, const ExtractOptions& options) {
  RunOutput out = Execute(spec, sample_count, options);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  WriteFile(out_dir / "report.json", ReportToJson(out.report) + "\n");
  WriteFile(out_dir / "trajectories.csv", TrajectoriesCsv(out.limits));
  return out.report;
}

std::string ReportToJson(const RunReport& r, bool include_timing) {
  Json samples = Json::array();
  for (const SampleSummary& s : r.samples) {
    samples.push_back(Json{
        {"index", s.index},
        {"target", VecJson(s.target)},
        {"interval", OptJson(s.interval)},
        {"alpha", OptJson(s.alpha)},
        {"predicted", s.predicted ? VecJson(*s.predicted) : Json(nullptr)},
        {"converged", s.converged},
        {"final_gap", OptJson(s.final_gap)},
        {"reference_gap", OptJson(s.reference_gap)},
        {"steps", s.steps},
        {"max_sandwich_excess", s.max_sandwich_excess},
        {"max_angle_deficit", s.max_angle_deficit},
        {"max_balance_error", s.max_balance_error},
        {"multiple_roots", s.multiple_roots},
        {"error", ErrorJson(s.error_code, s.error_message)},
    });
  }
  Json j{
      {"schema", "hypbound.run_report/1"},
      {"scenario",
       {{"kind", std::string(ScenarioKindName(r.scenario.kind))},
        {"seed", r.scenario.seed},
        {"k_max", r.scenario.k_max},
        {"decay_rate", r.scenario.decay_rate},
        {"anchor_angles", r.scenario.anchor_angles}}},
      {"sample_count", r.sample_count},
      {"samples", std::move(samples)},
      {"all_converged", r.all_converged},
      {"limit_moebius_defect", OptJson(r.limit_moebius_defect)},
      {"fit_residual", OptJson(r.fit_residual)},
      {"divergence_checked", r.divergence_checked},
      {"diverged_without_normalization", r.diverged_without_normalization},
      {"error", ErrorJson(r.error_code, r.error_message)},
      {"passed", r.passed},
  };
  if (include_timing) j["timing"] = Json{{"elapsed_seconds", r.elapsed_seconds}};
  return j.dump(2);
}

RunReport ReportFromJson(std::string_view text) {
  RunReport r;
  try {
    const Json j = Json::parse(text);
    const Json& sc = j.at("scenario");
    const auto kind = ParseScenarioKind(sc.at("kind").get<std::string>());
    if (!kind) Fail(ErrorCode::kInvalidArgument, "unknown scenario kind in report");
    r.scenario.kind = *kind;
    r.scenario.seed = sc.at("seed").get<std::uint64_t>();
    r.scenario.k_max = sc.at("k_max").get<std::size_t>();
    r.scenario.decay_rate = sc.at("decay_rate").get<double>();
    r.scenario.anchor_angles = sc.at("anchor_angles").get<std::array<double, 3>>();
    r.sample_count = j.at("sample_count").get<std::size_t>();
    for (const Json& sj : j.at("samples")) {
      SampleSummary s;
      s.index = sj.at("index").get<std::size_t>();
      s.target = VecFrom(sj.at("target"));
      s.interval = OptFrom<std::string>(sj.at("interval"));
      s.alpha = OptFrom<double>(sj.at("alpha"));
      if (!sj.at("predicted").is_null()) s.predicted = VecFrom(sj.at("predicted"));
      s.converged = sj.at("converged").get<bool>();
      s.final_gap = OptFrom<double>(sj.at("final_gap"));
      s.reference_gap = OptFrom<double>(sj.at("reference_gap"));
      s.steps = sj.at("steps").get<std::size_t>();
      s.max_sandwich_excess = sj.at("max_sandwich_excess").get<double>();
      s.max_angle_deficit = sj.at("max_angle_deficit").get<double>();
      s.max_balance_error = sj.at("max_balance_error").get<double>();
      s.multiple_roots = sj.at("multiple_roots").get<bool>();
      ErrorFrom(sj.at("error"), s.error_code, s.error_message);
      r.samples.push_back(std::move(s));
    }
    r.all_converged = j.at("all_converged").get<bool>();
    r.limit_moebius_defect = OptFrom<double>(j.at("limit_moebius_defect"));
    r.fit_residual = OptFrom<double>(j.at("fit_residual"));
    r.divergence_checked = j.at("divergence_checked").get<bool>();
    r.diverged_without_normalization = j.at("diverged_without_normalization").get<bool>();
    ErrorFrom(j.at("error"), r.error_code, r.error_message);
    r.passed = j.at("passed").get<bool>();
    if (j.contains("timing")) r.elapsed_seconds = j["timing"].at("elapsed_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kInvalidArgument, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string TrajectoriesCsv(const std::vector<LimitReport>& limits) {
  std::ostringstream os;
  os << "sample_index,k,beta_k,alpha,gap_chordal,defect_k\n";
  char buf[192];
  for (std::size_t i = 0; i < limits.size(); ++i) {
    const double alpha = limits[i].alpha.value_or(std::numeric_limits<double>::quiet_NaN());
    for (const LimitStep& st : limits[i].steps) {
      std::snprintf(buf, sizeof(buf), "%zu,%zu,%.17g,%.17g,%.17g,%.17g\n", i, st.k, st.beta,
                    alpha, st.gap, st.defect);
      os << buf;
    }
  }
  return os.str();
}

namespace {

constexpr double kIdentityTolerance = 1e-9;

class RowRunner {
 public:
  RowRunner(std::string name, std::size_t trials, double tol)
      : row_{std::move(name), trials, 0.0, tol, false} {}

  template <typename F>
  void Trial(F&& f) {
    double err;
    try {
      err = f();
    } catch (const GeometryError&) {
      err = std::numeric_limits<double>::infinity();
    }
    if (std::isnan(err)) err = std::numeric_limits<double>::infinity();
    row_.worst_error = std::max(row_.worst_error, err);
  }

  IdentityRow Finish() {
    row_.passed = row_.worst_error <= row_.tolerance;
    return row_;
  }

 private:
  IdentityRow row_;
};

// Hyperbolic Stewart relation for a point p on the side [y, z] of a triangle.
double StewartCosh(double a, double b, double c, double u) {
  return (std::cosh(a) * std::sinh(c - u) + std::cosh(b) * std::sinh(u)) / std::sinh(c);
}

double TangentAngle(const BallPoint& x, const IdealPoint& xi, const IdealPoint& eta) {
  const Vec3 u = DirectionAt(x, xi);
  const Vec3 v = DirectionAt(x, eta);
  return std::atan2(Norm(Cross(u, v)), Dot(u, v));
}

}  // namespace

std::vector<IdentityRow> VerifyIdentities(std::size_t trial_count, std::uint64_t seed) {
  if (trial_count == 0) Fail(ErrorCode::kInvalidArgument, "trial_count must be >= 1");
  std::vector<IdentityRow> rows;
  std::uint64_t stream = 0x1d00;

  auto run_row = [&](const char* name, double tol, auto&& body) {
    RowRunner row(name, trial_count, tol);
    Rng rng(seed, stream++);
    for (std::size_t t = 0; t < trial_count; ++t) {
      const int dim = (t % 2 == 0) ? 3 : 2;
      row.Trial([&] { return body(rng, dim); });
    }
    rows.push_back(row.Finish());
  };

  run_row("distance_symmetry_triangle", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim), y = RandomBall(rng, dim), z = RandomBall(rng, dim);
    const double sym = std::fabs(Distance(x, y) - Distance(y, x));
    const double tri = Distance(x, z) - Distance(x, y) - Distance(y, z);
    return std::max({sym, tri, 0.0});
  });

  run_row("comparison_triangle_equality", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim), y = RandomBall(rng, dim), z = RandomBall(rng, dim);
    const double a = Distance(x, y), b = Distance(x, z), c = Distance(y, z);
    const double u = rng.Uniform() * c;
    const BallPoint p = SegmentPoint(y, z, u);
    const double lhs = std::cosh(Distance(x, p));
    return std::fabs(lhs - StewartCosh(a, b, c, u)) / lhs;
  });

  run_row("busemann_cocycle", kIdentityTolerance, [](Rng& rng, int dim) {
    const IdealPoint xi = RandomIdeal(rng, dim);
    const BallPoint x = RandomBall(rng, dim), p = RandomBall(rng, dim), q = RandomBall(rng, dim);
    return std::fabs(Busemann(xi, x, p) + Busemann(xi, p, q) - Busemann(xi, x, q));
  });

  run_row("busemann_lipschitz", kIdentityTolerance, [](Rng& rng, int dim) {
    const IdealPoint xi = RandomIdeal(rng, dim);
    const BallPoint x = RandomBall(rng, dim), p = RandomBall(rng, dim);
    return std::max(0.0, std::fabs(Busemann(xi, x, p)) - Distance(x, p));
  });

  run_row("half_angle_visual_metric", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim);
    const IdealPoint xi = RandomIdeal(rng, dim), eta = RandomIdeal(rng, dim);
    const double theta = TangentAngle(x, xi, eta);
    const double rho = VisualMetric(x, xi, eta);
    return std::max(std::fabs(std::sin(0.5 * theta) - rho),
                    std::fabs(ComparisonAngleIdeal(x, xi, eta) - theta));
  });

  run_row("visual_metric_triangle", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim);
    const IdealPoint a = RandomIdeal(rng, dim), b = RandomIdeal(rng, dim),
                     c = RandomIdeal(rng, dim);
    return std::max(0.0, VisualMetric(x, a, c) - VisualMetric(x, a, b) - VisualMetric(x, b, c));
  });

  run_row("basepoint_change", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim), y = RandomBall(rng, dim);
    const IdealPoint xi = RandomIdeal(rng, dim), eta = RandomIdeal(rng, dim);
    return std::fabs(BasepointChange(VisualMetric(x, xi, eta), xi, eta, x, y) -
                     VisualMetric(y, xi, eta));
  });

  run_row("cross_ratio_basepoint_independence", kIdentityTolerance, [](Rng& rng, int dim) {
    const Quadruple q = RandomQuadruple(rng, dim);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < 5; ++i) {
      const double v = CrossRatio(q, RandomBall(rng, dim)).value;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return hi - lo;
  });

  run_row("cross_ratio_isometry_invariance", kIdentityTolerance, [](Rng& rng, int dim) {
    const Quadruple q = RandomQuadruple(rng, dim);
    const ModelIsometry g = RandomIsometry(rng, dim);
    const Quadruple gq(BoundaryAction(g, q.xi0()), BoundaryAction(g, q.eta0()),
                       BoundaryAction(g, q.xi1()), BoundaryAction(g, q.eta1()));
    const BallPoint o = BallPoint::Origin(dim);
    return std::fabs(CrossRatio(gq, o).value - CrossRatio(q, o).value);
  });

  run_row("isometry_slice_moebius", kIdentityTolerance, [](Rng& rng, int) {
    const Quadruple q = RandomQuadruple(rng, 2);
    const ModelIsometry g = RandomIsometry(rng, 3);
    const BoundaryMap phi = [&g](const IdealPoint& xi) {
      return BoundaryAction(g, Equatorial(xi));
    };
    return MoebiusDefect(phi, std::span<const Quadruple>(&q, 1));
  });

  run_row("distance_isometry_invariance", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim), y = RandomBall(rng, dim);
    const ModelIsometry g = RandomIsometry(rng, dim);
    return std::fabs(Distance(InteriorAction(g, x), InteriorAction(g, y)) - Distance(x, y));
  });

  run_row("busemann_equivariance", kIdentityTolerance, [](Rng& rng, int dim) {
    const IdealPoint xi = RandomIdeal(rng, dim);
    const BallPoint x = RandomBall(rng, dim), p = RandomBall(rng, dim);
    const ModelIsometry g = RandomIsometry(rng, dim);
    return std::fabs(Busemann(BoundaryAction(g, xi), InteriorAction(g, x), InteriorAction(g, p)) -
                     Busemann(xi, x, p));
  });

  run_row("visual_metric_equivariance", kIdentityTolerance, [](Rng& rng, int dim) {
    const BallPoint x = RandomBall(rng, dim);
    const IdealPoint xi = RandomIdeal(rng, dim), eta = RandomIdeal(rng, dim);
    const ModelIsometry g = RandomIsometry(rng, dim);
    return std::fabs(VisualMetric(InteriorAction(g, x), BoundaryAction(g, xi),
                                  BoundaryAction(g, eta)) -
                     VisualMetric(x, xi, eta));
  });

  run_row("isometry_group_laws", kIdentityTolerance, [](Rng& rng, int dim) {
    const ModelIsometry g = RandomIsometry(rng, dim), h = RandomIsometry(rng, dim);
    const IdealPoint xi = RandomIdeal(rng, dim);
    const BallPoint x = RandomBall(rng, dim);
    const double comp = Chordal(BoundaryAction(Compose(g, h), xi).direction(),
                                BoundaryAction(g, BoundaryAction(h, xi)).direction());
    const double inv = Chordal(BoundaryAction(g.Inverse(), BoundaryAction(g, xi)).direction(),
                               xi.direction());
    const double interior = Distance(InteriorAction(g.Inverse(), InteriorAction(g, x)), x);
    return std::max({comp, inv, interior});
  });

  run_row("triple_normalizer_interpolation", kIdentityTolerance, [](Rng& rng, int) {
    const Quadruple a = RandomQuadruple(rng, 3);
    const Quadruple b = RandomQuadruple(rng, 3);
    const std::array<IdealPoint, 3> src{a.xi0(), a.eta0(), a.xi1()};
    const std::array<IdealPoint, 3> dst{b.xi0(), b.eta0(), b.xi1()};
    const ModelIsometry g = TripleNormalizer(src, dst);
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      worst = std::max(worst,
                       Chordal(BoundaryAction(g, src[i]).direction(), dst[i].direction()));
    }
    return worst;
  });

  return rows;
}

}  // namespace hypbound
