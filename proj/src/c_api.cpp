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

#include "hypbound/hypbound.h"

#include <array>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hypbound/boundary.hpp"
#include "hypbound/error.hpp"
#include "hypbound/isometry.hpp"
#include "hypbound/models.hpp"
#include "hypbound/scenario.hpp"

struct hb_isometry {
  hypbound::ModelIsometry g;
};

struct hb_scenario {
  hypbound::ScenarioSpec spec;
};

struct hb_report {
  hypbound::RunReport report;
  mutable std::string json;
};

struct hb_verify_table {
  std::vector<hypbound::IdentityRow> rows;
};

namespace {

using hypbound::BallPoint;
using hypbound::ErrorCode;
using hypbound::IdealPoint;
using hypbound::Vec3;

thread_local std::string g_last_error;

hb_status SetError(hb_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
hb_status Guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return HB_OK;
  } catch (const hypbound::GeometryError& e) {
    return SetError(static_cast<hb_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return SetError(HB_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return SetError(HB_INTERNAL, e.what());
  }
}

void Require(bool cond, const char* what) {
  if (!cond) hypbound::Fail(ErrorCode::kInvalidArgument, what);
}

void CheckDim(int dim) { Require(dim == 2 || dim == 3, "dim must be 2 or 3"); }

Vec3 V(const double* p) { return Vec3{p[0], p[1], p[2]}; }

BallPoint Ball(int dim, const double* p) {
  Require(p != nullptr, "null point");
  return BallPoint(dim, V(p));
}

IdealPoint Ideal(int dim, const double* p) {
  Require(p != nullptr, "null ideal point");
  return IdealPoint(dim, V(p));
}

hypbound::Quadruple Quad(int dim, const double* q) {
  Require(q != nullptr, "null quadruple");
  return hypbound::Quadruple(Ideal(dim, q), Ideal(dim, q + 3), Ideal(dim, q + 6),
                             Ideal(dim, q + 9));
}

void Store(const Vec3& v, double* out) {
  out[0] = v.x;
  out[1] = v.y;
  out[2] = v.z;
}

template <typename F>
hb_status Scalar(double* out, F&& f) {
  if (out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null output");
  return Guard([&] { *out = f(); });
}

hb_status MakeIsometry(hb_isometry** out, const std::function<hypbound::ModelIsometry()>& f) {
  if (out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null output");
  *out = nullptr;
  return Guard([&] { *out = new hb_isometry{f()}; });
}

}  // namespace

extern "C" {

const char* hb_version(void) { return "1.0.0"; }

const char* hb_status_name(hb_status status) {
  switch (status) {
    case HB_OK:
      return "Ok";
    case HB_INTERNAL:
      return "Internal";
    default:
      break;
  }
  const int v = static_cast<int>(status);
  if (v >= 1 && v <= 13) return hypbound::ErrorCodeName(static_cast<ErrorCode>(v)).data();
  return "Unknown";
}

const char* hb_last_error(void) { return g_last_error.c_str(); }

hb_status hb_distance(int dim, const double x[3], const double y[3], double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::Distance(Ball(dim, x), Ball(dim, y));
  });
}

hb_status hb_busemann(int dim, const double xi[3], const double x[3], const double p[3],
                      double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::Busemann(Ideal(dim, xi), Ball(dim, x), Ball(dim, p));
  });
}

hb_status hb_gromov_product(int dim, const double x[3], const double y[3], const double z[3],
                            double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::GromovProduct(Ball(dim, x), Ball(dim, y), Ball(dim, z));
  });
}

hb_status hb_visual_metric(int dim, const double x[3], const double xi[3], const double eta[3],
                           double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::VisualMetric(Ball(dim, x), Ideal(dim, xi), Ideal(dim, eta));
  });
}

hb_status hb_basepoint_change(int dim, double rho_x, const double xi[3], const double eta[3],
                              const double x[3], const double y[3], double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::BasepointChange(rho_x, Ideal(dim, xi), Ideal(dim, eta), Ball(dim, x),
                                     Ball(dim, y));
  });
}

hb_status hb_cross_ratio(int dim, const double quad[12], const double x[3], double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::CrossRatio(Quad(dim, quad), Ball(dim, x)).value;
  });
}

hb_status hb_cross_ratio_limit(int dim, const double quad[12], double t, double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::CrossRatioLimit(Quad(dim, quad), t);
  });
}

hb_status hb_comparison_angle(int dim, const double x[3], const double y[3], const double z[3],
                              double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::ComparisonAngle(Ball(dim, x), Ball(dim, y), Ball(dim, z));
  });
}

hb_status hb_comparison_angle_ideal(int dim, const double x[3], const double xi[3],
                                    const double eta[3], double* out) {
  return Scalar(out, [&] {
    CheckDim(dim);
    return hypbound::ComparisonAngleIdeal(Ball(dim, x), Ideal(dim, xi), Ideal(dim, eta));
  });
}

hb_status hb_isometry_create(int dim, const double matrix[8], hb_isometry** out) {
  return MakeIsometry(out, [&] {
    CheckDim(dim);
    Require(matrix != nullptr, "null matrix");
    hypbound::ModelIsometry::Matrix m;
    for (int i = 0; i < 4; ++i) m[i] = hypbound::Complex(matrix[2 * i], matrix[2 * i + 1]);
    return hypbound::ModelIsometry(dim, m);
  });
}

hb_status hb_isometry_rotation(int dim, const double axis[3], double angle, hb_isometry** out) {
  return MakeIsometry(out, [&] {
    CheckDim(dim);
    Require(axis != nullptr, "null axis");
    return hypbound::ModelIsometry::Rotation(dim, V(axis), angle);
  });
}

hb_status hb_isometry_translation(int dim, const double u[3], double length, hb_isometry** out) {
  return MakeIsometry(out, [&] {
    CheckDim(dim);
    Require(u != nullptr, "null direction");
    return hypbound::ModelIsometry::Translation(dim, V(u), length);
  });
}

hb_status hb_isometry_triple(const double src[9], const double dst[9], hb_isometry** out) {
  return MakeIsometry(out, [&] {
    Require(src != nullptr && dst != nullptr, "null triple");
    const std::array<IdealPoint, 3> a{Ideal(3, src), Ideal(3, src + 3), Ideal(3, src + 6)};
    const std::array<IdealPoint, 3> b{Ideal(3, dst), Ideal(3, dst + 3), Ideal(3, dst + 6)};
    return hypbound::TripleNormalizer(a, b);
  });
}

hb_status hb_isometry_compose(const hb_isometry* g, const hb_isometry* h, hb_isometry** out) {
  return MakeIsometry(out, [&] {
    Require(g != nullptr && h != nullptr, "null isometry");
    return hypbound::Compose(g->g, h->g);
  });
}

hb_status hb_isometry_inverse(const hb_isometry* g, hb_isometry** out) {
  return MakeIsometry(out, [&] {
    Require(g != nullptr, "null isometry");
    return g->g.Inverse();
  });
}

hb_status hb_isometry_matrix(const hb_isometry* g, double out[8]) {
  if (g == nullptr || out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  for (int i = 0; i < 4; ++i) {
    out[2 * i] = g->g.matrix()[i].real();
    out[2 * i + 1] = g->g.matrix()[i].imag();
  }
  g_last_error.clear();
  return HB_OK;
}

hb_status hb_isometry_apply_ideal(const hb_isometry* g, const double xi[3], double out[3]) {
  if (g == nullptr || out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    Store(hypbound::BoundaryAction(g->g, Ideal(g->g.dim(), xi)).direction(), out);
  });
}

hb_status hb_isometry_apply_point(const hb_isometry* g, const double x[3], double out[3]) {
  if (g == nullptr || out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  return Guard([&] { Store(hypbound::InteriorAction(g->g, Ball(g->g.dim(), x)).coords(), out); });
}

void hb_isometry_destroy(hb_isometry* g) { delete g; }

hb_status hb_scenario_create(const char* kind, uint64_t seed, size_t k_max, double decay_rate,
                             hb_scenario** out) {
  if (out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null output");
  *out = nullptr;
  return Guard([&] {
    Require(kind != nullptr, "null scenario kind");
    const auto parsed = hypbound::ParseScenarioKind(kind);
    if (!parsed) {
      hypbound::Fail(ErrorCode::kInvalidArgument, std::string("unknown scenario kind: ") + kind);
    }
    hypbound::ScenarioSpec spec;
    spec.kind = *parsed;
    spec.seed = seed;
    spec.k_max = k_max;
    spec.decay_rate = decay_rate;
    spec.Validate();
    *out = new hb_scenario{spec};
  });
}

hb_status hb_scenario_set_anchors(hb_scenario* s, const double angles[3]) {
  if (s == nullptr || angles == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  return Guard([&] {
    hypbound::ScenarioSpec spec = s->spec;
    spec.anchor_angles = {angles[0], angles[1], angles[2]};
    spec.Validate();
    s->spec = spec;
  });
}

void hb_scenario_destroy(hb_scenario* s) { delete s; }

hb_status hb_scenario_run(const hb_scenario* s, size_t sample_count, const char* out_dir,
                          hb_report** out) {
  if (s == nullptr || out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return Guard([&] {
    hypbound::RunReport report =
        out_dir != nullptr ? hypbound::Run(s->spec, sample_count, out_dir)
                           : hypbound::Execute(s->spec, sample_count).report;
    *out = new hb_report{std::move(report), {}};
  });
}

hb_status hb_report_summary(const hb_report* r, hb_run_summary* out) {
  if (r == nullptr || out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null argument");
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  const hypbound::RunReport& rep = r->report;
  hb_run_summary s{};
  s.sample_count = rep.sample_count;
  s.all_converged = rep.all_converged ? 1 : 0;
  s.max_final_gap = rep.samples.empty() ? kNaN : 0.0;
  s.max_reference_gap = s.max_final_gap;
  bool any_error = rep.error_code.has_value();
  for (const hypbound::SampleSummary& sample : rep.samples) {
    if (sample.converged) ++s.converged_count;
    s.max_final_gap = sample.final_gap ? std::fmax(s.max_final_gap, *sample.final_gap) : kNaN;
    s.max_reference_gap =
        sample.reference_gap ? std::fmax(s.max_reference_gap, *sample.reference_gap) : kNaN;
    s.max_sandwich_excess = std::fmax(s.max_sandwich_excess, sample.max_sandwich_excess);
    s.max_angle_deficit = std::fmax(s.max_angle_deficit, sample.max_angle_deficit);
    any_error = any_error || sample.error_code.has_value();
  }
  s.limit_moebius_defect = rep.limit_moebius_defect.value_or(kNaN);
  s.fit_residual = rep.fit_residual.value_or(kNaN);
  s.divergence_checked = rep.divergence_checked ? 1 : 0;
  s.diverged_without_normalization = rep.diverged_without_normalization ? 1 : 0;
  s.has_error = any_error ? 1 : 0;
  s.passed = rep.passed ? 1 : 0;
  s.elapsed_seconds = rep.elapsed_seconds;
  *out = s;
  g_last_error.clear();
  return HB_OK;
}

const char* hb_report_json(const hb_report* r, int include_timing) {
  if (r == nullptr) return nullptr;
  r->json = hypbound::ReportToJson(r->report, include_timing != 0);
  return r->json.c_str();
}

void hb_report_destroy(hb_report* r) { delete r; }

hb_status hb_verify_identities(size_t trials, uint64_t seed, hb_verify_table** out) {
  if (out == nullptr) return SetError(HB_INVALID_ARGUMENT, "null output");
  *out = nullptr;
  return Guard([&] { *out = new hb_verify_table{hypbound::VerifyIdentities(trials, seed)}; });
}

size_t hb_verify_row_count(const hb_verify_table* t) { return t == nullptr ? 0 : t->rows.size(); }

hb_status hb_verify_row(const hb_verify_table* t, size_t index, const char** name,
                        double* worst_error, double* tolerance, int* passed) {
  if (t == nullptr || index >= t->rows.size()) {
    return SetError(HB_INVALID_ARGUMENT, "row index out of range");
  }
  const hypbound::IdentityRow& row = t->rows[index];
  if (name != nullptr) *name = row.name.c_str();
  if (worst_error != nullptr) *worst_error = row.worst_error;
  if (tolerance != nullptr) *tolerance = row.tolerance;
  if (passed != nullptr) *passed = row.passed ? 1 : 0;
  g_last_error.clear();
  return HB_OK;
}

void hb_verify_destroy(hb_verify_table* t) { delete t; }

}  // extern "C"
