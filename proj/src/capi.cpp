#include <cmath>
#include <new>
#include <string>

#include "report.hpp"
#include "whankel/bessel.hpp"
#include "whankel/diagnostics.hpp"
#include "whankel/error.hpp"
#include "whankel/gallery.hpp"
#include "whankel/transform.hpp"
#include "whankel/whankel.h"

using namespace whankel;

struct wh_function {
  std::string spec;
  functions::TestFunction f;
};

struct wh_report {
  report::Document doc;
  wh_outcome outcome = WH_PASS;
};

namespace {

thread_local std::string last_error;

template <class F>
wh_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return WH_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<wh_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return WH_INTERNAL;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

transform::TransformParams params_of(const wh_params* p) {
  require(p != nullptr, "params must not be null");
  return {p->alpha, p->nu, p->mu};
}

QuadratureConfig quadrature_of(const wh_options* o) {
  QuadratureConfig c;
  if (o) {
    c.rel_tol = o->rel_tol;
    c.abs_tol = o->abs_tol;
    c.max_panels = o->max_panels;
  }
  c.validate();
  return c;
}

diagnostics::ScanConfig scan_of(const wh_scan_grid* g, const wh_options* o) {
  diagnostics::ScanConfig s;
  if (g) {
    s.r_min = g->r_min;
    s.r_max = g->r_max;
    s.r_points = g->r_points;
    s.m_k_min = g->m_k_min;
    s.m_k_max = g->m_k_max;
  }
  s.quadrature = quadrature_of(o);
  if (o) s.threads = o->threads;
  return s;
}

diagnostics::DiagnosticsConfig diagnostics_of(const wh_options* o) {
  diagnostics::DiagnosticsConfig d;
  d.quadrature = quadrature_of(o);
  return d;
}

report::Status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Divergent: return report::Status::Divergent;
    case ErrorCode::NonConvergence:
    case ErrorCode::Budget: return report::Status::NonConvergence;
    default: return report::Status::Failed;
  }
}

// Errors that describe the numbers rather than the request.
bool numeric(ErrorCode c) {
  return c == ErrorCode::Divergent || c == ErrorCode::NonConvergence || c == ErrorCode::Budget ||
         c == ErrorCode::Overflow || c == ErrorCode::Cancellation;
}

const functions::TestFunction& function_of(const wh_function* f) {
  require(f != nullptr, "function must not be null");
  return f->f;
}

wh_status emit(wh_report** out, report::Document doc, wh_outcome outcome = WH_PASS) {
  require(out != nullptr, "output pointer must not be null");
  *out = new wh_report{std::move(doc), outcome};
  return WH_OK;
}

}  // namespace

extern "C" {

const char* wh_version(void) { return "1.0.0"; }

const char* wh_last_error(void) { return last_error.c_str(); }

const char* wh_status_name(wh_status s) {
  if (s == WH_OK) return "ok";
  if (s == WH_INTERNAL) return "internal";
  return to_string(static_cast<ErrorCode>(s));
}

void wh_options_default(wh_options* out) {
  if (!out) return;
  const QuadratureConfig q;
  *out = {q.rel_tol, q.abs_tol, q.max_panels, 0};
}

void wh_scan_grid_default(wh_scan_grid* out) {
  if (!out) return;
  const diagnostics::ScanConfig s;
  *out = {s.r_min, s.r_max, s.r_points, s.m_k_min, s.m_k_max};
}

wh_status wh_function_create(const char* spec, const wh_params* params, wh_function** out) {
  return guard([&] {
    require(spec != nullptr && out != nullptr, "spec and output pointer must not be null");
    require(params != nullptr, "params must not be null");
    functions::TestFunction f = functions::gallery_from_spec(spec, params->alpha, params->nu, params->mu);
    *out = new wh_function{spec, std::move(f)};
  });
}

void wh_function_destroy(wh_function* f) { delete f; }

wh_status wh_function_value(const wh_function* f, double t, double* out) {
  return guard([&] {
    require(out != nullptr, "output pointer must not be null");
    *out = function_of(f).value(t);
  });
}

wh_status wh_bessel_j(double alpha, double z, double* out) {
  return guard([&] {
    require(out != nullptr, "output pointer must not be null");
    *out = bessel::j(bessel::Order(alpha), z);
  });
}

wh_status wh_kernel(const wh_params* params, double t, double r, double* out) {
  return guard([&] {
    require(out != nullptr, "output pointer must not be null");
    *out = transform::kernel(params_of(params), t, r);
  });
}

wh_status wh_evaluate(const wh_params* params, const wh_function* f, double r, wh_tail_policy policy,
                      const wh_options* opts, double* value, double* abs_error) {
  return guard([&] {
    require(value != nullptr, "output pointer must not be null");
    const auto tp = policy == WH_TAIL_DYADIC ? transform::TailPolicy::Dyadic : transform::TailPolicy::Accelerated;
    const transform::Evaluation e = transform::evaluate(params_of(params), function_of(f), r, quadrature_of(opts), tp);
    *value = e.value;
    if (abs_error) *abs_error = e.abs_error_estimate;
  });
}

wh_status wh_partial(const wh_params* params, const wh_function* f, double r, double M, double N,
                     const wh_options* opts, double* value, double* abs_error) {
  return guard([&] {
    require(value != nullptr, "output pointer must not be null");
    const transform::PartialIntegral I =
        transform::partial_transform(params_of(params), function_of(f), r, M, N, quadrature_of(opts));
    *value = I.value;
    if (abs_error) *abs_error = I.abs_error_estimate;
  });
}

wh_status wh_report_eval(const wh_params* params, const wh_function* f, double r, wh_tail_policy policy,
                         const wh_options* opts, wh_report** out) {
  return guard([&] {
    const transform::TransformParams p = params_of(params);
    const auto tp = policy == WH_TAIL_DYADIC ? transform::TailPolicy::Dyadic : transform::TailPolicy::Accelerated;
    report::EvalResult res;
    try {
      res.evaluation = transform::evaluate(p, function_of(f), r, quadrature_of(opts), tp);
    } catch (const Error& e) {
      if (!numeric(e.code())) throw;
      res.status = status_of(e.code());
      res.message = e.what();
    }
    emit(out, report::eval_document({"eval", f->spec, &p}, r, tp, res));
  });
}

wh_status wh_report_remainder(const wh_params* params, const wh_function* f, double r, double M, double N,
                              const wh_options* opts, wh_report** out) {
  return guard([&] {
    const transform::TransformParams p = params_of(params);
    report::PartialResult res;
    try {
      res.integral = transform::partial_transform(p, function_of(f), r, M, N, quadrature_of(opts));
    } catch (const Error& e) {
      if (!numeric(e.code())) throw;
      res.status = status_of(e.code());
      res.message = e.what();
    }
    emit(out, report::remainder_document({"remainder", f->spec, &p}, r, M, N, res));
  });
}

wh_status wh_report_scan(const wh_params* params, const wh_function* f, const wh_scan_grid* grid,
                         const wh_options* opts, wh_report** out) {
  return guard([&] {
    const transform::TransformParams p = params_of(params);
    const diagnostics::ScanConfig cfg = scan_of(grid, opts);
    const diagnostics::RemainderScanReport rep = diagnostics::uniform_scan(p, function_of(f), cfg);
    emit(out, report::scan_document({"scan", f->spec, &p}, cfg, rep));
  });
}

wh_status wh_report_check(const char* theorem, const wh_params* params, const wh_function* f,
                          const wh_options* opts, wh_report** out) {
  return guard([&] {
    require(theorem != nullptr, "theorem id must not be null");
    const transform::TransformParams p = params_of(params);
    const diagnostics::ConditionReport rep =
        diagnostics::check_hypotheses(theorem, p, function_of(f), diagnostics_of(opts));
    emit(out, report::check_document({"check", f->spec, &p}, rep));
  });
}

wh_status wh_report_verify(const char* theorem, const wh_params* params, const wh_function* f,
                           const wh_scan_grid* grid, const wh_options* opts, wh_report** out) {
  return guard([&] {
    require(theorem != nullptr, "theorem id must not be null");
    const transform::TransformParams p = params_of(params);
    const diagnostics::ScanConfig cfg = scan_of(grid, opts);
    const diagnostics::VerifyReport rep =
        diagnostics::verify_theorem(theorem, p, function_of(f), diagnostics_of(opts), cfg);
    wh_outcome outcome = WH_INCONCLUSIVE;
    if (rep.verdict == diagnostics::TheoremVerdict::Pass) outcome = WH_PASS;
    if (rep.verdict == diagnostics::TheoremVerdict::Fail) outcome = WH_FAIL;
    emit(out, report::verify_document({"verify", f->spec, &p}, cfg, rep), outcome);
  });
}

wh_status wh_report_gm(const wh_function* f, double lambda, int k_min, int k_max, wh_report** out) {
  return guard([&] {
    require(k_max >= k_min, "gm: need k_max >= k_min");
    const functions::GMReport rep = functions::gm_check(function_of(f), lambda, functions::dyadic_grid(k_min, k_max));
    emit(out, report::gm_document({"gm", f->spec, nullptr}, rep));
  });
}

wh_status wh_report_gallery(wh_report** out) {
  return guard([&] { emit(out, report::gallery_document()); });
}

const char* wh_report_json(const wh_report* r) { return r ? r->doc.json.c_str() : ""; }

const char* wh_report_csv(const wh_report* r) { return r ? r->doc.csv.c_str() : ""; }

wh_outcome wh_report_outcome(const wh_report* r) { return r ? r->outcome : WH_INCONCLUSIVE; }

void wh_report_destroy(wh_report* r) { delete r; }

}  // extern "C"
