#include "whankel/transform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "engine.hpp"
#include "whankel/error.hpp"

namespace whankel::transform {

namespace {

constexpr double kRegimeTol = 1e-12;
constexpr int kMaxDoublings = 200;

QuadratureConfig scaled_config(const QuadratureConfig& cfg, double scale) {
  QuadratureConfig c = cfg;
  if (scale > 0.0 && std::isfinite(scale)) c.abs_tol = std::max(cfg.abs_tol / scale, 1e-300);
  return c;
}

double prefactor(const TransformParams& p, double r) {
  const double s = std::pow(r, p.weight());
  if (!std::isfinite(s) || (s == 0.0 && p.weight() != 0.0)) {
    fail(ErrorCode::Overflow, "r^(mu+nu) not representable at r=" + std::to_string(r));
  }
  return s;
}

}  // namespace

const char* to_string(Regime regime) noexcept {
  switch (regime) {
    case Regime::CosineType: return "cosine_type";
    case Regime::SineType: return "sine_type";
    case Regime::BelowStrip: return "below_strip";
    case Regime::AboveStrip: return "above_strip";
  }
  return "unknown";
}

TransformParams::TransformParams(double alpha, double nu, double mu) : order_(alpha), nu_(nu), mu_(mu) {
  if (!std::isfinite(nu) || !std::isfinite(mu)) fail(ErrorCode::InvalidArgument, "nu and mu must be finite");
}

Regime TransformParams::regime() const {
  const double s = weight();
  if (std::fabs(s) <= kRegimeTol) return Regime::CosineType;
  if (s < 0.0) return Regime::BelowStrip;
  if (s <= alpha() + 1.5 + kRegimeTol) return Regime::SineType;
  return Regime::AboveStrip;
}

bool TransformParams::bounded_kernel_line() const { return std::fabs(weight() - alpha() - 0.5) <= kRegimeTol; }

TransformParams cosine_params() { return {-0.5, 0.0, 0.0}; }
TransformParams sine_params() { return {0.5, 1.0, 0.0}; }
TransformParams hankel_params(double alpha) { return {alpha, 2.0 * alpha + 1.0, -(2.0 * alpha + 1.0)}; }

TransformParams radial_fourier_params(int dim) {
  if (dim < 1) fail(ErrorCode::InvalidArgument, "radial_fourier_params: dimension must be >= 1");
  return hankel_params(0.5 * dim - 1.0);
}

double kernel(const TransformParams& p, double t, double r) {
  if (!(t > 0.0)) fail(ErrorCode::Domain, "kernel: t must be positive");
  if (!(r >= 0.0)) fail(ErrorCode::Domain, "kernel: r must be >= 0");
  if (r == 0.0) {
    switch (p.regime()) {
      case Regime::BelowStrip: fail(ErrorCode::Domain, "kernel: r = 0 with mu + nu < 0");
      case Regime::CosineType: return std::pow(t, p.nu());
      default: return 0.0;
    }
  }
  return std::pow(r, p.mu()) * std::pow(r * t, p.nu()) * bessel::j(p.order(), r * t);
}

PartialIntegral partial_transform(const TransformParams& p, const functions::TestFunction& f, double r, double M,
                                  double N, const QuadratureConfig& cfg) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorCode::Domain, "partial_transform: r must be positive");
  if (!(M >= 0.0) || !(N > M)) fail(ErrorCode::InvalidArgument, "partial_transform: need 0 <= M < N");
  const double scale = prefactor(p, r);
  const engine::Integral I =
      engine::bessel_integral(f, p.order(), p.nu(), r, M, N, scaled_config(cfg, scale));
  PartialIntegral out;
  out.value = scale * I.value;
  out.abs_error_estimate = scale * I.error;
  out.panels_used = I.panels;
  out.error_flag = !I.converged;
  return out;
}

double cauchy_remainder(const TransformParams& p, const functions::TestFunction& f, double r, double M, double N,
                        const QuadratureConfig& cfg) {
  if (M == N) return 0.0;
  if (!(M > 0.0)) fail(ErrorCode::InvalidArgument, "cauchy_remainder: need 0 < M");
  return std::fabs(partial_transform(p, f, r, M, N, cfg).value);
}

PartialIntegral weighted_integral(const functions::TestFunction& f, double w, double a, double b,
                                  const QuadratureConfig& cfg) {
  const engine::Integral I = engine::bessel_integral(f, bessel::Order(0.0), w, 0.0, a, b, cfg);
  return {I.value, I.error, I.panels, !I.converged};
}

Evaluation evaluate(const TransformParams& p, const functions::TestFunction& f, double r,
                    const QuadratureConfig& cfg, TailPolicy policy) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorCode::Domain, "evaluate: r must be finite and >= 0");
  Evaluation out;
  if (r == 0.0) {
    switch (p.regime()) {
      case Regime::BelowStrip:
        fail(ErrorCode::Domain, "evaluate: transform undefined at r = 0 when mu + nu < 0");
      case Regime::CosineType: {
        out.origin = OriginCase::MomentIntegral;
        const PartialIntegral I = weighted_integral(f, p.nu(), 0.0, functions::kInf, cfg);
        out.value = I.value;
        out.abs_error_estimate = I.abs_error_estimate;
        out.panels_used = I.panels_used;
        out.converged = !I.error_flag;
        return out;
      }
      default:
        out.origin = OriginCase::Zero;
        out.converged = true;
        return out;
    }
  }
  if (policy == TailPolicy::Accelerated) {
    const PartialIntegral I = partial_transform(p, f, r, 0.0, functions::kInf, cfg);
    out.value = I.value;
    out.abs_error_estimate = I.abs_error_estimate;
    out.panels_used = I.panels_used;
    out.converged = !I.error_flag;
    return out;
  }
  double N = std::max({1.0, f.has_rule() ? 1.0 : f.last_breakpoint(), bessel::z_switch(p.order()) / r});
  PartialIntegral head = partial_transform(p, f, r, 0.0, N, cfg);
  out.value = head.value;
  out.abs_error_estimate = head.abs_error_estimate;
  out.panels_used = head.panels_used;
  int small = 0;
  for (int k = 0; k < kMaxDoublings; ++k) {
    const PartialIntegral inc = partial_transform(p, f, r, N, 2.0 * N, cfg);
    N *= 2.0;
    out.value += inc.value;
    out.abs_error_estimate += inc.abs_error_estimate;
    out.panels_used += inc.panels_used;
    out.dyadic_N.push_back(N);
    out.increments.push_back(inc.value);
    small = std::fabs(inc.value) <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value)) ? small + 1 : 0;
    if (small >= 3) {
      out.converged = true;
      return out;
    }
  }
  fail(ErrorCode::NonConvergence, "evaluate: dyadic Cauchy test failed after " + std::to_string(kMaxDoublings) +
                                      " doublings");
}

Evaluation hankel_transform(double alpha, const functions::TestFunction& f, double y, const QuadratureConfig& cfg) {
  if (!(y >= 0.0)) fail(ErrorCode::Domain, "hankel_transform: y must be >= 0");
  const double c = 2.0 * std::pow(std::numbers::pi, alpha + 1.0) / std::tgamma(alpha + 1.0);
  Evaluation e = evaluate(hankel_params(alpha), f, 2.0 * std::numbers::pi * y, cfg);
  e.value *= c;
  e.abs_error_estimate *= c;
  for (double& v : e.increments) v *= c;
  return e;
}

}  // namespace whankel::transform
