#include "whankel/primitive.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "double_double.hpp"
#include "engine.hpp"
#include "whankel/error.hpp"

namespace whankel::primitive {

namespace {

constexpr double kResonanceExact = 1e-12;
constexpr double kResonanceNear = 1e-6;
constexpr int kMaxSeriesTerms = 100000;
// Calibrated by tools/calibrate_primitive: 1.1 x the sweep maximum of
// |g| r^{α+3/2} t^{α+1/2−ν} / max(1, C_α).
constexpr double kPrimitiveScale = 3.26;

double defect(double alpha, double nu, int level) { return nu - 2.0 * (alpha + level) - 1.0; }

// Smallest ℓ ≥ 0 (below `limit`) with |ν − 2(α+ℓ) − 1| < tol, or −1.
int resonant_level(double alpha, double nu, int limit, double tol) {
  const double x = 0.5 * (nu - 1.0) - alpha;
  const long l = std::lround(x);
  if (l < 0 || l >= limit) return -1;
  return std::fabs(defect(alpha, nu, static_cast<int>(l))) < tol ? static_cast<int>(l) : -1;
}

QuadratureConfig primitive_config(bessel::Order alpha, double nu, double r, double t) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = std::max(1e-15 * std::pow(t, nu + 1.0) * bessel::envelope(alpha, r * t), 1e-300);
  return cfg;
}

}  // namespace

ReductionExpansion reduction(bessel::Order alpha, double nu, int k, Branch branch, double last_divisor_offset) {
  if (k <= 0) fail(ErrorCode::InvalidArgument, "reduction: k must be positive");
  const double a = alpha.value();
  ReductionExpansion out;
  int level = -1;
  switch (branch) {
    case Branch::Auto:
      level = resonant_level(a, nu, k, kResonanceNear);
      break;
    case Branch::NonDegenerate:
      if (resonant_level(a, nu, k, kResonanceExact) >= 0) {
        fail(ErrorCode::InvalidArgument, "reduction: nu hits a resonance 2(alpha+l)+1; use the degenerate branch");
      }
      break;
    case Branch::Degenerate:
      level = resonant_level(a, nu, 1 << 20, kResonanceNear);
      if (level < 0) fail(ErrorCode::InvalidArgument, "reduction: nu is not of the form 2(alpha+l)+1");
      break;
  }
  if (level >= 0) {
    out.degenerate = true;
    out.level = level;
    out.defect = defect(a, nu, level);
    k = level + 1;
  }
  double c_prime = 1.0;
  for (int i = 0; i < k; ++i) {
    const bool last_degenerate = out.degenerate && i == level;
    const double divisor = 2.0 * (a + i) + (last_degenerate ? last_divisor_offset : 2.0);
    out.boundary_coeffs.push_back(c_prime / divisor);
    c_prime = -c_prime * defect(a, nu, i) / (2.0 * (a + i) + 2.0);
  }
  out.residual_coeff = out.degenerate ? 0.0 : c_prime;
  return out;
}

double boundary_sum(const ReductionExpansion& e, bessel::Order alpha, double nu, double r, double M, double N) {
  double s = 0.0;
  for (std::size_t i = 0; i < e.boundary_coeffs.size(); ++i) {
    const bessel::Order o = alpha.shifted(static_cast<double>(i + 1));
    const double upper = std::pow(N, nu + 1.0) * bessel::j(o, r * N);
    const double lower = M > 0.0 ? std::pow(M, nu + 1.0) * bessel::j(o, r * M) : 0.0;
    s += e.boundary_coeffs[i] * (upper - lower);
  }
  return s;
}

PrimitiveCase primitive_case(bessel::Order alpha, double nu) {
  const double a = alpha.value();
  if (nu == 0.0 && a == -0.5) return PrimitiveCase::ClosedFormSine;
  if (nu < a + 0.5) return PrimitiveCase::FromInfinity;
  return PrimitiveCase::FromZero;
}

double primitive(bessel::Order alpha, double nu, double r, double t) {
  return primitive(alpha, nu, r, t, primitive_case(alpha, nu));
}

double primitive(bessel::Order alpha, double nu, double r, double t, PrimitiveCase forced) {
  if (!(r > 0.0) || !(t > 0.0)) fail(ErrorCode::Domain, "primitive: need r > 0 and t > 0");
  const QuadratureConfig cfg = primitive_config(alpha, nu, r, t);
  switch (forced) {
    case PrimitiveCase::ClosedFormSine:
      if (nu != 0.0 || alpha.value() != -0.5) {
        fail(ErrorCode::InvalidArgument, "primitive: closed form needs nu = 0, alpha = -1/2");
      }
      return std::sin(r * t) / r;
    case PrimitiveCase::FromZero:
      if (!(nu > -1.0)) fail(ErrorCode::Divergent, "primitive: t^nu not integrable at 0");
      return engine::monomial_integral(alpha, nu, r, 0.0, t, cfg).value;
    case PrimitiveCase::FromInfinity:
      if (!(nu < alpha.value() + 0.5)) {
        fail(ErrorCode::NonConvergence, "primitive: integral from infinity needs nu < alpha + 1/2");
      }
      return -engine::monomial_integral(alpha, nu, r, t, functions::kInf, cfg).value;
  }
  fail(ErrorCode::InvalidArgument, "primitive: unknown case");
}

double hyp1f2_partial(double nu, bessel::Order alpha, double r, double x) {
  if (!(nu > -1.0)) fail(ErrorCode::Domain, "hyp1f2_partial: need nu > -1");
  if (!(r > 0.0) || !(x > 0.0)) fail(ErrorCode::Domain, "hyp1f2_partial: need r > 0 and x > 0");
  using detail::DoubleDouble;
  const double a = 0.5 * (nu + 1.0);
  const double b1 = 0.5 * (nu + 3.0);
  const double b2 = alpha.value() + 1.0;
  const DoubleDouble z = -(detail::two_prod(r * x, r * x) * DoubleDouble(0.25));
  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  double max_term = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const DoubleDouble num = detail::two_sum(a, n);
    const DoubleDouble den = detail::two_sum(b1, n) * detail::two_sum(b2, n) * DoubleDouble(n + 1.0);
    term = term * num * z / den;
    sum = sum + term;
    const double mag = detail::abs_hi(term);
    max_term = std::max(max_term, mag);
    if (max_term > 1e12 * std::fabs(sum.to_double())) {
      fail(ErrorCode::Cancellation, "hyp1f2_partial: alternating terms exceed 1e12 x result at rx=" +
                                        std::to_string(r * x));
    }
    if (n > 0.5 * r * x && mag < 1e-16 * std::fabs(sum.to_double())) {
      return std::pow(x, nu + 1.0) / (nu + 1.0) * sum.to_double();
    }
  }
  fail(ErrorCode::NonConvergence, "hyp1f2_partial: term cap reached");
}

double primitive_constant(bessel::Order alpha) {
  const double a = alpha.value();
  const double c_alpha = std::exp(std::lgamma(a + 1.0) + (a + 0.5) * std::log(2.0)) / std::sqrt(std::numbers::pi);
  return kPrimitiveScale * std::max(1.0, c_alpha);
}

double primitive_bound(bessel::Order alpha, double nu, double r, double t) {
  if (!(r > 0.0) || !(t > 0.0)) fail(ErrorCode::Domain, "primitive_bound: need r > 0 and t > 0");
  const double a = alpha.value();
  return primitive_constant(alpha) * std::pow(t, nu - a - 0.5) * std::pow(r, -a - 1.5);
}

}  // namespace whankel::primitive
