#pragma once

#include <vector>

#include "whankel/bessel.hpp"

namespace whankel::primitive {

// ∫_M^N t^ν j_α(rt) dt = Σ_i C_i [t^{ν+1} j_{α+i}(rt)]_M^N + C'_k ∫_M^N t^ν j_{α+k}(rt) dt
struct ReductionExpansion {
  std::vector<double> boundary_coeffs;  // C_1 .. C_k
  double residual_coeff = 0.0;          // C'_k; 0 in the degenerate case
  bool degenerate = false;
  int level = -1;        // ℓ with ν = 2(α+ℓ)+1 when degenerate
  double defect = 0.0;   // ν − 2(α+ℓ) − 1 at that level
};

enum class Branch {
  Auto,           // degenerate iff ν is within 1e-6 of a resonance
  NonDegenerate,  // rejects ν within 1e-12 of a resonance
  Degenerate,     // requires ν within 1e-6 of a resonance
};

// Throws InvalidArgument for k ≤ 0 or a branch/ν mismatch. In the
// degenerate branch k is clamped to ℓ+1 and the last boundary coefficient
// is C'_ℓ / (2(α+ℓ) + last_divisor_offset); the identity holds for offset 2.
ReductionExpansion reduction(bessel::Order alpha, double nu, int k, Branch branch = Branch::Auto,
                             double last_divisor_offset = 2.0);

// Boundary sum of the expansion over [M, N].
double boundary_sum(const ReductionExpansion& e, bessel::Order alpha, double nu, double r, double M, double N);

enum class PrimitiveCase { FromZero, FromInfinity, ClosedFormSine };

PrimitiveCase primitive_case(bessel::Order alpha, double nu);

// g(t) = ∫_0^t s^ν j_α(rs) ds (FromZero), −∫_t^∞ s^ν j_α(rs) ds
// (FromInfinity) or sin(rt)/r (ν = 0, α = −1/2).
double primitive(bessel::Order alpha, double nu, double r, double t);
// Forces a case; FromInfinity with ν ≥ α+1/2 raises NonConvergence.
double primitive(bessel::Order alpha, double nu, double r, double t, PrimitiveCase forced);

// ∫_0^x t^ν j_α(rt) dt from x^{ν+1}/(ν+1) ₁F₂((ν+1)/2; (ν+3)/2, α+1; −(rx)²/4).
// Raises Cancellation once a term exceeds 1e12 times the result.
double hyp1f2_partial(double nu, bessel::Order alpha, double r, double x);

// K_prim(α) with |g(t)| ≤ K_prim t^{ν−α−1/2} r^{−α−3/2}.
double primitive_constant(bessel::Order alpha);
double primitive_bound(bessel::Order alpha, double nu, double r, double t);

}  // namespace whankel::primitive
