#pragma once

#include <vector>

#include "whankel/bessel.hpp"
#include "whankel/config.hpp"
#include "whankel/functions.hpp"

namespace whankel::transform {

// μ+ν = 0; 0 < μ+ν ≤ α+3/2; μ+ν < 0; μ+ν > α+3/2
enum class Regime { CosineType, SineType, BelowStrip, AboveStrip };

const char* to_string(Regime regime) noexcept;

// (α, ν, μ) of r^μ ∫ (rt)^ν f(t) j_α(rt) dt.
class TransformParams {
 public:
  TransformParams(double alpha, double nu, double mu);

  bessel::Order order() const { return order_; }
  double alpha() const { return order_.value(); }
  double nu() const { return nu_; }
  double mu() const { return mu_; }
  // μ + ν, the power of r in front of the integral
  double weight() const { return mu_ + nu_; }
  Regime regime() const;
  // μ+ν = α+1/2: the kernel is bounded uniformly in (r, t)
  bool bounded_kernel_line() const;

 private:
  bessel::Order order_;
  double nu_;
  double mu_;
};

TransformParams cosine_params();                  // cos(rt)
TransformParams sine_params();                    // sin(rt)
TransformParams hankel_params(double alpha);      // ν = 2α+1, μ = −(2α+1)
TransformParams radial_fourier_params(int dim);  // Hankel with α = d/2 − 1

struct PartialIntegral {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long panels_used = 0;
  bool error_flag = false;  // tolerance not reached
};

// r^μ (rt)^ν j_α(rt). At r = 0: t^ν when μ+ν = 0, 0 when μ+ν > 0,
// Domain error when μ+ν < 0.
double kernel(const TransformParams& p, double t, double r);

// r^μ ∫_M^N (rt)^ν f(t) j_α(rt) dt for r > 0, 0 ≤ M < N; N may be ∞.
PartialIntegral partial_transform(const TransformParams& p, const functions::TestFunction& f, double r,
                                  double M, double N, const QuadratureConfig& cfg = {});

// |partial_transform|; 0 when M = N.
double cauchy_remainder(const TransformParams& p, const functions::TestFunction& f, double r, double M,
                        double N, const QuadratureConfig& cfg = {});

enum class TailPolicy {
  Accelerated,  // oscillatory tail by integration by parts
  Dyadic,       // partial sums over N = 2^k N0 with a Cauchy stop
};

// Value at the origin, by the sign of μ+ν.
enum class OriginCase { NotAtOrigin, Undefined, MomentIntegral, Zero };

struct Evaluation {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  bool converged = false;
  long panels_used = 0;
  OriginCase origin = OriginCase::NotAtOrigin;
  std::vector<double> dyadic_N;    // right ends of the dyadic blocks (Dyadic policy)
  std::vector<double> increments;  // transform over each block
};

// Throws Domain for r = 0 in the BelowStrip regime, Divergent when the
// integral is certified divergent and NonConvergence when the dyadic
// Cauchy test fails.
Evaluation evaluate(const TransformParams& p, const functions::TestFunction& f, double r,
                    const QuadratureConfig& cfg = {}, TailPolicy policy = TailPolicy::Accelerated);

// H_α f(y) = 2π^{α+1}/Γ(α+1) · evaluate(hankel_params(α), f, 2πy)
Evaluation hankel_transform(double alpha, const functions::TestFunction& f, double y,
                            const QuadratureConfig& cfg = {});

// ∫_a^b t^w f(t) dt (no Bessel factor); b may be ∞.
PartialIntegral weighted_integral(const functions::TestFunction& f, double w, double a, double b,
                                  const QuadratureConfig& cfg = {});

}  // namespace whankel::transform
