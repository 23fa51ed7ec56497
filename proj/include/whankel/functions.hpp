#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "whankel/config.hpp"

namespace whankel::functions {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Osc { None, Sine, Cosine };

// coef · t^p · (log κt)^q · exp(−a t^b) · osc(ω t)
struct Term {
  double coef = 1.0;
  double power = 0.0;
  double log_power = 0.0;
  double log_scale = 1.0;
  double exp_rate = 0.0;
  double exp_power = 1.0;
  Osc osc = Osc::None;
  double frequency = 0.0;

  // Everything except the oscillating factor.
  double smooth(double t) const;
  double smooth_derivative(double t) const;
  double value(double t) const;
  double derivative(double t) const;
  // c with osc(ωt) = Re[c e^{iωt}]; 1 when there is no oscillation.
  std::complex<double> phase() const;
  double omega() const { return osc == Osc::None ? 0.0 : frequency; }
  bool decays_exponentially() const { return exp_rate > 0.0 && exp_power > 0.0; }
};

struct Expr {
  std::vector<Term> terms;

  double value(double t) const;
  double derivative(double t) const;
  bool oscillates() const;
};

// Expr on [a, b); b may be infinite.
struct Piece {
  double a;
  double b;
  Expr expr;
};

struct Jump {
  double location;
  double size;  // right limit minus left limit
};

// f(t) = t^{power} on [c_n, c_n + ε_n], n ≥ 1, zero elsewhere, with
// c_n = base^n and ε_n = eps_scale · base^{−nβ}. Dilation by s maps the
// pieces to [c_n/s, (c_n + ε_n)/s].
struct SpikeRule {
  double base = 2.0;
  double beta = 0.0;
  double eps_scale = 1.0;
  double power = 0.0;
  double coef = 1.0;
  double dilation = 1.0;

  double center(int n) const;
  double width(int n) const;
};

// Growth of |g| at infinity: about t^power (log t)^log_power, or faster
// than any power when exponential.
struct Growth {
  double power = -kInf;
  double log_power = 0.0;
  bool vanishes = true;  // identically zero or exponentially small
};

// Piecewise-smooth function on (0, ∞). Points not covered by any piece are
// zeros of f. pieces are sorted and non-overlapping.
class TestFunction {
 public:
  TestFunction(std::string label, double domain_start, std::vector<Piece> pieces);
  TestFunction(std::string label, double domain_start, SpikeRule rule);

  const std::string& label() const { return label_; }
  double domain_start() const { return domain_start_; }
  bool has_rule() const { return rule_.has_value(); }
  const std::optional<SpikeRule>& rule() const { return rule_; }

  double value(double t) const;
  // Derivative of the smooth part; 0 off the pieces.
  double derivative(double t) const;

  // Pieces clipped to [A, B]; for rule-based functions B must be finite.
  std::vector<Piece> pieces_in(double A, double B) const;
  // Jump discontinuities located in (A, B].
  std::vector<Jump> jumps_in(double A, double B) const;
  // Behaviour t^{power}(log)^{log_power} of f near 0 (vanishes if f ≡ 0 there).
  Growth head() const;
  // Behaviour of |f| and |f'| at infinity; unavailable for rule-based f.
  Growth tail() const;
  Growth tail_derivative() const;
  // Largest finite breakpoint of the piece list (0 for rule-based f).
  double last_breakpoint() const;

  TestFunction scaled(double c) const;
  // t ↦ f(s t)
  TestFunction dilated(double s) const;
  TestFunction plus(const TestFunction& other) const;

 private:
  std::string label_;
  double domain_start_;
  std::vector<Piece> pieces_;
  std::optional<SpikeRule> rule_;
};

// ∫_A^B t^w |f'(t)| dt + Σ_{x ∈ (A,B]} x^w |jump(x)|.
double variation_integral(const TestFunction& f, double w, double A, double B);

struct TailIntegral {
  double value = 0.0;        // ∫_x^∞ t^ν f(t) dt
  double error = 0.0;
  double head = 0.0;         // ∫_0^x t^ν f(t) dt
  double head_error = 0.0;
  bool head_defined = true;  // false if t^ν f is not integrable at 0
};

TailIntegral tail_integral(const TestFunction& f, double nu, double x,
                           const QuadratureConfig& cfg = {});

enum class GMVerdict { Consistent, Violated };

struct GMReport {
  double lambda = 2.0;
  std::vector<std::pair<double, double>> ratio_samples;  // (x, ratio)
  GMVerdict verdict = GMVerdict::Consistent;
  double sup_ratio = 0.0;
  // sup over the grid of |f(x)| · x / ∫_{x/λ}^{λx} |f|
  double pointwise_constant = 0.0;
};

GMReport gm_check(const TestFunction& f, double lambda, const std::vector<double>& x_grid);
// Dyadic grid 2^k, k = k_min..k_max.
std::vector<double> dyadic_grid(int k_min, int k_max);

// ∫_A^B |f(t)| t^w dt, needed by the GM check and integrability tests.
double weighted_abs_integral(const TestFunction& f, double w, double A, double B);

}  // namespace whankel::functions
