#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "whankel/error.hpp"
#include "whankel/functions.hpp"

namespace whankel::functions {

namespace {

using std::numbers::pi;

// Half-periods integrated segment by segment before switching to the
// period-averaged model of |g|.
constexpr double kNumericHalfPeriods = 8192.0;
// Beyond this multiple of the piece start, a non-oscillating g is assumed
// to have no further sign changes.
constexpr double kScanSpan = 1048576.0;

double max_frequency(const Expr& e) {
  double w = 0.0;
  for (const Term& t : e.terms)
    if (t.coef != 0.0) w = std::max(w, std::fabs(t.omega()));
  return w;
}

double gk(const std::function<double(double)>& g, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
  double err = 0.0;
  double l1 = 0.0;
  // Far from the origin the argument rounding alone puts |K − G| near
  // 1e−13, so the acceptance threshold cannot be much tighter than this.
  const double v = GK::integrate(g, a, b, 0, 1e-10, &err, &l1);
  if (err <= 1e-10 * l1) return v;
  return GK::integrate(g, a, b, 15, 1e-10, &err);
}

double tail_exp_sinh(const std::function<double(double)>& g, double a) {
  boost::math::quadrature::exp_sinh<double> integrator(12);
  auto safe = [&](double t) {
    const double v = g(t);
    return std::isfinite(v) ? v : 0.0;
  };
  double err = 0.0;
  double l1 = 0.0;
  return integrator.integrate(safe, a, std::numeric_limits<double>::infinity(), 1e-12, &err, &l1);
}

// ∫_a^b t^w |g(t)| dt for smooth g, splitting at sign changes found on a
// grid fine enough to resolve the oscillation.
double abs_smooth(const std::function<double(double)>& g, double w, double a, double b, double omega) {
  auto weighted = [&](double t) { return std::pow(t, w) * std::fabs(g(t)); };
  std::vector<double> cuts{a};
  double prev_t = a;
  double prev_v = g(a);
  double next_cut = 2.0 * a;
  const double osc_step = omega > 0.0 ? pi / (3.0 * omega) : std::numeric_limits<double>::infinity();
  while (prev_t < b) {
    const double step = std::min(0.05 * prev_t, osc_step);
    const double t = std::min(b, prev_t + step);
    const double v = g(t);
    if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
      boost::math::tools::eps_tolerance<double> tol(50);
      std::uintmax_t iters = 100;
      const auto root = boost::math::tools::toms748_solve(g, prev_t, t, prev_v, v, tol, iters);
      cuts.push_back(0.5 * (root.first + root.second));
    }
    if (t >= next_cut && t < b) {
      cuts.push_back(t);
      next_cut = 2.0 * t;
    }
    prev_t = t;
    prev_v = v;
  }
  cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i]) sum += gk(weighted, cuts[i], cuts[i + 1]);
  }
  return sum;
}

// Split of g = P + Re[H e^{iωt}] into non-oscillating and oscillating parts.
struct Envelope {
  double p;
  std::complex<double> h;
};

Envelope envelope_of(const Expr& e, bool derivative, double t) {
  Envelope env{0.0, 0.0};
  for (const Term& term : e.terms) {
    if (term.osc == Osc::None || term.frequency == 0.0) {
      env.p += derivative ? term.derivative(t) : term.value(t);
      continue;
    }
    const double g = term.smooth(t);
    const std::complex<double> c = term.phase();
    if (derivative) {
      env.h += c * std::complex<double>(term.smooth_derivative(t), term.frequency * g);
    } else {
      env.h += c * g;
    }
  }
  return env;
}

// Mean over θ of |p + R cos θ|.
double mean_abs(double p, double r) {
  p = std::fabs(p);
  if (p >= r) return p;
  return 2.0 / pi * (std::sqrt(r * r - p * p) + p * std::asin(p / r));
}

void check_single_frequency(const Expr& e) {
  double w = 0.0;
  for (const Term& t : e.terms) {
    if (t.coef == 0.0 || t.omega() == 0.0) continue;
    if (w != 0.0 && std::fabs(t.omega()) != w) {
      fail(ErrorCode::Unsupported, "averaged variation model needs a single frequency per piece");
    }
    w = std::fabs(t.omega());
  }
}

double piece_abs(const Expr& e, bool derivative, double w, double a, double b) {
  auto g = [&](double t) { return derivative ? e.derivative(t) : e.value(t); };
  const double omega = max_frequency(e);
  if (omega > 0.0) {
    const double t1 = a + kNumericHalfPeriods * pi / omega;
    if (b <= t1) return abs_smooth(g, w, a, b, omega);
    check_single_frequency(e);
    double sum = abs_smooth(g, w, a, t1, omega);
    auto model = [&](double t) {
      const Envelope env = envelope_of(e, derivative, t);
      return std::pow(t, w) * mean_abs(env.p, std::abs(env.h));
    };
    sum += std::isfinite(b) ? gk(model, t1, b) : tail_exp_sinh(model, t1);
    return sum;
  }
  if (std::isfinite(b)) return abs_smooth(g, w, a, b, 0.0);
  const double scan_end = std::max(a, 1.0) * kScanSpan;
  double sum = abs_smooth(g, w, a, scan_end, 0.0);
  sum += tail_exp_sinh([&](double t) { return std::pow(t, w) * std::fabs(g(t)); }, scan_end);
  return sum;
}

bool integrable(const Growth& g, double w) {
  if (g.vanishes) return true;
  const double e = g.power + w;
  return e < -1.0 || (e == -1.0 && g.log_power < -1.0);
}

// Sums a rule-based quantity over blocks [base^k, base^{k+1}] until the
// geometric remainder is negligible.
double rule_tail(const SpikeRule& rule, double A, const std::function<double(double, double)>& block) {
  const double base = std::max(rule.base, 2.0);
  double lo = A;
  double sum = 0.0;
  double prev = -1.0;
  for (int k = 0; k < 1000; ++k) {
    const double hi = lo * base;
    if (!std::isfinite(hi)) break;
    const double v = block(lo, hi);
    sum += v;
    if (k >= 4 && prev > 0.0) {
      const double ratio = v / prev;
      if (ratio < 1.0 && v * ratio / (1.0 - ratio) <= 1e-13 * sum) return sum;
    }
    if (k >= 60 && v >= prev && v > 1e-300) fail(ErrorCode::Divergent, "rule-based sum does not converge");
    if (v > 0.0) prev = v;
    lo = hi;
  }
  return sum;
}

}  // namespace

double variation_integral(const TestFunction& f, double w, double A, double B) {
  if (!(A > 0.0) || !(B > A)) fail(ErrorCode::InvalidArgument, "variation_integral: need 0 < A < B");
  if (f.has_rule() && !std::isfinite(B)) {
    return rule_tail(*f.rule(), A, [&](double lo, double hi) { return variation_integral(f, w, lo, hi); });
  }
  if (!std::isfinite(B) && !integrable(f.tail_derivative(), w)) {
    fail(ErrorCode::Divergent, "variation_integral: t^w |f'| is not integrable at infinity");
  }
  double sum = 0.0;
  for (const Piece& p : f.pieces_in(A, B)) sum += piece_abs(p.expr, true, w, p.a, p.b);
  for (const Jump& j : f.jumps_in(A, B)) sum += std::pow(j.location, w) * std::fabs(j.size);
  return sum;
}

double weighted_abs_integral(const TestFunction& f, double w, double A, double B) {
  if (!(A >= 0.0) || !(B > A)) fail(ErrorCode::InvalidArgument, "weighted_abs_integral: need 0 <= A < B");
  if (f.has_rule() && !std::isfinite(B)) {
    return rule_tail(*f.rule(), std::max(A, 1e-300),
                     [&](double lo, double hi) { return weighted_abs_integral(f, w, lo, hi); });
  }
  if (!std::isfinite(B) && !integrable(f.tail(), w)) {
    fail(ErrorCode::Divergent, "weighted_abs_integral: t^w |f| is not integrable at infinity");
  }
  double sum = 0.0;
  for (const Piece& p : f.pieces_in(A, B)) {
    if (p.a == 0.0) {
      const Growth h = f.head();
      if (!h.vanishes && !(h.power + w > -1.0)) {
        fail(ErrorCode::Divergent, "weighted_abs_integral: t^w |f| is not integrable at 0");
      }
      // Dyadic grading toward the origin.
      double hi = std::min(p.b, 1.0);
      double lo = hi / 2;
      double head = 0.0;
      double prev = 0.0;
      for (int k = 0; k < 1100 && lo > 0.0; ++k) {
        const double v = piece_abs(p.expr, false, w, lo, hi);
        head += v;
        const double ratio = prev > 0.0 ? v / prev : 1.0;
        if (ratio < 1.0 && v * ratio / (1.0 - ratio) <= 1e-14 * head) {
          head += v * ratio / (1.0 - ratio);
          break;
        }
        prev = v;
        hi = lo;
        lo /= 2;
      }
      sum += head;
      if (p.b > 1.0) sum += piece_abs(p.expr, false, w, 1.0, p.b);
      continue;
    }
    sum += piece_abs(p.expr, false, w, p.a, p.b);
  }
  return sum;
}

}  // namespace whankel::functions
