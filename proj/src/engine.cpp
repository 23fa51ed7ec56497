#include "engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "quadrature.hpp"
#include "whankel/error.hpp"

namespace whankel::engine {

namespace {

using cplx = std::complex<double>;
using functions::Expr;
using functions::Piece;
using functions::Term;
using functions::TestFunction;
using std::numbers::pi;

constexpr int kMaxHeadLevels = 1000;
// Interval length, in half-oscillations, up to which Bessel nodes are
// used as panel cuts; longer stretches rely on the exact moments.
constexpr double kMaxBesselNodes = 256.0;
constexpr int kZeroFrequencyDoublings = 60;
constexpr int kMaxTailDoublings = 400;
// Ω·T at which the integration-by-parts tail takes over.
constexpr double kTailOmegaT = 2e4;

struct Kernel {
  bessel::Order order;
  double r;
  double z_switch;
  double t_switch;  // ∞ without the Bessel factor
};

Kernel make_kernel(bessel::Order order, double r) {
  const double zs = bessel::z_switch(order);
  return {order, r, zs, r > 0.0 ? zs / r : std::numeric_limits<double>::infinity()};
}

Expr weighted(const Expr& e, double w) {
  Expr out = e;
  for (Term& t : out.terms) t.power += w;
  return out;
}

// factor · g(t) · (A, Ā or j) inside one frequency group
struct Part {
  Term term;
  cplx factor;
  bool conj_amplitude = false;
};

struct Group {
  double omega;
  std::vector<Part> parts;
};

void add_part(std::vector<Group>& groups, double omega, const Part& part) {
  for (Group& g : groups) {
    if (g.omega == omega) {
      g.parts.push_back(part);
      return;
    }
  }
  groups.push_back({omega, {part}});
}

std::vector<Group> series_groups(const Expr& e) {
  std::vector<Group> groups;
  for (const Term& t : e.terms) {
    if (t.coef != 0.0) add_part(groups, t.omega(), {t, t.phase(), false});
  }
  return groups;
}

// j = Re[A e^{irt}], so an oscillating term feeds ω + r and ω − r.
std::vector<Group> asymptotic_groups(const Expr& e, double r) {
  std::vector<Group> groups;
  for (const Term& t : e.terms) {
    if (t.coef == 0.0) continue;
    const double w = t.omega();
    if (w == 0.0) {
      add_part(groups, r, {t, 1.0, false});
    } else {
      add_part(groups, w + r, {t, 0.5 * t.phase(), false});
      add_part(groups, w - r, {t, 0.5 * t.phase(), true});
    }
  }
  return groups;
}

quad::OscillatorySum make_sum(std::vector<Group> groups, const Kernel& k, bool asymptotic) {
  quad::OscillatorySum s;
  for (const Group& g : groups) s.omegas.push_back(g.omega);
  s.amplitudes = [groups = std::move(groups), k, asymptotic](double t, cplx* out) {
    cplx amp = 1.0;
    if (asymptotic) {
      amp = bessel::hankel_amplitude(k.order, std::max(k.r * t, k.z_switch));
    } else if (k.r > 0.0) {
      amp = bessel::j(k.order, k.r * t);
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      cplx v = 0.0;
      for (const Part& p : groups[i].parts) {
        v += p.factor * p.term.smooth(t) * (p.conj_amplitude ? std::conj(amp) : amp);
      }
      out[i] = v;
    }
  };
  return s;
}

double pointwise(const Expr& e, const Kernel& k, double t) {
  const double v = e.value(t);
  return k.r > 0.0 ? v * bessel::j(k.order, k.r * t) : v;
}

struct Plan {
  std::deque<quad::OscillatorySum> sums;
  std::vector<quad::Segment> segments;
  double extra = 0.0;  // analytic head and tail contributions
  double extra_error = 0.0;
};

void add_interval(Plan& plan, const Expr& e, const Kernel& k, double a, double b, const QuadratureConfig& cfg) {
  if (!(b > a)) return;
  if (a < k.t_switch && b > k.t_switch) {
    add_interval(plan, e, k, a, k.t_switch, cfg);
    add_interval(plan, e, k, k.t_switch, b, cfg);
    return;
  }
  const bool asymptotic = a >= k.t_switch;
  plan.sums.push_back(make_sum(asymptotic ? asymptotic_groups(e, k.r) : series_groups(e), k, asymptotic));
  const quad::OscillatorySum* sum = &plan.sums.back();
  std::vector<double> cuts{a};
  if (a > 0.0) {
    for (double x = 2.0 * a; x < b; x *= 2.0) cuts.push_back(x);
  }
  if (asymptotic && cfg.node_split == NodeSplit::BesselNodes && k.r * (b - a) <= kMaxBesselNodes * pi) {
    for (long n = bessel::first_node_index_at_or_after(k.order, k.r * a);; ++n) {
      const double t = bessel::asymptotic_node(k.order, n) / k.r;
      if (!(t < b)) break;
      if (t > a) cuts.push_back(t);
    }
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) plan.segments.push_back({cuts[i], cuts[i + 1], sum});
}

// Walks from a1 toward 0 by halving until the remainder ∫_0^ε, modelled as
// h(ε)ε/(s+1) for an integrand h ~ t^s, is negligible. Returns ε.
double add_head(Plan& plan, const Expr& e, const Kernel& k, double s, double q, double a1,
                const QuadratureConfig& cfg) {
  double eps = a1;
  double h = pointwise(e, k, eps);
  double scale = 0.0;
  for (int level = 0; level < kMaxHeadLevels; ++level) {
    scale = std::max(scale, std::fabs(h) * eps);
    const double rem = h * eps / (s + 1.0);
    if (std::fabs(rem) <= 1e-3 * std::max(cfg.abs_tol, cfg.rel_tol * scale)) break;
    if (eps / 2 < 1e-300) break;
    eps /= 2;
    h = pointwise(e, k, eps);
  }
  const double rem = h * eps / (s + 1.0);
  const double h2 = pointwise(e, k, 2.0 * eps);
  double mismatch = 1.0;
  if (h != 0.0) mismatch = std::min(1.0, std::fabs(h2 / (std::pow(2.0, s) * h) - 1.0));
  if (q != 0.0) mismatch += std::fabs(q) / ((s + 1.0) * std::fabs(std::log(eps)));
  plan.extra += rem;
  plan.extra_error += std::fabs(rem) * mismatch;
  return eps;
}

void split_exponential(const Expr& e, Expr& algebraic, Expr& exponential) {
  for (const Term& t : e.terms) {
    if (t.coef == 0.0) continue;
    (t.decays_exponentially() ? exponential : algebraic).terms.push_back(t);
  }
}

// First dyadic T ≥ T0 past which every exponential term is negligible.
double exponential_cutoff(const Expr& e, double T0, const QuadratureConfig& cfg) {
  double T = T0;
  auto size = [&](double t) {
    double m = 0.0;
    for (const Term& term : e.terms) m = std::max(m, std::fabs(term.smooth(t)) * t);
    return m;
  };
  double prev = size(T);
  for (int i = 0; i < 4000; ++i) {
    const double next = size(2.0 * T);
    T *= 2.0;
    if (next <= 1e-4 * cfg.abs_tol && next <= prev) return T;
    prev = next;
  }
  fail(ErrorCode::NonConvergence, "exponential term does not decay on a representable range");
}

struct Exponent {
  double s = -std::numeric_limits<double>::infinity();
  double q = 0.0;
  double kappa = 1.0;
};

Exponent group_exponent(const Group& g, double shift) {
  Exponent ex;
  for (const Part& p : g.parts) {
    const double s = p.term.power - shift;
    if (s > ex.s || (s == ex.s && p.term.log_power > ex.q)) {
      ex.s = s;
      ex.q = p.term.log_power;
      ex.kappa = p.term.log_scale;
    }
  }
  return ex;
}

void add_dyadic(Plan& plan, const quad::OscillatorySum* sum, double a, double b) {
  for (double x = a; x < b;) {
    const double y = std::min(2.0 * x, b);
    plan.segments.push_back({x, y, sum});
    x = y;
  }
}

// ∫_T^∞ h e^{iΩt} = −e^{iΩT}[h/(iΩ) − h′/(iΩ)² + h″/(iΩ)³ − …]
void oscillatory_tail(Plan& plan, const quad::OscillatorySum* sum, double omega, const Exponent& ex, double T) {
  auto h = [&](double t) {
    cplx v;
    sum->amplitudes(t, &v);
    return v;
  };
  const double d1 = 1e-3 * T;
  const double d2 = 1e-2 * T;
  const cplx h0 = h(T);
  const cplx h1 = (h(T + d1) - h(T - d1)) / (2.0 * d1);
  const cplx h2 = (h(T + d2) - 2.0 * h0 + h(T - d2)) / (d2 * d2);
  const cplx iw(0.0, omega);
  const cplx tail = -std::polar(1.0, omega * T) * (h0 / iw - h1 / (iw * iw) + h2 / (iw * iw * iw));
  const double w = std::fabs(omega);
  const double third = std::abs(h2) / (w * w * w);
  plan.extra += tail.real();
  plan.extra_error += third * (std::fabs(ex.s) + 3.0) / (w * T) + 1e-5 * std::abs(h1) / (w * w) + 1e-3 * third;
}

// ∫_T^∞ h for non-oscillating h ~ C t^s (log κt)^q, C fitted at T.
void power_tail(Plan& plan, const quad::OscillatorySum* sum, const Exponent& ex, double T) {
  auto h = [&](double t) {
    cplx v;
    sum->amplitudes(t, &v);
    return v;
  };
  const cplx h0 = h(T);
  const cplx hh = h(0.5 * T);
  if (h0 == 0.0) return;
  const double u = std::log(ex.kappa * T);
  const double uh = std::log(ex.kappa * 0.5 * T);
  // ∫_T^∞ t^s (log κt)^q dt / (T^{s+1} u^q)
  double shape;
  if (ex.q == 0.0) {
    shape = 1.0 / (-ex.s - 1.0);
  } else if (ex.s == -1.0) {
    shape = u / (-ex.q - 1.0);
  } else {
    boost::math::quadrature::exp_sinh<double> integrator;
    const double s1 = ex.s + 1.0;
    shape = integrator.integrate([&](double y) { return std::exp(s1 * y) * std::pow(1.0 + y / u, ex.q); }, 0.0,
                                 std::numeric_limits<double>::infinity());
  }
  const cplx tail = h0 * T * shape;
  double drift = 1.0;
  if (hh != 0.0) drift = std::abs(h0 / (hh * std::pow(2.0, ex.s) * std::pow(u / uh, ex.q)) - 1.0);
  plan.extra += tail.real();
  plan.extra_error += std::abs(tail) * (drift + 1e-12);
}

void add_tail(Plan& plan, const Expr& e, const Kernel& k, double T0) {
  const bool asymptotic = k.r > 0.0;
  const double shift = asymptotic ? k.order.value() + 0.5 : 0.0;
  for (Group& g : asymptotic ? asymptotic_groups(e, k.r) : series_groups(e)) {
    const Exponent ex = group_exponent(g, shift);
    const double omega = g.omega;
    plan.sums.push_back(make_sum({g}, k, asymptotic));
    const quad::OscillatorySum* sum = &plan.sums.back();
    if (omega != 0.0) {
      if (!(ex.s < 0.0 || (ex.s == 0.0 && ex.q < 0.0))) {
        fail(ErrorCode::Divergent, "oscillatory tail amplitude does not decay");
      }
      const double T = std::max(T0, kTailOmegaT * std::max(1.0, std::fabs(ex.s)) / std::fabs(omega));
      if (T > std::ldexp(T0, kMaxTailDoublings)) {
        fail(ErrorCode::NonConvergence, "tail frequency too close to zero");
      }
      add_dyadic(plan, sum, T0, T);
      oscillatory_tail(plan, sum, omega, ex, T);
    } else {
      if (!(ex.s < -1.0 || (ex.s == -1.0 && ex.q < -1.0))) {
        fail(ErrorCode::Divergent, "non-oscillating tail is not integrable");
      }
      const double T = std::ldexp(T0, kZeroFrequencyDoublings);
      add_dyadic(plan, sum, T0, T);
      power_tail(plan, sum, ex, T);
    }
  }
}

// Truncation point for a spike rule: the envelope bound on all spikes past
// it is below a hundredth of the target.
double rule_cutoff(Plan& plan, const functions::SpikeRule& rule, const Kernel& k, double w, double a,
                   const QuadratureConfig& cfg) {
  const int n_max = static_cast<int>(std::floor(300.0 * std::log(10.0) / std::log(rule.base)));
  std::vector<double> bound(n_max + 2, 0.0);
  const double coef = std::fabs(rule.coef * std::pow(rule.dilation, rule.power));
  const double pw = w + rule.power;
  int n_a = 1;
  for (int n = 1; n <= n_max; ++n) {
    const double c = rule.center(n);
    const double e = rule.width(n);
    if (c + e <= a) n_a = n + 1;
    const double env = k.r > 0.0 ? bessel::envelope(k.order, k.r * c) : 1.0;
    bound[n] = e * coef * std::max(std::pow(c, pw), std::pow(c + e, pw)) * env;
  }
  double scale = 0.0;
  for (int n = n_a; n <= n_max; ++n) scale = std::max(scale, bound[n]);
  const double target = 1e-2 * std::max(cfg.abs_tol, cfg.rel_tol * scale);
  if (!(bound[n_max] <= 1e-6 * scale)) {
    fail(ErrorCode::NonConvergence, "spike contributions are not summable");
  }
  std::vector<double> suffix(n_max + 2, 0.0);
  for (int n = n_max; n >= 1; --n) suffix[n] = suffix[n + 1] + bound[n];
  for (int n = n_a; n <= n_max; ++n) {
    if (suffix[n + 1] <= target) {
      plan.extra_error += suffix[n + 1];
      return std::max(a, rule.center(n) + rule.width(n));
    }
  }
  fail(ErrorCode::NonConvergence, "spike contributions are not summable");
}

}  // namespace

Integral bessel_integral(const TestFunction& f, bessel::Order order, double w, double r, double a, double b,
                         const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorCode::Domain, "bessel_integral: r must be finite and >= 0");
  if (!(a >= 0.0) || !(b > a)) fail(ErrorCode::InvalidArgument, "bessel_integral: need 0 <= a < b");
  const Kernel k = make_kernel(order, r);
  Plan plan;
  if (f.has_rule() && !std::isfinite(b)) {
    b = rule_cutoff(plan, *f.rule(), k, w, a, cfg);
    if (!(b > a)) return {plan.extra, plan.extra_error, 0, true};
  }

  std::vector<Piece> pieces = f.pieces_in(a, b);
  if (!std::isfinite(b) && !pieces.empty() && !std::isfinite(pieces.back().b)) {
    const Piece last = pieces.back();
    double T0 = std::max(a, last.a);
    if (r > 0.0) T0 = std::max(T0, k.t_switch);
    if (!(T0 > 0.0)) T0 = 1.0;
    pieces.back().b = T0;
    Expr algebraic;
    Expr exponential;
    split_exponential(weighted(last.expr, w), algebraic, exponential);
    if (!exponential.terms.empty()) {
      add_interval(plan, exponential, k, T0, exponential_cutoff(exponential, T0, cfg), cfg);
    }
    if (!algebraic.terms.empty()) add_tail(plan, algebraic, k, T0);
  }

  for (const Piece& p : pieces) {
    const Expr e = weighted(p.expr, w);
    double lo = p.a;
    if (lo == 0.0) {
      const functions::Growth h = f.head();
      if (h.vanishes) continue;
      const double s = w + h.power;
      if (!(s > -1.0)) fail(ErrorCode::Divergent, "integrand is not integrable at 0");
      const double a1 = std::min({p.b, k.t_switch, 1.0});
      lo = add_head(plan, e, k, s, h.log_power, a1, cfg);
    }
    add_interval(plan, e, k, lo, p.b, cfg);
  }

  quad::Tolerance tol;
  tol.rel = 0.5 * cfg.rel_tol;
  tol.abs = 0.5 * cfg.abs_tol;
  tol.max_panels = cfg.max_panels;
  tol.real_part = true;
  Integral out;
  out.value = plan.extra;
  out.error = plan.extra_error;
  if (!plan.segments.empty()) {
    const quad::AdaptiveResult res = quad::integrate(plan.segments, tol);
    if (!res.converged && res.panels >= cfg.max_panels) {
      fail(ErrorCode::Budget, "quadrature panel budget exhausted (" + std::to_string(res.panels) + " panels)");
    }
    out.value += res.value.real();
    out.error += res.error;
    out.panels = res.panels;
  }
  out.converged = out.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(out.value));
  return out;
}

Integral monomial_integral(bessel::Order order, double w, double r, double a, double b,
                           const QuadratureConfig& cfg) {
  static const TestFunction one("one", 0.0, {{0.0, functions::kInf, Expr{{Term{}}}}});
  return bessel_integral(one, order, w, r, a, b, cfg);
}

}  // namespace whankel::engine
