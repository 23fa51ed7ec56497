#include "whankel/functions.hpp"

#include <algorithm>
#include <cmath>

#include "whankel/error.hpp"

namespace whankel::functions {

namespace {

double log_factor(double t, double kappa, double q) {
  if (q == 0.0) return 1.0;
  return std::pow(std::log(kappa * t), q);
}

bool same(double x, double y) {
  return std::isfinite(x) && std::isfinite(y) &&
         (x == y || std::fabs(x - y) <= 1e-14 * std::max(std::fabs(x), std::fabs(y)));
}

}  // namespace

double Term::smooth(double t) const {
  if (coef == 0.0) return 0.0;
  double v = coef * std::pow(t, power) * log_factor(t, log_scale, log_power);
  if (exp_rate != 0.0) v *= std::exp(-exp_rate * std::pow(t, exp_power));
  return v;
}

double Term::smooth_derivative(double t) const {
  if (coef == 0.0) return 0.0;
  const double e = exp_rate != 0.0 ? std::exp(-exp_rate * std::pow(t, exp_power)) : 1.0;
  const double tp1 = std::pow(t, power - 1.0);
  const double lq = log_factor(t, log_scale, log_power);
  double d = power * tp1 * lq;
  if (log_power != 0.0) d += log_power * tp1 * log_factor(t, log_scale, log_power - 1.0);
  if (exp_rate != 0.0) d -= exp_rate * exp_power * std::pow(t, power + exp_power - 1.0) * lq;
  return coef * e * d;
}

double Term::value(double t) const {
  const double g = smooth(t);
  switch (osc) {
    case Osc::None: return g;
    case Osc::Sine: return g * std::sin(frequency * t);
    case Osc::Cosine: return g * std::cos(frequency * t);
  }
  return g;
}

double Term::derivative(double t) const {
  const double dg = smooth_derivative(t);
  switch (osc) {
    case Osc::None: return dg;
    case Osc::Sine:
      return dg * std::sin(frequency * t) + smooth(t) * frequency * std::cos(frequency * t);
    case Osc::Cosine:
      return dg * std::cos(frequency * t) - smooth(t) * frequency * std::sin(frequency * t);
  }
  return dg;
}

std::complex<double> Term::phase() const {
  return osc == Osc::Sine ? std::complex<double>(0.0, -1.0) : std::complex<double>(1.0, 0.0);
}

double Expr::value(double t) const {
  double s = 0.0;
  for (const Term& term : terms) s += term.value(t);
  return s;
}

double Expr::derivative(double t) const {
  double s = 0.0;
  for (const Term& term : terms) s += term.derivative(t);
  return s;
}

bool Expr::oscillates() const {
  return std::any_of(terms.begin(), terms.end(),
                     [](const Term& t) { return t.osc != Osc::None && t.frequency != 0.0 && t.coef != 0.0; });
}

double SpikeRule::center(int n) const { return std::pow(base, n) / dilation; }

double SpikeRule::width(int n) const { return eps_scale * std::pow(base, -n * beta) / dilation; }

TestFunction::TestFunction(std::string label, double domain_start, std::vector<Piece> pieces)
    : label_(std::move(label)), domain_start_(domain_start), pieces_(std::move(pieces)) {
  std::sort(pieces_.begin(), pieces_.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (!(pieces_[i].b > pieces_[i].a) || pieces_[i].a < 0.0) {
      fail(ErrorCode::InvalidArgument, "TestFunction: empty or negative piece");
    }
    if (i > 0 && pieces_[i].a < pieces_[i - 1].b) {
      fail(ErrorCode::InvalidArgument, "TestFunction: overlapping pieces");
    }
  }
}

TestFunction::TestFunction(std::string label, double domain_start, SpikeRule rule)
    : label_(std::move(label)), domain_start_(domain_start), rule_(rule) {
  if (!(rule.base > 1.0) || !(rule.dilation > 0.0) || !(rule.eps_scale > 0.0)) {
    fail(ErrorCode::InvalidArgument, "spike rule: need base > 1, positive widths");
  }
  for (int n = 1; n < 60; ++n) {
    if (!(rule.width(n) < rule.center(n + 1) - rule.center(n)) || rule.width(n) > rule.center(n)) {
      fail(ErrorCode::InvalidArgument, "spike rule: need eps_n < c_{n+1} - c_n and eps_n <= c_n");
    }
  }
}

std::vector<Piece> TestFunction::pieces_in(double A, double B) const {
  std::vector<Piece> out;
  if (!(B > A)) return out;
  if (rule_) {
    if (!std::isfinite(B)) fail(ErrorCode::InvalidArgument, "pieces_in: rule-based function needs finite B");
    const SpikeRule& r = *rule_;
    const int n_hi = static_cast<int>(std::ceil(std::log(B * r.dilation) / std::log(r.base))) + 1;
    int n_lo = std::max(1, static_cast<int>(std::floor(std::log(std::max(A, 1e-300) * r.dilation) /
                                                       std::log(r.base))) - 1);
    for (int n = n_lo; n <= n_hi; ++n) {
      const double a = r.center(n);
      const double b = a + r.width(n);
      if (b <= A || a >= B) continue;
      Term t;
      t.coef = r.coef * std::pow(r.dilation, r.power);
      t.power = r.power;
      out.push_back({std::max(a, A), std::min(b, B), Expr{{t}}});
    }
    return out;
  }
  for (const Piece& p : pieces_) {
    if (p.b <= A || p.a >= B) continue;
    out.push_back({std::max(p.a, A), std::min(p.b, B), p.expr});
  }
  return out;
}

double TestFunction::value(double t) const {
  const auto ps = rule_ ? pieces_in(t / 2, t * 2) : pieces_;
  for (const Piece& p : ps)
    if (t >= p.a && t < p.b) return p.expr.value(t);
  return 0.0;
}

double TestFunction::derivative(double t) const {
  const auto ps = rule_ ? pieces_in(t / 2, t * 2) : pieces_;
  for (const Piece& p : ps)
    if (t >= p.a && t < p.b) return p.expr.derivative(t);
  return 0.0;
}

std::vector<Jump> TestFunction::jumps_in(double A, double B) const {
  // Collect breakpoints of the full pieces touching (A, B].
  std::vector<Piece> ps;
  if (rule_) {
    ps = pieces_in(A, std::isfinite(B) ? B * 1.0000001 : B);
    // Re-extend clipped pieces to their true extents.
    for (Piece& p : ps) {
      const SpikeRule& r = *rule_;
      const int n = static_cast<int>(std::lround(std::log(p.a * r.dilation) / std::log(r.base)));
      for (int m = n - 1; m <= n + 1; ++m) {
        if (m < 1) continue;
        const double a = r.center(m);
        const double b = a + r.width(m);
        if (p.a >= a && p.a < b) {
          p.a = a;
          p.b = b;
        }
      }
    }
  } else {
    ps = pieces_;
  }
  std::vector<double> points;
  for (const Piece& p : ps) {
    points.push_back(p.a);
    if (std::isfinite(p.b)) points.push_back(p.b);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end(), same), points.end());
  std::vector<Jump> out;
  for (double x : points) {
    if (!(x > A && x <= B) || x <= 0.0) continue;
    double left = 0.0;
    double right = 0.0;
    for (const Piece& p : ps) {
      if (same(p.b, x)) left = p.expr.value(x);
      if (same(p.a, x)) right = p.expr.value(x);
    }
    if (right != left) out.push_back({x, right - left});
  }
  return out;
}

namespace {

Growth dominant(const Expr& e, bool derivative) {
  Growth g;
  for (const Term& t : e.terms) {
    if (t.coef == 0.0 || t.decays_exponentially()) continue;
    double p = t.power;
    double q = t.log_power;
    if (derivative && t.osc == Osc::None) {
      if (p != 0.0) {
        p -= 1.0;
      } else if (q != 0.0) {
        p = -1.0;
        q -= 1.0;
      } else {
        continue;
      }
    }
    g.vanishes = false;
    if (p > g.power || (p == g.power && q > g.log_power)) {
      g.power = p;
      g.log_power = q;
    }
  }
  return g;
}

}  // namespace

Growth TestFunction::head() const {
  Growth g;
  if (rule_ || pieces_.empty() || pieces_.front().a > 0.0) return g;
  g.power = kInf;
  for (const Term& t : pieces_.front().expr.terms) {
    if (t.coef == 0.0) continue;
    // Oscillating factors contribute ω t near 0 for sine.
    double p = t.power + (t.osc == Osc::Sine ? 1.0 : 0.0);
    g.vanishes = false;
    if (p < g.power || (p == g.power && std::fabs(t.log_power) > std::fabs(g.log_power))) {
      g.power = p;
      g.log_power = t.log_power;
    }
  }
  if (g.vanishes) g.power = -kInf;
  return g;
}

Growth TestFunction::tail() const {
  if (rule_) fail(ErrorCode::Unsupported, "tail growth of a rule-based function");
  if (pieces_.empty() || std::isfinite(pieces_.back().b)) return Growth{};
  return dominant(pieces_.back().expr, false);
}

Growth TestFunction::tail_derivative() const {
  if (rule_) fail(ErrorCode::Unsupported, "tail growth of a rule-based function");
  if (pieces_.empty() || std::isfinite(pieces_.back().b)) return Growth{};
  return dominant(pieces_.back().expr, true);
}

double TestFunction::last_breakpoint() const {
  double x = 0.0;
  for (const Piece& p : pieces_) {
    x = std::max(x, p.a);
    if (std::isfinite(p.b)) x = std::max(x, p.b);
  }
  return x;
}

TestFunction TestFunction::scaled(double c) const {
  if (rule_) {
    SpikeRule r = *rule_;
    r.coef *= c;
    return TestFunction(label_, domain_start_, r);
  }
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps)
    for (Term& t : p.expr.terms) t.coef *= c;
  return TestFunction(label_, domain_start_, ps);
}

TestFunction TestFunction::dilated(double s) const {
  if (!(s > 0.0)) fail(ErrorCode::InvalidArgument, "dilation factor must be positive");
  if (rule_) {
    SpikeRule r = *rule_;
    r.dilation *= s;
    return TestFunction(label_, domain_start_ / s, r);
  }
  std::vector<Piece> ps = pieces_;
  for (Piece& p : ps) {
    p.a /= s;
    p.b /= s;
    for (Term& t : p.expr.terms) {
      t.coef *= std::pow(s, t.power);
      t.log_scale *= s;
      t.exp_rate *= std::pow(s, t.exp_power);
      t.frequency *= s;
    }
  }
  return TestFunction(label_, domain_start_ / s, ps);
}

TestFunction TestFunction::plus(const TestFunction& other) const {
  if (rule_ || other.rule_) fail(ErrorCode::Unsupported, "sum of rule-based functions");
  std::vector<double> cuts;
  for (const auto* f : {this, &other}) {
    for (const Piece& p : f->pieces_) {
      cuts.push_back(p.a);
      cuts.push_back(p.b);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = cuts[i + 1];
    Expr e;
    bool covered = false;
    for (const auto* f : {this, &other}) {
      for (const Piece& p : f->pieces_) {
        if (p.a <= a && p.b >= b) {
          e.terms.insert(e.terms.end(), p.expr.terms.begin(), p.expr.terms.end());
          covered = true;
        }
      }
    }
    if (covered) out.push_back({a, b, e});
  }
  return TestFunction(label_ + "+" + other.label_, std::min(domain_start_, other.domain_start_), out);
}

}  // namespace whankel::functions
