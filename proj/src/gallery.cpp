#include "whankel/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "whankel/error.hpp"

namespace whankel::functions {

namespace {

Term power_term(double coef, double p, double q = 0.0) {
  Term t;
  t.coef = coef;
  t.power = p;
  t.log_power = q;
  return t;
}

Term constant(double c) { return power_term(c, 0.0); }

// log-type member: g(t) for t ≥ 2, continued by the constant g(2) on (0, 2)
TestFunction log_member(const std::string& label, double p, double q) {
  const Term tail = power_term(1.0, p, q);
  return TestFunction(label, 2.0, {{0.0, 2.0, Expr{{constant(tail.smooth(2.0))}}}, {2.0, kInf, Expr{{tail}}}});
}

TestFunction sine_member(const std::string& label, double p) {
  Term t = power_term(1.0, p);
  t.osc = Osc::Sine;
  t.frequency = 1.0;
  return TestFunction(label, 1.0, {{1.0, kInf, Expr{{t}}}});
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

const std::vector<GalleryEntry> kRegistry = {
    {"one", "f(t) = 1", "none", "O-but-not-o sharpness example for mu = 1", {}, true},
    {"inv_t", "f(t) = 1/t", "none", "weight t^mu with mu = -1; small-r remainder log 2 / r", {}, true},
    {"exp_decay", "f(t) = exp(-t)", "none", "classical cosine/sine pair 1/(1+r^2), r/(1+r^2)", {}, true},
    {"gaussian", "f(t) = exp(-pi t^2)", "none", "self-reciprocal under the order-0 Hankel transform", {}, true},
    {"power", "f(t) = t^(-beta)", "beta > 0", "monotone power; variation M^(-beta)", {"beta"}, true},
    {"log_counterexample",
     "f(t) = t^(-nu) for t < 2; t^(-nu+alpha+1/2) / (log t)^2 for t >= 2",
     "any alpha, nu",
     "non-uniform convergence above the strip at tuned radii r = (log M)^(2/(mu+nu-alpha-3/2))",
     {},
     false},
    {"sine_decay", "f(t) = t^(-nu-2) sin t for t >= 1; 0 below", "none",
     "satisfies the pointwise decay condition but neither variation condition", {}, false},
    {"sine_mu", "f(t) = t^(mu-2) sin t for t >= 1; 0 below", "mu < 2",
     "independence of the variation and integrability criteria", {}, false},
    {"inv_t_log", "f(t) = 1/(t log t) for t >= 2; 1/(2 log 2) below", "none",
     "non-integrable yet uniformly convergent sine transform", {}, true},
    {"inv_t_log2", "f(t) = 1/(t (log t)^2) for t >= 2; 1/(2 (log 2)^2) below", "none",
     "integrable monotone member for the vanishing-at-infinity cosine criterion", {}, true},
    {"power_log_mu", "f(t) = t^(mu-1) / log t for t >= 2; constant below", "mu <= 1",
     "monotone with M^(1-mu) f(M) = 1/log M", {}, true},
    {"alpha_nu_log", "f(t) = t^(alpha-nu-1/2) / log t for t >= 2; constant below", "nu >= alpha + 1/2",
     "vanishing member with t^(nu-alpha-1/2) f not integrable", {}, true},
    {"one_minus_mu_power", "f(t) = t^(mu-1)", "none", "O-but-not-o sharpness example: M^(1-mu) f(M) = 1", {}, true},
    {"lacunary_spikes",
     "f(t) = t^(mu-1) on [c_n, c_n + eps_n], c_n = base^n, eps_n = eps_scale * base^(-n beta); 0 elsewhere",
     "eps_n < c_{n+1} - c_n and eps_n <= c_n",
     "non-GM function with uniformly convergent transform",
     {"base", "beta", "eps_scale"},
     false},
    {"step", "f(t) = height for t >= t0; 0 below", "t0 > 0", "single jump", {"t0", "height"}, false},
};

}  // namespace

double GalleryParams::knob(const std::string& key, double fallback) const {
  const auto it = knobs.find(key);
  return it == knobs.end() ? fallback : it->second;
}

const std::vector<GalleryEntry>& gallery_registry() { return kRegistry; }

TestFunction gallery(const std::string& name, const GalleryParams& prm) {
  const auto entry = std::find_if(kRegistry.begin(), kRegistry.end(),
                                  [&](const GalleryEntry& e) { return e.name == name; });
  require(entry != kRegistry.end(), "unknown gallery entry '" + name + "'");
  for (const auto& [key, _] : prm.knobs) {
    require(std::find(entry->knobs.begin(), entry->knobs.end(), key) != entry->knobs.end(),
            "gallery entry '" + name + "' has no knob '" + key + "'");
  }
  const double a = prm.alpha;
  const double nu = prm.nu;
  const double mu = prm.mu;

  if (name == "one") return TestFunction(name, 1.0, {{0.0, kInf, Expr{{constant(1.0)}}}});
  if (name == "inv_t") return TestFunction(name, 1.0, {{0.0, kInf, Expr{{power_term(1.0, -1.0)}}}});
  if (name == "exp_decay" || name == "gaussian") {
    Term t = constant(1.0);
    t.exp_rate = name == "gaussian" ? std::numbers::pi : 1.0;
    t.exp_power = name == "gaussian" ? 2.0 : 1.0;
    return TestFunction(name, 1.0, {{0.0, kInf, Expr{{t}}}});
  }
  if (name == "power") {
    const double beta = prm.knob("beta", 1.0);
    require(beta > 0.0, "power: beta must be positive");
    return TestFunction(name, 1.0, {{0.0, kInf, Expr{{power_term(1.0, -beta)}}}});
  }
  if (name == "log_counterexample") {
    return TestFunction(name, 2.0,
                        {{0.0, 2.0, Expr{{power_term(1.0, -nu)}}},
                         {2.0, kInf, Expr{{power_term(1.0, -nu + a + 0.5, -2.0)}}}});
  }
  if (name == "sine_decay") return sine_member(name, -nu - 2.0);
  if (name == "sine_mu") {
    require(mu < 2.0, "sine_mu: needs mu < 2");
    return sine_member(name, mu - 2.0);
  }
  if (name == "inv_t_log") return log_member(name, -1.0, -1.0);
  if (name == "inv_t_log2") return log_member(name, -1.0, -2.0);
  if (name == "power_log_mu") {
    require(mu <= 1.0, "power_log_mu: needs mu <= 1");
    return log_member(name, mu - 1.0, -1.0);
  }
  if (name == "alpha_nu_log") {
    require(nu >= a + 0.5, "alpha_nu_log: needs nu >= alpha + 1/2");
    return log_member(name, a - nu - 0.5, -1.0);
  }
  if (name == "one_minus_mu_power") {
    return TestFunction(name, 1.0, {{0.0, kInf, Expr{{power_term(1.0, mu - 1.0)}}}});
  }
  if (name == "lacunary_spikes") {
    SpikeRule rule;
    rule.base = prm.knob("base", 2.0);
    rule.beta = prm.knob("beta", 0.0);
    rule.eps_scale = prm.knob("eps_scale", 1.0);
    rule.power = mu - 1.0;
    require(rule.base > 1.0, "lacunary_spikes: base must exceed 1");
    return TestFunction(name, rule.base, rule);
  }
  if (name == "step") {
    const double t0 = prm.knob("t0", 1.0);
    require(t0 > 0.0, "step: t0 must be positive");
    return TestFunction(name, t0, {{t0, kInf, Expr{{constant(prm.knob("height", 1.0))}}}});
  }
  fail(ErrorCode::InvalidArgument, "unknown gallery entry '" + name + "'");
}

TestFunction gallery_from_spec(const std::string& spec, double alpha, double nu, double mu) {
  GalleryParams prm{alpha, nu, mu, {}};
  const std::size_t colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream items(spec.substr(colon + 1));
    std::string item;
    while (std::getline(items, item, ',')) {
      const std::size_t eq = item.find('=');
      require(eq != std::string::npos && eq > 0, "function spec: expected key=value, got '" + item + "'");
      const std::string key = item.substr(0, eq);
      const std::string text = item.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == text.size() && !text.empty(), "function spec: '" + text + "' is not a number");
      require(prm.knobs.emplace(key, v).second, "function spec: knob '" + key + "' given twice");
    }
  }
  return gallery(name, prm);
}

}  // namespace whankel::functions
