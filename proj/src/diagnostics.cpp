#include "whankel/diagnostics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <thread>

#include "whankel/error.hpp"

namespace whankel::diagnostics {

using functions::kInf;
using functions::TestFunction;
using transform::Regime;
using transform::TransformParams;

namespace {

constexpr double kParamTol = 1e-12;
constexpr int kSupGrid = 257;
// Tuned radii are shifted by j·2π/(kPhaseShifts·M), sweeping one period of
// the phase rM so that some shift meets a peak of j_{α+1}(rM).
constexpr int kPhaseShifts = 16;
constexpr double kScanDecades = 3.0;

using Samples = std::vector<std::pair<double, double>>;

const std::vector<TheoremInfo> kTheorems = {
    {"thm1", "mu = -nu; |f(M)| = o(M^(-nu-1)) and the weighted variation tail is o(M^(-alpha-3/2)): "
             "uniform convergence iff the improper integral of t^nu f converges",
     "mu + nu = 0", TheoremKind::Equivalence},
    {"costhmvanish", "mu = -nu, f vanishing at infinity, variation tail condition split at nu = alpha + 1/2 "
                     "and nu = -1: uniform convergence iff the improper integral of t^nu f converges",
     "mu + nu = 0", TheoremKind::Equivalence},
    {"corcosgm", "mu = -nu, f real GM with t f in L1(0,1): uniform convergence iff the improper integral of "
                 "t^nu f converges",
     "mu + nu = 0", TheoremKind::Equivalence},
    {"thm1_5", "mu = -nu, f continuous on (1, inf), alpha > 1/2 and |f(M)| = o(M^(-nu-1)): uniform "
               "convergence iff the improper integral of t^nu f converges",
     "mu + nu = 0", TheoremKind::Equivalence},
    {"sinethm", "0 < mu + nu <= alpha + 3/2, |f(M)| = o(M^(mu-1)) and weighted variation tail "
                "o(M^(mu+nu-alpha-3/2)): uniform convergence",
     "0 < mu + nu <= alpha + 3/2", TheoremKind::Sufficient},
    {"sinethmvanish", "0 < mu + nu <= alpha + 3/2, f vanishing at infinity, variation tail condition split at "
                      "nu = alpha + 1/2 and mu = 1: uniform convergence",
     "0 < mu + nu <= alpha + 3/2", TheoremKind::Sufficient},
    {"sinegm", "0 < mu + nu < alpha + 3/2, f GM: |f(M)| = o(M^(mu-1)) gives uniform convergence; for f >= 0 "
               "uniform convergence forces it",
     "0 < mu + nu < alpha + 3/2", TheoremKind::GMCriterion},
    {"corgmsine", "0 < mu + nu < alpha + 3/2, f >= 0 GM: uniform convergence iff |f(M)| = o(M^(mu-1))",
     "0 < mu + nu < alpha + 3/2", TheoremKind::Equivalence},
    {"prop_unifrough", "t^nu f in L1(0,1) and t^(nu-alpha-1/2) f in L1(1,inf): convergence for r > 0, uniform "
                       "away from 0, near 0 or everywhere by the sign of mu + nu - alpha - 1/2",
     "any", TheoremKind::Sufficient},
    {"cor_integrable", "0 <= mu + nu <= alpha + 1/2 and t^nu f in L1(0,inf): uniform convergence",
     "0 <= mu + nu <= alpha + 1/2", TheoremKind::Sufficient},
    {"prop_pointwise", "finite weighted variation and M^(nu-alpha-1/2) f(M) -> 0: convergence for r > 0, "
                       "uniform away from 0, near 0 or everywhere by the sign of mu + nu - alpha - 3/2",
     "any", TheoremKind::Sufficient},
    {"cor_pointwise_gm", "f GM with t^(nu-alpha-3/2) f in L1(1,inf): the conclusions of prop_pointwise",
     "any", TheoremKind::Sufficient},
    {"corol_rough", "alpha + 1/2 <= mu + nu < alpha + 3/2, the pointwise conditions and t^(nu-alpha-1/2) f in "
                    "L1(1,inf): uniform convergence",
     "alpha + 1/2 <= mu + nu < alpha + 3/2", TheoremKind::Sufficient},
};

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

bool near(double x, double y) { return std::fabs(x - y) <= kParamTol; }

void check_parameters(const std::string& id, const TransformParams& p) {
  const double s = p.weight();
  const double a = p.alpha();
  const auto mismatch = [&](const char* need) {
    fail(ErrorCode::InvalidArgument, id + ": parameters (alpha, nu, mu) must satisfy " + need);
  };
  if (id == "thm1" || id == "costhmvanish" || id == "corcosgm" || id == "thm1_5") {
    if (p.regime() != Regime::CosineType) mismatch("mu + nu = 0");
  } else if (id == "sinethm" || id == "sinethmvanish") {
    if (p.regime() != Regime::SineType) mismatch("0 < mu + nu <= alpha + 3/2");
  } else if (id == "sinegm" || id == "corgmsine") {
    if (p.regime() != Regime::SineType || near(s, a + 1.5)) mismatch("0 < mu + nu < alpha + 3/2");
  } else if (id == "cor_integrable") {
    if (s < -kParamTol || s > a + 0.5 + kParamTol) mismatch("0 <= mu + nu <= alpha + 1/2");
  } else if (id == "corol_rough") {
    if (s < a + 0.5 - kParamTol || s >= a + 1.5 - kParamTol) mismatch("alpha + 1/2 <= mu + nu < alpha + 3/2");
  }
}

// sup of |f| over [M, 2M]: a log grid plus both ends of every piece.
double local_sup(const TestFunction& f, double M) {
  double s = 0.0;
  for (int i = 0; i < kSupGrid; ++i) s = std::max(s, std::fabs(f.value(M * std::exp2(i / (kSupGrid - 1.0)))));
  for (const functions::Piece& piece : f.pieces_in(M, 2.0 * M)) {
    s = std::max(s, std::fabs(piece.expr.value(piece.a)));
    const double b = std::min(piece.b, 2.0 * M);
    s = std::max(s, std::fabs(piece.expr.value(b * (1.0 - 1e-12))));
  }
  return s;
}

template <class Q>
Samples dyadic_samples(const DiagnosticsConfig& cfg, Q quantity) {
  Samples out;
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    const double M = std::exp2(k);
    double v;
    try {
      v = quantity(M);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Divergent) throw;
      v = kInf;
    }
    out.emplace_back(M, v);
  }
  return out;
}

Condition decay_condition(std::string label, std::string description, Samples samples, double a,
                          bool premise = true) {
  Condition c;
  c.label = std::move(label);
  c.description = std::move(description);
  c.kind = ConditionKind::Decay;
  c.premise = premise;
  c.target_exponent = a;
  c.samples = std::move(samples);
  c.verdict = little_o(c.samples, a, &c.fit, &c.note);
  return c;
}

Condition finite_condition(std::string label, std::string description, bool premise,
                           const std::function<double()>& integral) {
  Condition c;
  c.label = std::move(label);
  c.description = std::move(description);
  c.kind = ConditionKind::Finite;
  c.premise = premise;
  try {
    c.value = integral();
    c.verdict = std::isfinite(c.value) ? Verdict::Holds : Verdict::Fails;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Divergent) {
      c.value = kInf;
      c.verdict = Verdict::Fails;
    } else {
      c.verdict = Verdict::Inconclusive;
    }
    c.note = e.what();
  }
  return c;
}

Condition property(std::string label, std::string description, Verdict v, std::string note = {},
                   ConditionKind kind = ConditionKind::Property) {
  Condition c;
  c.label = std::move(label);
  c.description = std::move(description);
  c.kind = kind;
  c.verdict = v;
  c.note = std::move(note);
  return c;
}

// Building blocks shared by the registry entries.
struct Builder {
  const TransformParams& p;
  const TestFunction& f;
  const DiagnosticsConfig& cfg;

  double a() const { return p.alpha(); }
  double nu() const { return p.nu(); }
  double mu() const { return p.mu(); }

  Condition head(double w) const {
    return finite_condition("head", "t^" + fmt(w) + " f in L1(0,1)", true,
                            [&] { return functions::weighted_abs_integral(f, w, 0.0, 1.0); });
  }
  Condition pointwise(const std::string& label, double target, bool premise = true) const {
    return decay_condition(label, "|f(M)| = o(M^" + fmt(target) + ")",
                           dyadic_samples(cfg, [&](double M) { return local_sup(f, M); }), target, premise);
  }
  Condition variation_tail(const std::string& label, double w, double target) const {
    return decay_condition(label, "int_M^inf t^" + fmt(w) + " |df| = o(M^" + fmt(target) + ")",
                           dyadic_samples(cfg, [&](double M) { return functions::variation_integral(f, w, M, kInf); }),
                           target);
  }
  Condition variation_finite(double w) const {
    return finite_condition("variation", "int_1^inf t^" + fmt(w) + " |df| < inf", true,
                            [&] { return functions::variation_integral(f, w, 1.0, kInf); });
  }
  Condition l1_tail(double w) const {
    return finite_condition("l1_tail", "t^" + fmt(w) + " f in L1(1,inf)", true,
                            [&] { return functions::weighted_abs_integral(f, w, 1.0, kInf); });
  }
  Condition necsuf() const {
    return finite_condition("necsuf", "int_0^inf t^nu f converges", false, [&] {
      const functions::TailIntegral t = functions::tail_integral(f, nu(), 1.0, cfg.quadrature);
      if (!t.head_defined) fail(ErrorCode::Divergent, "t^nu f is not integrable at 0");
      return t.head + t.value;
    });
  }
  Condition vanishing() const {
    Condition c = pointwise("vanishing", 0.0);
    c.description = "f vanishes at infinity";
    return c;
  }
  Condition gm() const {
    const functions::GMReport r =
        functions::gm_check(f, cfg.gm_lambda, functions::dyadic_grid(cfg.gm_k_min, cfg.gm_k_max));
    Condition c = property("gm", "f is general monotone", r.verdict == functions::GMVerdict::Consistent
                                                                ? Verdict::Holds
                                                                : Verdict::Fails);
    c.value = r.sup_ratio;
    c.note = "sup GM ratio " + fmt(r.sup_ratio);
    return c;
  }
  Condition nonnegative() const {
    bool ok = true;
    for (double t = 1e-3; t < std::exp2(cfg.k_max + 1) && ok; t *= 1.01) ok = f.value(t) >= 0.0;
    const double B = f.has_rule() ? std::exp2(cfg.k_max + 1) : std::max(2.0, 2.0 * f.last_breakpoint());
    for (const functions::Piece& piece : f.pieces_in(1e-3, B)) ok = ok && piece.expr.value(piece.a) >= 0.0;
    return property("nonnegative", "f >= 0", ok ? Verdict::Holds : Verdict::Fails, "sampled");
  }
  Condition continuous() const {
    if (f.has_rule()) return property("continuous", "f in C(1,inf)", Verdict::Fails, "spikes are jumps");
    const double B = std::max(2.0, 2.0 * f.last_breakpoint());
    const std::vector<functions::Jump> jumps = f.jumps_in(1.0, B);
    const bool ok = std::all_of(jumps.begin(), jumps.end(), [](const functions::Jump& j) { return j.location <= 1.0; });
    return property("continuous", "f in C(1,inf)", ok ? Verdict::Holds : Verdict::Fails);
  }
  Condition real_valued() const {
    return property("real", "f is real-valued", Verdict::Holds, "test functions are real by construction");
  }
  Condition parameter(const std::string& label, const std::string& description, bool ok) const {
    return property(label, description, ok ? Verdict::Holds : Verdict::Fails, {}, ConditionKind::Parameter);
  }

  static std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
  }
};

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g;
  if (n <= 1 || lo == hi) return {lo};
  for (int i = 0; i < n; ++i) g.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
  return g;
}

struct Task {
  double r, M, N;
  unsigned family;
};

void run_cells(const TransformParams& p, const TestFunction& f, const QuadratureConfig& q,
               const std::vector<Task>& tasks, std::vector<ScanCell>& cells, int threads, double floor) {
  cells.assign(tasks.size(), ScanCell{});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const Task& t = tasks[i];
      ScanCell& c = cells[i];
      c.r = t.r;
      c.M = t.M;
      c.N = t.N;
      c.family = t.family;
      try {
        const transform::PartialIntegral I = transform::partial_transform(p, f, t.r, t.M, t.N, q);
        c.remainder = std::fabs(I.value);
        c.error_estimate = I.abs_error_estimate;
        // a missed tolerance only matters when the estimate could move the sup
        const bool usable = c.error_estimate <= std::max(floor, 1e-6 * c.remainder);
        c.status = I.error_flag && !usable ? CellStatus::Failed : CellStatus::Ok;
      } catch (const Error& e) {
        c.status = e.code() == ErrorCode::Divergent ? CellStatus::Divergent : CellStatus::Failed;
        c.remainder = c.status == CellStatus::Divergent ? kInf : 0.0;
      }
    }
  };
  const int n = std::max(1, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency()));
  if (n == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
}

void classify(RemainderScanReport& rep) {
  const std::size_t n = rep.m_grid.size();
  if (rep.divergent_cells > 0) {
    rep.verdict = ScanVerdict::Inconsistent;
    rep.reason = "the remainder to infinity diverges at some radius";
    return;
  }
  const std::size_t tail_start = n - std::max<std::size_t>(1, (n + 2) / 3);
  bool tail_quiet = true;
  for (std::size_t i = tail_start; i < n; ++i) tail_quiet = tail_quiet && rep.sup[i] <= rep.noise_floor;
  Samples pts;
  for (std::size_t i = 0; i < n; ++i)
    if (rep.sup[i] > rep.noise_floor) pts.emplace_back(rep.m_grid[i], rep.sup[i]);
  if (tail_quiet) {
    rep.verdict = ScanVerdict::ConsistentWithUniform;
    rep.reason = "sup over r reaches the quadrature noise floor";
    if (pts.size() >= 6) {
      rep.fit = decay_exponent(pts);
      rep.fit_valid = true;
    }
    return;
  }
  if (pts.size() < 6) {
    rep.verdict = ScanVerdict::Inconclusive;
    rep.reason = "fewer than 6 M values above the noise floor";
    return;
  }
  rep.fit = decay_exponent(pts);
  rep.fit_valid = true;
  const double first = rep.sup.front();
  const double last = rep.sup.back();
  if (rep.fit.exponent < -kHoldsMargin && last <= 0.5 * first) {
    rep.verdict = ScanVerdict::ConsistentWithUniform;
    rep.reason = "sup over r decays in M";
    return;
  }
  const double lowest = *std::min_element(rep.sup.begin(), rep.sup.end());
  const double decades = std::log10(rep.m_grid.back() / rep.m_grid.front());
  if (rep.fit.exponent >= -kFailsMargin && lowest >= kBoundedBelow * first && decades >= kScanDecades - 1e-9) {
    rep.verdict = ScanVerdict::Inconsistent;
    rep.reason = "sup over r stays above " + Builder::fmt(kBoundedBelow) + " x its first value over " +
                 Builder::fmt(decades) + " decades of M";
    return;
  }
  rep.verdict = ScanVerdict::Inconclusive;
  rep.reason = "decay of the sup is neither clear nor absent";
}

ScanVerdict opposite(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::ConsistentWithUniform: return ScanVerdict::Inconsistent;
    case ScanVerdict::Inconsistent: return ScanVerdict::ConsistentWithUniform;
    default: return ScanVerdict::Inconclusive;
  }
}

}  // namespace

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(ScanVerdict v) noexcept {
  switch (v) {
    case ScanVerdict::ConsistentWithUniform: return "consistent_with_uniform";
    case ScanVerdict::Inconsistent: return "inconsistent";
    case ScanVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

const char* to_string(TheoremVerdict v) noexcept {
  switch (v) {
    case TheoremVerdict::Pass: return "pass";
    case TheoremVerdict::Fail: return "fail";
    case TheoremVerdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

DecayFit decay_exponent(const Samples& samples) {
  require(samples.size() >= 6, "decay_exponent: need at least 6 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require(samples[i].second > 0.0 && std::isfinite(samples[i].second), "decay_exponent: values must be positive");
    require(samples[i].first > 0.0, "decay_exponent: M must be positive");
    if (i > 0) require(samples[i].first > samples[i - 1].first, "decay_exponent: M must increase");
  }
  const double n = static_cast<double>(samples.size());
  double sx = 0, sy = 0;
  for (const auto& [m, v] : samples) {
    sx += std::log(m);
    sy += std::log(v);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (const auto& [m, v] : samples) {
    sxx += (std::log(m) - mx) * (std::log(m) - mx);
    sxy += (std::log(m) - mx) * (std::log(v) - my);
  }
  DecayFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  double ss = 0;
  for (const auto& [m, v] : samples) {
    const double r = std::log(v) - fit.log_prefactor - fit.exponent * std::log(m);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.m_min = samples.front().first;
  fit.m_max = samples.back().first;
  fit.samples = static_cast<int>(samples.size());
  return fit;
}

Verdict little_o(const Samples& samples, double a, DecayFit* fit_out, std::string* note_out) {
  std::string note;
  DecayFit fit;
  Verdict v = Verdict::Inconclusive;
  Samples positive;
  bool divergent = false;
  for (const auto& s : samples) {
    if (!std::isfinite(s.second)) divergent = true;
    if (s.second > 0.0 && std::isfinite(s.second)) positive.push_back(s);
  }
  const bool zero_suffix = !samples.empty() && samples.back().second == 0.0 && !divergent &&
                           std::is_sorted(samples.begin(), samples.end(), [](const auto& x, const auto& y) {
                             return (x.second == 0.0) < (y.second == 0.0);
                           });
  if (divergent) {
    v = Verdict::Fails;
    note = "quantity is infinite";
  } else if (positive.empty()) {
    v = Verdict::Holds;
    note = "identically zero on the sampled range";
  } else if (positive.size() < 6) {
    if (zero_suffix) {
      v = Verdict::Holds;
      note = "vanishes beyond M = " + Builder::fmt(positive.back().first);
    } else {
      note = "fewer than 6 non-zero samples";
    }
  } else {
    fit = decay_exponent(positive);
    const double ratio0 = positive.front().second * std::pow(positive.front().first, -a);
    double lowest = kInf;
    for (const auto& [m, val] : positive) lowest = std::min(lowest, val * std::pow(m, -a));
    if (fit.exponent < a - kHoldsMargin && fit.rms_residual < kMaxRms) {
      v = Verdict::Holds;
    } else if (fit.exponent < a - kHoldsMargin) {
      // curved fit: accept steepening decay (faster than any power)
      bool steepening = true;
      double prev = kInf;
      for (std::size_t i = 1; i < positive.size(); ++i) {
        const double slope = std::log(positive[i].second / positive[i - 1].second) /
                             std::log(positive[i].first / positive[i - 1].first);
        steepening = steepening && slope < a - kHoldsMargin && slope <= prev + 0.05;
        prev = slope;
      }
      if (steepening) {
        v = Verdict::Holds;
        note = "local slopes steepen: faster than any power on the sampled range";
      } else {
        note = "rms residual " + Builder::fmt(fit.rms_residual) + " above " + Builder::fmt(kMaxRms);
      }
    } else if (fit.exponent >= a - kFailsMargin && lowest >= kBoundedBelow * ratio0) {
      v = Verdict::Fails;
    }
    if (zero_suffix && v == Verdict::Inconclusive) {
      v = Verdict::Holds;
      note = "vanishes beyond M = " + Builder::fmt(positive.back().first);
    }
  }
  if (fit_out) *fit_out = fit;
  if (note_out) *note_out = note;
  return v;
}

const Condition* ConditionReport::find(const std::string& label) const {
  for (const Condition& c : conditions)
    if (c.label == label) return &c;
  return nullptr;
}

Verdict ConditionReport::premises() const {
  Verdict worst = Verdict::Holds;
  for (const Condition& c : conditions) {
    if (!c.premise) continue;
    if (c.verdict == Verdict::Fails) return Verdict::Fails;
    if (c.verdict == Verdict::Inconclusive) worst = Verdict::Inconclusive;
  }
  return worst;
}

bool ConditionReport::premises_hold() const { return premises() == Verdict::Holds; }

const std::vector<TheoremInfo>& theorem_registry() { return kTheorems; }

const TheoremInfo& theorem(const std::string& id) {
  for (const TheoremInfo& t : kTheorems)
    if (t.id == id) return t;
  fail(ErrorCode::InvalidArgument, "unknown theorem id '" + id + "'");
}

ConditionReport check_hypotheses(const std::string& id, const TransformParams& p, const TestFunction& f,
                                 const DiagnosticsConfig& cfg) {
  theorem(id);
  check_parameters(id, p);
  require(cfg.k_min >= 0 && cfg.k_max - cfg.k_min >= 5, "check_hypotheses: need at least 6 dyadic samples");
  const Builder b{p, f, cfg};
  const double a = p.alpha();
  const double nu = p.nu();
  const double mu = p.mu();
  const double w = nu - a - 0.5;
  ConditionReport rep;
  rep.theorem_id = id;
  auto& c = rep.conditions;

  if (id == "thm1") {
    c = {b.head(nu), b.pointwise("thm<", -nu - 1), b.variation_tail("thm>", w, -a - 1.5), b.necsuf()};
  } else if (id == "costhmvanish") {
    c = {b.vanishing(), b.head(nu)};
    if (nu < a + 0.5 && nu > -1.0) {
      c.push_back(b.variation_tail("costhmsmall", 0.0, -nu - 1));
    } else {
      c.push_back(b.variation_tail("costhmbig", w, -a - 1.5));
    }
    c.push_back(b.necsuf());
  } else if (id == "corcosgm") {
    c = {b.gm(), b.real_valued(), b.head(1.0), b.necsuf()};
  } else if (id == "thm1_5") {
    c = {b.continuous(), b.head(nu), b.parameter("alpha>1/2", "alpha > 1/2", a > 0.5),
         b.pointwise("thm<", -nu - 1), b.necsuf()};
  } else if (id == "sinethm") {
    c = {b.head(nu), b.pointwise("cond1", mu - 1), b.variation_tail("cond2", w, mu + nu - a - 1.5)};
  } else if (id == "sinethmvanish") {
    c = {b.vanishing(), b.head(nu)};
    if (nu < a + 0.5 && mu < 1.0) {
      c.push_back(b.variation_tail("sinthmsmall", 0.0, mu - 1));
    } else {
      c.push_back(b.variation_tail("sinthmbig", w, mu + nu - a - 1.5));
    }
  } else if (id == "sinegm") {
    c = {b.gm(), b.head(nu), b.nonnegative(), b.pointwise("cond1-aux", mu - 1, false)};
    c[2].premise = false;
  } else if (id == "corgmsine") {
    c = {b.gm(), b.nonnegative(), b.head(nu), b.pointwise("cond1-aux", mu - 1, false)};
  } else if (id == "prop_unifrough") {
    c = {b.head(nu), b.l1_tail(w)};
  } else if (id == "cor_integrable") {
    c = {b.head(nu), b.l1_tail(nu)};
  } else if (id == "prop_pointwise") {
    c = {b.head(nu), b.variation_finite(w), b.pointwise("pointwisecond", -w)};
  } else if (id == "cor_pointwise_gm") {
    c = {b.gm(), b.head(nu), b.l1_tail(nu - a - 1.5)};
  } else if (id == "corol_rough") {
    c = {b.head(nu), b.variation_finite(w), b.pointwise("pointwisecond", -w), b.l1_tail(w)};
  }
  return rep;
}

std::vector<double> family_radii(unsigned family, const TransformParams& p, double M) {
  std::vector<double> r;
  if (family == kTuned) {
    if (p.regime() != Regime::AboveStrip) return r;
    const double s = p.weight() - p.alpha() - 1.5;
    const double base = std::pow(std::log(M), 2.0 / s);
    for (int j = 0; j < kPhaseShifts; ++j) r.push_back(base + j * 2.0 * std::numbers::pi / (kPhaseShifts * M));
  } else if (family == kScale) {
    r = {0.1 / M, 0.5 / M, 1.0 / M, 2.0 / M};
  } else if (family == kDeep) {
    r = {1.0 / (M * M)};
  }
  return r;
}

RemainderScanReport uniform_scan(const TransformParams& p, const TestFunction& f, const ScanConfig& cfg) {
  require(cfg.r_min > 0.0 && cfg.r_max >= cfg.r_min && cfg.r_points >= 1, "uniform_scan: bad r range");
  require(cfg.m_k_max - cfg.m_k_min >= 5, "uniform_scan: need at least 6 values of M");
  require(cfg.n_double || cfg.n_infinite, "uniform_scan: no N variant selected");
  cfg.quadrature.validate();
  const double lo = std::max(cfg.r_min, cfg.domain_lo);
  const double hi = std::min(cfg.r_max, cfg.domain_hi);
  require(lo <= hi, "uniform_scan: r range does not meet the domain");
  const auto inside = [&](double r) { return r > 0.0 && r >= cfg.domain_lo && r <= cfg.domain_hi; };

  RemainderScanReport rep;
  rep.r_grid = log_grid(lo, hi, cfg.r_points);
  for (int k = cfg.m_k_min; k <= cfg.m_k_max; ++k) rep.m_grid.push_back(std::exp2(k));
  rep.noise_floor = 10.0 * cfg.quadrature.abs_tol;

  std::vector<Task> tasks;
  for (double M : rep.m_grid) {
    std::vector<std::pair<double, unsigned>> radii;
    for (double r : rep.r_grid) radii.emplace_back(r, 0u);
    for (unsigned fam : {kTuned, kScale, kDeep}) {
      if (!(cfg.families & fam)) continue;
      for (double r : family_radii(fam, p, M))
        if (inside(r)) radii.emplace_back(r, fam);
    }
    for (double N : {2.0 * M, kInf}) {
      if ((N == kInf && !cfg.n_infinite) || (N != kInf && !cfg.n_double)) continue;
      for (const auto& [r, fam] : radii) tasks.push_back({r, M, N, fam});
    }
  }
  run_cells(p, f, cfg.quadrature, tasks, rep.cells, cfg.threads, rep.noise_floor);

  const std::size_t n = rep.m_grid.size();
  rep.sup_double.assign(n, 0.0);
  rep.sup_infinite.assign(n, 0.0);
  rep.sup.assign(n, 0.0);
  for (const ScanCell& c : rep.cells) {
    const std::size_t i = static_cast<std::size_t>(std::lround(std::log2(c.M))) - cfg.m_k_min;
    if (c.status == CellStatus::Failed) {
      ++rep.failed_cells;
      continue;
    }
    if (c.status == CellStatus::Divergent) ++rep.divergent_cells;
    double& s = c.N == kInf ? rep.sup_infinite[i] : rep.sup_double[i];
    s = std::max(s, c.remainder);
    rep.sup[i] = std::max(rep.sup[i], c.remainder);
  }
  classify(rep);
  return rep;
}

VerifyReport verify_theorem(const std::string& id, const TransformParams& p, const TestFunction& f,
                            const DiagnosticsConfig& cfg, const ScanConfig& scan) {
  VerifyReport out;
  out.hypotheses = check_hypotheses(id, p, f, cfg);
  const TheoremInfo& info = theorem(id);
  const ConditionReport& h = out.hypotheses;

  double edge = 0.0;
  bool split = false;
  if (id == "prop_unifrough") {
    edge = p.weight() - p.alpha() - 0.5;
    split = true;
  } else if (id == "prop_pointwise" || id == "cor_pointwise_gm") {
    edge = p.weight() - p.alpha() - 1.5;
    split = true;
  }
  if (split && edge < -kParamTol) out.domain = Domain::AwayFromOrigin;
  if (split && edge > kParamTol) out.domain = Domain::NearOrigin;

  const Verdict premises = h.premises();
  if (premises != Verdict::Holds) {
    out.explanation = premises == Verdict::Fails ? "a premise fails; the statement makes no claim"
                                                 : "a premise could not be decided";
    return out;
  }
  const Condition* criterion = nullptr;
  for (const Condition& c : h.conditions)
    if (!c.premise && c.label != "nonnegative") criterion = &c;
  switch (info.kind) {
    case TheoremKind::Sufficient:
      out.expected = ScanVerdict::ConsistentWithUniform;
      break;
    case TheoremKind::Equivalence:
      if (criterion->verdict == Verdict::Holds) out.expected = ScanVerdict::ConsistentWithUniform;
      if (criterion->verdict == Verdict::Fails) out.expected = ScanVerdict::Inconsistent;
      break;
    case TheoremKind::GMCriterion: {
      const Condition* nonneg = h.find("nonnegative");
      if (criterion->verdict == Verdict::Holds) out.expected = ScanVerdict::ConsistentWithUniform;
      if (criterion->verdict == Verdict::Fails && nonneg->verdict == Verdict::Holds) {
        out.expected = ScanVerdict::Inconsistent;
      }
      break;
    }
  }

  ScanConfig sc = scan;
  sc.families = kTuned | kScale | (p.regime() == Regime::CosineType ? kDeep : 0u);
  if (out.domain == Domain::AwayFromOrigin) {
    sc.domain_lo = 1.0;
    sc.r_min = std::max(sc.r_min, 1.0);
    sc.r_max = std::max(sc.r_max, sc.r_min);
  } else if (out.domain == Domain::NearOrigin) {
    sc.domain_hi = 1.0;
    sc.r_max = std::min(sc.r_max, 1.0);
    sc.r_min = std::min(sc.r_min, sc.r_max);
  }
  out.scan = uniform_scan(p, f, sc);
  out.scanned = true;

  const ScanVerdict got = out.scan.verdict;
  if (out.expected == ScanVerdict::Inconclusive) {
    out.explanation = "the criterion is undecided, so no direction is predicted";
  } else if (got == out.expected) {
    out.verdict = TheoremVerdict::Pass;
    out.explanation = std::string("scan is ") + to_string(got) + " as predicted";
  } else if (got == opposite(out.expected)) {
    out.verdict = TheoremVerdict::Fail;
    out.explanation = std::string("predicted ") + to_string(out.expected) + " but the scan is " + to_string(got);
  } else {
    out.explanation = std::string("predicted ") + to_string(out.expected) + "; scan inconclusive (" +
                      out.scan.reason + ")";
  }
  return out;
}

}  // namespace whankel::diagnostics
