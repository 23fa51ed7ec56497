#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "whankel/diagnostics.hpp"
#include "whankel/error.hpp"
#include "whankel/gallery.hpp"
#include "whankel/transform.hpp"

using namespace whankel;
using namespace whankel::diagnostics;
using functions::GalleryParams;
using functions::TestFunction;
using transform::TransformParams;

namespace {

using Samples = std::vector<std::pair<double, double>>;

template <class F>
Samples dyadic(int k0, int k1, F v) {
  Samples s;
  for (int k = k0; k <= k1; ++k) s.emplace_back(std::exp2(k), v(std::exp2(k)));
  return s;
}

TestFunction g(const std::string& name, const TransformParams& p, std::map<std::string, double> knobs = {}) {
  return functions::gallery(name, GalleryParams{p.alpha(), p.nu(), p.mu(), std::move(knobs)});
}

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

const TransformParams kCos = transform::cosine_params();
const TransformParams kSin = transform::sine_params();
const TransformParams kAbove{0.5, 1.0, 1.5};

}  // namespace

TEST_CASE("decay_exponent examples") {
  const DecayFit a = decay_exponent(dyadic(3, 12, [](double M) { return 1.0 / (M * M); }));
  CHECK(a.exponent == doctest::Approx(-2.0).epsilon(1e-13));
  CHECK(a.rms_residual < 1e-12);
  CHECK(a.m_min == 8.0);
  CHECK(a.m_max == 4096.0);
  CHECK(a.samples == 10);

  const DecayFit b = decay_exponent(dyadic(4, 20, [](double M) { return 1.0 / (M * std::log(M)); }));
  CHECK(b.exponent > -1.3);
  CHECK(b.exponent < -1.0);

  const DecayFit c = decay_exponent(dyadic(0, 9, [](double) { return 3.0; }));
  CHECK(std::fabs(c.exponent) < 1e-13);
  CHECK(c.log_prefactor == doctest::Approx(std::log(3.0)));
}

TEST_CASE("decay_exponent rejects bad samples") {
  const auto bad = [](const Samples& s) {
    return throws_code(ErrorCode::InvalidArgument, [&] { decay_exponent(s); });
  };
  CHECK(bad(dyadic(0, 4, [](double M) { return M; })));
  CHECK(bad(dyadic(0, 8, [](double M) { return M > 8 ? 0.0 : 1.0; })));
  Samples s = dyadic(0, 8, [](double M) { return M; });
  std::swap(s[2], s[3]);
  CHECK(bad(s));
}

TEST_CASE("little_o margins") {
  CHECK(little_o(dyadic(5, 22, [](double M) { return std::pow(M, -1.2); }), -1.0) == Verdict::Holds);
  CHECK(little_o(dyadic(5, 22, [](double M) { return 5.0 / M; }), -1.0) == Verdict::Fails);
  CHECK(little_o(dyadic(5, 22, [](double M) { return std::pow(M, -1.05); }), -1.0) == Verdict::Inconclusive);
  // exponent passes but the sampled ratio dips well below its first value
  CHECK(little_o(dyadic(5, 22, [](double M) { return (M == 1024.0 ? 0.01 : 1.0) / M; }), -1.0) == Verdict::Inconclusive);
  CHECK(little_o(dyadic(5, 22, [](double M) { return std::exp(-M); }), 0.0) == Verdict::Holds);
  CHECK(little_o(dyadic(5, 22, [](double M) { return M < 100 ? 1.0 : 0.0; }), -5.0) == Verdict::Holds);
  CHECK(little_o(dyadic(5, 22, [](double) { return 0.0; }), -5.0) == Verdict::Holds);
  CHECK(little_o(dyadic(5, 22, [](double M) { return M > 1e4 ? functions::kInf : 1.0; }), 0.0) == Verdict::Fails);

  DecayFit fit;
  std::string note;
  little_o(dyadic(5, 22, [](double M) { return std::pow(M, -3.0); }), -1.0, &fit, &note);
  CHECK(fit.exponent == doctest::Approx(-3.0));
  CHECK(fit.samples == 18);
}

TEST_CASE("registry") {
  for (const char* id : {"thm1", "costhmvanish", "corcosgm", "thm1_5", "sinethm", "sinethmvanish", "sinegm",
                         "corgmsine", "prop_pointwise", "prop_unifrough", "corol_rough", "cor_integrable",
                         "cor_pointwise_gm"}) {
    CHECK(theorem(id).id == id);
  }
  CHECK(theorem("thm1").kind == TheoremKind::Equivalence);
  CHECK(theorem("sinegm").kind == TheoremKind::GMCriterion);
  CHECK(theorem("sinethm").kind == TheoremKind::Sufficient);
  CHECK(throws_code(ErrorCode::InvalidArgument, [] { theorem("thm9"); }));
}

TEST_CASE("check_hypotheses rejects unknown ids and regime mismatches") {
  const TestFunction f = g("exp_decay", kCos);
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { check_hypotheses("nope", kCos, f); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { check_hypotheses("thm1", kSin, f); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { check_hypotheses("sinethm", kCos, f); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { check_hypotheses("sinegm", TransformParams(0.5, 1.0, 1.0), f); }));
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { check_hypotheses("corol_rough", TransformParams(1.0, 0.0, 0.0), f); }));
}

TEST_CASE("thm1 with t^(-nu-2) sin t: pointwise condition holds, variation condition fails") {
  const ConditionReport rep = check_hypotheses("thm1", kCos, g("sine_decay", kCos));
  REQUIRE(rep.find("thm<"));
  REQUIRE(rep.find("thm>"));
  CHECK(rep.find("thm<")->verdict == Verdict::Holds);
  CHECK(rep.find("thm>")->verdict == Verdict::Fails);
  CHECK(rep.find("thm>")->fit.exponent == doctest::Approx(-1.0).epsilon(0.02));
  CHECK(rep.premises() == Verdict::Fails);
  // neither half of the vanishing-function split holds either
  CHECK(check_hypotheses("costhmvanish", kCos, g("sine_decay", kCos)).find("costhmbig")->verdict == Verdict::Fails);
}

TEST_CASE("sinegm with t^(mu-1)/log t: cond1-aux holds") {
  const ConditionReport rep = check_hypotheses("sinegm", kSin, g("power_log_mu", kSin));
  CHECK(rep.find("cond1-aux")->verdict == Verdict::Holds);
  CHECK(rep.find("gm")->verdict == Verdict::Holds);
  CHECK(rep.find("nonnegative")->verdict == Verdict::Holds);
  // M^{1−μ} f(M) = 1/log M
  for (const auto& [M, v] : rep.find("cond1-aux")->samples) {
    CHECK(v * std::pow(M, 1.0 - kSin.mu()) == doctest::Approx(1.0 / std::log(M)).epsilon(1e-12));
  }
}

TEST_CASE("sinethm with t^(mu-1): cond1 fails but holds with O") {
  const ConditionReport rep = check_hypotheses("sinethm", kSin, g("one_minus_mu_power", kSin));
  const Condition* c = rep.find("cond1");
  CHECK(c->verdict == Verdict::Fails);
  for (const auto& [M, v] : c->samples) CHECK(v * std::pow(M, 1.0 - kSin.mu()) == doctest::Approx(1.0));
}

TEST_CASE("parameter and structural conditions") {
  const TransformParams p{1.0, 0.0, 0.0};
  CHECK(check_hypotheses("thm1_5", p, g("exp_decay", p)).find("alpha>1/2")->verdict == Verdict::Holds);
  CHECK(check_hypotheses("thm1_5", kCos, g("exp_decay", kCos)).find("alpha>1/2")->verdict == Verdict::Fails);
  CHECK(check_hypotheses("thm1_5", p, g("step", p, {{"t0", 3.0}})).find("continuous")->verdict == Verdict::Fails);
  const TransformParams q{0.0, 0.5, 0.5};
  const TestFunction spikes = g("lacunary_spikes", q, {{"beta", 0.0}});
  CHECK(check_hypotheses("cor_pointwise_gm", q, spikes).find("gm")->verdict == Verdict::Fails);
  const ConditionReport cs = check_hypotheses("corgmsine", q, g("sine_mu", q));
  CHECK(cs.find("nonnegative")->verdict == Verdict::Fails);
}

TEST_CASE("integrability conditions report the integral") {
  const ConditionReport rep = check_hypotheses("cor_integrable", kSin, g("exp_decay", kSin));
  CHECK(rep.find("head")->value == doctest::Approx(1.0 - 2.0 / std::numbers::e).epsilon(1e-8));
  CHECK(rep.find("l1_tail")->value == doctest::Approx(2.0 / std::numbers::e).epsilon(1e-8));
  const ConditionReport div = check_hypotheses("thm1", kCos, g("inv_t_log", kCos));
  CHECK(div.find("necsuf")->verdict == Verdict::Fails);
  CHECK(std::isinf(div.find("necsuf")->value));
}

TEST_CASE("family radii") {
  CHECK(family_radii(kTuned, kCos, 64.0).empty());
  const std::vector<double> t = family_radii(kTuned, kAbove, 64.0);
  REQUIRE(t.size() == 16);
  CHECK(t[0] == doctest::Approx(std::pow(std::log(64.0), 4.0)));
  CHECK(t[1] - t[0] == doctest::Approx(std::numbers::pi / 512.0));
  CHECK(family_radii(kScale, kCos, 64.0)[2] == doctest::Approx(1.0 / 64.0));
  CHECK(family_radii(kDeep, kCos, 64.0)[0] == doctest::Approx(1.0 / 4096.0));
}

TEST_CASE("scan: e^-t under the cosine transform") {
  const RemainderScanReport rep = uniform_scan(kCos, g("exp_decay", kCos));
  CHECK(rep.verdict == ScanVerdict::ConsistentWithUniform);
  CHECK(rep.failed_cells == 0);
  // |∫_M^N e^{−t} cos(rt) dt| ≤ e^{−M}
  for (std::size_t i = 0; i < rep.m_grid.size(); ++i) CHECK(rep.sup[i] <= std::exp(-rep.m_grid[i]) * (1 + 1e-9));
  CHECK(rep.sup[2] < 1e-25);
  CHECK(rep.cells.size() == rep.m_grid.size() * 2 * rep.r_grid.size());
}

TEST_CASE("scan: log counterexample above the strip is inconsistent") {
  const RemainderScanReport rep = uniform_scan(kAbove, g("log_counterexample", kAbove));
  CHECK(rep.verdict == ScanVerdict::Inconsistent);
  CHECK(rep.m_grid.back() / rep.m_grid.front() >= 1000.0);
  double tuned_min = functions::kInf;
  for (std::size_t i = 0; i < rep.m_grid.size(); ++i) {
    double best = 0.0;
    for (const ScanCell& c : rep.cells)
      if (c.M == rep.m_grid[i] && c.family == kTuned) best = std::max(best, c.remainder);
    tuned_min = std::min(tuned_min, best);
  }
  CHECK(tuned_min >= 0.1);
}

TEST_CASE("scan: lacunary spikes with unit widths inside the strip") {
  const TransformParams p{0.0, 0.5, 0.5};
  const RemainderScanReport rep = uniform_scan(p, g("lacunary_spikes", p, {{"beta", 0.0}, {"eps_scale", 1.0}}));
  CHECK(rep.verdict == ScanVerdict::ConsistentWithUniform);
  CHECK(rep.failed_cells == 0);
}

TEST_CASE("scan: certified divergence makes the scan inconsistent") {
  const RemainderScanReport rep = uniform_scan(kCos, g("one", kCos));
  CHECK(rep.divergent_cells > 0);
  CHECK(rep.verdict == ScanVerdict::Inconsistent);
}

TEST_CASE("scan: enlarging the r grid never lowers the sup") {
  ScanConfig coarse;
  coarse.r_points = 9;
  ScanConfig fine = coarse;
  fine.r_points = 17;
  const TestFunction f = g("inv_t_log2", kCos);
  const RemainderScanReport a = uniform_scan(kCos, f, coarse);
  const RemainderScanReport b = uniform_scan(kCos, f, fine);
  for (std::size_t i = 0; i < a.sup.size(); ++i) CHECK(b.sup[i] >= a.sup[i]);
}

TEST_CASE("scan: results do not depend on thread count") {
  ScanConfig one;
  one.threads = 1;
  ScanConfig many;
  many.threads = 6;
  const TestFunction f = g("power_log_mu", kSin);
  const RemainderScanReport a = uniform_scan(kSin, f, one);
  const RemainderScanReport b = uniform_scan(kSin, f, many);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].r == b.cells[i].r);
    CHECK(a.cells[i].remainder == b.cells[i].remainder);
  }
  CHECK(a.sup == b.sup);
  CHECK(a.verdict == b.verdict);
}

TEST_CASE("scan rejects bad configurations") {
  const TestFunction f = g("exp_decay", kCos);
  ScanConfig c;
  c.m_k_max = c.m_k_min + 3;
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { uniform_scan(kCos, f, c); }));
  ScanConfig d;
  d.domain_lo = 1e3;
  CHECK(throws_code(ErrorCode::InvalidArgument, [&] { uniform_scan(kCos, f, d); }));
}

TEST_CASE("t g(t) decays for GM members with convergent integral") {
  struct Member {
    const char* name;
    std::map<std::string, double> knobs;
  };
  for (const Member& m : {Member{"exp_decay", {}}, Member{"inv_t_log2", {}}, Member{"power", {{"beta", 1.5}}}}) {
    const TestFunction f = g(m.name, kCos, m.knobs);
    REQUIRE(check_hypotheses("corcosgm", kCos, f).find("gm")->verdict == Verdict::Holds);
    Samples s;
    for (int k = 2; k <= 9; ++k) s.emplace_back(std::exp2(k), std::exp2(k) * f.value(std::exp2(k)));
    CHECK(decay_exponent(s).exponent < 0.0);
  }
}

TEST_CASE("verify: corgmsine with 1/t passes") {
  const TransformParams p{0.5, 0.5, 0.5};
  const VerifyReport v = verify_theorem("corgmsine", p, g("inv_t", p));
  CHECK(v.hypotheses.find("cond1-aux")->verdict == Verdict::Holds);
  CHECK(v.scan.verdict == ScanVerdict::ConsistentWithUniform);
  CHECK(v.verdict == TheoremVerdict::Pass);
}

TEST_CASE("verify: thm1 necessity for 1/(t log t)") {
  const TestFunction f = g("inv_t_log", kCos);
  for (int k = 6; k <= 14; k += 2) {
    const double M = std::exp2(k);
    const double rem = transform::cauchy_remainder(kCos, f, 1.0 / (M * M), M, functions::kInf);
    CHECK(rem > 0.5);
  }
  const VerifyReport v = verify_theorem("thm1", kCos, f);
  CHECK(v.expected == ScanVerdict::Inconsistent);
  CHECK(v.verdict == TheoremVerdict::Pass);
}

TEST_CASE("verify: sinegm in both directions") {
  const VerifyReport good = verify_theorem("sinegm", kSin, g("power_log_mu", kSin));
  CHECK(good.verdict == TheoremVerdict::Pass);
  CHECK(good.scan.verdict == ScanVerdict::ConsistentWithUniform);
  const VerifyReport bad = verify_theorem("sinegm", kSin, g("one_minus_mu_power", kSin));
  CHECK(bad.hypotheses.find("cond1-aux")->verdict == Verdict::Fails);
  CHECK(bad.expected == ScanVerdict::Inconsistent);
  CHECK(bad.verdict == TheoremVerdict::Pass);
}

TEST_CASE("verify: failed premise gives inconclusive without a scan") {
  const VerifyReport v = verify_theorem("thm1", kCos, g("sine_decay", kCos));
  CHECK(v.verdict == TheoremVerdict::Inconclusive);
  CHECK_FALSE(v.scanned);
}

TEST_CASE("verify: domain follows the sign of the weight") {
  const TransformParams away{0.0, 0.0, 0.2};
  const VerifyReport a = verify_theorem("prop_unifrough", away, g("exp_decay", away));
  CHECK(a.domain == Domain::AwayFromOrigin);
  for (const ScanCell& c : a.scan.cells) CHECK(c.r >= 1.0);
  CHECK(a.verdict == TheoremVerdict::Pass);
  const VerifyReport n = verify_theorem("prop_pointwise", kAbove, g("log_counterexample", kAbove));
  CHECK(n.domain == Domain::NearOrigin);
  for (const ScanCell& c : n.scan.cells) CHECK(c.r <= 1.0);
  CHECK(n.verdict == TheoremVerdict::Pass);
  // on the endpoint the claim covers every r
  const TransformParams edge{0.0, 0.5, 0.0};
  const VerifyReport e = verify_theorem("prop_unifrough", edge, g("exp_decay", edge));
  CHECK(e.domain == Domain::Everywhere);
  CHECK(e.verdict == TheoremVerdict::Pass);
}
