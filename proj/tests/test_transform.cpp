#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixture.hpp"
#include "oracle.hpp"
#include "whankel/bessel.hpp"
#include "whankel/error.hpp"
#include "whankel/gallery.hpp"
#include "whankel/primitive.hpp"
#include "whankel/transform.hpp"

using namespace whankel;
using namespace whankel::transform;
using functions::kInf;
using functions::TestFunction;
using functions::Term;

namespace {

TestFunction g(const std::string& name) { return functions::gallery(name); }

// t^p e^{−a t}
TestFunction damped_power(double p, double a) {
  Term t;
  t.power = p;
  t.exp_rate = a;
  return TestFunction("damped_power", 1.0, {{0.0, kInf, functions::Expr{{t}}}});
}

double kernel_oracle(const TransformParams& p, const TestFunction& f, double r, double M, double N) {
  auto h = [&](double t) { return kernel(p, t, r) * f.value(t); };
  return gk_oracle(h, M, N, std::min(1.0, 1.0 / r));
}

}  // namespace

TEST_CASE("regime classification") {
  CHECK(cosine_params().regime() == Regime::CosineType);
  CHECK(sine_params().regime() == Regime::SineType);
  CHECK(TransformParams(0.0, 1.0, -2.0).regime() == Regime::BelowStrip);
  CHECK(TransformParams(0.0, 1.0, 0.5).regime() == Regime::SineType);
  CHECK(TransformParams(0.0, 1.0, 0.5 + 1e-13).regime() == Regime::SineType);
  CHECK(TransformParams(0.0, 1.0, 0.6).regime() == Regime::AboveStrip);
  CHECK(TransformParams(1.0, 0.3, -0.3 + 5e-13).regime() == Regime::CosineType);
  CHECK(hankel_params(0.0).regime() == Regime::CosineType);
  CHECK(sine_params().bounded_kernel_line());
  CHECK(cosine_params().bounded_kernel_line());
  CHECK_FALSE(TransformParams(1.0, 0.5, 0.0).bounded_kernel_line());
  CHECK(std::string(to_string(Regime::AboveStrip)) == "above_strip");
  CHECK_THROWS_AS(TransformParams(0.0, kInf, 0.0), Error);
  CHECK_THROWS_AS(TransformParams(-0.7, 0.0, 0.0), Error);
}

TEST_CASE("kernel examples") {
  for (double r : {0.1, 1.0, 7.0}) {
    for (double t : {0.01, 1.0, 33.0}) {
      CHECK(kernel(sine_params(), t, r) == doctest::Approx(std::sin(r * t)).epsilon(1e-14));
      CHECK(kernel(cosine_params(), t, r) == doctest::Approx(std::cos(r * t)).epsilon(1e-14));
    }
  }
  CHECK(kernel(cosine_params(), 2.0, 0.0) == 1.0);
  CHECK(kernel(TransformParams(0.0, 2.0, -2.0), 3.0, 0.0) == 9.0);
  CHECK(kernel(sine_params(), 2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(kernel(TransformParams(0.0, 1.0, -2.0), 1.0, 0.0), Error);
  CHECK_THROWS_AS(kernel(sine_params(), 0.0, 1.0), Error);
}

TEST_CASE("bounded kernel line") {
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    const TransformParams p(a, a + 0.5, 0.0);
    REQUIRE(p.bounded_kernel_line());
    // the sup is reached (or approached) at moderate z
    double near = 0;
    double far = 0;
    for (double z = 1e-3; z < 100; z *= 1.001) near = std::max(near, std::fabs(kernel(p, z, 1.0)));
    for (double z = 100; z < 1e5; z *= 1.0001) far = std::max(far, std::fabs(kernel(p, z, 1.0)));
    CHECK(std::isfinite(near));
    CHECK(far <= 1.001 * near);
    // off the line the kernel grows like z^{ν−α−1/2}
    const TransformParams q(a, a + 1.0, 0.0);
    CHECK(std::fabs(kernel(q, 1e4 + 0.3, 1.0)) < 1e3);
    double big = 0;
    for (double z = 1e4; z < 1e4 + 10; z += 0.1) big = std::max(big, std::fabs(kernel(q, z, 1.0)));
    CHECK(big > 10);
  }
}

TEST_CASE("zero function") {
  const TestFunction zero("zero", 1.0, std::vector<functions::Piece>{});
  const PartialIntegral I = partial_transform(TransformParams(1.0, 0.5, 0.3), zero, 2.0, 0.0, 50.0);
  CHECK(I.value == 0.0);
  CHECK(evaluate(sine_params(), zero, 3.0).value == 0.0);
  CHECK(evaluate(cosine_params(), zero, 0.0).value == 0.0);
}

TEST_CASE("1/t over [1/(2r), 1/r] is comparable to log 2 / r") {
  const TestFunction f = g("inv_t");
  // (1/r)∫_{1/(2r)}^{1/r} t^{−1} dt = log 2 / r
  CHECK(gk_oracle([](double t) { return 1 / t; }, 0.5, 1.0, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  for (double nu : {0.25, 0.5, 1.0, 1.4}) {
    const TransformParams p(1.0, nu, -1.0);
    for (double r : {1e-3, 0.1, 1.0, 10.0, 300.0}) {
      const double v = partial_transform(p, f, r, 0.5 / r, 1.0 / r).value;
      const double ratio = v / (std::log(2.0) / r);
      INFO("nu=" << nu << " r=" << r);
      CHECK(ratio >= 0.5);
      CHECK(ratio <= 2.0);
    }
  }
  // ratio is r-independent by scaling; frozen from mpmath quad at 30 digits
  const double v = partial_transform(TransformParams(1.0, 0.5, -1.0), f, 3.0, 1 / 6.0, 1 / 3.0).value;
  CHECK(v * 3.0 / std::log(2.0) == doctest::Approx(0.787300581405386).epsilon(1e-10));
}

TEST_CASE("linearity") {
  const TestFunction f = g("exp_decay");
  const TestFunction h = damped_power(1.5, 0.5);
  const TransformParams p(0.5, 1.2, 0.1);
  for (double r : {0.3, 4.0}) {
    const PartialIntegral a = partial_transform(p, f, r, 0.2, 30.0);
    const PartialIntegral b = partial_transform(p, h, r, 0.2, 30.0);
    const PartialIntegral s = partial_transform(p, f.plus(h), r, 0.2, 30.0);
    CHECK(std::fabs(s.value - a.value - b.value) <=
          s.abs_error_estimate + a.abs_error_estimate + b.abs_error_estimate + 1e-14 * std::fabs(s.value));
  }
}

TEST_CASE("origin trichotomy") {
  const TestFunction f = g("exp_decay");
  CHECK_THROWS_AS(evaluate(TransformParams(0.0, 0.5, -1.0), f, 0.0), Error);
  const Evaluation m = evaluate(TransformParams(0.0, 2.0, -2.0), f, 0.0);
  CHECK(m.origin == OriginCase::MomentIntegral);
  CHECK(m.value == doctest::Approx(2.0).epsilon(1e-10));
  const Evaluation z = evaluate(sine_params(), f, 0.0);
  CHECK(z.origin == OriginCase::Zero);
  CHECK(z.value == 0.0);
  CHECK(evaluate(sine_params(), f, 1.0).origin == OriginCase::NotAtOrigin);
}

TEST_CASE("classical cosine and sine pairs of exp(-t)") {
  const TestFunction f = g("exp_decay");
  for (double r = 0.0; r <= 50.0; r += 0.5) {
    INFO("r=" << r);
    CHECK(std::fabs(evaluate(cosine_params(), f, r).value - 1 / (1 + r * r)) <= 1e-8 / (1 + r * r));
    CHECK(std::fabs(evaluate(sine_params(), f, r).value - r / (1 + r * r)) <= 1e-8 * std::max(r / (1 + r * r), 1e-3));
  }
}

TEST_CASE("Hankel transform of the Gaussian") {
  const TestFunction f = g("gaussian");
  const auto rows = load_fixture("hankel_gaussian.txt");
  REQUIRE(rows.size() == 3);
  for (const FixtureRow& row : rows) {
    const Evaluation e = hankel_transform(row.a, f, row.b);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(row.value).epsilon(1e-7));
    CHECK(e.value == doctest::Approx(std::exp(-std::numbers::pi * row.b * row.b)).epsilon(1e-7));
  }
  CHECK(radial_fourier_params(3).alpha() == 0.5);
  CHECK_THROWS_AS(radial_fourier_params(0), Error);
}

TEST_CASE("Cauchy remainder") {
  const TestFunction f = g("exp_decay");
  CHECK(cauchy_remainder(cosine_params(), f, 2.0, 5.0, 5.0) == 0.0);
  CHECK_THROWS_AS(cauchy_remainder(cosine_params(), f, 2.0, 0.0, 5.0), Error);
  for (double M : {1.0, 4.0, 10.0, 20.0}) {
    double sup = 0;
    for (double r = 0.05; r < 40; r *= 1.3) sup = std::max(sup, cauchy_remainder(cosine_params(), f, r, M, 2 * M));
    INFO("M=" << M);
    CHECK(sup <= std::exp(-M));
    CHECK(sup >= 1e-3 * std::exp(-M));
  }
}

TEST_CASE("homogeneity") {
  const TestFunction f = g("sine_decay");
  const TransformParams p(1.0, 0.5, 0.7);
  for (double c : {-3.0, 1e-4, 250.0}) {
    const double a = evaluate(p, f.scaled(c), 1.7).value;
    const double b = evaluate(p, f, 1.7).value;
    CHECK(a == doctest::Approx(c * b).epsilon(1e-9));
  }
}

TEST_CASE("Simpson oracle") {
  const TestFunction f = damped_power(1.0, 0.3);
  for (double a : {-0.5, 0.0, 1.5}) {
    const TransformParams p(a, 1.3, 0.2);
    for (double r : {0.4, 3.0}) {
      const double M = 0.5;
      const double N = 20.0;
      // about 10 times the panel node density
      const int n = 2 * static_cast<int>(std::ceil(10 * 33 * (1 + r * (N - M) / std::numbers::pi)));
      const double ref = simpson([&](double t) { return kernel(p, t, r) * f.value(t); }, M, N, n);
      const double v = partial_transform(p, f, r, M, N).value;
      INFO("alpha=" << a << " r=" << r);
      CHECK(std::fabs(v - ref) <= 1e-6 * std::fabs(ref));
    }
  }
}

TEST_CASE("monomial integrand matches the reduction expansion") {
  const TestFunction one = g("one");
  for (double a : {-0.5, 0.0, 1.0}) {
    for (int l : {0, 1}) {
      const double nu = 2 * (a + l) + 1;
      const TransformParams p(a, nu, -nu);
      const double r = 1.3;
      const double M = 0.7;
      const double N = 9.0;
      const primitive::ReductionExpansion e = primitive::reduction(bessel::Order(a), nu, 3);
      REQUIRE(e.degenerate);
      const double expected = primitive::boundary_sum(e, bessel::Order(a), nu, r, M, N);
      const double v = partial_transform(p, one, r, M, N).value;
      INFO("alpha=" << a << " l=" << l);
      CHECK(std::fabs(v - expected) <= 1e-8 * std::fabs(expected));
    }
  }
  // non-degenerate: boundary sum plus the residual order-(α+k) integral
  const double a = 0.3;
  const double nu = 1.1;
  const primitive::ReductionExpansion e = primitive::reduction(bessel::Order(a), nu, 2);
  const TransformParams shifted(a + 2, nu, -nu);
  const double expected = primitive::boundary_sum(e, bessel::Order(a), nu, 2.0, 1.0, 12.0) +
                          e.residual_coeff * partial_transform(shifted, one, 2.0, 1.0, 12.0).value;
  const double v = partial_transform(TransformParams(a, nu, -nu), one, 2.0, 1.0, 12.0).value;
  CHECK(std::fabs(v - expected) <= 1e-8 * std::fabs(expected));
}

TEST_CASE("error estimates are honest") {
  struct Case {
    TransformParams p;
    TestFunction f;
    double r, M, N;
  };
  const std::vector<Case> cases = {
      {sine_params(), g("exp_decay"), 2.0, 0.0, 15.0},
      {TransformParams(1.0, 0.5, 0.0), damped_power(-0.5, 0.2), 5.0, 0.0, 40.0},
      {TransformParams(0.0, 1.0, -1.0), g("inv_t"), 0.7, 1.0, 200.0},
      {TransformParams(2.5, 0.0, 1.0), g("sine_decay"), 3.0, 1.0, 60.0},
      {hankel_params(0.0), g("gaussian"), 6.0, 0.0, 4.0},
  };
  for (const Case& c : cases) {
    const PartialIntegral I = partial_transform(c.p, c.f, c.r, c.M, c.N);
    const double ref = kernel_oracle(c.p, c.f, c.r, std::max(c.M, 1e-300), c.N);
    const double oracle_rounding = 1e-15 * std::fabs(ref) * std::sqrt(c.r * (c.N - c.M) + 1);
    INFO(c.f.label() << " r=" << c.r);
    CHECK(std::fabs(I.value - ref) <= 10 * I.abs_error_estimate + oracle_rounding);
    CHECK_FALSE(I.error_flag);
  }
}

TEST_CASE("dyadic tail policy") {
  const TestFunction f = g("exp_decay");
  const Evaluation e = evaluate(cosine_params(), f, 2.0, {}, TailPolicy::Dyadic);
  CHECK(e.converged);
  CHECK(e.value == doctest::Approx(0.2).epsilon(1e-9));
  REQUIRE(e.increments.size() >= 3);
  REQUIRE(e.increments.size() == e.dyadic_N.size());
  for (std::size_t i = 1; i < e.dyadic_N.size(); ++i) CHECK(e.dyadic_N[i] == 2 * e.dyadic_N[i - 1]);
  const Evaluation s = evaluate(TransformParams(0.5, 1.0, 0.0), g("sine_decay"), 1.5, {}, TailPolicy::Dyadic);
  const Evaluation s2 = evaluate(TransformParams(0.5, 1.0, 0.0), g("sine_decay"), 1.5);
  CHECK(s.value == doctest::Approx(s2.value).epsilon(1e-7));
}

TEST_CASE("divergent transforms are reported") {
  // f = 1 in the cosine regime: ∫ cos(rt) dt has no limit
  CHECK_THROWS_AS(evaluate(cosine_params(), g("one"), 1.0), Error);
  CHECK_THROWS_AS(evaluate(cosine_params(), g("one"), 1.0, {}, TailPolicy::Dyadic), Error);
}

TEST_CASE("weighted tails") {
  const TestFunction e = g("exp_decay");
  for (double x : {0.5, 3.0, 20.0}) {
    const functions::TailIntegral t = functions::tail_integral(e, 0.0, x);
    CHECK(t.value == doctest::Approx(std::exp(-x)).epsilon(1e-10));
    CHECK(t.head == doctest::Approx(1 - std::exp(-x)).epsilon(1e-10));
    CHECK(t.head_defined);
  }
  CHECK_THROWS_AS(functions::tail_integral(g("inv_t"), 0.0, 1.0), Error);
  const functions::TailIntegral h = functions::tail_integral(g("inv_t"), -1.0, 2.0);
  CHECK(h.value == doctest::Approx(0.5).epsilon(1e-10));
  CHECK_FALSE(h.head_defined);

  // ∫_x^∞ sin t / t² dt = sin x / x − Ci(x); mpmath at 30 digits
  Term s;
  s.power = -2.0;
  s.osc = functions::Osc::Sine;
  s.frequency = 1.0;
  const TestFunction sinc2("sin_t2", 1.0, {{0.0, kInf, functions::Expr{{s}}}});
  CHECK(functions::tail_integral(sinc2, 0.0, 1.0).value == doctest::Approx(0.504067061906928372).epsilon(1e-10));
  CHECK(functions::tail_integral(sinc2, 0.0, 3.0).value == doctest::Approx(-0.0725897833213779203).epsilon(1e-9));
}
