#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "whankel/bessel.hpp"
#include "whankel/error.hpp"
#include "whankel/primitive.hpp"

using namespace whankel;
using namespace whankel::primitive;
using bessel::Order;

namespace {

// ∫_M^N t^ν j_α(rt) dt by plain Gauss–Kronrod.
struct Reference {
  double value;
};

Reference reference(double alpha, double nu, double r, double M, double N) {
  const Order o(alpha);
  auto f = [&](double t) { return std::pow(t, nu) * bessel::j(o, r * t); };
  return {gk_oracle(f, M, N, std::min(1.0, 1.0 / r))};
}

double expansion_value(const ReductionExpansion& e, double alpha, double nu, double r, double M, double N) {
  double v = boundary_sum(e, Order(alpha), nu, r, M, N);
  if (!e.degenerate) {
    const int k = static_cast<int>(e.boundary_coeffs.size());
    v += e.residual_coeff * reference(alpha + k, nu, r, M, N).value;
  }
  return v;
}

}  // namespace

TEST_CASE("reduction base coefficients") {
  const ReductionExpansion e = reduction(Order(0.0), 0.0, 1);
  REQUIRE(e.boundary_coeffs.size() == 1);
  CHECK(e.boundary_coeffs[0] == doctest::Approx(0.5));
  CHECK(e.residual_coeff == doctest::Approx(0.5));
  CHECK_FALSE(e.degenerate);

  const ReductionExpansion d = reduction(Order(0.3), 2 * 0.3 + 1, 3);
  CHECK(d.degenerate);
  CHECK(d.level == 0);
  REQUIRE(d.boundary_coeffs.size() == 1);
  CHECK(d.boundary_coeffs[0] == doctest::Approx(1 / (2 * 0.3 + 2)));
  CHECK(d.residual_coeff == 0.0);
}

TEST_CASE("reduction recursion") {
  const double a = 0.7;
  const double nu = -1.3;
  const ReductionExpansion e = reduction(Order(a), nu, 3);
  double c_prime = 1;
  for (int i = 0; i < 3; ++i) {
    CHECK(e.boundary_coeffs[i] == doctest::Approx(c_prime / (2 * (a + i) + 2)));
    c_prime *= -(nu - 2 * (a + i) - 1) / (2 * (a + i) + 2);
    CHECK(e.boundary_coeffs[i] != 0.0);
  }
  CHECK(e.residual_coeff == doctest::Approx(c_prime));
}

TEST_CASE("reduction argument checks") {
  CHECK_THROWS_AS(reduction(Order(0.0), 0.0, 0), Error);
  CHECK_THROWS_AS(reduction(Order(0.5), 2.0, 2, Branch::NonDegenerate), Error);
  CHECK_THROWS_AS(reduction(Order(0.5), 2.2, 2, Branch::Degenerate), Error);
  // near-resonant ν routes to the degenerate branch
  CHECK(reduction(Order(0.5), 4.0 + 1e-8, 3).degenerate);
  CHECK(reduction(Order(0.5), 4.0 + 1e-8, 3).level == 1);
}

TEST_CASE("reduction identity on random draws") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ua(-0.5, 3.0), unu(-3.0, 5.0), ur(0.1, 10.0), un(1.0, 50.0),
      um(0.01, 0.99);
  double worst = 0;
  for (int draw = 0; draw < 200; ++draw) {
    const double a = ua(rng);
    const int k = 1 + draw % 3;
    double nu = unu(rng);
    while (std::fabs(0.5 * (nu - 1) - a - std::round(0.5 * (nu - 1) - a)) < 1e-3) nu = unu(rng);
    const double r = ur(rng);
    const double N = un(rng);
    const double M = N * um(rng);
    const ReductionExpansion e = reduction(Order(a), nu, k, Branch::NonDegenerate);
    const Reference ref = reference(a, nu, r, M, N);
    const double err = std::fabs(expansion_value(e, a, nu, r, M, N) - ref.value) / std::fabs(ref.value);
    worst = std::max(worst, err);
    INFO("alpha=" << a << " nu=" << nu << " k=" << k << " r=" << r << " M=" << M << " N=" << N);
    CHECK(err <= 1e-8);
  }
  MESSAGE("worst relative error " << worst);
}

TEST_CASE("degenerate reductions: the last divisor is 2(alpha+l)+2") {
  const double r = 1.7;
  const double M = 0.6;
  const double N = 13.0;
  double worst_keep = 0;
  double best_alt = 1e300;
  for (double a : {-0.5, 0.0, 0.8}) {
    for (int l : {0, 1, 2}) {
      const double nu = 2 * (a + l) + 1;
      const Reference ref = reference(a, nu, r, M, N);
      const double keep = expansion_value(reduction(Order(a), nu, 5, Branch::Degenerate, 2.0), a, nu, r, M, N);
      const double alt = expansion_value(reduction(Order(a), nu, 5, Branch::Degenerate, 1.0), a, nu, r, M, N);
      INFO("alpha=" << a << " l=" << l);
      CHECK(std::fabs(keep - ref.value) <= 1e-8 * std::fabs(ref.value));
      // the alternative divisor misses by a visible amount
      CHECK(std::fabs(alt - ref.value) > 1e-3 * std::fabs(ref.value));
      worst_keep = std::max(worst_keep, std::fabs(keep - ref.value) / std::fabs(ref.value));
      best_alt = std::min(best_alt, std::fabs(alt - ref.value) / std::fabs(ref.value));
    }
  }
  MESSAGE("divisor 2(a+l)+2: worst " << worst_keep << "; divisor 2(a+l)+1: best " << best_alt);
}

TEST_CASE("primitive case table") {
  CHECK(primitive_case(Order(-0.5), 0.0) == PrimitiveCase::ClosedFormSine);
  CHECK(primitive_case(Order(-0.5), 0.3) == PrimitiveCase::FromZero);
  CHECK(primitive_case(Order(0.5), 1.0) == PrimitiveCase::FromZero);
  CHECK(primitive_case(Order(0.5), 0.9) == PrimitiveCase::FromInfinity);
  CHECK(primitive_case(Order(-0.5), -0.1) == PrimitiveCase::FromInfinity);
}

TEST_CASE("primitive closed forms") {
  for (double t : {0.1, 1.0, 7.5, 120.0}) {
    CHECK(primitive::primitive(Order(-0.5), 0.0, 2.5, t) == doctest::Approx(std::sin(2.5 * t) / 2.5).epsilon(1e-15));
  }
  CHECK(primitive::primitive(Order(0.5), 2.0, 1.0, 1.0) == doctest::Approx(std::sin(1.0) - std::cos(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(primitive::primitive(Order(0.5), 1.0, 1.0, 1.0, PrimitiveCase::FromInfinity), Error);
}

TEST_CASE("primitive from infinity against a truncated brute-force tail") {
  // −∫_3^∞ s^{-1} j_{1/2}(2s) ds = −∫_3^∞ sin(2s)/(2s²) ds. Ending at a
  // zero of sin(2s) leaves a tail ±1/(4T²); averaging two consecutive ends
  // cancels it to O(T^{-3}).
  auto f = [](double s) { return std::sin(2 * s) / (2 * s * s); };
  const double half = std::numbers::pi / 2;
  double prev = 0;
  double cur = 0;
  for (double T = 256; T <= 1 << 16; T *= 2) {
    const double end = std::ceil(T / half) * half;
    const double a = gk_oracle(f, 3.0, end, half);
    cur = -(a + 0.5 * gk_oracle(f, end, end + half, half));
    if (T > 256 && std::fabs(cur - prev) <= 1e-11 * std::fabs(cur)) break;
    prev = cur;
  }
  CHECK(primitive::primitive(Order(0.5), -1.0, 2.0, 3.0) == doctest::Approx(cur).epsilon(1e-9));
}

TEST_CASE("1F2 partial integrals") {
  const double x = 1e-5;
  CHECK(hyp1f2_partial(0.7, Order(1.0), 2.0, x) == doctest::Approx(std::pow(x, 1.7) / 1.7).epsilon(1e-9));
  CHECK(hyp1f2_partial(0.0, Order(-0.5), 1.0, 1.2) == doctest::Approx(std::sin(1.2)).epsilon(1e-14));
  // sin(π) = 0: any cancellation is total
  CHECK_THROWS_AS(hyp1f2_partial(0.0, Order(-0.5), 1.0, std::numbers::pi), Error);
  const Reference ref = reference(0.5, 1.0, 1.0, 0.0, 2.0);
  CHECK(hyp1f2_partial(1.0, Order(0.5), 1.0, 2.0) == doctest::Approx(ref.value).epsilon(1e-10));
  CHECK_THROWS_AS(hyp1f2_partial(0.0, Order(0.0), 1.0, 200.0), Error);
  CHECK_THROWS_AS(hyp1f2_partial(-1.0, Order(0.0), 1.0, 1.0), Error);
}

TEST_CASE("primitive from zero agrees with the 1F2 series") {
  int compared = 0;
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    for (double nu : {a + 0.5, a + 1.2, a + 3.0}) {
      for (double x : {0.05, 0.5, 2.0, 8.0, 20.0, 35.0}) {
        double series = 0;
        try {
          series = hyp1f2_partial(nu, Order(a), 1.0, x);
        } catch (const Error& e) {
          CHECK(e.code() == ErrorCode::Cancellation);
          continue;
        }
        ++compared;
        const double direct = primitive::primitive(Order(a), nu, 1.0, x);
        INFO("alpha=" << a << " nu=" << nu << " x=" << x);
        CHECK(std::fabs(direct - series) <= 1e-9 * std::fabs(series));
      }
    }
  }
  CHECK(compared > 40);
}

TEST_CASE("primitive differentiates back to the integrand") {
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    for (double nu : {a - 0.8, a + 0.5, a + 2.0}) {
      for (double t : {0.3, 2.2, 9.0, 41.0}) {
        const double r = 1.3;
        const double h = 1e-2 * std::min(t, 1 / r);
        auto g = [&](double x) { return primitive::primitive(Order(a), nu, r, x); };
        const double d = (8 * (g(t + h) - g(t - h)) - (g(t + 2 * h) - g(t - 2 * h))) / (12 * h);
        const double exact = std::pow(t, nu) * bessel::j(Order(a), r * t);
        const double scale = std::pow(t, nu) * bessel::envelope(Order(a), r * t);
        INFO("alpha=" << a << " nu=" << nu << " t=" << t);
        CHECK(std::fabs(d - exact) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("primitive bound") {
  for (double a : {-0.5, 0.0, 1.0, 2.5}) {
    const Order o(a);
    CHECK(primitive_bound(o, 0.3, 2.0, 5.0) / primitive_bound(o, 0.3, 1.0, 5.0) ==
          doctest::Approx(std::pow(2.0, -a - 1.5)));
    CHECK(primitive_bound(o, a + 0.5, 1.5, 3.0) == doctest::Approx(primitive_bound(o, a + 0.5, 1.5, 300.0)));
    CHECK(primitive_bound(o, a + 0.5, 2.0, 1.0) == doctest::Approx(primitive_constant(o) * std::pow(2.0, -a - 1.5)));
  }
}

TEST_CASE("two-sided estimate of the finite integral") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(-1.0, 1.0), um(0.05, 20.0), ur2(1.05, 3.0);
  for (int i = 0; i < 40; ++i) {
    const double a = std::vector<double>{-0.5, 0.0, 1.0, 2.5}[i % 4];
    const double nu = a + 0.5 + 2.0 * ur(rng);
    const double r = std::pow(10.0, ur(rng));
    const double M = um(rng);
    const double N = M * ur2(rng);
    const double v = std::fabs(primitive::primitive(Order(a), nu, r, N) - primitive::primitive(Order(a), nu, r, M));
    const double bound = primitive_constant(Order(a)) * std::pow(r, -a - 1.5) *
                         (std::pow(N, nu - a - 0.5) + std::pow(M, nu - a - 0.5));
    INFO("alpha=" << a << " nu=" << nu << " r=" << r << " M=" << M << " N=" << N);
    CHECK(v <= bound);
  }
}
