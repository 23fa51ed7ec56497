#pragma once

#include "whankel/bessel.hpp"
#include "whankel/config.hpp"
#include "whankel/functions.hpp"

namespace whankel::engine {

struct Integral {
  double value = 0.0;
  double error = 0.0;
  long panels = 0;
  bool converged = true;
};

// ∫_a^b t^w f(t) j_α(rt) dt. With r = 0 the Bessel factor is 1. a = 0 and
// b = ∞ are allowed; non-integrable ends raise Divergent, an exhausted
// panel budget raises Budget.
Integral bessel_integral(const functions::TestFunction& f, bessel::Order order, double w, double r,
                         double a, double b, const QuadratureConfig& cfg);

// f ≡ 1 on (0, ∞): ∫_a^b t^w j_α(rt) dt.
Integral monomial_integral(bessel::Order order, double w, double r, double a, double b,
                           const QuadratureConfig& cfg);

}  // namespace whankel::engine
