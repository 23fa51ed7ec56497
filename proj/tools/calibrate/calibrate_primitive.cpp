// Sweeps |g| r^{α+3/2} t^{α+1/2−ν} / max(1, C_α) over r, t ∈ [1e-2, 1e2].
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "whankel/primitive.hpp"

using namespace whankel;

int main() {
  double overall = 0.0;
  for (double alpha : {-0.5, 0.0, 1.0, 2.5}) {
    const bessel::Order a(alpha);
    const double c_alpha =
        std::exp(std::lgamma(alpha + 1.0) + (alpha + 0.5) * std::log(2.0)) / std::sqrt(std::numbers::pi);
    std::vector<double> nus = {alpha + 0.5 - 1.25, alpha + 0.5 - 0.5, alpha + 0.5, alpha + 0.5 + 0.75, alpha + 2.5};
    for (double nu : nus) {
      double sup = 0.0;
      for (int i = 0; i <= 24; ++i) {
        for (int j = 0; j <= 24; ++j) {
          const double r = std::pow(10.0, -2.0 + i / 6.0);
          const double t = std::pow(10.0, -2.0 + j / 6.0);
          const double g = primitive::primitive(a, nu, r, t);
          const double ratio = std::fabs(g) * std::pow(r, alpha + 1.5) * std::pow(t, alpha + 0.5 - nu);
          sup = std::max(sup, ratio / std::max(1.0, c_alpha));
        }
      }
      std::printf("alpha=%5.2f nu=%6.2f case=%d sup=%.6f\n", alpha, nu,
                  static_cast<int>(primitive::primitive_case(a, nu)), sup);
      overall = std::max(overall, sup);
    }
  }
  std::printf("max %.6f -> scale %.4f\n", overall, 1.1 * overall);
}
