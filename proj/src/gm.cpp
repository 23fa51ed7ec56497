#include <algorithm>
#include <cmath>

#include "whankel/error.hpp"
#include "whankel/functions.hpp"

namespace whankel::functions {

std::vector<double> dyadic_grid(int k_min, int k_max) {
  std::vector<double> xs;
  for (int k = k_min; k <= k_max; ++k) xs.push_back(std::ldexp(1.0, k));
  return xs;
}

GMReport gm_check(const TestFunction& f, double lambda, const std::vector<double>& x_grid) {
  if (!(lambda >= 2.0)) fail(ErrorCode::InvalidArgument, "gm_check: lambda must be at least 2");
  if (x_grid.empty()) fail(ErrorCode::InvalidArgument, "gm_check: empty grid");
  GMReport rep;
  rep.lambda = lambda;
  for (double x : x_grid) {
    if (!(x > 0.0)) fail(ErrorCode::InvalidArgument, "gm_check: grid points must be positive");
    const double var = variation_integral(f, 0.0, x, 2.0 * x);
    const double mass = weighted_abs_integral(f, 0.0, x / lambda, lambda * x);
    double ratio = 0.0;
    if (mass > 0.0) {
      ratio = x * var / mass;
      rep.pointwise_constant = std::max(rep.pointwise_constant, std::fabs(f.value(x)) * x / mass);
    } else if (var > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    rep.ratio_samples.emplace_back(x, ratio);
    rep.sup_ratio = std::max(rep.sup_ratio, ratio);
  }
  // Unbounded growth proxy: each of the last three doublings of x at
  // least doubles the ratio.
  const auto& s = rep.ratio_samples;
  if (s.size() >= 4) {
    bool growing = true;
    for (std::size_t i = s.size() - 3; i < s.size(); ++i) {
      growing = growing && s[i].second >= 2.0 * s[i - 1].second && s[i].second > 0.0;
    }
    if (growing) rep.verdict = GMVerdict::Violated;
  }
  if (std::isinf(rep.sup_ratio)) rep.verdict = GMVerdict::Violated;
  return rep;
}

}  // namespace whankel::functions
