#include "whankel/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "double_double.hpp"
#include "whankel/error.hpp"

namespace whankel::bessel {

namespace {

using detail::DoubleDouble;
using std::numbers::pi;

constexpr int kMaxSeriesTerms = 400;
constexpr int kMaxHankelTerms = 200;

// Γ(α+1) (z/2)^{−α} sqrt(2/(πz)), computed in log space.
double hankel_prefactor(double alpha, double z) {
  return std::exp(std::lgamma(alpha + 1.0) - alpha * std::log(0.5 * z) +
                  0.5 * std::log(2.0 / (pi * z)));
}

// Series Σ (−z²/4)^n Γ(α+1)/(n! Γ(n+α+1)) summed in double-double.
double series(double alpha, double z) {
  const DoubleDouble q = -(detail::two_prod(z, z) * DoubleDouble(0.25));
  DoubleDouble term(1.0);
  DoubleDouble sum(1.0);
  double max_term = 1.0;
  for (int n = 1; n < kMaxSeriesTerms; ++n) {
    const DoubleDouble shifted = detail::two_sum(static_cast<double>(n), alpha);
    term = term * q / (shifted * DoubleDouble(static_cast<double>(n)));
    sum = sum + term;
    const double mag = detail::abs_hi(term);
    if (!std::isfinite(mag) || mag > 1e300) {
      fail(ErrorCode::Overflow, "bessel series term overflow at z=" + std::to_string(z));
    }
    max_term = std::max(max_term, mag);
    if (n > 0.5 * z && mag < 1e-34 * max_term) return sum.to_double();
  }
  fail(ErrorCode::NonConvergence, "bessel series did not converge at z=" + std::to_string(z));
}

struct HankelPQ {
  double p;
  double q;
};

HankelPQ hankel_pq(double alpha, double z) {
  const double mu = 4.0 * alpha * alpha;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double prev = 1.0;
  for (int k = 1; k < kMaxHankelTerms; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * z);
    const double mag = std::fabs(term);
    // Asymptotic series: stop at the smallest term once it starts growing.
    if (odd * odd > mu && mag > std::fabs(prev)) break;
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (mag < 1e-18 * (std::fabs(p) + std::fabs(q))) break;
    prev = term;
  }
  return {p, q};
}

}  // namespace

Order::Order(double alpha) : alpha_(alpha) {
  if (!(alpha >= -0.5) || !std::isfinite(alpha)) {
    fail(ErrorCode::Domain, "Bessel order must satisfy alpha >= -1/2, got " + std::to_string(alpha));
  }
}

double z_switch(Order order) noexcept { return std::max(20.0, 2.0 * order.value()); }

double phase_offset(Order order) noexcept { return (0.5 * order.value() + 0.25) * pi; }

double j(Order order, double z) {
  if (!(z >= 0.0)) fail(ErrorCode::Domain, "j: argument must be >= 0, got " + std::to_string(z));
  if (z == 0.0) return 1.0;
  const double alpha = order.value();
  if (z <= z_switch(order)) return series(alpha, z);
  const HankelPQ pq = hankel_pq(alpha, z);
  const double phi = phase_offset(order);
  const double c = std::cos(z);
  const double s = std::sin(z);
  // χ = z − φ
  const double cos_chi = c * std::cos(phi) + s * std::sin(phi);
  const double sin_chi = s * std::cos(phi) - c * std::sin(phi);
  return hankel_prefactor(alpha, z) * (pq.p * cos_chi - pq.q * sin_chi);
}

std::complex<double> hankel_amplitude(Order order, double z) {
  if (!(z >= z_switch(order))) {
    fail(ErrorCode::Domain, "hankel_amplitude: z below z_switch");
  }
  const double alpha = order.value();
  const HankelPQ pq = hankel_pq(alpha, z);
  const double phi = phase_offset(order);
  return hankel_prefactor(alpha, z) * std::complex<double>(pq.p, pq.q) *
         std::polar(1.0, -phi);
}

double j_derivative(Order order, double z) {
  if (!(z >= 0.0)) fail(ErrorCode::Domain, "j_derivative: argument must be >= 0");
  const double alpha = order.value();
  if (alpha >= 0.5) {
    if (z == 0.0) {
      fail(ErrorCode::Domain, "j_derivative: shifted identity undefined at z = 0");
    }
    if (z >= 1.0) {
      return 2.0 * alpha / z * (j(order.shifted(-1.0), z) - j(order, z));
    }
  }
  return -z * j(order.shifted(1.0), z) / (2.0 * alpha + 2.0);
}

double envelope_constant(Order order) noexcept {
  const double alpha = order.value();
  const double c_alpha =
      std::exp(std::lgamma(alpha + 1.0) + (alpha + 0.5) * std::log(2.0)) / std::sqrt(pi);
  const double growth = 1.0 + 0.1 * std::pow(std::max(alpha, 0.0), 0.6);
  return 1.1 * std::max(1.0, c_alpha * growth);
}

double envelope(Order order, double z) {
  if (!(z >= 0.0)) fail(ErrorCode::Domain, "envelope: argument must be >= 0");
  const double k = envelope_constant(order);
  if (z <= 1.0) return k;
  return k * std::pow(z, -order.value() - 0.5);
}

double asymptotic_j(Order order, double z) {
  if (!(z >= z_switch(order))) {
    fail(ErrorCode::Domain, "asymptotic_j: z must be >= z_switch");
  }
  const double alpha = order.value();
  const double chi = z - phase_offset(order);
  const double correction = (4.0 * alpha * alpha - 1.0) / (8.0 * z);
  return hankel_prefactor(alpha, z) * (std::cos(chi) - correction * std::sin(chi));
}

double asymptotic_node(Order order, long k) noexcept {
  return phase_offset(order) + 0.5 * pi + static_cast<double>(k) * pi;
}

long first_node_index_at_or_after(Order order, double z) noexcept {
  const double base = phase_offset(order) + 0.5 * pi;
  long k = static_cast<long>(std::ceil((z - base) / pi));
  while (asymptotic_node(order, k) < z) ++k;
  while (k > std::numeric_limits<long>::min() && asymptotic_node(order, k - 1) >= z) --k;
  return k;
}

}  // namespace whankel::bessel
