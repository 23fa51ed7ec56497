#pragma once

#include <complex>

namespace whankel::bessel {

/// Order α of the normalized Bessel function; α ≥ −1/2.
class Order {
 public:
  explicit Order(double alpha);
  double value() const noexcept { return alpha_; }
  Order shifted(double by) const { return Order(alpha_ + by); }

 private:
  double alpha_;
};

/// Series/asymptotic switch point max(20, 2α). Above it the Hankel
/// expansion is used both for values and for the amplitude–phase form.
double z_switch(Order order) noexcept;

/// Normalized Bessel function j_α(z) = Γ(α+1)(z/2)^{−α} J_α(z), z ≥ 0.
double j(Order order, double z);

/// d/dz j_α(z).
double j_derivative(Order order, double z);

/// Constant K_env(α) with |j_α(z)| ≤ K_env(α) min(1, z^{−α−1/2}).
double envelope_constant(Order order) noexcept;

/// K_env(α) · min(1, z^{−α−1/2}).
double envelope(Order order, double z);

/// Leading Hankel term plus first correction. Only for locating
/// oscillation nodes; z ≥ z_switch.
double asymptotic_j(Order order, double z);

/// Amplitude A(z) with j_α(z) = Re[A(z) e^{iz}], from the full Hankel
/// expansion. A varies slowly in z; valid for z ≥ z_switch.
std::complex<double> hankel_amplitude(Order order, double z);

/// Phase offset (α/2 + 1/4)π of the large-argument cosine.
double phase_offset(Order order) noexcept;

/// k-th zero of the leading asymptotic cosine, π(α+1/2)/2 + π/2 + kπ.
double asymptotic_node(Order order, long k) noexcept;

/// Index of the first asymptotic node ≥ z.
long first_node_index_at_or_after(Order order, double z) noexcept;

}  // namespace whankel::bessel
