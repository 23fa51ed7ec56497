#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace whankel::quad {

using cplx = std::complex<double>;

// Σ_j ∫ h_j(t) e^{iΩ_j t} dt with smooth complex amplitudes h_j. The
// evaluator fills out[j] = h_j(t) for every frequency in `omegas`.
struct OscillatorySum {
  std::vector<double> omegas;
  std::function<void(double t, cplx* out)> amplitudes;
};

struct PanelEstimate {
  cplx value;
  double error;
};

// Filon–Clenshaw–Curtis on one panel: amplitudes interpolated at 33
// Chebyshev–Lobatto points, exact moments of T_k(x) e^{iωx}. The error is
// the gap to the 17-point interpolant on the nested subset.
PanelEstimate filon_panel(const OscillatorySum& f, double a, double b);

// ∫_{-1}^{1} T_k(x) e^{iωx} dx for k = 0..n.
std::vector<cplx> chebyshev_moments(double omega, int n);

struct AdaptiveResult {
  cplx value;
  double error = 0.0;
  long panels = 0;
  bool converged = false;
};

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  long max_panels = 100000;
  // Measure the relative target against |Re value| only.
  bool real_part = false;
};

// Interval with its own integrand, so adjacent segments may disagree at the
// shared endpoint (jumps, change of representation).
struct Segment {
  double a;
  double b;
  const OscillatorySum* f;
};

// Global adaptive bisection over the given breakpoints (sorted, ≥ 2
// entries), always refining the panel with the largest error estimate.
AdaptiveResult integrate(const OscillatorySum& f, const std::vector<double>& breakpoints,
                         const Tolerance& tol);
AdaptiveResult integrate(const std::vector<Segment>& segments, const Tolerance& tol);

}  // namespace whankel::quad
