#include "quadrature.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>

#include "whankel/error.hpp"

namespace whankel::quad {

namespace {

constexpr int kN = 32;
constexpr int kNodes = kN + 1;
// Below this |ω| the forward moment recurrence is unstable for k ≤ kN.
constexpr double kRecurrenceMin = kN;

struct Tables {
  std::array<double, kNodes> x{};
  // dct[k][j] = cos(π j k / kN)
  std::array<std::array<double, kNodes>, kNodes> dct{};
  std::vector<double> gl_x;
  std::vector<double> gl_w;
  // cheb[k][i] = T_k(gl_x[i])
  std::vector<std::vector<double>> cheb;

  Tables() {
    using std::numbers::pi;
    for (int j = 0; j < kNodes; ++j) x[j] = std::cos(pi * j / kN);
    for (int k = 0; k < kNodes; ++k)
      for (int j = 0; j < kNodes; ++j) dct[k][j] = std::cos(pi * j * k / kN);
    using GL = boost::math::quadrature::gauss<double, 64>;
    const auto& ab = GL::abscissa();
    const auto& wt = GL::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
      gl_x.push_back(ab[i]);
      gl_w.push_back(wt[i]);
      if (ab[i] != 0.0) {
        gl_x.push_back(-ab[i]);
        gl_w.push_back(wt[i]);
      }
    }
    cheb.assign(kNodes, std::vector<double>(gl_x.size()));
    for (std::size_t i = 0; i < gl_x.size(); ++i) {
      double t0 = 1.0;
      double t1 = gl_x[i];
      cheb[0][i] = t0;
      cheb[1][i] = t1;
      for (int k = 2; k < kNodes; ++k) {
        const double t2 = 2.0 * gl_x[i] * t1 - t0;
        cheb[k][i] = t2;
        t0 = t1;
        t1 = t2;
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

std::vector<cplx> moments_by_gauss(double omega, int n) {
  const Tables& tb = tables();
  std::vector<cplx> e(tb.gl_x.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = tb.gl_w[i] * std::polar(1.0, omega * tb.gl_x[i]);
  std::vector<cplx> mu(n + 1);
  for (int k = 0; k <= n; ++k) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) s += tb.cheb[k][i] * e[i];
    mu[k] = s;
  }
  return mu;
}

std::vector<cplx> moments_by_recurrence(double omega, int n) {
  const cplx iw(0.0, omega);
  const cplx ep = std::polar(1.0, omega);
  const cplx em = std::conj(ep);
  auto boundary = [&](int m) { return m % 2 == 0 ? ep - em : ep + em; };
  std::vector<cplx> mu(n + 1);
  mu[0] = 2.0 * std::sin(omega) / omega;
  if (n >= 1) mu[1] = (2.0 * std::cos(omega) - mu[0]) / iw;
  if (n >= 2) mu[2] = 2.0 * (2.0 * std::sin(omega) / omega - 2.0 * mu[1] / iw) - mu[0];
  for (int k = 2; k < n; ++k) {
    const double kp = k + 1.0;
    const double km = k - 1.0;
    mu[k + 1] = boundary(k + 1) / iw - kp * boundary(k - 1) / (km * iw) + kp / km * mu[k - 1] -
                2.0 * kp / iw * mu[k];
  }
  return mu;
}

}  // namespace

std::vector<cplx> chebyshev_moments(double omega, int n) {
  if (n > kN) fail(ErrorCode::InvalidArgument, "chebyshev_moments: degree above table size");
  if (std::fabs(omega) < kRecurrenceMin) return moments_by_gauss(omega, n);
  return moments_by_recurrence(omega, n);
}

PanelEstimate filon_panel(const OscillatorySum& f, double a, double b) {
  const Tables& tb = tables();
  const std::size_t m = f.omegas.size();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<cplx> samples(kNodes * m);
  for (int j = 0; j < kNodes; ++j) f.amplitudes(mid + half * tb.x[j], &samples[j * m]);

  PanelEstimate est{0.0, 0.0};
  // size of the terms summed, which sets the attainable round-off
  double magnitude = 0.0;
  std::array<cplx, kNodes> fine{};
  std::array<cplx, kNodes / 2 + 1> coarse{};
  for (std::size_t c = 0; c < m; ++c) {
    for (int j = 0; j < kNodes; ++j) {
      const cplx v = samples[j * m + c];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        fail(ErrorCode::Overflow, "quadrature: non-finite integrand at t=" +
                                      std::to_string(mid + half * tb.x[j]));
      }
    }
    // Type-I DCT on both grids; coefficient k of Σ'' c_k T_k.
    for (int k = 0; k < kNodes; ++k) {
      cplx s = 0.5 * (samples[c] + samples[kN * m + c] * tb.dct[k][kN]);
      for (int j = 1; j < kN; ++j) s += samples[j * m + c] * tb.dct[k][j];
      fine[k] = s * (2.0 / kN);
    }
    constexpr int n2 = kN / 2;
    for (int k = 0; k <= n2; ++k) {
      cplx s = 0.5 * (samples[c] + samples[kN * m + c] * tb.dct[k][kN]);
      for (int j = 1; j < n2; ++j) s += samples[2 * j * m + c] * tb.dct[k][2 * j];
      coarse[k] = s * (2.0 / n2);
    }
    const double w = f.omegas[c] * half;
    const std::vector<cplx> mu = chebyshev_moments(w, kN);
    cplx i_fine = 0.5 * fine[0] * mu[0] + 0.5 * fine[kN] * mu[kN];
    for (int k = 1; k < kN; ++k) i_fine += fine[k] * mu[k];
    for (int k = 0; k <= kN; ++k) magnitude += std::abs(fine[k]) * std::abs(mu[k]);
    cplx i_coarse = 0.5 * coarse[0] * mu[0] + 0.5 * coarse[n2] * mu[n2];
    for (int k = 1; k < n2; ++k) i_coarse += coarse[k] * mu[k];
    const cplx phase = half * std::polar(1.0, f.omegas[c] * mid);
    est.value += phase * i_fine;
    est.error += std::abs(phase * (i_fine - i_coarse));
  }
  est.error = std::max(est.error, 4e-16 * half * magnitude);
  return est;
}

AdaptiveResult integrate(const OscillatorySum& f, const std::vector<double>& breakpoints,
                         const Tolerance& tol) {
  if (breakpoints.size() < 2) fail(ErrorCode::InvalidArgument, "integrate: need two breakpoints");
  std::vector<Segment> segs;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    segs.push_back({breakpoints[i], breakpoints[i + 1], &f});
  }
  return integrate(segs, tol);
}

AdaptiveResult integrate(const std::vector<Segment>& segments, const Tolerance& tol) {
  struct Panel {
    double a;
    double b;
    const OscillatorySum* f;
    PanelEstimate est;
  };
  std::vector<Panel> panels;
  auto cmp = [&](std::size_t i, std::size_t j) { return panels[i].est.error < panels[j].est.error; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> queue(cmp);
  auto size_of = [&](cplx v) { return tol.real_part ? std::fabs(v.real()) : std::abs(v); };

  cplx total = 0.0;
  double total_err = 0.0;
  for (const Segment& s : segments) {
    if (!(s.b > s.a)) continue;
    panels.push_back({s.a, s.b, s.f, filon_panel(*s.f, s.a, s.b)});
    total += panels.back().est.value;
    total_err += panels.back().est.error;
    queue.push(panels.size() - 1);
  }
  AdaptiveResult res;
  while (!queue.empty()) {
    if (total_err <= std::max(tol.abs, tol.rel * size_of(total))) break;
    if (static_cast<long>(panels.size()) >= tol.max_panels) break;
    const std::size_t worst = queue.top();
    queue.pop();
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) <= 1e-14 * std::fabs(mid)) {
      continue;  // cannot refine further; its error stays in the total
    }
    panels[worst] = {p.a, mid, p.f, filon_panel(*p.f, p.a, mid)};
    panels.push_back({mid, p.b, p.f, filon_panel(*p.f, mid, p.b)});
    total += panels[worst].est.value + panels.back().est.value - p.est.value;
    total_err += panels[worst].est.error + panels.back().est.error - p.est.error;
    queue.push(worst);
    queue.push(panels.size() - 1);
  }
  // Resum from scratch to shed accumulated round-off.
  res.value = 0.0;
  res.error = 0.0;
  for (const Panel& p : panels) {
    res.value += p.est.value;
    res.error += p.est.error;
  }
  res.panels = static_cast<long>(panels.size());
  res.converged = res.error <= std::max(tol.abs, tol.rel * size_of(res.value));
  return res;
}

}  // namespace whankel::quad
