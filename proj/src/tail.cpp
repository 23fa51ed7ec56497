#include "engine.hpp"
#include "whankel/error.hpp"
#include "whankel/functions.hpp"

namespace whankel::functions {

TailIntegral tail_integral(const TestFunction& f, double nu, double x, const QuadratureConfig& cfg) {
  if (!(x > 0.0) || !std::isfinite(x)) fail(ErrorCode::InvalidArgument, "tail_integral: x must be positive");
  const bessel::Order unused(0.0);
  TailIntegral out;
  const engine::Integral tail = engine::bessel_integral(f, unused, nu, 0.0, x, kInf, cfg);
  out.value = tail.value;
  out.error = tail.error;
  try {
    const engine::Integral head = engine::bessel_integral(f, unused, nu, 0.0, 0.0, x, cfg);
    out.head = head.value;
    out.head_error = head.error;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Divergent) throw;
    out.head_defined = false;
  }
  return out;
}

}  // namespace whankel::functions
