#include "whankel/config.hpp"

#include "whankel/error.hpp"

namespace whankel {

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) fail(ErrorCode::InvalidArgument, "tolerances must be positive");
  if (max_panels < 1) fail(ErrorCode::InvalidArgument, "max_panels must be at least 1");
}

}  // namespace whankel
