#include "whankel/error.hpp"

namespace whankel {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain_error";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::Budget: return "panel_budget_exhausted";
    case ErrorCode::Divergent: return "divergent";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Cancellation: return "cancellation";
    case ErrorCode::Unsupported: return "unsupported";
  }
  return "unknown";
}

}  // namespace whankel
