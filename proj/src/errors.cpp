#include "nullag/errors.hpp"

namespace nullag {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "syntax";
    case ErrorCode::unknown_function: return "unknown_function";
    case ErrorCode::malformed_derivative: return "malformed_derivative";
    case ErrorCode::unbound_atom: return "unbound_atom";
    case ErrorCode::division_guard: return "division_guard";
    case ErrorCode::ln_domain: return "ln_domain";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::infeasible_domain: return "infeasible_domain";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::antiderivative_unsupported: return "antiderivative_unsupported";
    case ErrorCode::null_certification_failed: return "null_certification_failed";
    case ErrorCode::null_certification_missing: return "null_certification_missing";
    case ErrorCode::denominator_vanishes: return "denominator_vanishes";
    case ErrorCode::range_guard_violated: return "range_guard_violated";
    case ErrorCode::leading_coefficient_vanishes: return "leading_coefficient_vanishes";
    case ErrorCode::constraint_violated: return "constraint_violated";
    case ErrorCode::integral_unsupported: return "integral_unsupported";
    case ErrorCode::endpoint_mismatch: return "endpoint_mismatch";
    case ErrorCode::path_exits_domain: return "path_exits_domain";
    case ErrorCode::quadrature_non_finite: return "quadrature_non_finite";
    case ErrorCode::domain_exit: return "domain_exit";
    case ErrorCode::grid_mismatch: return "grid_mismatch";
    case ErrorCode::harmonic_order_cap: return "harmonic_order_cap";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, Witness witness)
    : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      code_(code),
      position_(position) {}

}  // namespace nullag
