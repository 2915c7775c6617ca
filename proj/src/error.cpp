#include "gmf/error.hpp"

namespace gmf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::incompatible_series: return "incompatible-series";
    case ErrorKind::division_by_zero: return "division-by-zero";
    case ErrorKind::not_exponentiable: return "not-exponentiable";
    case ErrorKind::invalid_automorphism: return "invalid-automorphism";
    case ErrorKind::determinant_not_one: return "determinant-not-one";
    case ErrorKind::precision_shortfall: return "precision-shortfall";
    case ErrorKind::unsupported_group: return "unsupported-group";
    case ErrorKind::group_mismatch: return "group-mismatch";
    case ErrorKind::no_basis_available: return "no-basis-available";
    case ErrorKind::corrupt_basis: return "corrupt-basis";
    case ErrorKind::prefix_inconsistent: return "prefix-inconsistent";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::io_error: return "io-error";
  }
  return "unknown";
}

}  // namespace gmf
