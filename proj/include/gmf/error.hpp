#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmf {

enum class ErrorKind {
  invalid_argument,
  incompatible_series,
  division_by_zero,
  not_exponentiable,
  invalid_automorphism,
  determinant_not_one,
  precision_shortfall,
  unsupported_group,
  group_mismatch,
  no_basis_available,
  corrupt_basis,
  prefix_inconsistent,
  parse_error,
  io_error,
};

std::string_view to_string(ErrorKind kind);

// Domain error carried through the library; the CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gmf
