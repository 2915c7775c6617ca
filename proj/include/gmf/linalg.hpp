#pragma once

// Exact linear algebra over coefficient fields by fraction-free (Bareiss)
// elimination. Pivots are the first nonzero entry below the diagonal.

#include <cstddef>
#include <optional>
#include <vector>

#include "gmf/numberfield.hpp"

namespace gmf {

using Matrix = std::vector<std::vector<FieldElement>>;

std::size_t exact_rank(const Matrix& a);

struct OverdeterminedSolve {
  // Unique solution of the pivot subsystem; empty when rank_deficient.
  std::vector<FieldElement> solution;
  bool rank_deficient = false;
  // First row i (in input order) with a[i] . solution != b[i].
  std::optional<std::size_t> failing_row;
};

// Solves the rows x cols system a x = b for rank(a) == cols.
OverdeterminedSolve solve_overdetermined(const Matrix& a, const std::vector<FieldElement>& b);

}  // namespace gmf
