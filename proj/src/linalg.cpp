#include "gmf/linalg.hpp"

#include <utility>

#include "gmf/error.hpp"

namespace gmf {

namespace {

FieldTag common_field(const Matrix& a, const FieldTag& fallback) {
  for (const auto& row : a)
    for (const auto& x : row) return x.field();
  return fallback;
}

// In-place Bareiss elimination over the first `cols` columns; returns the
// pivot column of each pivot row.
std::vector<std::size_t> bareiss(Matrix& m, std::size_t cols, std::vector<std::size_t>& perm,
                                 const FieldTag& tag) {
  std::vector<std::size_t> pivot_cols;
  FieldElement prev = FieldElement::one(tag);
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[row], m[p]);
    std::swap(perm[row], perm[p]);
    const FieldElement& pivot = m[row][col];
    for (std::size_t i = row + 1; i < m.size(); ++i) {
      for (std::size_t j = col + 1; j < m[i].size(); ++j) {
        m[i][j] = (m[i][j] * pivot - m[i][col] * m[row][j]) / prev;
      }
      m[i][col] = FieldElement::zero(tag);
    }
    prev = pivot;
    pivot_cols.push_back(col);
    ++row;
  }
  return pivot_cols;
}

}  // namespace

std::size_t exact_rank(const Matrix& a) {
  if (a.empty()) return 0;
  Matrix m = a;
  std::vector<std::size_t> perm(m.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  return bareiss(m, m.front().size(), perm, common_field(a, {})).size();
}

OverdeterminedSolve solve_overdetermined(const Matrix& a, const std::vector<FieldElement>& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::invalid_argument, "system shape mismatch");
  OverdeterminedSolve out;
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  const FieldTag tag = b.empty() ? common_field(a, {}) : b.front().field();
  if (cols == 0) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!b[i].is_zero()) {
        out.failing_row = i;
        break;
      }
    }
    return out;
  }
  Matrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != cols) throw Error(ErrorKind::invalid_argument, "ragged matrix");
    for (auto& x : m[i]) x = x.promote(tag);
    m[i].push_back(b[i].promote(tag));
  }
  std::vector<std::size_t> perm(m.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  const auto pivots = bareiss(m, cols, perm, tag);
  if (pivots.size() < cols) {
    out.rank_deficient = true;
    return out;
  }
  // pivots[k] == k here, so rows 0..cols-1 are upper triangular
  std::vector<FieldElement> x(cols, FieldElement::zero(tag));
  for (std::size_t k = cols; k-- > 0;) {
    FieldElement acc = m[k][cols];
    for (std::size_t j = k + 1; j < cols; ++j) acc -= m[k][j] * x[j];
    x[k] = acc / m[k][k];
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    FieldElement lhs = FieldElement::zero(tag);
    for (std::size_t j = 0; j < cols; ++j) lhs += a[i][j].promote(tag) * x[j];
    if (!(lhs == b[i].promote(tag))) {
      out.failing_row = i;
      break;
    }
  }
  out.solution = std::move(x);
  return out;
}

}  // namespace gmf
