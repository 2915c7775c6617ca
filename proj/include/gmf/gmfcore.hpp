#pragma once

// Parabolic generalized modular functions at the expansion level: the canonical
// decomposition f = f1 * f0 recovered from the first kappa + 1 coefficients of
// f1, the finite-order certificate, Galois norms and the K operator.

#include <optional>
#include <string>
#include <vector>

#include "gmf/etaforms.hpp"
#include "gmf/qseries.hpp"
#include "gmf/subgroup.hpp"

namespace gmf {

struct PGMF {
  QExpansion expansion = QExpansion::zero(1, 0);
  GroupDescriptor group;
  bool normalized = false;

  // normalized is read off the leading coefficient.
  static PGMF make(QExpansion expansion, const GroupDescriptor& group);
  friend bool operator==(const PGMF&, const PGMF&) = default;
};

struct CanonicalDecomposition {
  PGMF f1;
  PGMF f0;
  QExpansion g0 = QExpansion::zero(1, 0);
  std::vector<FieldElement> basis_coords;
};

struct InconsistencyWitness {
  Exponent exponent = 1;  // n with b0(n) off the span of the basis
  FieldElement expected;  // b0(n) from the prefix
  FieldElement fitted;    // row n of A c for the pivot solution c
};

struct CuspFormFit {
  std::vector<FieldElement> coords;
  std::optional<InconsistencyWitness> witness;

  bool consistent() const { return !witness.has_value(); }
};

Exponent default_working_precision(std::int64_t kappa);

// a0(0..kappa) with a(h+n) = sum_j a1(h+j) a0(n-j).
std::vector<FieldElement> cofactor_prefix(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                          std::int64_t kappa);
// b0(1..kappa) with n a0(n) = sum_k b0(k) a0(n-k).
std::vector<FieldElement> logderiv_prefix(const std::vector<FieldElement>& a0);
// Solves the kappa x d system A c = b0 with A the leading-coefficient matrix.
CuspFormFit fit_cusp_form(const std::vector<FieldElement>& b0, const CuspFormBasis& basis);

struct DecompositionOutcome {
  std::optional<CanonicalDecomposition> decomposition;
  std::optional<InconsistencyWitness> witness;
};

// Inconsistent prefixes come back as a witness.
DecompositionOutcome try_decompose(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                   const CuspFormBasis& basis, Exponent target_precision);
// Same, but an inconsistent prefix throws prefix_inconsistent.
CanonicalDecomposition decompose_with_prefix(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                             const CuspFormBasis& basis, Exponent target_precision);

struct CheckResult {
  std::string name;
  bool passed = true;
  std::optional<Exponent> first_discrepancy;
  std::string detail;
};

struct DecompositionReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

// Replays the product, log-derivative and normalization identities, and the
// basis fit when a basis is given.
DecompositionReport verify_decomposition(const PGMF& f, const CanonicalDecomposition& dec,
                                         const CuspFormBasis* basis = nullptr);

enum class Verdict { consistent_with_finite_order, nontrivial_empty_divisor_part, prefix_inconsistent };

std::string to_string(Verdict v);

struct Certificate {
  Verdict verdict = Verdict::consistent_with_finite_order;
  std::optional<CanonicalDecomposition> decomposition;
  std::optional<InconsistencyWitness> witness;
  std::string detail;
};

// Without an explicit prefix the first kappa + 1 coefficients of f are used.
Certificate finite_order_certificate(const PGMF& f, const CuspFormBasis& basis,
                                     Exponent target_precision,
                                     const std::optional<std::vector<FieldElement>>& f1_prefix = {});

// Product of the Galois conjugates of f, as a series over Q.
PGMF galois_norm(const PGMF& f);
// f|K: conjugated coefficients; the group must be normalized by J.
PGMF k_operator(const PGMF& f);
PGMF pgmf_product(const PGMF& f, const PGMF& g);
PGMF pgmf_power(const PGMF& f, std::int64_t m);

struct DenominatorReport {
  std::vector<Integer> primes;
  bool from_cyclotomic_coordinates = false;
};

DenominatorReport denominator_prime_report(const PGMF& f);

}  // namespace gmf
