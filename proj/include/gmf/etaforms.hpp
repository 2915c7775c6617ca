#pragma once

// Dedekind eta expansions, eta quotients, and weight-2 cusp form bases.
//
// eta(z) = q^(1/24) prod (1 - q^n) lives at level 24; an eta quotient
// prod eta(d z)^(r_d) is built at level 24 and then written at the coarsest
// level on which its exponents are integral.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmf/qseries.hpp"
#include "gmf/subgroup.hpp"

namespace gmf {

struct EtaTerm {
  std::uint64_t divisor = 1;
  std::int64_t exponent = 0;
  friend bool operator==(const EtaTerm&, const EtaTerm&) = default;
};

class EtaQuotient {
 public:
  EtaQuotient() = default;
  // Repeated divisors are merged and zero exponents dropped. ambient_level 0
  // means the lcm of the divisors; otherwise every divisor must divide it.
  explicit EtaQuotient(std::vector<EtaTerm> terms, std::uint64_t ambient_level = 0);

  // "d1^r1 d2^r2 ..."; a bare "d" means exponent 1.
  static EtaQuotient parse(std::string_view text, std::uint64_t ambient_level = 0);

  const std::vector<EtaTerm>& terms() const { return terms_; }
  std::uint64_t ambient_level() const { return ambient_; }
  // Order at infinity in q_24 units: sum d r_d.
  std::int64_t order_24() const;
  // 24 / gcd(24, order_24()).
  std::uint64_t natural_level() const;

  friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b);
  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::vector<EtaTerm> terms_;
  std::uint64_t ambient_ = 1;
};

std::string to_string(const EtaQuotient& eq);

// q_24 sum_k (-1)^k q_24^(12 k (3k - 1)), level 24, lead 1.
QExpansion eta_expansion(Exponent precision);

// Expansion at eq.natural_level(); precision is in those units and must exceed the lead.
QExpansion eta_quotient_expansion(const EtaQuotient& eq, Exponent precision);

struct CuspFormBasis {
  GroupDescriptor group;
  std::uint64_t level = 1;
  std::vector<QExpansion> forms;

  std::size_t dimension() const { return forms.size(); }
};

struct CatalogueEntry {
  std::uint64_t level;
  std::string_view recipe;
};

// Genus-one Gamma0(N) whose weight-2 newform is an eta quotient.
std::span<const CatalogueEntry> basis_catalogue();

// kappa x d matrix whose column nu holds the coefficients of q^1..q^kappa of form nu.
std::vector<std::vector<FieldElement>> leading_coefficient_matrix(const CuspFormBasis& b,
                                                                  std::int64_t rows);

struct BasisCheck {
  std::string name;
  bool passed = true;
  bool required = true;
  std::string detail;
};

struct BasisReport {
  std::vector<BasisCheck> checks;
  std::int64_t kappa = 0;
  std::uint64_t genus = 0;
  std::size_t rank = 0;

  bool ok() const;
};

BasisReport validate_basis(const CuspFormBasis& b);

// Genus-zero groups give the empty basis; catalogue groups are regenerated from
// their recipes. Throws no_basis_available otherwise and corrupt_basis when the
// result fails validation.
CuspFormBasis load_basis(const GroupDescriptor& g, Exponent precision);

// Validates a user-supplied basis and truncates its forms to `precision` when
// they carry more; throws corrupt_basis on failure.
CuspFormBasis prepare_basis(CuspFormBasis b, Exponent precision);

}  // namespace gmf
