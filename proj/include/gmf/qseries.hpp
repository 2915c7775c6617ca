#pragma once

// Truncated Laurent series in q_N = exp(2 pi i z / N) with exact coefficients.
//
// A series knows its coefficients for exponents lead, lead+1, ..., precision-1
// (absolute precision, in q_N-exponent units). The coefficient at `lead` is
// nonzero; the zero series has no coefficients and lead == precision.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "gmf/numberfield.hpp"

namespace gmf {

using Exponent = std::int64_t;

class QExpansion {
 public:
  // Coefficients for exponents lead .. precision-1; leading zeros are stripped.
  static QExpansion from_coeffs(std::uint64_t level, Exponent lead, Exponent precision,
                                const FieldTag& field, std::vector<FieldElement> coeffs);
  static QExpansion zero(std::uint64_t level, Exponent precision, const FieldTag& field = {});
  static QExpansion one(std::uint64_t level, Exponent precision, const FieldTag& field = {});
  static QExpansion monomial(std::uint64_t level, Exponent exponent, const FieldElement& c,
                             Exponent precision);
  // Rational coefficients, convenient for tests and fixtures; missing trailing ones are zero.
  static QExpansion from_rationals(std::uint64_t level, Exponent lead, Exponent precision,
                                   const std::vector<Rational>& coeffs);

  std::uint64_t level() const { return level_; }
  Exponent lead() const { return lead_; }
  Exponent precision() const { return precision_; }
  // Number of known coefficients from the lead on.
  Exponent relative_precision() const { return precision_ - lead_; }
  const FieldTag& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const FieldElement> coeffs() const { return coeffs_; }
  const FieldElement& leading_coeff() const { return coeffs_.front(); }

  // Coefficient of q_N^n; zero below the lead, throws precision_shortfall at n >= precision.
  FieldElement coeff(Exponent n) const;

  friend bool operator==(const QExpansion&, const QExpansion&) = default;

 private:
  QExpansion(std::uint64_t level, Exponent lead, Exponent precision, FieldTag field,
             std::vector<FieldElement> coeffs)
      : level_(level), lead_(lead), precision_(precision), field_(field), coeffs_(std::move(coeffs)) {}

  std::uint64_t level_ = 1;
  Exponent lead_ = 0;
  Exponent precision_ = 0;
  FieldTag field_;
  std::vector<FieldElement> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const QExpansion& f);

QExpansion add(const QExpansion& f, const QExpansion& g);
QExpansion sub(const QExpansion& f, const QExpansion& g);
QExpansion negate(const QExpansion& f);
QExpansion scale(const QExpansion& f, const FieldElement& c);

// Cauchy product; precision min(P_f + h_g, P_g + h_f).
QExpansion mul(const QExpansion& f, const QExpansion& g);
// The same product through the serial reference kernel only.
QExpansion mul_serial(const QExpansion& f, const QExpansion& g);

// Precision min(target, -h + (P - h)).
QExpansion inverse(const QExpansion& f, Exponent target_precision);
QExpansion inverse(const QExpansion& f);

// (q d/dq f) / f; precision P - h, lead >= 0.
QExpansion theta_logderiv(const QExpansion& f);

// The unit series 1 + ... whose theta-log-derivative is g; precision min(target, P_g).
QExpansion exp_from_logderiv(const QExpansion& g, Exponent target_precision);

// Precision m*h + (P - h).
QExpansion pow(const QExpansion& f, std::int64_t m);

// Same function written in q_L; requires N | L.
QExpansion rescale_level(const QExpansion& f, std::uint64_t new_level);
// Inverse of rescale_level: requires L | N and every exponent divisible by N/L.
QExpansion reduce_level(const QExpansion& f, std::uint64_t new_level);
// f(d z) at the same level: exponents and precision multiplied by d.
QExpansion dilate(const QExpansion& f, std::uint64_t d);

QExpansion truncate(const QExpansion& f, Exponent precision);
QExpansion promote(const QExpansion& f, const FieldTag& target);

QExpansion galois_map(const QExpansion& f, long k);
QExpansion conjugate_coeffs(const QExpansion& f);

// Smallest exponent below min(P_f, P_g) where the coefficients differ.
std::optional<Exponent> first_difference(const QExpansion& f, const QExpansion& g);
bool agree(const QExpansion& f, const QExpansion& g);

}  // namespace gmf
