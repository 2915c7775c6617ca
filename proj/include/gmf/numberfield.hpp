#pragma once

// Exact arithmetic over Q and the cyclotomic fields Q(zeta_m).
//
// Cyclotomic elements are kept reduced modulo Phi_m in the power basis
// 1, z, ..., z^(phi(m)-1), so equality is coordinatewise. Elements never move
// to a smaller conductor on their own.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmf {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds num/den in lowest terms with a positive denominator.
Rational make_rational(const Integer& num, const Integer& den);

// Accepts "p", "-p", "p/q", "-p/q"; U+2212 is accepted as a minus sign.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Distinct prime divisors of |n| in increasing order; empty for |n| <= 1.
std::vector<Integer> prime_factors(const Integer& n);
std::vector<Integer> denominator_primes(const Rational& r);

std::uint64_t euler_phi(std::uint64_t m);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Dense univariate polynomial over Q, coefficient i belongs to x^i.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<Rational> coeffs);

  static RationalPolynomial monomial(const Rational& c, std::size_t degree);

  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  friend RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b);
  friend RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b);
  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) = default;

  struct DivMod;
  // Euclidean division; throws division_by_zero for a zero divisor.
  DivMod divmod(const RationalPolynomial& divisor) const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct RationalPolynomial::DivMod {
  RationalPolynomial quotient;
  RationalPolynomial remainder;
};

std::ostream& operator<<(std::ostream& os, const RationalPolynomial& p);

// Phi_m, obtained by dividing x^m - 1 by Phi_d for every proper divisor d of m.
// Results are memoized; the cache is safe for concurrent callers.
const RationalPolynomial& cyclotomic_polynomial(std::uint64_t m);

struct FieldTag {
  enum class Kind : std::uint8_t { rational, cyclotomic };

  Kind kind = Kind::rational;
  std::uint64_t conductor = 1;

  static FieldTag rationals() { return {}; }
  static FieldTag cyclotomic(std::uint64_t m);

  bool is_rational() const { return kind == Kind::rational; }
  // Number of power-basis coordinates: 1 for Q, phi(m) for Q(zeta_m).
  std::size_t degree() const;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

std::string to_string(const FieldTag& tag);

// True when every element of `from` has an image in `to` under promote().
bool embeds_into(const FieldTag& from, const FieldTag& to);

class FieldElement {
 public:
  FieldElement() : coords_(1) {}
  FieldElement(const Rational& r) : coords_{r} {}  // NOLINT: Q is the base field
  FieldElement(long n) : coords_{Rational(n)} {}   // NOLINT

  static FieldElement zero(const FieldTag& tag);
  static FieldElement one(const FieldTag& tag);
  static FieldElement from_rational(const Rational& r, const FieldTag& tag);
  // zeta_m^power in Q(zeta_m).
  static FieldElement zeta(std::uint64_t m, long power = 1);
  // Coordinates in the power basis; any length is accepted and reduced mod Phi_m.
  static FieldElement from_coords(const FieldTag& tag, std::vector<Rational> coords);

  const FieldTag& field() const { return tag_; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  // The constant coordinate when all others vanish.
  std::optional<Rational> as_rational() const;

  // Embeds into a larger field (Q -> Q(zeta_m), Q(zeta_m) -> Q(zeta_km)).
  FieldElement promote(const FieldTag& target) const;

  FieldElement inverse() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator*=(const Rational& r);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(FieldElement a, const Rational& r) { return a *= r; }
  friend FieldElement operator*(const Rational& r, FieldElement a) { return a *= r; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator-() const;

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.tag_ == b.tag_ && a.coords_ == b.coords_;
  }

  // a += b * c without a temporary on the rational path.
  void add_product(const FieldElement& b, const FieldElement& c);

 private:
  FieldElement(const FieldTag& tag, std::vector<Rational> coords)
      : tag_(tag), coords_(std::move(coords)) {}
  void require_same_field(const FieldElement& o) const;

  FieldTag tag_;
  std::vector<Rational> coords_;
};

bool is_rational(const FieldElement& a);
FieldElement conjugate(const FieldElement& a);
// zeta -> zeta^k; throws invalid_automorphism unless gcd(k, m) = 1.
FieldElement galois_apply(const FieldElement& a, long k);

// Units k in [1, m) (k = 1 for m <= 2), the indices of Gal(Q(zeta_m)/Q).
std::vector<long> galois_group(std::uint64_t m);

std::string to_string(const FieldElement& a);
std::ostream& operator<<(std::ostream& os, const FieldElement& a);

}  // namespace gmf
