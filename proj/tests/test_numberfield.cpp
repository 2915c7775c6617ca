#include "doctest.h"
#include "generators.hpp"
#include "gmf/error.hpp"
#include "gmf/numberfield.hpp"

using namespace gmf;

namespace {

RationalPolynomial poly(std::vector<long> c) {
  std::vector<Rational> v(c.begin(), c.end());
  return RationalPolynomial(std::move(v));
}

int mobius(std::uint64_t n) {
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

// Phi_m = prod_{d | m} (x^d - 1)^{mu(m/d)}, independent of the divisor recursion.
RationalPolynomial mobius_cyclotomic(std::uint64_t m) {
  RationalPolynomial num = poly({1}), den = poly({1});
  for (std::uint64_t d : divisors(m)) {
    const RationalPolynomial xd = RationalPolynomial::monomial(1, d) - poly({1});
    const int mu = mobius(m / d);
    if (mu == 1) num = num * xd;
    if (mu == -1) den = den * xd;
  }
  auto [q, r] = num.divmod(den);
  CHECK(r.is_zero());
  return q;
}

}  // namespace

TEST_CASE("rationals are normalized and parse both minus signs") {
  CHECK(make_rational(6, -4) == Rational(-3, 2));
  CHECK(make_rational(6, -4).get_den() == 2);
  CHECK(parse_rational("-22/45") == Rational(-22, 45));
  CHECK(parse_rational("\xE2\x88\x92" "3/9") == Rational(-1, 3));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(parse_rational("10/4")) == "5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
}

TEST_CASE("denominator primes") {
  CHECK(denominator_primes(Rational(3, 10)) == std::vector<Integer>{2, 5});
  CHECK(denominator_primes(Rational(7)).empty());
  CHECK(denominator_primes(make_rational(-22, 45)) == std::vector<Integer>{3, 5});
  // large semiprime exercises the Pollard path
  const Integer p("1000000007"), q("998244353");
  CHECK(prime_factors(p * q * 4) == std::vector<Integer>{2, q, p});
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == poly({-1, 1}));
  CHECK(cyclotomic_polynomial(4) == poly({1, 0, 1}));
  CHECK(cyclotomic_polynomial(12) == poly({1, 0, -1, 0, 1}));
  for (std::uint64_t m = 1; m <= 60; ++m) {
    CAPTURE(m);
    const auto& phi = cyclotomic_polynomial(m);
    CHECK(phi == mobius_cyclotomic(m));
    CHECK(phi.degree() == static_cast<long>(euler_phi(m)));
    RationalPolynomial prod = poly({1});
    for (auto d : divisors(m)) prod = prod * cyclotomic_polynomial(d);
    CHECK(prod == RationalPolynomial::monomial(1, m) - poly({1}));
  }
}

TEST_CASE("conjugation and galois action") {
  const FieldElement i = FieldElement::zeta(4);
  CHECK(conjugate(i) == -i);
  CHECK(conjugate(FieldElement(Rational(5, 3))) == FieldElement(Rational(5, 3)));
  const FieldElement z3 = FieldElement::zeta(3);
  const FieldElement one3 = FieldElement::one(z3.field());
  CHECK(conjugate(one3 + z3) == -z3);
  CHECK(galois_apply(i, 3) == -i);
  CHECK(galois_apply(FieldElement::from_rational(4, FieldTag::cyclotomic(7)), 3) ==
        FieldElement::from_rational(4, FieldTag::cyclotomic(7)));
  const FieldElement s = FieldElement::zeta(5, 1) + FieldElement::zeta(5, 4);
  CHECK(galois_apply(s, 2) == FieldElement::zeta(5, 2) + FieldElement::zeta(5, 3));
  CHECK_THROWS_AS(galois_apply(FieldElement::zeta(6), 3), Error);
  try {
    galois_apply(FieldElement::zeta(6), 2);
    FAIL("expected invalid automorphism");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::invalid_automorphism);
  }
}

TEST_CASE("is_rational extraction") {
  const auto v = (FieldElement::zeta(3, 1) + FieldElement::zeta(3, 2)).as_rational();
  REQUIRE(v.has_value());
  CHECK(*v == -1);
  CHECK_FALSE(is_rational(FieldElement::zeta(3)));
  const auto r = FieldElement::from_rational(Rational(7, 2), FieldTag::cyclotomic(8)).as_rational();
  REQUIRE(r.has_value());
  CHECK(*r == Rational(7, 2));
}

TEST_CASE("mixed fields need explicit promotion") {
  const FieldElement q(Rational(2));
  const FieldElement z = FieldElement::zeta(5);
  CHECK_THROWS_AS(q + z, Error);
  CHECK(q.promote(z.field()) + z == z + FieldElement::from_rational(2, z.field()));
  // zeta_4 = zeta_12^3
  CHECK(FieldElement::zeta(4).promote(FieldTag::cyclotomic(12)) == FieldElement::zeta(12, 3));
  CHECK_THROWS_AS(FieldElement::zeta(4).promote(FieldTag::cyclotomic(6)), Error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(20261014);
  for (std::uint64_t m : {1u, 3u, 4u, 5u, 7u, 8u, 12u, 15u}) {
    const FieldTag tag = m == 1 ? FieldTag::rationals() : FieldTag::cyclotomic(m);
    for (int trial = 0; trial < 25; ++trial) {
      CAPTURE(m);
      const auto a = testing::random_element(rng, tag);
      const auto b = testing::random_element(rng, tag);
      const auto c = testing::random_element(rng, tag);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(conjugate(conjugate(a)) == a);
      for (long k : galois_group(tag.is_rational() ? 1 : m)) {
        CHECK(galois_apply(a * b, k) == galois_apply(a, k) * galois_apply(b, k));
        CHECK(galois_apply(a + b, k) == galois_apply(a, k) + galois_apply(b, k));
      }
      // norm rationality
      FieldElement norm = FieldElement::one(tag);
      for (long k : galois_group(tag.is_rational() ? 1 : m)) norm *= galois_apply(a, k);
      CHECK(is_rational(norm));
    }
  }
}

TEST_CASE("embedding respects arithmetic") {
  std::mt19937_64 rng(7);
  const FieldTag small = FieldTag::cyclotomic(3), big = FieldTag::cyclotomic(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = testing::random_element(rng, small);
    const auto b = testing::random_element(rng, small);
    CHECK((a * b).promote(big) == a.promote(big) * b.promote(big));
    CHECK(conjugate(a).promote(big) == conjugate(a.promote(big)));
  }
}
