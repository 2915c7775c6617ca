#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "gmf/error.hpp"
#include "gmf/etaforms.hpp"
#include "gmf/linalg.hpp"
#include "oracles.hpp"

using namespace gmf;
using namespace gmf::testing;

namespace {

Rational rat_coeff(const QExpansion& f, Exponent n) { return *f.coeff(n).as_rational(); }

}  // namespace

TEST_CASE("eta expansion matches the Euler product") {
  const std::size_t terms = 500;
  const auto naive = euler_product(terms);
  // eta has lead 1 at level 24; q^(1 + 24k) carries the k-th product coefficient.
  const QExpansion eta = eta_expansion(1 + 24 * static_cast<Exponent>(terms - 1) + 1);
  CHECK(eta.level() == 24);
  CHECK(eta.lead() == 1);
  for (std::size_t k = 0; k < terms; ++k) {
    CAPTURE(k);
    CHECK(rat_coeff(eta, 1 + 24 * static_cast<Exponent>(k)) == naive[k]);
  }
  for (Exponent n = 1; n < eta.precision(); ++n)
    if ((n - 1) % 24 != 0) CHECK(eta.coeff(n).is_zero());
  CHECK_THROWS_AS(eta_expansion(1), Error);
}

TEST_CASE("discriminant") {
  const QExpansion delta = eta_quotient_expansion(EtaQuotient::parse("1^24"), 10);
  CHECK(delta.level() == 1);
  CHECK(delta.lead() == 1);
  const long tau[] = {1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643};
  for (int n = 1; n <= 9; ++n) CHECK(rat_coeff(delta, n) == tau[n - 1]);
  CHECK(rat_coeff(delta, 2) * rat_coeff(delta, 3) == rat_coeff(delta, 6));
  const QExpansion inv = eta_quotient_expansion(EtaQuotient::parse("1^-24"), 8);
  CHECK(inv.lead() == -1);
  const QExpansion prod = mul(delta, inv);
  CHECK(prod.lead() == 0);
  CHECK(agree(prod, QExpansion::one(1, prod.precision())));
}

TEST_CASE("newform of level 11") {
  const QExpansion f = eta_quotient_expansion(EtaQuotient::parse("1^2 11^2"), 12);
  CHECK(f.level() == 1);
  CHECK(f.precision() == 12);
  const long a[] = {1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1};
  for (int n = 1; n <= 11; ++n) CHECK(rat_coeff(f, n) == a[n - 1]);
}

TEST_CASE("eta quotient syntax and normalization") {
  const auto eq = EtaQuotient::parse("1 2^\xe2\x88\x92" "1 1^3", 0);
  CHECK(eq.terms() == std::vector<EtaTerm>{{1, 4}, {2, -1}});
  REQUIRE_THROWS_AS(EtaQuotient::parse("1 2^x"), Error);
  CHECK_THROWS_AS(EtaQuotient::parse("0^2"), Error);
  CHECK_THROWS_AS(EtaQuotient::parse("-3^2"), Error);
  CHECK_THROWS_AS(EtaQuotient::parse("1^2 5^2", 12), Error);
  CHECK(eq.ambient_level() == 2);
  const auto merged = EtaQuotient::parse("1^4 2^-1");
  CHECK(merged.terms() == std::vector<EtaTerm>{{1, 4}, {2, -1}});
  // merging cancels to the empty quotient
  const EtaQuotient trivial({{1, 1}, {1, -1}});
  CHECK(trivial.terms().empty());
  CHECK(agree(eta_quotient_expansion(trivial, 5), QExpansion::one(1, 5)));
  CHECK(EtaQuotient::parse("1^2 11^2").natural_level() == 1);
  CHECK(EtaQuotient::parse("1").natural_level() == 24);
  CHECK(EtaQuotient::parse("1^8").natural_level() == 3);
  CHECK_THROWS_AS(eta_quotient_expansion(EtaQuotient::parse("1^24"), 1), Error);
}

TEST_CASE("eta quotient expansion is a monoid homomorphism") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> exp_dist(-4, 4);
  const std::uint64_t divisors[] = {1, 2, 3, 4, 6, 12};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<EtaTerm> ta, tb;
    for (auto d : divisors) {
      ta.push_back({d, exp_dist(rng)});
      tb.push_back({d, exp_dist(rng)});
    }
    const EtaQuotient a(ta, 12), b(tb, 12);
    const EtaQuotient ab = a * b;
    auto expand = [](const EtaQuotient& eq) {
      const auto n = static_cast<Exponent>(eq.natural_level());
      return rescale_level(eta_quotient_expansion(eq, eq.order_24() * n / 24 + 12), 24);
    };
    const QExpansion prod = mul(expand(a), expand(b));
    const QExpansion el = expand(ab);
    CAPTURE(to_string(a));
    CAPTURE(to_string(b));
    CHECK(el.lead() == prod.lead());
    CHECK(agree(el, prod));
  }
}

TEST_CASE("exact rank and overdetermined solve") {
  std::mt19937_64 rng(5);
  const FieldTag k5 = FieldTag::cyclotomic(5);
  for (int trial = 0; trial < 30; ++trial) {
    // random full-rank 3 column system extended by a consistent extra row
    Matrix a(4, std::vector<FieldElement>(3));
    for (auto& row : a)
      for (auto& x : row) x = random_element(rng, k5, 5);
    std::vector<FieldElement> x_true(3);
    for (auto& x : x_true) x = random_element(rng, k5, 5);
    std::vector<FieldElement> b(4, FieldElement::zero(k5));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 3; ++j) b[i] = b[i] + a[i][j] * x_true[j];
    const std::size_t r = exact_rank(a);
    CHECK(r <= 3);
    if (r < 3) continue;
    const auto sol = solve_overdetermined(a, b);
    CHECK_FALSE(sol.rank_deficient);
    CHECK_FALSE(sol.failing_row.has_value());
    CHECK(sol.solution == x_true);
    b[2] = b[2] + FieldElement::one(k5);
    const auto bad = solve_overdetermined(a, b);
    CHECK(bad.failing_row.has_value());
  }
  Matrix dup{{1, 2}, {2, 4}, {3, 6}};
  CHECK(exact_rank(dup) == 1);
  CHECK(solve_overdetermined(dup, {1, 2, 3}).rank_deficient);
  Matrix e{{0, 1}, {1, 0}, {1, 1}};
  const auto s = solve_overdetermined(e, {FieldElement(3L), FieldElement(4L), FieldElement(8L)});
  REQUIRE(s.failing_row.has_value());
  CHECK(*s.failing_row == 2);
  Matrix empty_cols(3, std::vector<FieldElement>{});
  const auto z = solve_overdetermined(empty_cols, {0, 0, 5});
  CHECK(*z.failing_row == 2);
  CHECK(exact_rank(Matrix{}) == 0);
}

TEST_CASE("shipped bases") {
  for (const auto& entry : basis_catalogue()) {
    CAPTURE(entry.level);
    const auto b = load_basis(GroupDescriptor::gamma0(entry.level), 30);
    CHECK(b.dimension() == 1);
    CHECK(b.level == 1);
    const auto report = validate_basis(b);
    CHECK(report.ok());
    CHECK(report.rank == 1);
    CHECK(report.kappa == 1);
    CHECK(b.forms[0].lead() == 1);
    CHECK(rat_coeff(b.forms[0], 1) == 1);
  }
  const auto b14 = load_basis(GroupDescriptor::gamma0(14), 10);
  const long a14[] = {1, -1, -2, 1, 0, 2, 1, -1, 1};
  for (int n = 1; n <= 9; ++n) CHECK(rat_coeff(b14.forms[0], n) == a14[n - 1]);

  const auto sl2 = load_basis(GroupDescriptor::sl2z(), 20);
  CHECK(sl2.dimension() == 0);
  CHECK(validate_basis(sl2).ok());
  CHECK(load_basis(GroupDescriptor::gamma0(6), 20).dimension() == 0);
  CHECK(load_basis(GroupDescriptor::gamma(5), 20).level == 5);

  try {
    load_basis(GroupDescriptor::gamma0(22), 20);
    FAIL("expected no_basis_available");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::no_basis_available);
  }
}

TEST_CASE("corrupt bases are rejected") {
  const auto g11 = GroupDescriptor::gamma0(11);
  const QExpansion f = load_basis(g11, 20).forms[0];
  auto expect_corrupt = [](CuspFormBasis b, const std::string& failing) {
    const auto report = validate_basis(b);
    CHECK_FALSE(report.ok());
    bool found = false;
    for (const auto& c : report.checks)
      if (c.name == failing) found = !c.passed;
    CHECK_MESSAGE(found, failing);
    try {
      prepare_basis(b, 20);
      FAIL("expected corrupt_basis");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::corrupt_basis);
    }
  };
  expect_corrupt({g11, 1, {f, f}}, "rank");
  expect_corrupt({g11, 1, {f, scale(f, FieldElement(3L))}}, "rank");
  expect_corrupt({g11, 1, {scale(promote(f, FieldTag::cyclotomic(3)), FieldElement::zeta(3, 1))}}, "rational");
  expect_corrupt({g11, 1, {QExpansion::one(1, 20)}}, "lead");
  expect_corrupt({g11, 2, {rescale_level(f, 2)}}, "level");
  expect_corrupt({g11, 1, {truncate(f, 1)}}, "precision");
  expect_corrupt({g11, 1, {}}, "dimension");
  // Gamma0(22): genus 2, kappa 3, spanned by the level-11 newform and its dilate.
  const auto g22 = GroupDescriptor::gamma0(22);
  const QExpansion f1 = eta_quotient_expansion(EtaQuotient::parse("1^2 11^2", 22), 20);
  const QExpansion f2 = eta_quotient_expansion(EtaQuotient::parse("2^2 22^2", 22), 20);
  CHECK(f2.lead() == 2);
  CHECK(agree(f2, dilate(f1, 2)));
  const auto r22 = validate_basis({g22, 1, {f1, f2}});
  CHECK(r22.kappa == 3);
  CHECK(r22.genus == 2);
  CHECK(r22.rank == 2);
  CHECK(r22.ok());
  expect_corrupt({g22, 1, {f1, f1}}, "rank");
  expect_corrupt({g22, 1, {f1}}, "dimension");
  // non-integral coefficients are only reported
  const auto half = validate_basis({g11, 1, {scale(f, FieldElement(make_rational(1, 2)))}});
  CHECK(half.ok());
}
