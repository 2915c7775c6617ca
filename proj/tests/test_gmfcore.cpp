#include "doctest.h"
#include "generators.hpp"
#include "gmf/error.hpp"
#include "gmf/gmfcore.hpp"
#include "synthetic.hpp"

using namespace gmf;
using namespace gmf::testing;

namespace {

const GroupDescriptor g11 = GroupDescriptor::gamma0(11);

QExpansion newform11(Exponent p) { return eta_quotient_expansion(EtaQuotient::parse("1^2 11^2"), p); }

std::vector<FieldElement> fe(std::initializer_list<long> xs) {
  return std::vector<FieldElement>(xs.begin(), xs.end());
}

QExpansion padded(Exponent prec, const FieldTag& k, std::vector<FieldElement> coeffs) {
  coeffs.resize(static_cast<std::size_t>(prec), FieldElement::zero(k));
  return QExpansion::from_coeffs(1, 0, prec, k, std::move(coeffs));
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invalid_argument;
}

}  // namespace

TEST_CASE("cofactor prefix") {
  const PGMF f = PGMF::make(QExpansion::from_rationals(1, 1, 6, {1, 0, -1}), g11);
  CHECK(cofactor_prefix(f, fe({1, -1}), 1) == fe({1, 1}));
  CHECK(cofactor_prefix(f, fe({1, 0}), 1) == fe({1, 0}));
  CHECK(cofactor_prefix(f, fe({1}), 0) == fe({1}));
  const PGMF g = PGMF::make(newform11(10), g11);
  CHECK(cofactor_prefix(g, fe({1, -2, -1, 2}), 3) == fe({1, 0, 0, 0}));
  CHECK(kind_of([&] { cofactor_prefix(f, fe({1, -1}), 7); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { cofactor_prefix(f, fe({2, -1}), 1); }) == ErrorKind::invalid_argument);
  const PGMF short_f = PGMF::make(QExpansion::from_rationals(1, 1, 3, {1, 0}), g11);
  CHECK(kind_of([&] { cofactor_prefix(short_f, fe({1, 0, 0}), 2); }) == ErrorKind::precision_shortfall);
  const PGMF unnormalized = PGMF::make(QExpansion::from_rationals(1, 1, 3, {2, 0}), g11);
  CHECK_FALSE(unnormalized.normalized);
  CHECK(kind_of([&] { cofactor_prefix(unnormalized, fe({1, 0}), 1); }) == ErrorKind::invalid_argument);
}

TEST_CASE("log-derivative prefix") {
  CHECK(logderiv_prefix(fe({1, 0, 0, 0})) == fe({0, 0, 0}));
  CHECK(logderiv_prefix(fe({1, 1})) == fe({1}));
  CHECK(logderiv_prefix({FieldElement(1L), FieldElement(1L), FieldElement(make_rational(1, 2))}) ==
        fe({1, 0}));
  CHECK(logderiv_prefix(fe({1})).empty());
  CHECK_THROWS_AS(logderiv_prefix(fe({0, 1})), Error);
}

TEST_CASE("cusp form fit") {
  const auto basis = load_basis(g11, 20);
  const auto fit = fit_cusp_form(fe({3}), basis);
  REQUIRE(fit.consistent());
  CHECK(fit.coords == fe({3}));
  CHECK(fit_cusp_form(fe({0}), basis).coords == fe({0}));
  const auto empty = load_basis(GroupDescriptor::gamma0(13), 20);
  CHECK(kappa(GroupDescriptor::gamma0(13)) == 1);
  CHECK(empty.dimension() == 0);
  const auto w = fit_cusp_form(fe({5}), empty);
  REQUIRE_FALSE(w.consistent());
  CHECK(w.witness->exponent == 1);
  CHECK(w.witness->expected == FieldElement(5L));
  CHECK(w.witness->fitted.is_zero());
  CHECK(fit_cusp_form(fe({0}), empty).consistent());
  const CuspFormBasis dup{g11, 1, {basis.forms[0], basis.forms[0]}};
  CHECK(kind_of([&] { fit_cusp_form(fe({1}), dup); }) == ErrorKind::corrupt_basis);
}

TEST_CASE("synthetic decomposition is recovered exactly") {
  const Exponent p = 60;
  const auto basis = load_basis(g11, p + 10);
  const Synthetic s = make_synthetic(basis, newform11(p + 10), fe({3}), p);
  const auto dec = decompose_with_prefix(s.f, s.prefix, basis, p);
  CHECK(dec.f1.expansion == s.f1);
  CHECK(dec.f0.expansion == s.f0);
  CHECK(dec.g0 == scale(truncate(basis.forms[0], p), FieldElement(3L)));
  CHECK(dec.basis_coords == fe({3}));
  CHECK(dec.f1.expansion.precision() == p);
  const auto report = verify_decomposition(s.f, dec, &basis);
  CHECK(report.ok());
  // log-derivative additivity across the decomposition
  CHECK(agree(theta_logderiv(s.f.expansion), add(theta_logderiv(dec.f1.expansion), dec.g0)));
}

TEST_CASE("a classical form is its own unitary part") {
  const auto basis = load_basis(g11, 40);
  const PGMF f = PGMF::make(newform11(40), g11);
  const auto dec = decompose_with_prefix(f, fe({1, -2}), basis, 40);
  CHECK(dec.f0.expansion == QExpansion::one(1, 40));
  CHECK(dec.g0.is_zero());
  CHECK(dec.basis_coords == fe({0}));
  CHECK(dec.f1.expansion == f.expansion);
}

TEST_CASE("short circuit when there are no cusp forms") {
  std::mt19937_64 rng(3);
  const auto sl2 = GroupDescriptor::sl2z();
  const auto basis = load_basis(sl2, 30);
  const QExpansion delta = eta_quotient_expansion(EtaQuotient::parse("1^24"), 30);
  for (const QExpansion& e : {delta, random_unit_series(rng, 30)}) {
    const PGMF f = PGMF::make(e, sl2);
    const auto dec = decompose_with_prefix(f, fe({1}), basis, 30);
    CHECK(dec.f1.expansion == f.expansion);
    CHECK(agree(dec.f0.expansion, QExpansion::one(1, 30)));
    CHECK(dec.g0.is_zero());
    CHECK(verify_decomposition(f, dec, &basis).ok());
  }
  // Gamma0(13): genus zero with kappa 1, so b0(1) must vanish
  const auto g13 = GroupDescriptor::gamma0(13);
  const PGMF f = PGMF::make(QExpansion::from_rationals(1, 0, 10, {1, 4, 2}), g13);
  CHECK(kind_of([&] { decompose_with_prefix(f, fe({1, 3}), load_basis(g13, 10), 10); }) ==
        ErrorKind::prefix_inconsistent);
  CHECK(decompose_with_prefix(f, fe({1, 4}), load_basis(g13, 10), 10).f1.expansion == f.expansion);
}

TEST_CASE("decomposition rejects mismatched inputs") {
  const auto basis = load_basis(g11, 20);
  const PGMF wrong_group = PGMF::make(newform11(20), GroupDescriptor::gamma0(14));
  CHECK(kind_of([&] { decompose_with_prefix(wrong_group, fe({1, -2}), basis, 20); }) ==
        ErrorKind::group_mismatch);
  const PGMF wrong_level = PGMF::make(rescale_level(newform11(20), 2), g11);
  CHECK(kind_of([&] { decompose_with_prefix(wrong_level, fe({1, -2}), basis, 20); }) ==
        ErrorKind::incompatible_series);
}

TEST_CASE("verification catches constructed failures") {
  const Exponent p = 30;
  const auto basis = load_basis(g11, p + 5);
  const Synthetic s = make_synthetic(basis, newform11(p + 5), fe({2}), p);
  auto dec = decompose_with_prefix(s.f, s.prefix, basis, p);
  REQUIRE(verify_decomposition(s.f, dec, &basis).ok());

  auto perturbed = dec;
  perturbed.f0 = PGMF::make(add(dec.f0.expansion, QExpansion::monomial(1, 5, FieldElement(1L), p)), g11);
  const auto r = verify_decomposition(s.f, perturbed, &basis);
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.checks[0].passed);
  CHECK(r.checks[0].first_discrepancy == s.f.expansion.lead() + 5);

  auto zero_g = dec;
  zero_g.g0 = QExpansion::zero(1, p);
  const auto r2 = verify_decomposition(s.f, zero_g);
  CHECK(r2.checks[0].passed);
  CHECK_FALSE(r2.checks[1].passed);
  CHECK(r2.checks[1].first_discrepancy == 1);

  auto bad_coords = dec;
  bad_coords.basis_coords = fe({5});
  const auto r3 = verify_decomposition(s.f, bad_coords, &basis);
  CHECK_FALSE(r3.checks[3].passed);
  CHECK(r3.checks[3].name == "basis-fit");
}

TEST_CASE("finite-order certificate") {
  const Exponent p = 60;
  for (const auto& entry : basis_catalogue()) {
    const auto g = GroupDescriptor::gamma0(entry.level);
    const auto basis = load_basis(g, p);
    const PGMF f = PGMF::make(basis.forms[0], g);
    const auto cert = finite_order_certificate(f, basis, p);
    CHECK(cert.verdict == Verdict::consistent_with_finite_order);
    CHECK(cert.decomposition->f0.expansion == QExpansion::one(1, p));
  }
  const auto basis = load_basis(g11, p + 10);
  const Synthetic s = make_synthetic(basis, newform11(p + 10), fe({3}), p);
  const auto cert = finite_order_certificate(s.f, basis, p, s.prefix);
  CHECK(cert.verdict == Verdict::nontrivial_empty_divisor_part);
  CHECK(cert.decomposition->basis_coords == fe({3}));
  CHECK(to_string(cert.verdict) == "nontrivial-f0");
  // on SL2(Z) the certificate is always consistent
  std::mt19937_64 rng(11);
  const auto sl2 = GroupDescriptor::sl2z();
  const auto cert2 = finite_order_certificate(PGMF::make(random_unit_series(rng, 20), sl2),
                                              load_basis(sl2, 20), 20);
  CHECK(cert2.verdict == Verdict::consistent_with_finite_order);
  const auto g13 = GroupDescriptor::gamma0(13);
  const auto cert3 = finite_order_certificate(
      PGMF::make(QExpansion::from_rationals(1, 0, 10, {1, 4}), g13), load_basis(g13, 10), 10, fe({1, 1}));
  CHECK(cert3.verdict == Verdict::prefix_inconsistent);
  CHECK(cert3.witness->exponent == 1);
  CHECK(cert3.witness->expected == FieldElement(3L));
}

TEST_CASE("prefix perturbation never returns the unperturbed decomposition") {
  std::mt19937_64 rng(23);
  const Exponent p = 40;
  const auto basis = load_basis(g11, p + 10);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f1 = eta_quotient_expansion(random_eta_quotient(rng, 11), p + 10);
    const Synthetic s = make_synthetic(basis, f1, random_coords(rng, 1), p);
    auto prefix = s.prefix;
    prefix[1] += FieldElement(random_nonzero_rational(rng));
    const auto cert = finite_order_certificate(s.f, basis, p, prefix);
    REQUIRE(cert.verdict != Verdict::prefix_inconsistent);
    CHECK_FALSE(cert.decomposition->g0 == s.g0);
  }
}

TEST_CASE("Galois norm") {
  const FieldTag k3 = FieldTag::cyclotomic(3);
  const QExpansion r = QExpansion::from_rationals(1, 0, 6, {1, 2, -1, 5});
  const PGMF f = PGMF::make(promote(r, k3), g11);
  CHECK(galois_norm(f).expansion == mul(r, r));
  const PGMF lin = PGMF::make(
      padded(5, k3, {FieldElement::one(k3), FieldElement::zeta(3, 1)}), g11);
  CHECK(galois_norm(lin).expansion == QExpansion::from_rationals(1, 0, 5, {1, -1, 1}));
  CHECK(kind_of([&] { galois_norm(PGMF::make(r, g11)); }) == ErrorKind::invalid_argument);

  std::mt19937_64 rng(9);
  for (std::uint64_t m : {5, 8, 12}) {
    const FieldTag k = FieldTag::cyclotomic(m);
    const PGMF a = PGMF::make(random_series(rng, 1, 12, k, 5), g11);
    const PGMF b = PGMF::make(random_series(rng, -1, 10, k, 5), g11);
    const PGMF na = galois_norm(a);
    CHECK(na.expansion.field().is_rational());
    CHECK(na.expansion.lead() == static_cast<Exponent>(euler_phi(m)));
    CHECK(galois_norm(pgmf_product(a, b)).expansion == pgmf_product(na, galois_norm(b)).expansion);
  }
}

TEST_CASE("K operator") {
  const FieldTag k4 = FieldTag::cyclotomic(4);
  const PGMF real = PGMF::make(promote(newform11(20), k4), g11);
  CHECK(k_operator(real) == real);
  const PGMF f = PGMF::make(
      padded(5, k4, {FieldElement::one(k4), FieldElement::zeta(4, 1)}), g11);
  const PGMF kf = k_operator(f);
  CHECK(kf.expansion.coeff(1) == -FieldElement::zeta(4, 1));
  CHECK(k_operator(kf) == f);
  CHECK(kf.group == f.group);
}

TEST_CASE("decomposition commutes with K") {
  std::mt19937_64 rng(31);
  const Exponent p = 40;
  const auto basis = load_basis(g11, p + 10);
  for (std::uint64_t m : {4, 5, 12}) {
    const FieldTag k = FieldTag::cyclotomic(m);
    const QExpansion f1 = mul(promote(newform11(p + 10), k), random_unit_series(rng, p + 10, k, 5));
    const Synthetic s = make_synthetic(basis, f1, random_coords(rng, 1, k, 10), p);
    const PGMF kf = k_operator(s.f);
    std::vector<FieldElement> kprefix;
    for (const auto& x : s.prefix) kprefix.push_back(conjugate(x));
    const auto dec = decompose_with_prefix(kf, kprefix, basis, p);
    CHECK(dec.f1.expansion == conjugate_coeffs(s.f1));
    CHECK(dec.f0.expansion == conjugate_coeffs(s.f0));
    const auto direct = decompose_with_prefix(s.f, s.prefix, basis, p);
    CHECK(dec.f1 == k_operator(direct.f1));
    CHECK(dec.f0 == k_operator(direct.f0));
  }
}

TEST_CASE("real inputs have real factors") {
  std::mt19937_64 rng(37);
  const Exponent p = 30;
  const auto basis = load_basis(g11, p + 10);
  const FieldTag k5 = FieldTag::cyclotomic(5);
  const FieldElement c = FieldElement::zeta(5, 1) + FieldElement::zeta(5, 4);  // 2 cos(2 pi / 5)
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<FieldElement> coeffs{FieldElement::one(k5)};
    for (Exponent n = 1; n < p + 10; ++n)
      coeffs.push_back(c * random_rational(rng, 9) + FieldElement::from_rational(random_rational(rng, 9), k5));
    const QExpansion unit = QExpansion::from_coeffs(1, 0, p + 10, k5, coeffs);
    const QExpansion f1 = mul(promote(newform11(p + 10), k5), unit);
    const Synthetic s = make_synthetic(basis, f1, {c * Rational(3)}, p);
    REQUIRE(conjugate_coeffs(s.f.expansion) == s.f.expansion);
    const auto dec = decompose_with_prefix(s.f, s.prefix, basis, p);
    CHECK(conjugate_coeffs(dec.f1.expansion) == dec.f1.expansion);
    CHECK(conjugate_coeffs(dec.f0.expansion) == dec.f0.expansion);
  }
}

TEST_CASE("products and powers") {
  std::mt19937_64 rng(41);
  const PGMF f = PGMF::make(random_series(rng, 2, 20), g11);
  const PGMF one = pgmf_product(f, pgmf_power(f, -1));
  CHECK(agree(one.expansion, QExpansion::one(1, one.expansion.precision())));
  CHECK(pgmf_power(f, 1) == f);
  CHECK(pgmf_power(PGMF::make(newform11(20), g11), 2).expansion.lead() == 2);
  CHECK(pgmf_power(PGMF::make(newform11(20), g11), 2).normalized);
  const PGMF other = PGMF::make(f.expansion, GroupDescriptor::gamma0(14));
  CHECK(kind_of([&] { pgmf_product(f, other); }) == ErrorKind::group_mismatch);
}

TEST_CASE("denominator primes") {
  CHECK(denominator_prime_report(PGMF::make(newform11(30), g11)).primes.empty());
  const QExpansion e = exp_from_logderiv(QExpansion::monomial(1, 1, FieldElement(1L), 6), 6);
  const auto r = denominator_prime_report(PGMF::make(e, g11));
  CHECK(r.primes == std::vector<Integer>{2, 3, 5});
  CHECK_FALSE(r.from_cyclotomic_coordinates);
  const auto r7 = denominator_prime_report(
      PGMF::make(QExpansion::from_rationals(1, 0, 3, {1, make_rational(1, 7)}), g11));
  CHECK(r7.primes == std::vector<Integer>{7});
  const FieldTag k3 = FieldTag::cyclotomic(3);
  const auto rc = denominator_prime_report(PGMF::make(
      padded(3, k3, {FieldElement::one(k3), FieldElement::zeta(3, 1) * make_rational(1, 11)}),
      g11));
  CHECK(rc.primes == std::vector<Integer>{11});
  CHECK(rc.from_cyclotomic_coordinates);
}

TEST_CASE("default working precision") {
  CHECK(default_working_precision(0) == 60);
  CHECK(default_working_precision(5) == 60);
  CHECK(default_working_precision(20) == 90);
}
