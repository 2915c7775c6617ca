#include "gmf/gmfcore.hpp"

#include <algorithm>
#include <set>

#include "gmf/error.hpp"
#include "gmf/linalg.hpp"

namespace gmf {

namespace {

FieldTag join(const FieldTag& a, const FieldTag& b) {
  if (embeds_into(a, b)) return b;
  if (embeds_into(b, a)) return a;
  throw Error(ErrorKind::incompatible_series,
              "no common coefficient field for " + to_string(a) + " and " + to_string(b));
}

FieldTag common_field(const QExpansion& f, const std::vector<FieldElement>& xs) {
  FieldTag k = f.field();
  for (const auto& x : xs) k = join(k, x.field());
  return k;
}

std::vector<FieldElement> promote_all(const std::vector<FieldElement>& xs, const FieldTag& k) {
  std::vector<FieldElement> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.promote(k));
  return out;
}

QExpansion cap(const QExpansion& f, Exponent precision) {
  return f.precision() > precision ? truncate(f, precision) : f;
}

void require_normalized(const PGMF& f) {
  if (!f.normalized) {
    throw Error(ErrorKind::invalid_argument, "f must be normalized (leading coefficient 1)");
  }
}

}  // namespace

PGMF PGMF::make(QExpansion expansion, const GroupDescriptor& group) {
  const bool normalized = !expansion.is_zero() && expansion.leading_coeff().is_one();
  return PGMF{std::move(expansion), group, normalized};
}

Exponent default_working_precision(std::int64_t kappa) {
  return std::max<Exponent>(60, 4 * kappa + 10);
}

std::vector<FieldElement> cofactor_prefix(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                          std::int64_t kappa) {
  if (kappa < 0) throw Error(ErrorKind::invalid_argument, "kappa must be >= 0");
  require_normalized(f);
  if (f1_prefix.size() != static_cast<std::size_t>(kappa) + 1) {
    throw Error(ErrorKind::invalid_argument, "f1 prefix must have kappa + 1 = " +
                                                 std::to_string(kappa + 1) + " entries, got " +
                                                 std::to_string(f1_prefix.size()));
  }
  if (!f1_prefix[0].is_one()) {
    throw Error(ErrorKind::invalid_argument, "f1 prefix must start with 1");
  }
  const Exponent h = f.expansion.lead();
  if (f.expansion.precision() < h + kappa + 1) {
    throw Error(ErrorKind::precision_shortfall,
                "kappa = " + std::to_string(kappa) + " needs f known to q^" +
                    std::to_string(h + kappa) + ", precision is " +
                    std::to_string(f.expansion.precision()));
  }
  const FieldTag k = common_field(f.expansion, f1_prefix);
  const auto a1 = promote_all(f1_prefix, k);
  std::vector<FieldElement> a0;
  a0.reserve(a1.size());
  for (std::int64_t n = 0; n <= kappa; ++n) {
    FieldElement acc = f.expansion.coeff(h + n).promote(k);
    for (std::int64_t j = 1; j <= n; ++j) acc -= a1[static_cast<std::size_t>(j)] * a0[static_cast<std::size_t>(n - j)];
    a0.push_back(std::move(acc));
  }
  return a0;
}

std::vector<FieldElement> logderiv_prefix(const std::vector<FieldElement>& a0) {
  if (a0.empty() || !a0[0].is_one()) {
    throw Error(ErrorKind::invalid_argument, "cofactor prefix must start with 1");
  }
  std::vector<FieldElement> b0;  // b0[n-1] = b0(n)
  for (std::size_t n = 1; n < a0.size(); ++n) {
    FieldElement acc = a0[n] * Rational(static_cast<long>(n));
    for (std::size_t j = 1; j < n; ++j) acc -= b0[j - 1] * a0[n - j];
    b0.push_back(std::move(acc));
  }
  return b0;
}

CuspFormFit fit_cusp_form(const std::vector<FieldElement>& b0, const CuspFormBasis& basis) {
  const std::size_t d = basis.dimension();
  const std::size_t rows = b0.size();
  if (d > rows) {
    throw Error(ErrorKind::corrupt_basis, "basis dimension " + std::to_string(d) +
                                              " exceeds the " + std::to_string(rows) +
                                              " available log-derivative coefficients");
  }
  FieldTag k = FieldTag::rationals();
  for (const auto& x : b0) k = join(k, x.field());
  for (const auto& form : basis.forms) k = join(k, form.field());
  Matrix a = leading_coefficient_matrix(basis, static_cast<std::int64_t>(rows));
  for (auto& row : a)
    for (auto& x : row) x = x.promote(k);
  const auto rhs = promote_all(b0, k);

  CuspFormFit fit;
  const auto solved = solve_overdetermined(a, rhs);
  if (solved.rank_deficient) {
    throw Error(ErrorKind::corrupt_basis, "leading-coefficient matrix of the basis is rank deficient");
  }
  if (solved.failing_row) {
    const std::size_t i = *solved.failing_row;
    FieldElement fitted = FieldElement::zero(k);
    for (std::size_t j = 0; j < d; ++j) fitted += a[i][j] * solved.solution[j];
    fit.witness = InconsistencyWitness{static_cast<Exponent>(i + 1), rhs[i], fitted};
  }
  fit.coords = solved.solution;
  return fit;
}

DecompositionOutcome try_decompose(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                   const CuspFormBasis& basis, Exponent target_precision) {
  if (!(basis.group == f.group)) {
    throw Error(ErrorKind::group_mismatch,
                "basis is for " + to_string(basis.group) + " but f is on " + to_string(f.group));
  }
  const std::int64_t kappa = std::max<std::int64_t>(gmf::kappa(f.group), 0);
  const std::size_t d = basis.dimension();
  const std::uint64_t level = f.expansion.level();
  if (d > 0 && level != basis.level) {
    throw Error(ErrorKind::incompatible_series, "f has level " + std::to_string(level) +
                                                    " but the basis has level " +
                                                    std::to_string(basis.level));
  }
  const auto a0 = cofactor_prefix(f, f1_prefix, kappa);
  const auto b0 = logderiv_prefix(a0);
  CuspFormFit fit = fit_cusp_form(b0, basis);
  if (!fit.consistent()) return {std::nullopt, fit.witness};

  FieldTag k = common_field(f.expansion, f1_prefix);
  for (const auto& c : fit.coords) k = join(k, c.field());
  const QExpansion fk = promote(f.expansion, k);
  const Exponent h = fk.lead();
  const Exponent w = std::min(target_precision, fk.precision());
  if (w <= h) {
    throw Error(ErrorKind::precision_shortfall, "working precision " + std::to_string(w) +
                                                    " does not exceed the lead q^" + std::to_string(h));
  }
  const Exponent w0 = w - std::min<Exponent>(h, 0);

  CanonicalDecomposition dec;
  dec.basis_coords = fit.coords;
  if (d == 0) {
    dec.f1 = PGMF::make(cap(fk, w), f.group);
    dec.f0 = PGMF::make(QExpansion::one(level, w0, k), f.group);
    dec.g0 = QExpansion::zero(level, w0, k);
    return {std::move(dec), std::nullopt};
  }
  QExpansion g0 = QExpansion::zero(level, w0, k);
  for (std::size_t nu = 0; nu < d; ++nu) {
    const QExpansion form = promote(cap(basis.forms[nu], w0), k);
    g0 = add(g0, scale(form, fit.coords[nu]));
  }
  const QExpansion f0 = exp_from_logderiv(g0, w0);
  const QExpansion f1 = cap(mul(fk, exp_from_logderiv(negate(g0), w0)), w);
  dec.f1 = PGMF::make(f1, f.group);
  dec.f0 = PGMF::make(f0, f.group);
  dec.g0 = std::move(g0);
  return {std::move(dec), std::nullopt};
}

CanonicalDecomposition decompose_with_prefix(const PGMF& f, const std::vector<FieldElement>& f1_prefix,
                                             const CuspFormBasis& basis, Exponent target_precision) {
  auto outcome = try_decompose(f, f1_prefix, basis, target_precision);
  if (outcome.witness) {
    const auto& w = *outcome.witness;
    throw Error(ErrorKind::prefix_inconsistent,
                "b0(" + std::to_string(w.exponent) + ") = " + to_string(w.expected) +
                    " is not matched by the cusp form fit (" + to_string(w.fitted) + ")");
  }
  return std::move(*outcome.decomposition);
}

bool DecompositionReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

DecompositionReport verify_decomposition(const PGMF& f, const CanonicalDecomposition& dec,
                                         const CuspFormBasis* basis) {
  DecompositionReport report;
  auto run = [&](const std::string& name, auto&& body) {
    CheckResult c{name, true, std::nullopt, ""};
    try {
      body(c);
    } catch (const Error& e) {
      c.passed = false;
      c.detail = e.what();
    }
    report.checks.push_back(std::move(c));
  };
  auto compare = [](CheckResult& c, const QExpansion& x, const QExpansion& y) {
    const FieldTag k = join(x.field(), y.field());
    c.first_discrepancy = first_difference(promote(x, k), promote(y, k));
    c.passed = !c.first_discrepancy.has_value();
    c.detail = c.passed ? "agree below q^" + std::to_string(std::min(x.precision(), y.precision()))
                        : "first discrepancy at q^" + std::to_string(*c.first_discrepancy);
  };

  run("product", [&](CheckResult& c) {
    const FieldTag k = join(dec.f1.expansion.field(), dec.f0.expansion.field());
    compare(c, mul(promote(dec.f1.expansion, k), promote(dec.f0.expansion, k)), f.expansion);
  });
  run("logderiv", [&](CheckResult& c) { compare(c, theta_logderiv(dec.f0.expansion), dec.g0); });
  run("normalization", [&](CheckResult& c) {
    const auto& f0 = dec.f0.expansion;
    const auto& f1 = dec.f1.expansion;
    std::string bad;
    if (f0.is_zero() || f0.lead() != 0 || !f0.leading_coeff().is_one()) bad += "f0 does not start with 1; ";
    if (f1.is_zero() || f1.lead() != f.expansion.lead()) bad += "f1 lead differs from f; ";
    else if (!f1.leading_coeff().is_one()) bad += "f1 is not normalized; ";
    if (!dec.g0.is_zero() && dec.g0.lead() < 1) bad += "g0 does not vanish at infinity; ";
    c.passed = bad.empty();
    c.detail = c.passed ? "f0 = 1 + ..., f1 normalized" : bad.substr(0, bad.size() - 2);
  });
  run("basis-fit", [&](CheckResult& c) {
    if (!basis) {
      c.detail = "no basis supplied";
      return;
    }
    if (dec.basis_coords.size() != basis->dimension()) {
      c.passed = false;
      c.detail = "expected " + std::to_string(basis->dimension()) + " coordinates, got " +
                 std::to_string(dec.basis_coords.size());
      return;
    }
    FieldTag k = dec.g0.field();
    for (const auto& x : dec.basis_coords) k = join(k, x.field());
    QExpansion span = QExpansion::zero(dec.g0.level(), dec.g0.precision(), k);
    for (std::size_t nu = 0; nu < basis->dimension(); ++nu)
      span = add(span, scale(promote(cap(basis->forms[nu], dec.g0.precision()), k),
                             dec.basis_coords[nu].promote(k)));
    compare(c, span, dec.g0);
  });
  return report;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent_with_finite_order: return "finite-order-consistent";
    case Verdict::nontrivial_empty_divisor_part: return "nontrivial-f0";
    case Verdict::prefix_inconsistent: return "prefix-inconsistent";
  }
  return "unknown";
}

Certificate finite_order_certificate(const PGMF& f, const CuspFormBasis& basis,
                                     Exponent target_precision,
                                     const std::optional<std::vector<FieldElement>>& f1_prefix) {
  require_normalized(f);
  std::vector<FieldElement> prefix;
  if (f1_prefix) {
    prefix = *f1_prefix;
  } else {
    const std::int64_t kappa = std::max<std::int64_t>(gmf::kappa(f.group), 0);
    const Exponent h = f.expansion.lead();
    for (std::int64_t n = 0; n <= kappa; ++n) prefix.push_back(f.expansion.coeff(h + n));
  }
  auto outcome = try_decompose(f, prefix, basis, target_precision);
  Certificate cert;
  if (outcome.witness) {
    const auto& w = *outcome.witness;
    cert.verdict = Verdict::prefix_inconsistent;
    cert.witness = w;
    cert.detail = "b0(" + std::to_string(w.exponent) + ") = " + to_string(w.expected) +
                  " but the cusp form fit gives " + to_string(w.fitted);
    return cert;
  }
  const auto& dec = *outcome.decomposition;
  if (dec.g0.is_zero()) {
    cert.verdict = Verdict::consistent_with_finite_order;
    cert.detail = "g0 = 0 and f0 = 1 below q^" + std::to_string(dec.f0.expansion.precision());
  } else {
    cert.verdict = Verdict::nontrivial_empty_divisor_part;
    cert.detail = "g0 has leading term at q^" + std::to_string(dec.g0.lead()) +
                  "; f0 is not constant";
  }
  cert.decomposition = std::move(*outcome.decomposition);
  return cert;
}

PGMF galois_norm(const PGMF& f) {
  const FieldTag& k = f.expansion.field();
  if (k.is_rational()) {
    throw Error(ErrorKind::invalid_argument, "galois_norm needs a cyclotomic coefficient field");
  }
  QExpansion prod = QExpansion::one(f.expansion.level(), f.expansion.relative_precision(), k);
  for (long s : galois_group(k.conductor)) prod = mul(prod, galois_map(f.expansion, s));
  std::vector<FieldElement> coeffs;
  coeffs.reserve(prod.coeffs().size());
  for (const auto& c : prod.coeffs()) {
    const auto r = c.as_rational();
    if (!r) throw Error(ErrorKind::invalid_argument, "Galois norm has a non-rational coefficient");
    coeffs.emplace_back(*r);
  }
  return PGMF::make(QExpansion::from_coeffs(prod.level(), prod.lead(), prod.precision(),
                                            FieldTag::rationals(), std::move(coeffs)),
                    f.group);
}

PGMF k_operator(const PGMF& f) {
  if (!j_normalizes(f.group)) {
    throw Error(ErrorKind::unsupported_group, "J does not normalize " + to_string(f.group));
  }
  return PGMF::make(conjugate_coeffs(f.expansion), f.group);
}

PGMF pgmf_product(const PGMF& f, const PGMF& g) {
  if (!(f.group == g.group)) {
    throw Error(ErrorKind::group_mismatch,
                "cannot multiply functions on " + to_string(f.group) + " and " + to_string(g.group));
  }
  return PGMF::make(mul(f.expansion, g.expansion), f.group);
}

PGMF pgmf_power(const PGMF& f, std::int64_t m) { return PGMF::make(pow(f.expansion, m), f.group); }

DenominatorReport denominator_prime_report(const PGMF& f) {
  std::set<Integer> primes;
  for (const auto& c : f.expansion.coeffs())
    for (const auto& x : c.coords())
      for (const auto& p : denominator_primes(x)) primes.insert(p);
  return {std::vector<Integer>(primes.begin(), primes.end()), !f.expansion.field().is_rational()};
}

}  // namespace gmf
