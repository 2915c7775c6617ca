#include "gmf/etaforms.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <sstream>

#include "gmf/error.hpp"
#include "gmf/linalg.hpp"

namespace gmf {

EtaQuotient::EtaQuotient(std::vector<EtaTerm> terms, std::uint64_t ambient_level) {
  std::map<std::uint64_t, std::int64_t> merged;
  for (const auto& t : terms) {
    if (t.divisor == 0) throw Error(ErrorKind::invalid_argument, "eta divisor must be >= 1");
    merged[t.divisor] += t.exponent;
  }
  std::uint64_t lcm = 1;
  for (const auto& [d, r] : merged) {
    if (r != 0) terms_.push_back({d, r});
    lcm = std::lcm(lcm, d);
  }
  ambient_ = ambient_level == 0 ? lcm : ambient_level;
  for (const auto& [d, r] : merged) {
    if (ambient_ % d != 0) {
      throw Error(ErrorKind::invalid_argument, "eta divisor " + std::to_string(d) +
                                                   " does not divide the ambient level " +
                                                   std::to_string(ambient_));
    }
  }
}

EtaQuotient EtaQuotient::parse(std::string_view text, std::uint64_t ambient_level) {
  std::string cleaned;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      cleaned.push_back('-');
      i += 2;
    } else {
      cleaned.push_back(text[i]);
    }
  }
  std::istringstream in(cleaned);
  std::vector<EtaTerm> terms;
  std::string token;
  auto parse_int = [&](const std::string& s, bool allow_sign) -> std::int64_t {
    std::size_t pos = 0;
    if (s.empty() || (!allow_sign && (s[0] == '-' || s[0] == '+'))) pos = std::string::npos;
    std::int64_t v = 0;
    try {
      if (pos != std::string::npos) v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size()) {
      throw Error(ErrorKind::parse_error, "malformed eta quotient term '" + token + "'");
    }
    return v;
  };
  while (in >> token) {
    const auto caret = token.find('^');
    const std::int64_t d = parse_int(token.substr(0, caret), false);
    const std::int64_t r = caret == std::string::npos ? 1 : parse_int(token.substr(caret + 1), true);
    if (d <= 0) throw Error(ErrorKind::parse_error, "eta divisor must be positive in '" + token + "'");
    terms.push_back({static_cast<std::uint64_t>(d), r});
  }
  return EtaQuotient(std::move(terms), ambient_level);
}

std::int64_t EtaQuotient::order_24() const {
  std::int64_t h = 0;
  for (const auto& t : terms_) h += static_cast<std::int64_t>(t.divisor) * t.exponent;
  return h;
}

std::uint64_t EtaQuotient::natural_level() const {
  const auto h = static_cast<std::uint64_t>(std::abs(order_24()));
  return 24 / std::gcd<std::uint64_t>(24, h);
}

EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b) {
  std::vector<EtaTerm> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return EtaQuotient(std::move(terms), std::lcm(a.ambient_, b.ambient_));
}

std::string to_string(const EtaQuotient& eq) {
  std::string out;
  for (const auto& t : eq.terms()) {
    if (!out.empty()) out += ' ';
    out += std::to_string(t.divisor) + "^" + std::to_string(t.exponent);
  }
  return out;
}

QExpansion eta_expansion(Exponent precision) {
  if (precision <= 1) throw Error(ErrorKind::invalid_argument, "eta expansion needs precision > 1");
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(precision - 1));
  // generalized pentagonal numbers k(3k-1)/2 for k = 0, 1, -1, 2, -2, ...
  for (std::int64_t k = 0;; ++k) {
    bool any = false;
    for (std::int64_t s : {k, -k}) {
      if (k == 0 && s != 0) continue;
      const Exponent e = 12 * s * (3 * s - 1);  // offset from the lead
      if (e < precision - 1) {
        coeffs[static_cast<std::size_t>(e)] = FieldElement(s % 2 == 0 ? 1L : -1L);
        any = true;
      }
      if (k == 0) break;
    }
    if (!any) break;
  }
  return QExpansion::from_coeffs(24, 1, precision, FieldTag::rationals(), std::move(coeffs));
}

namespace {

// prod_{n>=1} (1 - q^n) at level 1.
QExpansion euler_product(Exponent precision) {
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(precision));
  for (std::int64_t k = 0;; ++k) {
    bool any = false;
    for (std::int64_t s : {k, -k}) {
      const Exponent e = s * (3 * s - 1) / 2;
      if (e < precision) {
        coeffs[static_cast<std::size_t>(e)] = FieldElement(s % 2 == 0 ? 1L : -1L);
        any = true;
      }
      if (k == 0) break;
    }
    if (!any) break;
  }
  return QExpansion::from_coeffs(1, 0, precision, FieldTag::rationals(), std::move(coeffs));
}

}  // namespace

QExpansion eta_quotient_expansion(const EtaQuotient& eq, Exponent precision) {
  const std::uint64_t out_level = eq.natural_level();
  const auto e = static_cast<Exponent>(24 / out_level);
  const Exponent lead = eq.order_24() / e;
  if (precision <= lead) {
    throw Error(ErrorKind::precision_shortfall,
                "precision " + std::to_string(precision) + " does not reach the lead q^" +
                    std::to_string(lead) + " of " + to_string(eq));
  }
  if (eq.terms().empty()) return QExpansion::one(1, precision);
  // q^(order/24) times a power series in q = q_N^N
  const auto n = static_cast<Exponent>(out_level);
  const Exponent terms = (precision - lead + n - 1) / n;
  QExpansion product = QExpansion::one(1, terms);
  for (const auto& t : eq.terms()) {
    const auto d = static_cast<Exponent>(t.divisor);
    product = mul(product, pow(dilate(euler_product((terms + d - 1) / d), t.divisor), t.exponent));
  }
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(precision - lead));
  for (Exponent k = 0; k < terms; ++k) coeffs[static_cast<std::size_t>(k * n)] = product.coeff(k);
  return QExpansion::from_coeffs(out_level, lead, precision, FieldTag::rationals(), std::move(coeffs));
}

namespace {

constexpr std::array<CatalogueEntry, 8> kCatalogue{{
    {11, "1^2 11^2"},
    {14, "1 2 7 14"},
    {15, "1 3 5 15"},
    {20, "2^2 10^2"},
    {24, "2 4 6 12"},
    {27, "3^2 9^2"},
    {32, "4^2 8^2"},
    {36, "6^4"},
}};

}  // namespace

std::span<const CatalogueEntry> basis_catalogue() { return kCatalogue; }

std::vector<std::vector<FieldElement>> leading_coefficient_matrix(const CuspFormBasis& b,
                                                                  std::int64_t rows) {
  std::vector<std::vector<FieldElement>> a(static_cast<std::size_t>(std::max<std::int64_t>(rows, 0)));
  for (std::int64_t n = 1; n <= rows; ++n) {
    auto& row = a[static_cast<std::size_t>(n - 1)];
    for (const auto& form : b.forms) row.push_back(form.coeff(n));
  }
  return a;
}

bool BasisReport::ok() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const BasisCheck& c) { return c.passed || !c.required; });
}

BasisReport validate_basis(const CuspFormBasis& b) {
  BasisReport report;
  const SubgroupInvariants inv = invariants(b.group);
  report.kappa = inv.kappa;
  report.genus = inv.genus;
  const std::int64_t k = std::max<std::int64_t>(inv.kappa, 0);
  const auto d = static_cast<std::int64_t>(b.dimension());

  auto add = [&](std::string name, bool passed, std::string detail, bool required = true) {
    report.checks.push_back({std::move(name), passed, required, std::move(detail)});
  };

  bool level_ok = b.level == inv.width_at_infinity;
  for (const auto& f : b.forms) level_ok = level_ok && f.level() == b.level;
  add("level", level_ok,
      "cusp width at infinity " + std::to_string(inv.width_at_infinity) + ", basis level " +
          std::to_string(b.level));

  bool rational = true, integral = true;
  for (const auto& f : b.forms) {
    for (const auto& c : f.coeffs()) {
      const auto r = c.as_rational();
      if (!r) rational = false;
      else if (r->get_den() != 1) integral = false;
    }
  }
  add("rational", rational, rational ? "all coefficients rational" : "non-rational coefficient");
  add("integral", integral && rational, integral ? "all coefficients integral" : "non-integral coefficient",
      false);

  bool leads = true;
  for (const auto& f : b.forms) leads = leads && !f.is_zero() && f.lead() >= 1;
  add("lead", leads, "every form vanishes at infinity");

  bool precise = true;
  for (const auto& f : b.forms) precise = precise && f.precision() >= k + 1;
  add("precision", precise, "coefficients q^1..q^" + std::to_string(k) + " known");

  if (level_ok && precise) {
    report.rank = exact_rank(leading_coefficient_matrix(b, k));
    add("rank", static_cast<std::int64_t>(report.rank) == d,
        "rank " + std::to_string(report.rank) + " of the " + std::to_string(k) + "x" +
            std::to_string(d) + " leading-coefficient matrix");
  } else {
    add("rank", d == 0, "not computed: level or precision check failed");
  }
  add("valence", d <= k, "dimension " + std::to_string(d) + " <= kappa " + std::to_string(k));
  add("dimension", static_cast<std::uint64_t>(d) == inv.genus,
      "dimension " + std::to_string(d) + " vs genus " + std::to_string(inv.genus));
  return report;
}

CuspFormBasis prepare_basis(CuspFormBasis b, Exponent precision) {
  for (auto& f : b.forms)
    if (f.precision() > precision) f = truncate(f, precision);
  const BasisReport report = validate_basis(b);
  if (!report.ok()) {
    std::string failed;
    for (const auto& c : report.checks)
      if (c.required && !c.passed) failed += (failed.empty() ? "" : "; ") + c.name + ": " + c.detail;
    throw Error(ErrorKind::corrupt_basis, "basis for " + to_string(b.group) + " failed: " + failed);
  }
  return b;
}

CuspFormBasis load_basis(const GroupDescriptor& g, Exponent precision) {
  const SubgroupInvariants inv = invariants(g);
  CuspFormBasis b{g, inv.width_at_infinity, {}};
  if (inv.genus > 0) {
    const auto it = std::find_if(kCatalogue.begin(), kCatalogue.end(), [&](const CatalogueEntry& e) {
      return g.kind == GroupKind::gamma0 && e.level == g.level;
    });
    if (it == kCatalogue.end()) {
      throw Error(ErrorKind::no_basis_available,
                  "no shipped S2 basis for " + to_string(g) + " (genus " +
                      std::to_string(inv.genus) + "); supply one with a basis file");
    }
    b.forms.push_back(eta_quotient_expansion(EtaQuotient::parse(it->recipe, it->level), precision));
  }
  return prepare_basis(std::move(b), precision);
}

}  // namespace gmf
