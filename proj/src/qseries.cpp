#include "gmf/qseries.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "gmf/error.hpp"
#include "gmf/kernels.hpp"

namespace gmf {

namespace {

void require_compatible(const QExpansion& f, const QExpansion& g, const char* op) {
  if (f.level() != g.level()) {
    throw Error(ErrorKind::incompatible_series, std::string(op) + ": level mismatch (" +
                                                    std::to_string(f.level()) + " vs " +
                                                    std::to_string(g.level()) + ")");
  }
  if (!(f.field() == g.field())) {
    throw Error(ErrorKind::incompatible_series, std::string(op) + ": field mismatch (" +
                                                    to_string(f.field()) + " vs " +
                                                    to_string(g.field()) + ")");
  }
}

Exponent floor_div(Exponent a, Exponent b) {
  Exponent q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

constexpr Exponent kUnbounded = std::numeric_limits<Exponent>::max() / 4;

}  // namespace

QExpansion QExpansion::from_coeffs(std::uint64_t level, Exponent lead, Exponent precision,
                                   const FieldTag& field, std::vector<FieldElement> coeffs) {
  if (level == 0) throw Error(ErrorKind::invalid_argument, "series level must be >= 1");
  if (precision < lead || static_cast<Exponent>(coeffs.size()) != precision - lead) {
    throw Error(ErrorKind::invalid_argument,
                "series needs precision - lead = " + std::to_string(precision - lead) +
                    " coefficients, got " + std::to_string(coeffs.size()));
  }
  for (auto& c : coeffs) {
    if (!(c.field() == field)) c = c.promote(field);
  }
  std::size_t skip = 0;
  while (skip < coeffs.size() && coeffs[skip].is_zero()) ++skip;
  if (skip == coeffs.size()) return zero(level, precision, field);
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(skip));
  return QExpansion(level, lead + static_cast<Exponent>(skip), precision, field, std::move(coeffs));
}

QExpansion QExpansion::zero(std::uint64_t level, Exponent precision, const FieldTag& field) {
  if (level == 0) throw Error(ErrorKind::invalid_argument, "series level must be >= 1");
  return QExpansion(level, precision, precision, field, {});
}

QExpansion QExpansion::one(std::uint64_t level, Exponent precision, const FieldTag& field) {
  return monomial(level, 0, FieldElement::one(field), precision);
}

QExpansion QExpansion::monomial(std::uint64_t level, Exponent exponent, const FieldElement& c,
                                Exponent precision) {
  if (precision <= exponent) return zero(level, precision, c.field());
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(precision - exponent),
                                   FieldElement::zero(c.field()));
  coeffs[0] = c;
  return from_coeffs(level, exponent, precision, c.field(), std::move(coeffs));
}

QExpansion QExpansion::from_rationals(std::uint64_t level, Exponent lead, Exponent precision,
                                      const std::vector<Rational>& coeffs) {
  std::vector<FieldElement> v(coeffs.begin(), coeffs.end());
  if (precision > lead && v.size() < static_cast<std::size_t>(precision - lead))
    v.resize(static_cast<std::size_t>(precision - lead), FieldElement::zero(FieldTag::rationals()));
  return from_coeffs(level, lead, precision, FieldTag::rationals(), std::move(v));
}

FieldElement QExpansion::coeff(Exponent n) const {
  if (n >= precision_) {
    throw Error(ErrorKind::precision_shortfall, "coefficient of q^" + std::to_string(n) +
                                                    " unknown (precision " +
                                                    std::to_string(precision_) + ")");
  }
  if (n < lead_) return FieldElement::zero(field_);
  return coeffs_[static_cast<std::size_t>(n - lead_)];
}

std::ostream& operator<<(std::ostream& os, const QExpansion& f) {
  os << "[level " << f.level() << ", " << to_string(f.field()) << "] ";
  bool first = true;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const auto& c = f.coeffs()[i];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")*q^" << (f.lead() + static_cast<Exponent>(i));
  }
  if (!first) os << " + ";
  return os << "O(q^" << f.precision() << ")";
}

QExpansion add(const QExpansion& f, const QExpansion& g) {
  require_compatible(f, g, "add");
  const Exponent prec = std::min(f.precision(), g.precision());
  const Exponent lo = std::min({f.lead(), g.lead(), prec});
  std::vector<FieldElement> coeffs;
  coeffs.reserve(static_cast<std::size_t>(prec - lo));
  for (Exponent n = lo; n < prec; ++n) coeffs.push_back(f.coeff(n) + g.coeff(n));
  return QExpansion::from_coeffs(f.level(), lo, prec, f.field(), std::move(coeffs));
}

QExpansion negate(const QExpansion& f) {
  std::vector<FieldElement> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) coeffs.push_back(-c);
  return QExpansion::from_coeffs(f.level(), f.lead(), f.precision(), f.field(), std::move(coeffs));
}

QExpansion sub(const QExpansion& f, const QExpansion& g) { return add(f, negate(g)); }

QExpansion scale(const QExpansion& f, const FieldElement& c) {
  std::vector<FieldElement> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) coeffs.push_back(a * c);
  return QExpansion::from_coeffs(f.level(), f.lead(), f.precision(), f.field(), std::move(coeffs));
}

namespace {

template <bool Serial>
QExpansion mul_impl(const QExpansion& f, const QExpansion& g) {
  require_compatible(f, g, "mul");
  // For the zero series lead == precision, so both formulas cover it.
  const Exponent prec = std::min(f.precision() + g.lead(), g.precision() + f.lead());
  const Exponent lead = f.lead() + g.lead();
  if (f.is_zero() || g.is_zero() || prec <= lead) return QExpansion::zero(f.level(), prec, f.field());
  const auto len = static_cast<std::size_t>(prec - lead);
  const FieldElement zero = FieldElement::zero(f.field());
  std::vector<FieldElement> c =
      Serial ? kernels::cauchy_product_serial(f.coeffs(), g.coeffs(), len, zero)
             : kernels::cauchy_product(f.coeffs(), g.coeffs(), len, zero);
  return QExpansion::from_coeffs(f.level(), lead, prec, f.field(), std::move(c));
}

}  // namespace

QExpansion mul(const QExpansion& f, const QExpansion& g) { return mul_impl<false>(f, g); }
QExpansion mul_serial(const QExpansion& f, const QExpansion& g) { return mul_impl<true>(f, g); }

QExpansion inverse(const QExpansion& f, Exponent target_precision) {
  if (f.is_zero()) throw Error(ErrorKind::division_by_zero, "inverse of the zero series");
  const Exponent lead = -f.lead();
  const Exponent prec = std::min(target_precision, lead + f.relative_precision());
  if (prec <= lead) return QExpansion::zero(f.level(), prec, f.field());
  const auto len = static_cast<std::size_t>(prec - lead);
  const auto a = f.coeffs();
  const FieldElement inv0 = a[0].inverse();
  std::vector<FieldElement> g;
  g.reserve(len);
  g.push_back(inv0);
  for (std::size_t n = 1; n < len; ++n) {
    FieldElement acc = FieldElement::zero(f.field());
    for (std::size_t k = 1; k <= std::min(n, a.size() - 1); ++k) acc.add_product(a[k], g[n - k]);
    g.push_back(-(acc * inv0));
  }
  return QExpansion::from_coeffs(f.level(), lead, prec, f.field(), std::move(g));
}

QExpansion inverse(const QExpansion& f) { return inverse(f, kUnbounded); }

QExpansion theta_logderiv(const QExpansion& f) {
  if (f.is_zero()) throw Error(ErrorKind::division_by_zero, "log-derivative of the zero series");
  // f = q^h u with u(0) != 0, so theta f / f = h + theta u / u.
  const auto u = f.coeffs();
  const std::size_t len = u.size();
  const FieldElement inv0 = u[0].inverse();
  std::vector<FieldElement> g;
  g.reserve(len);
  for (std::size_t n = 0; n < len; ++n) {
    FieldElement acc = u[n] * Rational(static_cast<long>(n));
    for (std::size_t k = 1; k <= n; ++k) acc -= u[k] * g[n - k];
    g.push_back(acc * inv0);
  }
  g[0] += FieldElement::from_rational(Rational(static_cast<long>(f.lead())), f.field());
  return QExpansion::from_coeffs(f.level(), 0, static_cast<Exponent>(len), f.field(), std::move(g));
}

QExpansion exp_from_logderiv(const QExpansion& g, Exponent target_precision) {
  if (!g.is_zero() && g.lead() < 1) {
    throw Error(ErrorKind::not_exponentiable,
                "log-derivative has a term q^" + std::to_string(g.lead()) + " with exponent < 1");
  }
  const Exponent prec = std::min(target_precision, g.precision());
  if (prec < 1) {
    throw Error(ErrorKind::precision_shortfall, "exp_from_logderiv needs precision >= 1");
  }
  const auto len = static_cast<std::size_t>(prec);
  std::vector<FieldElement> b;
  b.reserve(len);
  for (std::size_t k = 0; k < len; ++k) b.push_back(g.coeff(static_cast<Exponent>(k)));
  std::vector<FieldElement> a;
  a.reserve(len);
  a.push_back(FieldElement::one(g.field()));
  // n a(n) = sum_{k=1}^n b(k) a(n-k)
  for (std::size_t n = 1; n < len; ++n) {
    FieldElement acc = FieldElement::zero(g.field());
    for (std::size_t k = 1; k <= n; ++k)
      if (!b[k].is_zero()) acc.add_product(b[k], a[n - k]);
    acc *= Rational(1, static_cast<unsigned long>(n));
    a.push_back(std::move(acc));
  }
  return QExpansion::from_coeffs(g.level(), 0, prec, g.field(), std::move(a));
}

QExpansion pow(const QExpansion& f, std::int64_t m) {
  if (m == 0) {
    return QExpansion::one(f.level(), std::max<Exponent>(f.relative_precision(), 1), f.field());
  }
  if (m < 0) {
    if (f.is_zero()) throw Error(ErrorKind::division_by_zero, "negative power of the zero series");
    return pow(inverse(f), -m);
  }
  QExpansion result = f;
  QExpansion base = f;
  std::int64_t e = m - 1;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

QExpansion rescale_level(const QExpansion& f, std::uint64_t new_level) {
  if (new_level == 0 || new_level % f.level() != 0) {
    throw Error(ErrorKind::invalid_argument, "rescale_level: " + std::to_string(new_level) +
                                                 " is not a multiple of " +
                                                 std::to_string(f.level()));
  }
  const QExpansion d = dilate(f, new_level / f.level());
  return f.is_zero() ? QExpansion::zero(new_level, d.precision(), f.field())
                     : QExpansion::from_coeffs(new_level, d.lead(), d.precision(), d.field(),
                                               {d.coeffs().begin(), d.coeffs().end()});
}

QExpansion dilate(const QExpansion& f, std::uint64_t d) {
  if (d == 0) throw Error(ErrorKind::invalid_argument, "dilation factor must be >= 1");
  const auto r = static_cast<Exponent>(d);
  if (f.is_zero()) return QExpansion::zero(f.level(), f.precision() * r, f.field());
  const Exponent prec = f.precision() * r;
  const Exponent lead = f.lead() * r;
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(prec - lead),
                                   FieldElement::zero(f.field()));
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) coeffs[i * d] = f.coeffs()[i];
  return QExpansion::from_coeffs(f.level(), lead, prec, f.field(), std::move(coeffs));
}

QExpansion reduce_level(const QExpansion& f, std::uint64_t new_level) {
  if (new_level == 0 || f.level() % new_level != 0) {
    throw Error(ErrorKind::invalid_argument, "reduce_level: " + std::to_string(new_level) +
                                                 " does not divide " + std::to_string(f.level()));
  }
  const auto e = static_cast<Exponent>(f.level() / new_level);
  const Exponent prec = floor_div(f.precision() - 1, e) + 1;
  if (f.is_zero()) return QExpansion::zero(new_level, prec, f.field());
  const Exponent lead = floor_div(f.lead() + e - 1, e);
  std::vector<FieldElement> coeffs;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const Exponent n = f.lead() + static_cast<Exponent>(i);
    if (n % e != 0) {
      if (!f.coeffs()[i].is_zero()) {
        throw Error(ErrorKind::invalid_argument,
                    "reduce_level: exponent " + std::to_string(n) + " not divisible by " +
                        std::to_string(e));
      }
      continue;
    }
    coeffs.push_back(f.coeffs()[i]);
  }
  coeffs.resize(static_cast<std::size_t>(prec - lead), FieldElement::zero(f.field()));
  return QExpansion::from_coeffs(new_level, lead, prec, f.field(), std::move(coeffs));
}

QExpansion truncate(const QExpansion& f, Exponent precision) {
  if (precision > f.precision()) {
    throw Error(ErrorKind::precision_shortfall, "cannot truncate precision " +
                                                    std::to_string(f.precision()) + " up to " +
                                                    std::to_string(precision));
  }
  if (precision <= f.lead()) return QExpansion::zero(f.level(), precision, f.field());
  return QExpansion::from_coeffs(
      f.level(), f.lead(), precision, f.field(),
      {f.coeffs().begin(), f.coeffs().begin() + (precision - f.lead())});
}

QExpansion promote(const QExpansion& f, const FieldTag& target) {
  if (f.field() == target) return f;
  std::vector<FieldElement> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) coeffs.push_back(c.promote(target));
  if (f.is_zero()) return QExpansion::zero(f.level(), f.precision(), target);
  return QExpansion::from_coeffs(f.level(), f.lead(), f.precision(), target, std::move(coeffs));
}

QExpansion galois_map(const QExpansion& f, long k) {
  if (f.field().is_rational()) return f;
  std::vector<FieldElement> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) coeffs.push_back(galois_apply(c, k));
  if (f.is_zero()) {
    galois_apply(FieldElement::one(f.field()), k);  // validates k
    return f;
  }
  return QExpansion::from_coeffs(f.level(), f.lead(), f.precision(), f.field(), std::move(coeffs));
}

QExpansion conjugate_coeffs(const QExpansion& f) {
  std::vector<FieldElement> coeffs;
  coeffs.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) coeffs.push_back(conjugate(c));
  if (f.is_zero()) return f;
  return QExpansion::from_coeffs(f.level(), f.lead(), f.precision(), f.field(), std::move(coeffs));
}

std::optional<Exponent> first_difference(const QExpansion& f, const QExpansion& g) {
  require_compatible(f, g, "compare");
  const Exponent prec = std::min(f.precision(), g.precision());
  const Exponent lo = std::min(f.lead(), g.lead());
  for (Exponent n = lo; n < prec; ++n)
    if (!(f.coeff(n) == g.coeff(n))) return n;
  return std::nullopt;
}

bool agree(const QExpansion& f, const QExpansion& g) { return !first_difference(f, g).has_value(); }

}  // namespace gmf
