#include "gmf/numberfield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "gmf/error.hpp"

namespace gmf {

// ---------------------------------------------------------------- rationals

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error(ErrorKind::division_by_zero, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  std::string s;
  s.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (i + 2 < text.size() + 0 && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
    } else if (text[i] != ' ') {
      s.push_back(text[i]);
    }
  }
  auto is_digits = [](std::string_view v) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string_view v = s;
  bool negative = false;
  if (!v.empty() && (v.front() == '-' || v.front() == '+')) {
    negative = v.front() == '-';
    v.remove_prefix(1);
  }
  const auto slash = v.find('/');
  std::string_view num = v.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : v.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den)) {
    throw Error(ErrorKind::parse_error, "malformed rational '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (negative) n = -n;
  return make_rational(n, d);
}

std::string to_string(const Rational& r) { return r.get_str(10); }

namespace {

Integer pollard_brent(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    const unsigned long block = 128;
    unsigned long r = 1;
    auto f = [&](const Integer& v) {
      Integer t = v * v + c;
      return Integer(t % n);
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          Integer diff = x - y;
          q = (q * abs(diff)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += block;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = x - ys;
        Integer a = abs(diff);
        mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  const Integer d = pollard_brent(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

std::vector<Integer> prime_factors(const Integer& n) {
  Integer m = abs(n);
  std::vector<Integer> out;
  if (m <= 1) return out;
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; p += (p == 2 ? 1 : 2)) {
    if (m % p == 0) {
      out.emplace_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) factor_into(m, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Integer> denominator_primes(const Rational& r) { return prime_factors(r.get_den()); }

std::uint64_t euler_phi(std::uint64_t m) {
  std::uint64_t result = m;
  std::uint64_t n = m;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- polynomials

RationalPolynomial::RationalPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::monomial(const Rational& c, std::size_t degree) {
  std::vector<Rational> v(degree + 1);
  v[degree] = c;
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPolynomial operator+(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator-(const RationalPolynomial& a, const RationalPolynomial& b) {
  std::vector<Rational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
  return RationalPolynomial(std::move(v));
}

RationalPolynomial operator*(const RationalPolynomial& a, const RationalPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return RationalPolynomial(std::move(v));
}

RationalPolynomial::DivMod RationalPolynomial::divmod(const RationalPolynomial& divisor) const {
  if (divisor.is_zero()) throw Error(ErrorKind::division_by_zero, "polynomial division by zero");
  std::vector<Rational> rem = coeffs_;
  const long dd = divisor.degree();
  const long qdeg = degree() - dd;
  std::vector<Rational> quot(qdeg >= 0 ? static_cast<std::size_t>(qdeg + 1) : 0);
  for (long k = qdeg; k >= 0; --k) {
    const Rational c = rem[static_cast<std::size_t>(k + dd)] / divisor.leading();
    quot[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (long j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(k + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {RationalPolynomial(std::move(quot)), RationalPolynomial(std::move(rem))};
}

std::ostream& operator<<(std::ostream& os, const RationalPolynomial& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const Rational a = abs(c);
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "x";
    if (i > 1) os << "^" << i;
  }
  return os;
}

const RationalPolynomial& cyclotomic_polynomial(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "cyclotomic polynomial needs m >= 1");
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<RationalPolynomial>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return *it->second;
  }
  RationalPolynomial p = RationalPolynomial::monomial(1, m) - RationalPolynomial::monomial(1, 0);
  for (std::uint64_t d : divisors(m)) {
    if (d == m) continue;
    p = p.divmod(cyclotomic_polynomial(d)).quotient;
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(m, std::make_unique<RationalPolynomial>(std::move(p)));
  return *it->second;
}

// -------------------------------------------------------------- field tags

FieldTag FieldTag::cyclotomic(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::invalid_argument, "cyclotomic conductor must be >= 1");
  return {Kind::cyclotomic, m};
}

std::size_t FieldTag::degree() const {
  return is_rational() ? 1 : static_cast<std::size_t>(euler_phi(conductor));
}

std::string to_string(const FieldTag& tag) {
  return tag.is_rational() ? "rational" : "cyclotomic:" + std::to_string(tag.conductor);
}

bool embeds_into(const FieldTag& from, const FieldTag& to) {
  if (from == to || from.is_rational()) return true;
  return !to.is_rational() && to.conductor % from.conductor == 0;
}

// ------------------------------------------------------- cyclotomic context

namespace {

struct CyclotomicContext {
  std::uint64_t m = 1;
  std::size_t phi = 1;
  // powers[e] = zeta^e reduced, for 0 <= e < m.
  std::vector<std::vector<Rational>> powers;
};

const CyclotomicContext& context(std::uint64_t m) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<CyclotomicContext>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return *it->second;
  }
  auto ctx = std::make_unique<CyclotomicContext>();
  ctx->m = m;
  ctx->phi = static_cast<std::size_t>(euler_phi(m));
  const RationalPolynomial& cp = cyclotomic_polynomial(m);
  ctx->powers.resize(m);
  std::vector<Rational> cur(ctx->phi);
  cur[0] = 1;
  for (std::uint64_t e = 0; e < m; ++e) {
    ctx->powers[e] = cur;
    // multiply by x and reduce with Phi_m monic: x^phi = -sum c_i x^i
    std::vector<Rational> next(ctx->phi);
    const Rational top = cur[ctx->phi - 1];
    for (std::size_t i = ctx->phi - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < ctx->phi; ++i) next[i] -= top * cp.coeff(i);
    cur = std::move(next);
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(m, std::move(ctx));
  return *it->second;
}

// Reduces a coordinate vector of any length modulo Phi_m.
std::vector<Rational> reduce(const CyclotomicContext& ctx, std::vector<Rational> raw) {
  if (raw.size() <= ctx.phi) {
    raw.resize(ctx.phi);
    return raw;
  }
  std::vector<Rational> out(raw.begin(), raw.begin() + static_cast<long>(ctx.phi));
  for (std::size_t e = ctx.phi; e < raw.size(); ++e) {
    if (raw[e] == 0) continue;
    const auto& p = ctx.powers[e % ctx.m];
    for (std::size_t i = 0; i < ctx.phi; ++i)
      if (p[i] != 0) out[i] += raw[e] * p[i];
  }
  return out;
}

std::uint64_t gcd_u(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

}  // namespace

// ---------------------------------------------------------- field elements

FieldElement FieldElement::zero(const FieldTag& tag) {
  return FieldElement(tag, std::vector<Rational>(tag.degree()));
}

FieldElement FieldElement::one(const FieldTag& tag) { return from_rational(1, tag); }

FieldElement FieldElement::from_rational(const Rational& r, const FieldTag& tag) {
  std::vector<Rational> v(tag.degree());
  v[0] = r;
  return FieldElement(tag, std::move(v));
}

FieldElement FieldElement::zeta(std::uint64_t m, long power) {
  const FieldTag tag = FieldTag::cyclotomic(m);
  const auto& ctx = context(m);
  const long mm = static_cast<long>(m);
  const long e = ((power % mm) + mm) % mm;
  return FieldElement(tag, ctx.powers[static_cast<std::size_t>(e)]);
}

FieldElement FieldElement::from_coords(const FieldTag& tag, std::vector<Rational> coords) {
  if (tag.is_rational()) {
    if (coords.size() > 1 &&
        std::any_of(coords.begin() + 1, coords.end(), [](const Rational& r) { return r != 0; })) {
      throw Error(ErrorKind::invalid_argument, "rational element with non-constant coordinates");
    }
    coords.resize(1);
    return FieldElement(tag, std::move(coords));
  }
  return FieldElement(tag, reduce(context(tag.conductor), std::move(coords)));
}

bool FieldElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& r) { return r == 0; });
}

bool FieldElement::is_one() const {
  if (coords_[0] != 1) return false;
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& r) { return r == 0; });
}

std::optional<Rational> FieldElement::as_rational() const {
  if (std::any_of(coords_.begin() + 1, coords_.end(), [](const Rational& r) { return r != 0; }))
    return std::nullopt;
  return coords_[0];
}

FieldElement FieldElement::promote(const FieldTag& target) const {
  if (target == tag_) return *this;
  if (!embeds_into(tag_, target)) {
    throw Error(ErrorKind::incompatible_series,
                "cannot promote " + to_string(tag_) + " to " + to_string(target));
  }
  if (tag_.is_rational()) return from_rational(coords_[0], target);
  // zeta_m = zeta_{km}^k
  const std::uint64_t k = target.conductor / tag_.conductor;
  std::vector<Rational> raw(static_cast<std::size_t>(k) * (coords_.size() - 1) + 1);
  for (std::size_t i = 0; i < coords_.size(); ++i) raw[i * k] = coords_[i];
  return FieldElement(target, reduce(context(target.conductor), std::move(raw)));
}

void FieldElement::require_same_field(const FieldElement& o) const {
  if (!(tag_ == o.tag_)) {
    throw Error(ErrorKind::incompatible_series,
                "field mismatch: " + to_string(tag_) + " vs " + to_string(o.tag_));
  }
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  require_same_field(o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const Rational& r) {
  for (auto& c : coords_) c *= r;
  return *this;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  if (a.coords_.size() == 1) return FieldElement(a.tag_, {a.coords_[0] * b.coords_[0]});
  const auto& ctx = context(a.tag_.conductor);
  std::vector<Rational> raw(2 * ctx.phi - 1);
  for (std::size_t i = 0; i < ctx.phi; ++i) {
    if (a.coords_[i] == 0) continue;
    for (std::size_t j = 0; j < ctx.phi; ++j)
      if (b.coords_[j] != 0) raw[i + j] += a.coords_[i] * b.coords_[j];
  }
  return FieldElement(a.tag_, reduce(ctx, std::move(raw)));
}

FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = *this * o; }

void FieldElement::add_product(const FieldElement& b, const FieldElement& c) {
  if (coords_.size() == 1 && b.coords_.size() == 1 && c.coords_.size() == 1 && tag_ == b.tag_ &&
      tag_ == c.tag_) {
    mpq_class t;
    mpq_mul(t.get_mpq_t(), b.coords_[0].get_mpq_t(), c.coords_[0].get_mpq_t());
    coords_[0] += t;
    return;
  }
  *this += b * c;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::division_by_zero, "inverse of zero field element");
  if (coords_.size() == 1) return FieldElement(tag_, {1 / coords_[0]});
  // Extended Euclid: find s with s*a = 1 mod Phi_m.
  const RationalPolynomial& modulus = cyclotomic_polynomial(tag_.conductor);
  RationalPolynomial r0 = modulus, r1(coords_);
  RationalPolynomial s0, s1 = RationalPolynomial::monomial(1, 0);
  while (r1.degree() > 0) {
    auto [q, r] = r0.divmod(r1);
    RationalPolynomial s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r1 is a nonzero constant since Phi_m is irreducible and a != 0.
  const Rational c = r1.coeff(0);
  std::vector<Rational> out = s1.coeffs();
  for (auto& x : out) x /= c;
  return FieldElement(tag_, reduce(context(tag_.conductor), std::move(out)));
}

bool is_rational(const FieldElement& a) { return a.as_rational().has_value(); }

FieldElement galois_apply(const FieldElement& a, long k) {
  const FieldTag& tag = a.field();
  if (tag.is_rational()) return a;
  const auto m = static_cast<long>(tag.conductor);
  const long kk = ((k % m) + m) % m;
  if (gcd_u(static_cast<std::uint64_t>(kk), tag.conductor) != 1 && m > 1) {
    throw Error(ErrorKind::invalid_automorphism,
                "k = " + std::to_string(k) + " is not coprime to " + std::to_string(m));
  }
  const auto& ctx = context(tag.conductor);
  std::vector<Rational> out(ctx.phi);
  const auto coords = a.coords();
  for (std::size_t j = 0; j < coords.size(); ++j) {
    if (coords[j] == 0) continue;
    const auto& p = ctx.powers[(j * static_cast<std::size_t>(kk)) % ctx.m];
    for (std::size_t i = 0; i < ctx.phi; ++i)
      if (p[i] != 0) out[i] += coords[j] * p[i];
  }
  return FieldElement::from_coords(tag, std::move(out));
}

FieldElement conjugate(const FieldElement& a) {
  if (a.field().is_rational() || a.field().conductor <= 2) return a;
  return galois_apply(a, static_cast<long>(a.field().conductor) - 1);
}

std::vector<long> galois_group(std::uint64_t m) {
  std::vector<long> out;
  if (m <= 2) return {1};
  for (std::uint64_t k = 1; k < m; ++k)
    if (gcd_u(k, m) == 1) out.push_back(static_cast<long>(k));
  return out;
}

std::string to_string(const FieldElement& a) {
  const auto coords = a.coords();
  if (a.field().is_rational()) return to_string(coords[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) os << coords[i];
    else os << "(" << coords[i] << ")*z" << a.field().conductor << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << to_string(a); }

}  // namespace gmf
