#include "gmf/subgroup.hpp"

#include <array>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>

#include "gmf/error.hpp"

namespace gmf {

GroupDescriptor GroupDescriptor::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::parse_error, "group descriptor '" + std::string(text) +
                                            "' must look like gamma0:N, gamma1:N or gamma:N");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view num = text.substr(colon + 1);
  std::uint64_t n = 0;
  if (num.empty() || num.size() > 9) throw Error(ErrorKind::parse_error, "bad group level in '" + std::string(text) + "'");
  for (char ch : num) {
    if (ch < '0' || ch > '9') throw Error(ErrorKind::parse_error, "bad group level in '" + std::string(text) + "'");
    n = n * 10 + static_cast<std::uint64_t>(ch - '0');
  }
  if (n == 0) throw Error(ErrorKind::parse_error, "group level must be >= 1");
  if (kind == "gamma0") return gamma0(n);
  if (kind == "gamma1") return gamma1(n);
  if (kind == "gamma") return gamma(n);
  throw Error(ErrorKind::parse_error, "unknown group kind '" + std::string(kind) + "'");
}

std::string to_string(const GroupDescriptor& g) {
  const char* k = g.kind == GroupKind::gamma0 ? "gamma0" : g.kind == GroupKind::gamma1 ? "gamma1" : "gamma";
  return std::string(k) + ":" + std::to_string(g.level);
}

std::ostream& operator<<(std::ostream& os, const GroupDescriptor& g) { return os << to_string(g); }

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
  return os << "[[" << m.a << "," << m.b << "],[" << m.c << "," << m.d << "]]";
}

namespace {

using Residues = std::array<std::int64_t, 4>;

std::int64_t mod(const Integer& x, std::uint64_t n) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), n);
  return r.get_si();
}

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

Residues reduce(const IntegerMatrix& m, std::uint64_t n) {
  return {mod(m.a, n), mod(m.b, n), mod(m.c, n), mod(m.d, n)};
}

Residues negated(const Residues& r, std::int64_t n) {
  return {mod(-r[0], n), mod(-r[1], n), mod(-r[2], n), mod(-r[3], n)};
}

// Membership of a residue matrix (det = 1 mod N) in Gamma, not up to sign.
bool member_exact(const Residues& r, const GroupDescriptor& g) {
  const auto n = static_cast<std::int64_t>(g.level);
  const std::int64_t one = 1 % n;
  switch (g.kind) {
    case GroupKind::gamma0: return r[2] == 0;
    case GroupKind::gamma1: return r[2] == 0 && r[0] == one && r[3] == one;
    case GroupKind::gamma: return r[2] == 0 && r[1] == 0 && r[0] == one && r[3] == one;
  }
  return false;
}

bool member_projective(const Residues& r, const GroupDescriptor& g) {
  return member_exact(r, g) || member_exact(negated(r, static_cast<std::int64_t>(g.level)), g);
}

void require_det_one(const IntegerMatrix& m) {
  if (m.det() != 1) throw Error(ErrorKind::determinant_not_one, "matrix determinant is not 1");
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Canonical label of the right coset PGamma g; two matrices get the same label
// exactly when g' g^-1 lies in +-Gamma.
Residues coset_key(const IntegerMatrix& m, const GroupDescriptor& g,
                   const std::vector<std::int64_t>& units) {
  const auto n = static_cast<std::int64_t>(g.level);
  const Residues r = reduce(m, g.level);
  switch (g.kind) {
    case GroupKind::gamma0: {
      // bottom row up to a unit scalar
      Residues best{0, 0, n, n};
      for (std::int64_t u : units) {
        const Residues cand{0, 0, mod(u * r[2], n), mod(u * r[3], n)};
        if (cand < best) best = cand;
      }
      return best;
    }
    case GroupKind::gamma1: {
      const Residues a{0, 0, r[2], r[3]};
      const Residues b{0, 0, mod(-r[2], n), mod(-r[3], n)};
      return std::min(a, b);
    }
    case GroupKind::gamma: return std::min(r, negated(r, n));
  }
  return r;
}

std::vector<std::int64_t> units_mod(std::uint64_t n) {
  std::vector<std::int64_t> out;
  for (std::uint64_t u = 0; u < n; ++u)
    if (std::gcd(u, n) == 1) out.push_back(static_cast<std::int64_t>(u));
  out.push_back(1 % static_cast<std::int64_t>(n));
  return out;
}

CosetTable build_table(const GroupDescriptor& g) {
  CosetTable table;
  table.group = g;
  const auto units = units_mod(g.level);
  std::map<Residues, std::size_t> index;
  const IntegerMatrix gens[2] = {IntegerMatrix::s(), IntegerMatrix::t()};

  table.reps.push_back(IntegerMatrix::identity());
  index.emplace(coset_key(IntegerMatrix::identity(), g, units), 0);
  std::vector<std::array<std::size_t, 2>> action;
  for (std::size_t i = 0; i < table.reps.size(); ++i) {
    std::array<std::size_t, 2> images{};
    for (int k = 0; k < 2; ++k) {
      IntegerMatrix next = table.reps[i] * gens[k];
      const Residues key = coset_key(next, g, units);
      auto [it, inserted] = index.emplace(key, table.reps.size());
      if (inserted) table.reps.push_back(std::move(next));
      images[static_cast<std::size_t>(k)] = it->second;
    }
    action.push_back(images);
  }
  for (const auto& a : action) {
    table.s_action.push_back(a[0]);
    table.t_action.push_back(a[1]);
  }
  std::vector<bool> seen(table.reps.size(), false);
  for (std::size_t start = 0; start < table.reps.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t j = start; !seen[j]; j = table.t_action[j]) {
      seen[j] = true;
      orbit.push_back(j);
    }
    table.cusp_orbits.push_back(std::move(orbit));
  }
  return table;
}

}  // namespace

bool is_member(const IntegerMatrix& m, const GroupDescriptor& g, bool projective) {
  require_det_one(m);
  const Residues r = reduce(m, g.level);
  return projective ? member_projective(r, g) : member_exact(r, g);
}

std::shared_ptr<const CosetTable> coset_table(const GroupDescriptor& g) {
  static std::mutex mutex;
  static std::map<GroupDescriptor, std::shared_ptr<const CosetTable>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(g); it != cache.end()) return it->second;
  }
  auto table = std::make_shared<const CosetTable>(build_table(g));
  std::lock_guard lock(mutex);
  return cache.emplace(g, std::move(table)).first->second;
}

std::vector<IntegerMatrix> coset_reps(const GroupDescriptor& g) { return coset_table(g)->reps; }

std::uint64_t p_index(const GroupDescriptor& g) {
  const std::uint64_t n = g.level;
  const auto primes = prime_divisors(n);
  switch (g.kind) {
    case GroupKind::gamma0: {
      std::uint64_t r = n;
      for (auto p : primes) r = r / p * (p + 1);
      return r;
    }
    case GroupKind::gamma1:
    case GroupKind::gamma: {
      std::uint64_t r = g.kind == GroupKind::gamma1 ? n * n : n * n * n;
      for (auto p : primes) r = r / (p * p) * (p * p - 1);
      // -I lies in Gamma1(N) and Gamma(N) only for N <= 2
      return n <= 2 ? r : r / 2;
    }
  }
  return 0;
}

std::uint64_t cusp_count(const GroupDescriptor& g) { return coset_table(g)->cusp_orbits.size(); }

std::uint64_t cusp_count_formula(const GroupDescriptor& g) {
  const std::uint64_t n = g.level;
  switch (g.kind) {
    case GroupKind::gamma0: {
      std::uint64_t c = 0;
      for (auto d : divisors(n)) c += euler_phi(std::gcd(d, n / d));
      return c;
    }
    case GroupKind::gamma1: {
      if (n <= 4) return std::array<std::uint64_t, 5>{0, 1, 2, 2, 3}[n];
      std::uint64_t c = 0;
      for (auto d : divisors(n)) c += euler_phi(d) * euler_phi(n / d);
      return c / 2;
    }
    case GroupKind::gamma:
      if (n == 1) return 1;
      if (n == 2) return 3;
      return p_index(g) / n;
  }
  return 0;
}

std::int64_t kappa(const GroupDescriptor& g) {
  return static_cast<std::int64_t>(p_index(g) / 6) + 1 - static_cast<std::int64_t>(cusp_count(g));
}

SubgroupInvariants invariants(const GroupDescriptor& g) {
  const auto table = coset_table(g);
  SubgroupInvariants inv;
  inv.p_index = p_index(g);
  inv.cusp_count = table->cusp_orbits.size();
  inv.kappa = static_cast<std::int64_t>(inv.p_index / 6) + 1 - static_cast<std::int64_t>(inv.cusp_count);
  inv.contains_minus_identity = is_member(-IntegerMatrix::identity(), g, false);
  const std::size_t mu = table->reps.size();
  for (std::size_t i = 0; i < mu; ++i) {
    if (table->s_action[i] == i) ++inv.elliptic2;
    if (table->t_action[table->s_action[i]] == i) ++inv.elliptic3;
  }
  // 12 g = 12 + mu - 3 e2 - 4 e3 - 6 c
  const auto twelve_g = 12 + static_cast<std::int64_t>(mu) - 3 * static_cast<std::int64_t>(inv.elliptic2) -
                        4 * static_cast<std::int64_t>(inv.elliptic3) -
                        6 * static_cast<std::int64_t>(inv.cusp_count);
  inv.genus = static_cast<std::uint64_t>(twelve_g / 12);
  inv.width_at_infinity = table->cusp_orbits.front().size();
  return inv;
}

bool is_parabolic_trace2(const IntegerMatrix& m) {
  require_det_one(m);
  return m.trace() == 2 && !(m == IntegerMatrix::identity());
}

IntegerMatrix j_twist(const IntegerMatrix& m) { return {m.a, -m.b, -m.c, m.d}; }

namespace {

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  std::int64_t x1, y1;
  const std::int64_t g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Checks every element of SL2(Z/N) with bottom row (c, d), d ranging over [0, N).
bool twist_preserves_row(const GroupDescriptor& g, std::int64_t c) {
  const auto n = static_cast<std::int64_t>(g.level);
  for (std::int64_t d = 0; d < n; ++d) {
    std::int64_t u, v, s, t;
    const std::int64_t g1 = ext_gcd(d, c, u, v);  // u d + v c = g1
    if (std::gcd(g1, n) != 1) continue;
    ext_gcd(g1, n, s, t);  // s g1 + t N = 1
    const std::int64_t a0 = mod(s * u, n), b0 = mod(-s * v, n);
    for (std::int64_t k = 0; k < n; ++k) {
      const Residues r{mod(a0 + k * c, n), mod(b0 + k * d, n), c, d};
      if (!member_projective(r, g)) continue;
      const Residues tw{r[0], mod(-r[1], n), mod(-r[2], n), r[3]};
      if (!member_projective(tw, g)) return false;
    }
  }
  return true;
}

}  // namespace

bool j_normalizes_serial(const GroupDescriptor& g) {
  if (g.level == 1) return true;
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(g.level); ++c)
    if (!twist_preserves_row(g, c)) return false;
  return true;
}

bool j_normalizes_parallel(const GroupDescriptor& g) {
  if (g.level == 1) return true;
  const auto n = static_cast<std::int64_t>(g.level);
  bool ok = true;
#pragma omp parallel for reduction(&& : ok) schedule(static)
  for (std::int64_t c = 0; c < n; ++c) ok = ok && twist_preserves_row(g, c);
  return ok;
}

bool j_normalizes(const GroupDescriptor& g) {
  static std::mutex mutex;
  static std::map<GroupDescriptor, bool> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(g); it != cache.end()) return it->second;
  }
  const bool result = j_normalizes_parallel(g);
  std::lock_guard lock(mutex);
  cache.emplace(g, result);
  return result;
}

}  // namespace gmf
