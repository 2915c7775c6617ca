#pragma once

// Congruence subgroups Gamma0(N), Gamma1(N), Gamma(N) of SL2(Z): membership,
// right cosets of PGamma in PSL2(Z), cusps, and the kappa invariant
//   kappa = floor([PSL2(Z) : PGamma] / 6) + 1 - (number of cusps).

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gmf/numberfield.hpp"

namespace gmf {

enum class GroupKind : std::uint8_t { gamma0, gamma1, gamma };

struct GroupDescriptor {
  GroupKind kind = GroupKind::gamma0;
  std::uint64_t level = 1;

  static GroupDescriptor gamma0(std::uint64_t n) { return {GroupKind::gamma0, n}; }
  static GroupDescriptor gamma1(std::uint64_t n) { return {GroupKind::gamma1, n}; }
  static GroupDescriptor gamma(std::uint64_t n) { return {GroupKind::gamma, n}; }
  static GroupDescriptor sl2z() { return gamma0(1); }

  // "gamma0:N", "gamma1:N" or "gamma:N".
  static GroupDescriptor parse(std::string_view text);

  friend auto operator<=>(const GroupDescriptor&, const GroupDescriptor&) = default;
};

std::string to_string(const GroupDescriptor& g);
std::ostream& operator<<(std::ostream& os, const GroupDescriptor& g);

struct IntegerMatrix {
  Integer a = 1, b = 0, c = 0, d = 1;

  static IntegerMatrix identity() { return {}; }
  static IntegerMatrix s() { return {0, -1, 1, 0}; }
  static IntegerMatrix t() { return {1, 1, 0, 1}; }

  Integer det() const { return a * d - b * c; }
  Integer trace() const { return a + d; }
  // Inverse of a determinant-one matrix.
  IntegerMatrix inverse() const { return {d, -b, -c, a}; }
  IntegerMatrix operator-() const { return {-a, -b, -c, -d}; }

  friend IntegerMatrix operator*(const IntegerMatrix& x, const IntegerMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;
};

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

struct SubgroupInvariants {
  std::uint64_t p_index = 1;
  std::uint64_t cusp_count = 1;
  std::int64_t kappa = 0;
  bool contains_minus_identity = true;
  // Extra data read off the same coset table.
  std::uint64_t elliptic2 = 0;
  std::uint64_t elliptic3 = 0;
  std::uint64_t genus = 0;
  std::uint64_t width_at_infinity = 1;
};

// Right cosets PGamma g with the right action of the generators S and T.
struct CosetTable {
  GroupDescriptor group;
  std::vector<IntegerMatrix> reps;
  std::vector<std::size_t> s_action;  // PGamma r_i S = PGamma r_{s_action[i]}
  std::vector<std::size_t> t_action;
  std::vector<std::vector<std::size_t>> cusp_orbits;  // T-orbits; orbit 0 holds the identity coset
};

// Membership in Gamma, or in +-Gamma when `projective`; throws determinant_not_one.
bool is_member(const IntegerMatrix& m, const GroupDescriptor& g, bool projective = true);

// Breadth-first enumeration from the identity with generators S, T; memoized and
// safe to call from several threads.
std::shared_ptr<const CosetTable> coset_table(const GroupDescriptor& g);
std::vector<IntegerMatrix> coset_reps(const GroupDescriptor& g);

// Closed formula for [PSL2(Z) : PGamma].
std::uint64_t p_index(const GroupDescriptor& g);
// Number of T-orbits on the coset table.
std::uint64_t cusp_count(const GroupDescriptor& g);
// Closed cusp-count formulas, used to cross-check the orbit count.
std::uint64_t cusp_count_formula(const GroupDescriptor& g);
std::int64_t kappa(const GroupDescriptor& g);
SubgroupInvariants invariants(const GroupDescriptor& g);

bool is_parabolic_trace2(const IntegerMatrix& m);
// J m J^-1 with J = diag(-1, 1): negates the off-diagonal entries.
IntegerMatrix j_twist(const IntegerMatrix& m);

// Scans the image of Gamma in SL2(Z/N) and checks that the J-twist preserves it.
bool j_normalizes(const GroupDescriptor& g);
bool j_normalizes_serial(const GroupDescriptor& g);
bool j_normalizes_parallel(const GroupDescriptor& g);

}  // namespace gmf
