#include "doctest.h"

#include "chamber/errors.hpp"
#include "chamber/monoids.hpp"
#include "oracles.hpp"

#include <functional>
#include <random>
#include <set>

using namespace chamber;

namespace {

AffineMonoid m1(std::vector<long> gens) {
  std::vector<LatticeVector> v;
  for (long g : gens) v.push_back(LatticeVector{g});
  return AffineMonoid(1, v);
}

// a is a combination with every coefficient at most `bound`.
bool exhaustive_member(const AffineMonoid &q, const LatticeVector &a, long bound) {
  const auto &g = q.generators();
  std::vector<long> c(g.size(), 0);
  std::function<bool(std::size_t, LatticeVector)> rec = [&](std::size_t i, LatticeVector rest) {
    if (i == g.size()) return rest.is_zero();
    for (long k = 0; k <= bound; ++k) {
      if (rec(i + 1, rest)) return true;
      rest -= g[i];
    }
    return false;
  };
  return rec(0, a);
}

std::vector<LatticeVector> naive_hilbert_basis(const Cone &c, long box) {
  std::vector<LatticeVector> pts;
  for (long x = -box; x <= box; ++x)
    for (long y = -box; y <= box; ++y) {
      LatticeVector p{x, y};
      if (!p.is_zero() && c.contains(p)) pts.push_back(p);
    }
  std::vector<LatticeVector> out;
  for (const auto &p : pts) {
    bool reducible = false;
    for (const auto &a : pts)
      if (a != p && c.contains(p - a) && !(p - a).is_zero()) reducible = true;
    if (!reducible) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("membership examples") {
  const auto q = m1({2, 3});
  const auto seven = monoid_membership(q, LatticeVector{7});
  REQUIRE(seven.member);
  CHECK(seven.coefficients[0] * 2 + seven.coefficients[1] * 3 == 7);
  CHECK_FALSE(monoid_membership(q, LatticeVector{1}).member);
  CHECK_FALSE(monoid_membership(q, LatticeVector{-2}).member);
  CHECK(monoid_membership(q, LatticeVector{0}).member);

  const AffineMonoid p(2, {{0, 1}, {2, 1}});
  CHECK_FALSE(monoid_membership(p, LatticeVector{1, 1}).member);
  CHECK_FALSE(exhaustive_member(p, LatticeVector{1, 1}, 3));
  CHECK(monoid_membership(p, LatticeVector{2, 2}).member);
}

TEST_CASE("membership agrees with exhaustive search") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coord(-2, 3), count(1, 3), target(-4, 8);
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<LatticeVector> gens;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) gens.push_back(LatticeVector{coord(rng), coord(rng)});
    const AffineMonoid q(2, gens);
    for (int s = 0; s < 10; ++s) {
      const LatticeVector a{target(rng), target(rng)};
      const auto r = monoid_membership(q, a);
      if (q.cone().is_pointed()) {
        // coefficients of a pointed monoid are bounded by the reported bound
        CHECK(r.member == exhaustive_member(q, a, r.coefficient_bound.get_si()));
      } else if (exhaustive_member(q, a, 12)) {
        CHECK(r.member);
      }
      if (r.member) {
        LatticeVector sum(2);
        for (std::size_t i = 0; i < q.generators().size(); ++i) {
          CHECK(r.coefficients[i] >= 0);
          sum += r.coefficients[i] * q.generators()[i];
        }
        CHECK(sum == a);
      }
    }
  }
}

TEST_CASE("membership with a lineality space") {
  const AffineMonoid line(1, {LatticeVector{2}, LatticeVector{-3}});
  for (long a = -10; a <= 10; ++a) CHECK(monoid_membership(line, LatticeVector{a}).member);
  const AffineMonoid half(2, {{2, 0}, {-2, 0}, {1, 1}});
  CHECK(monoid_membership(half, LatticeVector{-3, 1}).member);
  CHECK_FALSE(monoid_membership(half, LatticeVector{1, 0}).member);
  CHECK_FALSE(monoid_membership(half, LatticeVector{0, -1}).member);
  const auto sat = saturate_monoid(half);
  CHECK_FALSE(sat.pointed);
  CHECK_THROWS_AS(hilbert_basis(half.cone()), NotPointed);
  CHECK_FALSE(sat.added.empty());
  for (const auto &c : sat.certificates)
    CHECK(monoid_membership(half, c.multiple * c.element).member);
}

TEST_CASE("group generated") {
  CHECK(*group_generated(m1({2, 3})).index == 1);
  CHECK(*group_generated(AffineMonoid(2, {{0, 1}, {2, 1}})).index == 2);
  CHECK(*group_generated(AffineMonoid(2, {{1, 0}, {0, 1}})).index == 1);
  CHECK_FALSE(group_generated(AffineMonoid(2, {{1, 1}})).index.has_value());
}

TEST_CASE("saturation examples") {
  const auto a = saturate_monoid(m1({2, 3}));
  CHECK(a.saturated_generators == std::vector<LatticeVector>{LatticeVector{1}});
  REQUIRE(a.certificates.size() == 1);
  CHECK(a.certificates[0].multiple == 2);

  const AffineMonoid p(2, {{0, 1}, {2, 1}});
  const auto b = saturate_monoid(p);
  CHECK(b.added == std::vector<LatticeVector>{{1, 1}});
  REQUIRE(b.certificates.size() == 1);
  CHECK(b.certificates[0].multiple == 2);
  CHECK(b.certificates[0].coefficients == std::vector<Integer>{1, 1});

  CHECK(saturate_monoid(AffineMonoid(2, {{1, 0}, {0, 1}})).added.empty());
  CHECK(saturate_monoid(m1({1})).added.empty());
}

TEST_CASE("Hilbert bases") {
  CHECK(hilbert_basis(Cone({{1, 0}, {0, 1}}, 2)) == std::vector<LatticeVector>{{0, 1}, {1, 0}});
  CHECK(hilbert_basis(Cone({{0, 1}, {2, 1}}, 2)) ==
        std::vector<LatticeVector>{{0, 1}, {1, 1}, {2, 1}});
  CHECK(hilbert_basis(Cone({{1, 0}, {1, 3}}, 2)) ==
        std::vector<LatticeVector>{{1, 0}, {1, 1}, {1, 2}, {1, 3}});
  CHECK(naive_hilbert_basis(Cone({{1, 0}, {1, 3}}, 2), 4) ==
        hilbert_basis(Cone({{1, 0}, {1, 3}}, 2)));

  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coord(-3, 3);
  int checked = 0;
  while (checked < 60) {
    const LatticeVector u{coord(rng), coord(rng)}, v{coord(rng), coord(rng)};
    if (u.is_zero() || v.is_zero()) continue;
    const Cone c({u, v}, 2);
    if (!c.is_pointed()) continue;
    const auto h = hilbert_basis(c);
    CHECK(h == naive_hilbert_basis(c, 7));
    // irredundant
    for (const auto &x : h) {
      std::vector<LatticeVector> others;
      for (const auto &y : h)
        if (y != x) others.push_back(y);
      CHECK_FALSE(monoid_membership(AffineMonoid(2, others), x).member);
    }
    ++checked;
  }
}

TEST_CASE("saturation properties") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coord(0, 3), count(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<LatticeVector> gens;
    for (int i = count(rng); i > 0; --i) gens.push_back(LatticeVector{coord(rng), coord(rng)});
    const AffineMonoid q(2, gens);
    const auto sat = saturate_monoid(q);
    const AffineMonoid qt(2, sat.saturated_generators);
    for (const auto &g : q.generators()) CHECK(monoid_membership(qt, g).member);
    CHECK(saturate_monoid(qt).added.empty());
    for (const auto &c : sat.certificates) {
      CHECK(c.multiple >= 2);
      CHECK(monoid_membership(q, c.multiple * c.element).member);
      for (Integer n = 1; n < c.multiple; ++n)
        CHECK_FALSE(monoid_membership(q, n * c.element).member);
    }
    // brute-force agreement on a small box
    const oracles::ReachableBox box(2, q.generators(), 60);
    for (long x = 0; x <= 5; ++x)
      for (long y = 0; y <= 5; ++y) {
        const LatticeVector a{x, y};
        CHECK(monoid_membership(qt, a).member == box.has_multiple_in(a, 12));
      }
  }
}

TEST_CASE("fiber checks") {
  const auto a = fiber_checks(m1({2, 3}));
  CHECK(a.generates_lattice);
  CHECK_FALSE(a.saturated);
  const auto b = fiber_checks(m1({1}));
  CHECK(b.generates_lattice);
  CHECK(b.saturated);
  const auto c = fiber_checks(AffineMonoid(2, {{0, 1}, {2, 1}}));
  CHECK_FALSE(c.generates_lattice);
  CHECK_FALSE(c.saturated);
}
