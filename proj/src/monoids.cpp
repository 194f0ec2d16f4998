#include "chamber/monoids.hpp"

#include "chamber/errors.hpp"
#include "chamber/linear_program.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace chamber {

namespace {

std::vector<LatticeVector> clean_generators(std::size_t rank, std::vector<LatticeVector> gens) {
  for (const auto &g : gens)
    if (g.rank() != rank) throw DimensionMismatch("monoid generator rank");
  std::set<LatticeVector> unique;
  for (auto &g : gens)
    if (!g.is_zero()) unique.insert(std::move(g));
  return {unique.begin(), unique.end()};
}

// Integer functional vanishing on `flat` and >= 1 on `graded`.
LatticeVector grading(std::size_t rank, const std::vector<LatticeVector> &flat,
                      const std::vector<LatticeVector> &graded) {
  lp::System sys(rank);
  auto coeffs = [&](const LatticeVector &g) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < rank; ++i) c.emplace_back(g[i]);
    return c;
  };
  for (const auto &g : flat) sys.add(coeffs(g), lp::Relation::Equal, 0);
  for (const auto &g : graded) sys.add(coeffs(g), lp::Relation::GreaterEqual, 1);
  const auto w = lp::find_feasible_point(sys);
  if (!w) throw std::logic_error("no grading functional for the pointed part of the cone");
  return RationalVector(*w).clear_denominators();
}

// Nonnegative integers summing generators `idx` to zero, each at least one.
std::vector<Integer> positive_relation(const std::vector<LatticeVector> &gens,
                                       const std::vector<std::size_t> &idx, std::size_t rank) {
  const std::size_t k = idx.size();
  lp::System sys(k);
  for (std::size_t j = 0; j < k; ++j) sys.add([&] {
      std::vector<Rational> c(k, 0);
      c[j] = 1;
      return c;
    }(), lp::Relation::GreaterEqual, 1);
  for (std::size_t coord = 0; coord < rank; ++coord) {
    std::vector<Rational> c;
    for (auto i : idx) c.emplace_back(gens[i][coord]);
    sys.add(std::move(c), lp::Relation::Equal, 0);
  }
  const auto p = lp::find_feasible_point(sys);
  if (!p) throw std::logic_error("lineality generators admit no positive relation");
  return RationalVector(*p).clear_denominators().coords();
}

// Lattice points of the bounding box of sum_i [0,1] g_i that lie in `c`.
std::vector<LatticeVector> zonotope_box_points(const std::vector<LatticeVector> &gens,
                                               const Cone &c, std::size_t rank) {
  std::vector<Integer> lo(rank, 0), hi(rank, 0);
  for (const auto &g : gens)
    for (std::size_t i = 0; i < rank; ++i) (g[i] < 0 ? lo[i] : hi[i]) += g[i];
  std::vector<LatticeVector> out;
  LatticeVector p(lo);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == rank) {
      if (!p.is_zero() && c.contains(p)) out.push_back(p);
      return;
    }
    for (Integer x = lo[i]; x <= hi[i]; ++x) {
      p[i] = x;
      walk(i + 1);
    }
  };
  walk(0);
  return out;
}

// Primitive extremal ray generators of c, sorted.
std::vector<LatticeVector> extremal_rays(const Cone &c) {
  std::set<LatticeVector> prim;
  for (const auto &r : c.rays()) prim.insert(primitive(r));
  const Cone reduced(std::vector<LatticeVector>(prim.begin(), prim.end()), c.rank());
  std::vector<LatticeVector> out;
  for (std::size_t i = 0; i < reduced.rays().size(); ++i)
    if (reduced.is_extremal(i)) out.push_back(reduced.rays()[i]);
  return out;
}

} // namespace

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<LatticeVector> generators)
    : rank_(rank), generators_(clean_generators(rank, std::move(generators))) {}

const Cone &AffineMonoid::cone() const {
  std::call_once(cone_->once, [&] { cone_->cone.emplace(generators_, rank_); });
  return *cone_->cone;
}

MembershipResult monoid_membership(const AffineMonoid &q, const LatticeVector &a) {
  if (a.rank() != q.rank()) throw DimensionMismatch("membership query rank");
  const auto &gens = q.generators();
  MembershipResult result;
  result.coefficients.assign(gens.size(), 0);
  if (!q.cone().contains(a)) return result;

  std::vector<std::size_t> flat, graded;
  for (std::size_t i = 0; i < gens.size(); ++i)
    (q.cone().contains(-gens[i]) ? flat : graded).push_back(i);
  std::vector<LatticeVector> flat_vecs, graded_vecs;
  for (auto i : flat) flat_vecs.push_back(gens[i]);
  for (auto i : graded) graded_vecs.push_back(gens[i]);
  const LatticeVector w = grading(q.rank(), flat_vecs, graded_vecs);
  const LatticeDescription flat_group = describe_subgroup(flat_vecs, q.rank());

  std::vector<Integer> weight;
  for (auto i : graded) weight.push_back(dot(w, gens[i]));
  const Integer total = dot(w, a);
  for (const auto &wt : weight) result.coefficient_bound = std::max(result.coefficient_bound, Integer(total / wt));

  std::set<std::pair<std::size_t, LatticeVector>> dead;
  std::vector<Integer> chosen(graded.size(), 0);
  std::optional<std::vector<Integer>> flat_coeffs;
  std::function<bool(std::size_t, const LatticeVector &, const Integer &)> search =
      [&](std::size_t i, const LatticeVector &rest, const Integer &budget) -> bool {
    if (i == graded.size()) {
      if (budget != 0) return false;
      if (flat.empty()) return rest.is_zero();
      flat_coeffs = integer_combination(flat_group, rest);
      return flat_coeffs.has_value();
    }
    if (dead.count({i, rest})) return false;
    LatticeVector r = rest;
    Integer b = budget;
    for (Integer c = 0; b >= 0; ++c) {
      chosen[i] = c;
      if (search(i + 1, r, b)) return true;
      r -= gens[graded[i]];
      b -= weight[i];
    }
    dead.insert({i, rest});
    return false;
  };
  if (!search(0, a, total)) return result;

  result.member = true;
  for (std::size_t j = 0; j < graded.size(); ++j) result.coefficients[graded[j]] = chosen[j];
  if (!flat.empty()) {
    // shift the integer combination of lineality generators by a positive
    // relation until every coefficient is nonnegative
    const auto rel = positive_relation(gens, flat, q.rank());
    Integer shift = 0;
    for (std::size_t j = 0; j < flat.size(); ++j) {
      const Integer &c = (*flat_coeffs)[j];
      if (c < 0) shift = std::max(shift, Integer((-c + rel[j] - 1) / rel[j]));
    }
    for (std::size_t j = 0; j < flat.size(); ++j)
      result.coefficients[flat[j]] = (*flat_coeffs)[j] + shift * rel[j];
  }
  LatticeVector check(q.rank());
  for (std::size_t i = 0; i < gens.size(); ++i) check += result.coefficients[i] * gens[i];
  if (check != a) throw std::logic_error("membership witness does not reproduce the target");
  return result;
}

LatticeDescription group_generated(const AffineMonoid &q) {
  return describe_subgroup(q.generators(), q.rank());
}

std::optional<MultipleCertificate> multiple_in_monoid(const AffineMonoid &q,
                                                      const LatticeVector &a) {
  if (a.rank() != q.rank()) throw DimensionMismatch("membership query rank");
  const auto &gens = q.generators();
  lp::System sys(gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j) sys.require_nonneg(j);
  for (std::size_t coord = 0; coord < q.rank(); ++coord) {
    std::vector<Rational> c;
    for (const auto &g : gens) c.emplace_back(g[coord]);
    sys.add(std::move(c), lp::Relation::Equal, a[coord]);
  }
  const auto lambda = lp::find_feasible_point(sys);
  if (!lambda) return std::nullopt;
  const RationalVector l(*lambda);
  MultipleCertificate cert{l.denominator(), l.clear_denominators().coords()};
  LatticeVector check(q.rank());
  for (std::size_t j = 0; j < gens.size(); ++j) check += cert.coefficients[j] * gens[j];
  if (check != cert.multiple * a) throw std::logic_error("cone decomposition does not verify");
  return cert;
}

bool in_saturation(const AffineMonoid &q, const LatticeVector &a) { return q.cone().contains(a); }

std::vector<LatticeVector> hilbert_basis(const Cone &c) {
  if (!c.is_pointed()) throw NotPointed("cone is not strongly convex");
  const auto rays = extremal_rays(c);
  const auto candidates = zonotope_box_points(rays, c, c.rank());
  std::vector<LatticeVector> basis;
  for (const auto &x : candidates) {
    const bool reducible = std::any_of(candidates.begin(), candidates.end(), [&](const auto &y) {
      return y != x && c.contains(x - y);
    });
    if (!reducible) basis.push_back(x);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

SaturationResult saturate_monoid(const AffineMonoid &q) {
  SaturationResult out;
  out.group = group_generated(q);
  const Cone &c = q.cone();
  out.pointed = c.is_pointed();
  if (out.pointed) out.cone_rays = extremal_rays(c);
  if (out.pointed) {
    out.saturated_generators = hilbert_basis(c);
  } else {
    out.saturated_generators = zonotope_box_points(q.generators(), c, q.rank());
  }
  for (const auto &h : out.saturated_generators) {
    if (monoid_membership(q, h).member) continue;
    out.added.push_back(h);
    SaturationCertificate cert{h, 0, {}};
    for (Integer n = 2;; ++n) {
      auto m = monoid_membership(q, n * h);
      if (m.member) {
        cert.multiple = n;
        cert.coefficients = std::move(m.coefficients);
        break;
      }
    }
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

FiberChecks fiber_checks(const AffineMonoid &q) {
  const auto sat = saturate_monoid(q);
  return {sat.group.index.has_value() && *sat.group.index == 1, sat.added.empty()};
}

} // namespace chamber
