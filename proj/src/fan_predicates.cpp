#include "chamber/errors.hpp"
#include "chamber/linear_program.hpp"
#include "chamber/polyhedral.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace chamber {

namespace {

bool is_subset(const RayIndexSet &small, const RayIndexSet &big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

RayIndexSet intersection(const RayIndexSet &a, const RayIndexSet &b) {
  RayIndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RayIndexSet difference(const RayIndexSet &a, const RayIndexSet &b) {
  RayIndexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Rational> to_rationals(const LatticeVector &v) {
  return {v.coords().begin(), v.coords().end()};
}

std::string describe(const Fan &f, std::size_t cone) {
  std::ostringstream os;
  os << "cone " << cone << " {";
  bool first = true;
  for (const auto &r : f.cone_rays(cone)) {
    if (!first) os << ' ';
    os << r;
    first = false;
  }
  os << '}';
  return os.str();
}

// A hyperplane through the rays in `common` weakly separates the two cones,
// touching each exactly in cone(common).
bool meet_in_common_face(const Fan &f, const RayIndexSet &a, const RayIndexSet &b) {
  const RayIndexSet common = intersection(a, b);
  lp::System sys(f.rank());
  for (auto r : common) sys.add(to_rationals(f.rays()[r]), lp::Relation::Equal, 0);
  for (auto r : difference(a, common))
    sys.add(to_rationals(f.rays()[r]), lp::Relation::GreaterEqual, 1);
  for (auto r : difference(b, common))
    sys.add(to_rationals(f.rays()[r]), lp::Relation::LessEqual, -1);
  return lp::find_feasible_point(sys).has_value();
}

// Facets of maximal cone `c`, as global ray index sets.
std::vector<RayIndexSet> global_facets(const Fan &f, std::size_t c) {
  std::vector<RayIndexSet> out;
  for (const auto &facet : f.cone(c).facets()) {
    RayIndexSet g;
    for (auto j : facet.rays) g.push_back(f.cones()[c][j]);
    out.push_back(std::move(g));
  }
  return out;
}

// Pure-dimensional pseudo-manifold test: every codimension-one face of a
// maximal cone lies in exactly two maximal cones, unless it lies on the
// boundary of `hull` (then exactly one), and maximal cones are connected
// through such shared faces. For a fan contained in `hull` this certifies
// that its support equals `hull`.
bool pseudo_manifold_covers(const Fan &f, const std::vector<std::size_t> &maximal,
                            const Cone &hull) {
  if (maximal.empty()) return false;
  for (auto m : maximal)
    if (f.cone(m).dim() != hull.dim()) return false;
  if (hull.dim() == 0) return true;

  std::vector<std::vector<std::size_t>> adjacent(maximal.size());
  for (std::size_t a = 0; a < maximal.size(); ++a) {
    for (const auto &facet : global_facets(f, maximal[a])) {
      std::vector<std::size_t> owners;
      for (std::size_t b = 0; b < maximal.size(); ++b)
        if (is_subset(facet, f.cones()[maximal[b]])) owners.push_back(b);
      if (owners.size() == 2) {
        const std::size_t other = owners[0] == a ? owners[1] : owners[0];
        adjacent[a].push_back(other);
        continue;
      }
      if (owners.size() != 1) return false;
      const bool on_boundary =
          std::any_of(hull.facets().begin(), hull.facets().end(), [&](const Cone::Facet &h) {
            return std::all_of(facet.begin(), facet.end(), [&](std::size_t r) {
              return dot(h.normal, f.rays()[r]) == 0;
            });
          });
      if (!on_boundary) return false;
    }
  }
  std::vector<bool> seen(maximal.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (auto b : adjacent[a])
      if (!seen[b]) {
        seen[b] = true;
        ++reached;
        queue.push_back(b);
      }
  }
  return reached == maximal.size();
}

struct Wall {
  std::size_t left;  // position in the maximal cone list
  std::size_t right;
};

std::vector<Wall> interior_walls(const Fan &f, const std::vector<std::size_t> &maximal) {
  std::vector<Wall> walls;
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b) {
      const auto common = intersection(f.cones()[maximal[a]], f.cones()[maximal[b]]);
      std::vector<LatticeVector> gens;
      for (auto r : common) gens.push_back(f.rays()[r]);
      const std::size_t d = f.cone(maximal[a]).dim();
      if (d > 0 && rank_of(gens, f.rank()) + 1 == d) walls.push_back({a, b});
    }
  return walls;
}

// Functional in span(cone) taking prescribed values on the cone's rays.
RationalVector functional_from_values(const Cone &cone, const std::vector<Rational> &values) {
  const std::size_t n = cone.rank();
  std::vector<LatticeVector> rows = cone.rays();
  rows.insert(rows.end(), cone.equations().begin(), cone.equations().end());
  std::vector<Rational> rhs = values;
  rhs.resize(rows.size(), 0);
  // columns of the row matrix
  std::vector<LatticeVector> cols(n, LatticeVector(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = rows[i][j];
  auto sol = solve_combination(cols, RationalVector(std::move(rhs)));
  if (!sol) throw std::logic_error("inconsistent values on a simplicial cone");
  return RationalVector(std::move(*sol));
}

// Simplicial fans: unknowns are the values of the support function on rays.
std::optional<std::vector<RationalVector>>
simplicial_support_function(const Fan &f, const std::vector<std::size_t> &maximal,
                            const std::vector<Wall> &walls) {
  const std::size_t nrays = f.rays().size();
  lp::System sys(nrays);
  for (const auto &w : walls) {
    for (int side = 0; side < 2; ++side) {
      const auto sigma = side ? maximal[w.right] : maximal[w.left];
      const auto tau = side ? maximal[w.left] : maximal[w.right];
      for (auto b : difference(f.cones()[tau], f.cones()[sigma])) {
        const auto coeffs = coordinates_in(f.cone_rays(sigma), f.rays()[b]);
        if (!coeffs) throw std::logic_error("wall ray outside the neighbouring span");
        std::vector<Rational> row(nrays, 0);
        for (std::size_t k = 0; k < f.cones()[sigma].size(); ++k)
          row[f.cones()[sigma][k]] += (*coeffs)[k];
        row[b] -= 1;
        sys.add(std::move(row), lp::Relation::GreaterEqual, 1);
      }
    }
  }
  const auto h = lp::find_feasible_point(sys);
  if (!h) return std::nullopt;
  std::vector<RationalVector> out;
  for (auto m : maximal) {
    std::vector<Rational> values;
    for (auto r : f.cones()[m]) values.push_back((*h)[r]);
    out.push_back(functional_from_values(f.cone(m), values));
  }
  return out;
}

// General fans: one unknown functional per maximal cone.
std::optional<std::vector<RationalVector>>
general_support_function(const Fan &f, const std::vector<std::size_t> &maximal,
                         const std::vector<Wall> &walls) {
  const std::size_t n = f.rank();
  lp::System sys(n * maximal.size());
  auto difference_row = [&](std::size_t a, std::size_t b, const LatticeVector &r) {
    std::vector<Rational> row(n * maximal.size(), 0);
    for (std::size_t k = 0; k < n; ++k) {
      row[a * n + k] += r[k];
      row[b * n + k] -= r[k];
    }
    return row;
  };
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b)
      for (auto r : intersection(f.cones()[maximal[a]], f.cones()[maximal[b]]))
        sys.add(difference_row(a, b, f.rays()[r]), lp::Relation::Equal, 0);
  for (const auto &w : walls) {
    for (auto r : difference(f.cones()[maximal[w.right]], f.cones()[maximal[w.left]]))
      sys.add(difference_row(w.left, w.right, f.rays()[r]), lp::Relation::GreaterEqual, 1);
    for (auto r : difference(f.cones()[maximal[w.left]], f.cones()[maximal[w.right]]))
      sys.add(difference_row(w.right, w.left, f.rays()[r]), lp::Relation::GreaterEqual, 1);
  }
  const auto x = lp::find_feasible_point(sys);
  if (!x) return std::nullopt;
  std::vector<RationalVector> out;
  for (std::size_t a = 0; a < maximal.size(); ++a)
    out.emplace_back(std::vector<Rational>(x->begin() + static_cast<std::ptrdiff_t>(a * n),
                                           x->begin() + static_cast<std::ptrdiff_t>((a + 1) * n)));
  return out;
}

} // namespace

ValidationReport fan_validate(const Fan &f) {
  ValidationReport report;
  auto fail = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

  std::set<LatticeVector> distinct;
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    const auto &r = f.rays()[i];
    if (r.is_zero()) {
      fail("ray " + std::to_string(i) + " is zero");
      continue;
    }
    if (gcd_of(r) != 1) fail("ray " + std::to_string(i) + " " + r.to_string() + " is not primitive");
    if (!distinct.insert(r).second) fail("ray " + r.to_string() + " is listed twice");
  }
  if (!report.valid()) return report;

  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    const Cone &cone = f.cone(c);
    if (!cone.is_pointed()) {
      fail(describe(f, c) + " is not strongly convex");
      continue;
    }
    for (std::size_t j = 0; j < cone.rays().size(); ++j)
      if (!cone.is_extremal(j))
        fail(describe(f, c) + " has redundant generator " + cone.rays()[j].to_string());
  }
  if (!report.valid()) return report;

  for (std::size_t c = 0; c < f.num_cones(); ++c)
    for (const auto &face : f.cone(c).faces()) {
      RayIndexSet g;
      for (auto j : face) g.push_back(f.cones()[c][j]);
      if (!f.cone_index(g)) {
        std::ostringstream os;
        os << "face of " << describe(f, c) << " is missing from the fan";
        fail(os.str());
      }
    }

  const auto maximal = f.maximal_cones();
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b)
      if (!meet_in_common_face(f, f.cones()[maximal[a]], f.cones()[maximal[b]]))
        fail(describe(f, maximal[a]) + " and " + describe(f, maximal[b]) +
             " do not intersect in a common face");
  return report;
}

SmoothnessReport is_smooth(const Fan &f) {
  SmoothnessReport report;
  for (auto c : f.maximal_cones()) {
    const Cone &cone = f.cone(c);
    const bool simplicial = cone.is_simplicial();
    const Integer mult = cone.multiplicity();
    if (simplicial && mult == 1) continue;
    report.smooth = false;
    report.witness_cone = c;
    report.witness_index = simplicial ? mult : Integer(0);
    return report;
  }
  if (!is_simplicial(f)) throw std::logic_error("smooth fan with a non-simplicial cone");
  return report;
}

bool is_simplicial(const Fan &f) {
  for (std::size_t c = 0; c < f.num_cones(); ++c)
    if (!f.cone(c).is_simplicial()) return false;
  return true;
}

CompletenessReport is_complete(const Fan &f) {
  if (f.dim() != f.rank() || f.rank() == 0)
    throw NotFullDimensional("no cone of the fan is full-dimensional");
  CompletenessReport report;
  std::vector<LatticeVector> everything;
  for (std::size_t i = 0; i < f.rank(); ++i) {
    LatticeVector e(f.rank());
    e[i] = 1;
    everything.push_back(e);
    everything.push_back(-e);
  }
  const Cone space(everything, f.rank());
  report.pairing_certificate = pseudo_manifold_covers(f, f.maximal_cones(), space);

  // probes: nonzero sign vectors and sums of pairs of rays
  std::vector<LatticeVector> probes;
  LatticeVector s(f.rank());
  std::function<void(std::size_t)> signs = [&](std::size_t i) {
    if (i == f.rank()) {
      if (!s.is_zero()) probes.push_back(s);
      return;
    }
    for (long v : {-1L, 0L, 1L}) {
      s[i] = v;
      signs(i + 1);
    }
  };
  signs(0);
  for (std::size_t i = 0; i < f.rays().size(); ++i)
    for (std::size_t j = i + 1; j < f.rays().size(); ++j) {
      auto p = f.rays()[i] + f.rays()[j];
      if (!p.is_zero()) probes.push_back(std::move(p));
    }
  report.probing_certificate = true;
  for (const auto &p : probes)
    if (!f.support_contains(p)) {
      report.probing_certificate = false;
      report.uncovered_probe = p;
      break;
    }
  if (report.pairing_certificate && !report.probing_certificate)
    throw std::logic_error("completeness certificates disagree: probe " +
                           report.uncovered_probe->to_string() + " uncovered");
  report.complete = report.pairing_certificate;
  return report;
}

bool has_convex_support(const Fan &f) {
  const Cone hull(f.rays(), f.rank());
  return pseudo_manifold_covers(f, f.maximal_cones(), hull);
}

bool covers_cone(const Fan &sub, const Cone &c) {
  return pseudo_manifold_covers(sub, sub.maximal_cones(), c);
}

ProjectivityReport is_projective(const Fan &f) {
  if (!has_convex_support(f)) throw NonConvexSupport("support of the fan is not convex");
  ProjectivityReport report;
  report.maximal_cones = f.maximal_cones();
  const auto walls = interior_walls(f, report.maximal_cones);
  const bool simplicial =
      std::all_of(report.maximal_cones.begin(), report.maximal_cones.end(),
                  [&](std::size_t m) { return f.cone(m).is_simplicial(); });
  auto witness = simplicial ? simplicial_support_function(f, report.maximal_cones, walls)
                            : general_support_function(f, report.maximal_cones, walls);
  if (!witness) return report;
  report.projective = true;
  report.support_function = std::move(*witness);
  if (!verify_support_function(f, report.maximal_cones, report.support_function))
    throw std::logic_error("support function witness failed exact verification");
  return report;
}

bool verify_support_function(const Fan &f, const std::vector<std::size_t> &maximal,
                             const std::vector<RationalVector> &functionals) {
  if (functionals.size() != maximal.size()) return false;
  for (const auto &m : functionals)
    if (m.rank() != f.rank()) return false;
  for (std::size_t a = 0; a < maximal.size(); ++a)
    for (std::size_t b = a + 1; b < maximal.size(); ++b)
      for (auto r : intersection(f.cones()[maximal[a]], f.cones()[maximal[b]]))
        if (dot(functionals[a], f.rays()[r]) != dot(functionals[b], f.rays()[r])) return false;
  for (const auto &w : interior_walls(f, maximal)) {
    const auto &ma = functionals[w.left];
    const auto &mb = functionals[w.right];
    for (auto r : difference(f.cones()[maximal[w.right]], f.cones()[maximal[w.left]]))
      if (!(dot(ma, f.rays()[r]) > dot(mb, f.rays()[r]))) return false;
    for (auto r : difference(f.cones()[maximal[w.left]], f.cones()[maximal[w.right]]))
      if (!(dot(mb, f.rays()[r]) > dot(ma, f.rays()[r]))) return false;
  }
  return true;
}

bool refines(const Fan &fine, const Fan &coarse) {
  if (fine.rank() != coarse.rank()) return false;
  const auto coarse_max = coarse.maximal_cones();
  for (auto c : fine.maximal_cones()) {
    const auto rays = fine.cone_rays(c);
    const bool inside = std::any_of(coarse_max.begin(), coarse_max.end(), [&](std::size_t t) {
      return std::all_of(rays.begin(), rays.end(),
                         [&](const LatticeVector &r) { return coarse.cone(t).contains(r); });
    });
    if (!inside) return false;
  }
  for (auto t : coarse_max) {
    const Cone &tau = coarse.cone(t);
    std::vector<RayIndexSet> inside;
    for (std::size_t c = 0; c < fine.num_cones(); ++c) {
      const auto rays = fine.cone_rays(c);
      if (std::all_of(rays.begin(), rays.end(),
                      [&](const LatticeVector &r) { return tau.contains(r); }))
        inside.push_back(fine.cones()[c]);
    }
    if (!covers_cone(Fan(fine.rank(), fine.rays(), std::move(inside)), tau)) return false;
  }
  return true;
}

StabilityReport is_stable(const Fan &f, const MatrixGroup &g) {
  if (g.rank() != f.rank()) throw DimensionMismatch("group does not act on the fan's lattice");
  StabilityReport report;
  for (std::size_t gi = 0; gi < g.generators().size(); ++gi) {
    const auto &m = g.generators()[gi];
    std::vector<std::optional<std::size_t>> image(f.rays().size());
    for (std::size_t r = 0; r < f.rays().size(); ++r) image[r] = f.ray_index(m * f.rays()[r]);
    for (std::size_t c = 0; c < f.num_cones(); ++c) {
      RayIndexSet s;
      bool ok = true;
      for (auto r : f.cones()[c]) {
        if (!image[r]) {
          ok = false;
          break;
        }
        s.push_back(*image[r]);
      }
      if (ok) {
        std::sort(s.begin(), s.end());
        ok = f.cone_index(s).has_value();
      }
      if (!ok) {
        report.stable = false;
        report.generator = gi;
        report.moved_cone = c;
        return report;
      }
    }
  }
  return report;
}

} // namespace chamber
