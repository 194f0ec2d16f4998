#include "chamber/refinement.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

namespace chamber {

namespace {

struct ConeShape {
  std::size_t excess = 0;
  Integer index = 1;
  [[nodiscard]] bool smooth() const { return excess == 0 && index == 1; }
};

ConeShape shape_of(const Cone &c) {
  return {c.rays().size() - c.dim(), c.multiplicity()};
}

std::vector<LatticeVector> sorted_rays(const Fan &f, std::size_t cone) {
  auto rays = f.cone_rays(cone);
  std::sort(rays.begin(), rays.end());
  return rays;
}

std::optional<std::size_t> image_cone(const Fan &f, const IntMatrix &g, std::size_t cone) {
  RayIndexSet s;
  for (auto r : f.cones()[cone]) {
    const auto idx = f.ray_index(g * f.rays()[r]);
    if (!idx) return std::nullopt;
    s.push_back(*idx);
  }
  std::sort(s.begin(), s.end());
  return f.cone_index(s);
}

bool is_proper_subset(const RayIndexSet &a, const RayIndexSet &b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<std::size_t> minimal_nonsmooth_cones(const Fan &f) {
  std::vector<bool> smooth(f.num_cones());
  for (std::size_t c = 0; c < f.num_cones(); ++c) smooth[c] = shape_of(f.cone(c)).smooth();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    if (smooth[c]) continue;
    bool minimal = true;
    for (std::size_t d = 0; d < f.num_cones() && minimal; ++d)
      if (!smooth[d] && is_proper_subset(f.cones()[d], f.cones()[c])) minimal = false;
    if (minimal) out.push_back(c);
  }
  return out;
}

struct Orbit {
  std::vector<std::size_t> members;
  std::size_t representative = 0;
  std::vector<LatticeVector> key_rays;
  ConeShape shape;
};

std::vector<Orbit> orbits_of(const Fan &f, const std::vector<std::size_t> &cones,
                             const std::vector<IntMatrix> &elements) {
  std::vector<Orbit> out;
  std::set<std::size_t> assigned;
  for (auto c : cones) {
    if (assigned.count(c)) continue;
    Orbit orbit;
    std::set<std::size_t> members;
    for (const auto &g : elements) {
      const auto img = image_cone(f, g, c);
      if (!img) throw std::logic_error("group image of a cone is missing from a stable fan");
      members.insert(*img);
    }
    orbit.members.assign(members.begin(), members.end());
    assigned.insert(members.begin(), members.end());
    orbit.representative = orbit.members.front();
    orbit.key_rays = sorted_rays(f, orbit.representative);
    for (auto m : orbit.members) {
      auto rays = sorted_rays(f, m);
      if (rays < orbit.key_rays) {
        orbit.key_rays = std::move(rays);
        orbit.representative = m;
      }
    }
    orbit.shape = shape_of(f.cone(orbit.representative));
    out.push_back(std::move(orbit));
  }
  return out;
}

// Lattice point of the half-open parallelepiped of a simplicial cone that is
// fixed by the stabilizer, minimizing the coefficient sum.
std::optional<LatticeVector> fixed_parallelepiped_point(const std::vector<LatticeVector> &rays,
                                                        const Integer &index,
                                                        const std::vector<IntMatrix> &stab) {
  constexpr unsigned long kMaxCandidates = 1'000'000;
  const std::size_t k = rays.size();
  if (!index.fits_ulong_p()) return std::nullopt;
  const unsigned long m = index.get_ui();
  unsigned long total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (total > kMaxCandidates / m) return std::nullopt;
    total *= m;
  }
  std::optional<LatticeVector> best;
  unsigned long best_sum = 0;
  std::vector<unsigned long> lambda(k, 0);
  for (unsigned long code = 1; code < total; ++code) {
    unsigned long rest = code, sum = 0;
    for (std::size_t i = 0; i < k; ++i) {
      lambda[i] = rest % m;
      rest /= m;
      sum += lambda[i];
    }
    if (best && sum > best_sum) continue;
    LatticeVector p(rays.front().rank());
    for (std::size_t i = 0; i < k; ++i) p += Integer(lambda[i]) * rays[i];
    bool integral = true;
    for (std::size_t j = 0; j < p.rank() && integral; ++j) integral = p[j] % m == 0;
    if (!integral) continue;
    for (std::size_t j = 0; j < p.rank(); ++j) p[j] /= m;
    const bool fixed =
        std::all_of(stab.begin(), stab.end(), [&](const IntMatrix &g) { return g * p == p; });
    if (!fixed) continue;
    if (!best || sum < best_sum || p < *best) {
      best = p;
      best_sum = sum;
    }
  }
  return best;
}

LatticeVector subdivision_point(const Fan &f, const Orbit &orbit,
                                const std::vector<IntMatrix> &elements) {
  const std::size_t rep = orbit.representative;
  const Cone &cone = f.cone(rep);
  LatticeVector barycenter(f.rank());
  for (const auto &r : cone.rays()) barycenter += r;
  if (!cone.is_simplicial() || gcd_of(barycenter) > 1) return primitive(barycenter);
  std::vector<IntMatrix> stab;
  for (const auto &g : elements)
    if (image_cone(f, g, rep) == rep) stab.push_back(g);
  if (auto p = fixed_parallelepiped_point(cone.rays(), orbit.shape.index, stab))
    return primitive(*p);
  return primitive(barycenter);
}

} // namespace

SmoothnessMeasure smoothness_measure(const Fan &f) {
  SmoothnessMeasure out;
  for (auto m : f.maximal_cones()) {
    const auto s = shape_of(f.cone(m));
    if (!s.smooth()) out.emplace_back(s.excess, s.index);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::pair<Fan, RefinementTrace> equivariant_smooth_refine(const Fan &f, const MatrixGroup &g,
                                                          std::size_t budget) {
  if (g.rank() != f.rank()) throw DimensionMismatch("group does not act on the fan's lattice");
  const auto &elements = g.elements();
  const auto validation = fan_validate(f);
  if (!validation.valid()) throw InvalidFan(validation.violations.front());
  if (!is_stable(f, g).stable) throw NotStable("input fan is not stable under the group");
  const bool projective = is_projective(f).projective;

  RefinementTrace trace;
  trace.budget = budget;
  Fan current = f;
  SmoothnessMeasure measure = smoothness_measure(current);
  while (!measure.empty()) {
    if (trace.iterations >= budget)
      throw BudgetExceeded("refinement budget of " + std::to_string(budget) + " steps exhausted",
                           trace);
    auto orbits = orbits_of(current, minimal_nonsmooth_cones(current), elements);
    const auto chosen = std::min_element(orbits.begin(), orbits.end(), [](const Orbit &a,
                                                                           const Orbit &b) {
      return std::tie(b.shape.excess, b.shape.index, a.key_rays) <
             std::tie(a.shape.excess, a.shape.index, b.key_rays);
    });
    const LatticeVector u = subdivision_point(current, *chosen, elements);

    std::set<LatticeVector> points;
    for (auto member : chosen->members)
      for (const auto &h : elements)
        if (image_cone(current, h, chosen->representative) == member) {
          points.insert(h * u);
          break;
        }
    RefinementStep step;
    step.before = measure;
    Fan next = current;
    for (const auto &p : points) {
      next = star_subdivide(next, p);
      step.rays.push_back(p);
    }
    const auto stable = is_stable(next, g);
    if (!stable.stable)
      throw EquivarianceViolation("orbit subdivision at " + u.to_string() +
                                  " produced a fan that is not group-stable");
    if (projective && !is_projective(next).projective)
      throw std::logic_error("star subdivision lost projectivity");
    measure = smoothness_measure(next);
    step.after = measure;
    trace.steps.push_back(std::move(step));
    ++trace.iterations;
    current = std::move(next);
  }
  return {current, trace};
}

Fan intersect_with_chamber(const Fan &f, const RootDatum &rd) {
  if (f.rank() != rd.rank()) throw DimensionMismatch("fan and root datum ranks differ");
  auto dominant = [&](const LatticeVector &v) {
    return std::all_of(rd.simple_roots().begin(), rd.simple_roots().end(),
                       [&](const LatticeVector &a) { return dot(a, v) >= 0; });
  };
  std::vector<LatticeVector> rays;
  std::map<std::size_t, std::size_t> reindex;
  for (std::size_t r = 0; r < f.rays().size(); ++r)
    if (dominant(f.rays()[r])) {
      reindex[r] = rays.size();
      rays.push_back(f.rays()[r]);
    }
  std::vector<RayIndexSet> cones;
  for (const auto &c : f.cones()) {
    if (!std::all_of(c.begin(), c.end(), [&](std::size_t r) { return reindex.count(r) > 0; }))
      continue;
    RayIndexSet s;
    for (auto r : c) s.push_back(reindex[r]);
    cones.push_back(std::move(s));
  }
  Fan sub(f.rank(), std::move(rays), std::move(cones));
  if (!covers_cone(sub, dominant_chamber(rd)))
    throw NotCovering("cones inside the dominant chamber do not cover it");
  return sub;
}

GoodFanResult good_fan(const RootDatum &rd, const MatrixGroup &g_extra, std::size_t budget) {
  if (g_extra.rank() != rd.rank()) throw DimensionMismatch("group rank differs from datum rank");
  const MatrixGroup gamma = diagram_automorphisms(rd);
  for (const auto &m : g_extra.generators())
    if (!gamma.contains(m))
      throw std::invalid_argument("extra group element is not a diagram automorphism");
  const MatrixGroup w = weyl_group(rd);
  const MatrixGroup full = w.join(g_extra);
  auto [refined, trace] = equivariant_smooth_refine(weyl_fan(rd), full, budget);
  GoodFanResult out;
  out.sigma = intersect_with_chamber(refined, rd);
  out.saturated = saturate(out.sigma, w);
  out.trace = std::move(trace);
  return out;
}

} // namespace chamber
