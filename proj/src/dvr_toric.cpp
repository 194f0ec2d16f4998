#include "chamber/dvr_toric.hpp"

#include "chamber/errors.hpp"
#include "chamber/parallel.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chamber {

namespace {

const Integer &height(const LatticeVector &v) { return v[v.rank() - 1]; }

bool is_vertical(const LatticeVector &v) {
  for (std::size_t i = 0; i + 1 < v.rank(); ++i)
    if (v[i] != 0) return false;
  return height(v) > 0;
}

LatticeVector drop_height(const LatticeVector &v) {
  std::vector<Integer> c(v.coords().begin(), v.coords().end() - 1);
  return LatticeVector(std::move(c));
}

LatticeVector with_height(const LatticeVector &v, long h) {
  std::vector<Integer> c = v.coords();
  c.emplace_back(h);
  return LatticeVector(std::move(c));
}

int half_plane(const LatticeVector &v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

Integer cross(const LatticeVector &a, const LatticeVector &b) { return a[0] * b[1] - a[1] * b[0]; }

bool angle_less(const LatticeVector &a, const LatticeVector &b) {
  const int ha = half_plane(a), hb = half_plane(b);
  if (ha != hb) return ha < hb;
  return cross(a, b) > 0;
}

} // namespace

DvrFan::DvrFan(Fan fan) : fan_(std::move(fan)) {
  if (fan_.rank() == 0) throw InvalidFan("a fan over a DVR needs a height coordinate");
  for (const auto &r : fan_.rays())
    if (height(r) < 0) throw InvalidFan("ray " + r.to_string() + " has negative height");
  const auto report = fan_validate(fan_);
  if (!report.valid()) throw InvalidFan(report.violations.front());
}

DvrFan pullback(const Fan &base) {
  std::vector<LatticeVector> rays;
  for (const auto &r : base.rays()) rays.push_back(with_height(r, 0));
  const std::size_t vertical = rays.size();
  rays.push_back(with_height(LatticeVector(base.rank()), 1));
  std::vector<RayIndexSet> cones;
  for (const auto &c : base.cones()) {
    cones.push_back(c);
    RayIndexSet lifted = c;
    lifted.push_back(vertical);
    cones.push_back(std::move(lifted));
  }
  return DvrFan(Fan(base.rank() + 1, std::move(rays), std::move(cones)));
}

Fan recession_fan(const DvrFan &d) {
  const Fan &f = d.fan();
  std::vector<LatticeVector> rays;
  std::vector<std::optional<std::size_t>> reindex(f.rays().size());
  for (std::size_t r = 0; r < f.rays().size(); ++r)
    if (height(f.rays()[r]) == 0) {
      reindex[r] = rays.size();
      rays.push_back(drop_height(f.rays()[r]));
    }
  std::set<RayIndexSet> cones;
  for (const auto &c : f.cones()) {
    RayIndexSet flat;
    for (auto r : c)
      if (reindex[r]) flat.push_back(*reindex[r]);
    cones.insert(flat);
  }
  Fan out(d.base_rank(), std::move(rays), {cones.begin(), cones.end()});
  const auto report = fan_validate(out);
  if (!report.valid()) throw NotAFan("recession cones do not form a fan: " + report.violations.front());
  return out;
}

std::vector<RationalVector> special_fiber_components(const DvrFan &d) {
  std::vector<RationalVector> out;
  for (const auto &r : d.fan().rays()) {
    const Integer &h = height(r);
    if (h <= 0) continue;
    std::vector<Rational> c;
    for (std::size_t i = 0; i + 1 < r.rank(); ++i) c.emplace_back(r[i], h);
    out.emplace_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_constant_family(const DvrFan &d) {
  return std::all_of(d.fan().rays().begin(), d.fan().rays().end(),
                     [](const LatticeVector &r) { return is_vertical(r) || height(r) == 0; });
}

UnipotentAction::UnipotentAction(IntMatrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols() || abs(determinant(a_)) != 1)
    throw std::invalid_argument("action matrix must be square with determinant +-1");
}

bool UnipotentAction::is_nontrivial_unipotent() const {
  const IntMatrix n = a_ - IntMatrix::identity(rank());
  return !a_.is_identity() && (n * n) == IntMatrix(rank(), rank());
}

std::vector<LatticeVector> UnipotentAction::fixed_axis() const {
  const IntMatrix n = a_ - IntMatrix::identity(rank());
  std::vector<LatticeVector> rows;
  for (std::size_t i = 0; i < rank(); ++i) rows.push_back(n.row(i));
  return orthogonal_complement(rows, rank());
}

IntMatrix UnipotentAction::extended() const {
  IntMatrix e = IntMatrix::identity(rank() + 1);
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) e(i, j) = a_(i, j);
  return e;
}

LatticeVector UnipotentAction::power_apply(const LatticeVector &v, std::size_t n) const {
  LatticeVector out = v;
  for (std::size_t i = 0; i < n; ++i) out = a_ * out;
  return out;
}

Fan apply_action(const Fan &f, const UnipotentAction &u) {
  if (f.rank() == u.rank()) return apply_matrix(f, u.matrix());
  if (f.rank() == u.rank() + 1) return apply_matrix(f, u.extended());
  throw DimensionMismatch("action rank does not match the fan");
}

DvrFan apply_action(const DvrFan &d, const UnipotentAction &u) {
  if (d.base_rank() != u.rank()) throw DimensionMismatch("action rank does not match the base");
  return DvrFan(apply_matrix(d.fan(), u.extended()));
}

EscapeWitness orbit_escape_witness(const Fan &f, const UnipotentAction &u, std::size_t bound) {
  if (!u.is_nontrivial_unipotent())
    throw NotUnipotent("matrix must satisfy (A - I)^2 = 0 and A != I");
  if (f.rank() != u.rank()) throw DimensionMismatch("action rank does not match the fan");
  const IntMatrix n = u.matrix() - IntMatrix::identity(u.rank());
  std::optional<EscapeWitness> best;
  bool off_axis = false;
  for (const auto &ray : f.rays()) {
    if ((n * ray).is_zero()) continue;
    off_axis = true;
    LatticeVector image = ray;
    for (std::size_t k = 1; k <= bound; ++k) {
      if (best && k >= best->power) break;
      image = u.matrix() * image;
      if (!f.ray_index(image)) {
        best = EscapeWitness{ray, k, image};
        break;
      }
    }
  }
  if (!off_axis) throw NoRayOffAxis("every ray lies on the fixed axis; the fan is not complete");
  if (!best) throw BoundExceeded("no escape within " + std::to_string(bound) + " steps");
  return *best;
}

NoStableFanReport no_stable_fan_report(const UnipotentAction &u, const std::vector<Fan> &candidates) {
  if (!u.is_nontrivial_unipotent())
    throw NotUnipotent("matrix must satisfy (A - I)^2 = 0 and A != I");
  // only the generator matters for stability; keep the closure budget tiny
  const MatrixGroup g(u.rank(), {u.matrix()}, 1);
  NoStableFanReport report;
  report.refutations = parallel_map<Refutation>(candidates.size(), [&](std::size_t i) {
    const Fan &f = candidates[i];
    Refutation r;
    const auto st = is_stable(f, g);
    r.stable = st.stable;
    r.moved_cone = st.moved_cone;
    try {
      r.escape = orbit_escape_witness(f, u, f.rays().size() + 1);
    } catch (const NoRayOffAxis &) {
    } catch (const BoundExceeded &) {
    }
    return r;
  });
  for (const auto &r : report.refutations)
    if (!r.refuted()) ++report.unrefuted;
  return report;
}

std::vector<LatticeVector> primitive_box_vectors(long bound) {
  std::vector<LatticeVector> out;
  for (long x = -bound; x <= bound; ++x)
    for (long y = -bound; y <= bound; ++y) {
      LatticeVector v{x, y};
      if (!v.is_zero() && gcd_of(v) == 1) out.push_back(v);
    }
  std::sort(out.begin(), out.end(), angle_less);
  return out;
}

std::vector<Fan> complete_rank2_fans(long bound) {
  const auto rays = primitive_box_vectors(bound);
  const std::size_t m = rays.size();
  if (m >= 8 * sizeof(unsigned long) - 1)
    throw std::invalid_argument("ray bound too large for exhaustive enumeration");
  std::vector<unsigned long> masks;
  for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) chosen.push_back(i);
    if (chosen.size() < 3) continue;
    bool complete = true;
    for (std::size_t i = 0; i < chosen.size() && complete; ++i)
      complete = cross(rays[chosen[i]], rays[chosen[(i + 1) % chosen.size()]]) > 0;
    if (complete) masks.push_back(mask);
  }
  return parallel_map<Fan>(masks.size(), [&](std::size_t idx) {
    std::vector<LatticeVector> chosen;
    for (std::size_t i = 0; i < m; ++i)
      if (masks[idx] >> i & 1) chosen.push_back(rays[i]);
    const std::size_t k = chosen.size();
    std::vector<RayIndexSet> cones{{}};
    for (std::size_t i = 0; i < k; ++i) {
      cones.push_back({i});
      RayIndexSet c{i, (i + 1) % k};
      std::sort(c.begin(), c.end());
      cones.push_back(c);
    }
    return Fan(2, std::move(chosen), std::move(cones));
  });
}

std::vector<LatticeVector> orbit_table(const UnipotentAction &u, const LatticeVector &v,
                                       std::size_t count) {
  std::vector<LatticeVector> out;
  LatticeVector cur = v;
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(cur);
    cur = u.matrix() * cur;
  }
  return out;
}

} // namespace chamber
