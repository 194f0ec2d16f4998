#include "chamber/errors.hpp"
#include "chamber/polyhedral.hpp"

#include <algorithm>
#include <deque>

namespace chamber {

namespace {

bool cone_order(const RayIndexSet &a, const RayIndexSet &b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

} // namespace

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RayIndexSet> cones)
    : rank_(rank), rays_(std::move(rays)) {
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].rank() != rank_) throw DimensionMismatch("fan ray rank");
    ray_lookup_.emplace(rays_[i], i);
  }
  for (auto &c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    for (auto i : c)
      if (i >= rays_.size()) throw InvalidFan("cone refers to ray index out of range");
  }
  std::sort(cones.begin(), cones.end(), cone_order);
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  cones_ = std::move(cones);
  cone_objects_.reserve(cones_.size());
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    cone_objects_.emplace_back(cone_rays(i), rank_);
    cone_lookup_.emplace(cones_[i], i);
  }
}

Fan Fan::generated_by(std::size_t rank, std::vector<LatticeVector> rays,
                      const std::vector<RayIndexSet> &cones) {
  std::set<RayIndexSet> all;
  for (auto c : cones) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::vector<LatticeVector> gens;
    for (auto i : c) {
      if (i >= rays.size()) throw InvalidFan("cone refers to ray index out of range");
      gens.push_back(rays[i]);
    }
    const Cone cone(std::move(gens), rank);
    all.insert(c);
    if (!cone.is_pointed()) continue;
    for (const auto &face : cone.faces()) {
      RayIndexSet g;
      for (auto j : face) g.push_back(c[j]);
      all.insert(std::move(g));
    }
  }
  if (all.empty()) all.insert({});
  return Fan(rank, std::move(rays), {all.begin(), all.end()});
}

Fan Fan::from_cone_rays(std::size_t rank,
                        const std::vector<std::vector<LatticeVector>> &cones) {
  std::vector<LatticeVector> rays;
  std::map<LatticeVector, std::size_t> index;
  std::vector<RayIndexSet> sets;
  for (const auto &c : cones) {
    RayIndexSet s;
    for (const auto &r : c) {
      auto [it, inserted] = index.emplace(r, rays.size());
      if (inserted) rays.push_back(r);
      s.push_back(it->second);
    }
    sets.push_back(std::move(s));
  }
  return generated_by(rank, std::move(rays), sets);
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector &v) const {
  auto it = ray_lookup_.find(v);
  if (it == ray_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Fan::cone_index(const RayIndexSet &s) const {
  auto it = cone_lookup_.find(s);
  if (it == cone_lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<LatticeVector> Fan::cone_rays(std::size_t i) const {
  std::vector<LatticeVector> out;
  out.reserve(cones_.at(i).size());
  for (auto r : cones_[i]) out.push_back(rays_[r]);
  return out;
}

std::vector<std::size_t> Fan::maximal_cones() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < cones_.size() && maximal; ++j) {
      if (j == i || cones_[j].size() <= cones_[i].size()) continue;
      if (std::includes(cones_[j].begin(), cones_[j].end(), cones_[i].begin(),
                        cones_[i].end()))
        maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

std::size_t Fan::dim() const {
  std::size_t d = 0;
  for (const auto &c : cone_objects_) d = std::max(d, c.dim());
  return d;
}

bool Fan::support_contains(const LatticeVector &v) const {
  return std::any_of(cone_objects_.begin(), cone_objects_.end(),
                     [&](const Cone &c) { return c.contains(v); });
}

bool Fan::support_contains(const RationalVector &v) const {
  return support_contains(v.clear_denominators());
}

std::vector<std::size_t> Fan::cones_containing(const LatticeVector &v) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cone_objects_.size(); ++i)
    if (cone_objects_[i].contains(v)) out.push_back(i);
  return out;
}

std::set<std::vector<LatticeVector>> Fan::canonical_cones() const {
  std::set<std::vector<LatticeVector>> out;
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    auto rays = cone_rays(i);
    std::sort(rays.begin(), rays.end());
    out.insert(std::move(rays));
  }
  return out;
}

bool same_fan(const Fan &a, const Fan &b) {
  return a.rank() == b.rank() && a.canonical_cones() == b.canonical_cones();
}

// ---------------------------------------------------------------------------

MatrixGroup::MatrixGroup(std::size_t rank, std::vector<IntMatrix> generators,
                         std::size_t closure_budget)
    : rank_(rank), generators_(std::move(generators)) {
  for (const auto &g : generators_) {
    if (g.rows() != rank_ || g.cols() != rank_)
      throw DimensionMismatch("group generator shape");
    if (!is_unimodular(g)) throw DimensionMismatch("group generator is not unimodular");
  }
  std::set<IntMatrix> seen;
  std::deque<IntMatrix> queue;
  const IntMatrix id = IntMatrix::identity(rank_);
  seen.insert(id);
  elements_.push_back(id);
  queue.push_back(id);
  while (!queue.empty()) {
    const IntMatrix e = queue.front();
    queue.pop_front();
    for (const auto &g : generators_) {
      IntMatrix p = g * e;
      if (seen.insert(p).second) {
        if (elements_.size() >= closure_budget) {
          finite_ = false;
          elements_.clear();
          return;
        }
        elements_.push_back(p);
        queue.push_back(std::move(p));
      }
    }
  }
}

MatrixGroup MatrixGroup::trivial(std::size_t rank) { return MatrixGroup(rank, {}); }

const std::vector<IntMatrix> &MatrixGroup::elements() const {
  if (!finite_) throw InfiniteGroup("group closure exceeded its enumeration budget");
  return elements_;
}

bool MatrixGroup::contains(const IntMatrix &m) const {
  const auto &els = elements();
  return std::find(els.begin(), els.end(), m) != els.end();
}

MatrixGroup MatrixGroup::join(const MatrixGroup &other) const {
  if (other.rank_ != rank_) throw DimensionMismatch("group join");
  auto gens = generators_;
  for (const auto &g : other.generators_)
    if (std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  return MatrixGroup(rank_, std::move(gens));
}

// ---------------------------------------------------------------------------

Fan apply_matrix(const Fan &f, const IntMatrix &m) {
  if (m.rows() != f.rank() || m.cols() != f.rank())
    throw DimensionMismatch("matrix does not act on the fan's lattice");
  std::vector<LatticeVector> rays;
  rays.reserve(f.rays().size());
  for (const auto &r : f.rays()) rays.push_back(primitive(m * r));
  return Fan(f.rank(), std::move(rays), f.cones());
}

Fan saturate(const Fan &f, const MatrixGroup &g) {
  if (g.rank() != f.rank()) throw DimensionMismatch("group does not act on the fan's lattice");
  std::vector<LatticeVector> rays;
  std::map<LatticeVector, std::size_t> index;
  std::set<RayIndexSet> cones;
  for (const auto &h : g.elements()) {
    for (const auto &c : f.cones()) {
      RayIndexSet s;
      for (auto r : c) {
        LatticeVector img = h * f.rays()[r];
        auto [it, inserted] = index.emplace(img, rays.size());
        if (inserted) rays.push_back(std::move(img));
        s.push_back(it->second);
      }
      std::sort(s.begin(), s.end());
      cones.insert(std::move(s));
    }
  }
  Fan out(f.rank(), std::move(rays), {cones.begin(), cones.end()});
  const auto report = fan_validate(out);
  if (!report.valid())
    throw OverlapError("group translates do not form a fan: " + report.violations.front());
  return out;
}

Fan star_subdivide(const Fan &f, const LatticeVector &v) {
  if (v.rank() != f.rank()) throw DimensionMismatch("subdivision ray rank");
  if (primitive(v) != v) throw std::invalid_argument("star subdivision needs a primitive vector");
  if (f.ray_index(v)) return f;
  const auto containing = f.cones_containing(v);
  if (containing.empty()) throw RayNotInSupport("vector " + v.to_string() + " is outside the support");

  auto rays = f.rays();
  const std::size_t vi = rays.size();
  rays.push_back(v);
  std::vector<RayIndexSet> cones;
  for (std::size_t i = 0; i < f.num_cones(); ++i) {
    if (f.cone(i).contains(v)) continue;
    const auto &tau = f.cones()[i];
    cones.push_back(tau);
    const bool in_star = std::any_of(containing.begin(), containing.end(), [&](std::size_t s) {
      const auto &sigma = f.cones()[s];
      return std::includes(sigma.begin(), sigma.end(), tau.begin(), tau.end());
    });
    if (in_star) {
      auto joined = tau;
      joined.push_back(vi);
      cones.push_back(std::move(joined));
    }
  }
  return Fan(f.rank(), std::move(rays), std::move(cones));
}

} // namespace chamber
