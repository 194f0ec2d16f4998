#include "chamber/errors.hpp"
#include "chamber/polyhedral.hpp"

#include <algorithm>
#include <functional>

namespace chamber {

namespace {

// Calls fn on every k-element subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k,
                     const std::function<void(const RayIndexSet &)> &fn) {
  if (k > n) return;
  RayIndexSet idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

} // namespace

Cone::Cone(std::vector<LatticeVector> rays, std::size_t rank)
    : rank_(rank), rays_(std::move(rays)) {
  for (const auto &r : rays_)
    if (r.rank() != rank_) throw DimensionMismatch("cone generator rank");
  dim_ = rank_of(rays_, rank_);
  equations_ = orthogonal_complement(rays_, rank_);
  if (dim_ == 0) return;

  std::map<LatticeVector, std::size_t> seen;
  for_each_subset(rays_.size(), dim_ - 1, [&](const RayIndexSet &subset) {
    std::vector<LatticeVector> rows;
    rows.reserve(subset.size() + equations_.size());
    for (auto i : subset) rows.push_back(rays_[i]);
    if (rank_of(rows, rank_) != dim_ - 1) return;
    rows.insert(rows.end(), equations_.begin(), equations_.end());
    auto normals = orthogonal_complement(rows, rank_);
    if (normals.size() != 1) return;
    LatticeVector n = std::move(normals.front());
    bool pos = false, neg = false;
    for (const auto &r : rays_) {
      const int s = sgn(dot(n, r));
      pos |= s > 0;
      neg |= s < 0;
    }
    if (pos && neg) return;
    if (neg) n = -n;
    if (seen.count(n)) return;
    Facet f{n, {}};
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(n, rays_[i]) == 0) f.rays.push_back(i);
    seen.emplace(n, facets_.size());
    facets_.push_back(std::move(f));
  });
}

bool Cone::contains(const LatticeVector &v) const {
  if (v.rank() != rank_) throw DimensionMismatch("cone membership");
  for (const auto &e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto &f : facets_)
    if (dot(f.normal, v) < 0) return false;
  return true;
}

bool Cone::contains(const RationalVector &v) const {
  return contains(v.clear_denominators());
}

bool Cone::contains_in_relative_interior(const LatticeVector &v) const {
  if (v.rank() != rank_) throw DimensionMismatch("cone membership");
  for (const auto &e : equations_)
    if (dot(e, v) != 0) return false;
  for (const auto &f : facets_)
    if (dot(f.normal, v) <= 0) return false;
  return true;
}

bool Cone::is_pointed() const {
  if (dim_ == 0) return true;
  std::vector<LatticeVector> rows = equations_;
  for (const auto &f : facets_) rows.push_back(f.normal);
  return rank_of(rows, rank_) == rank_;
}

bool Cone::is_extremal(std::size_t i) const {
  const auto &r = rays_.at(i);
  if (r.is_zero()) return false;
  const LatticeVector p = primitive(r);
  for (std::size_t j = 0; j < rays_.size(); ++j)
    if (j != i && !rays_[j].is_zero() && primitive(rays_[j]) == p) return false;
  std::vector<LatticeVector> rows = equations_;
  for (const auto &f : facets_)
    if (dot(f.normal, r) == 0) rows.push_back(f.normal);
  return rank_of(rows, rank_) + 1 == rank_;
}

std::set<RayIndexSet> Cone::faces() const {
  std::set<RayIndexSet> out;
  std::function<void(const RayIndexSet &)> visit = [&](const RayIndexSet &s) {
    if (!out.insert(s).second) return;
    if (s.empty()) return;
    std::vector<LatticeVector> sub;
    sub.reserve(s.size());
    for (auto i : s) sub.push_back(rays_[i]);
    const Cone c(std::move(sub), rank_);
    if (c.dim() == 0) {
      out.insert({});
      return;
    }
    for (const auto &f : c.facets()) {
      RayIndexSet t;
      t.reserve(f.rays.size());
      for (auto j : f.rays) t.push_back(s[j]);
      visit(t);
    }
  };
  RayIndexSet all(rays_.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  visit(all);
  return out;
}

Integer Cone::multiplicity() const { return saturated_span_index(rays_, rank_); }

} // namespace chamber
