#pragma once

#include "chamber/lattice.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace chamber {

/// Sorted indices into a ray list.
using RayIndexSet = std::vector<std::size_t>;

/// Rational polyhedral cone given by generators. The H-description (linear
/// span equations and facet normals) is computed eagerly by exact
/// elimination; faces are enumerated on request.
class Cone {
public:
  Cone() = default;
  /// `rays` need not be primitive or irredundant; they are kept in the given
  /// order so that face index sets refer to positions in `rays()`.
  Cone(std::vector<LatticeVector> rays, std::size_t rank);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<LatticeVector> &rays() const noexcept { return rays_; }

  /// Basis of the orthogonal complement of the linear span.
  [[nodiscard]] const std::vector<LatticeVector> &equations() const noexcept {
    return equations_;
  }
  struct Facet {
    LatticeVector normal; ///< primitive, inside the span, >= 0 on the cone
    RayIndexSet rays;     ///< generators lying on the facet
  };
  [[nodiscard]] const std::vector<Facet> &facets() const noexcept { return facets_; }

  [[nodiscard]] bool contains(const LatticeVector &v) const;
  [[nodiscard]] bool contains(const RationalVector &v) const;
  /// v lies in the relative interior.
  [[nodiscard]] bool contains_in_relative_interior(const LatticeVector &v) const;

  /// No line through the origin inside the cone.
  [[nodiscard]] bool is_pointed() const;
  /// Generator i is an extremal ray not duplicated by another generator.
  [[nodiscard]] bool is_extremal(std::size_t i) const;
  [[nodiscard]] bool is_simplicial() const { return rays_.size() == dim_; }

  /// Generator subsets of every face (including the cone itself and the
  /// zero face, which is the empty set). Requires a pointed cone.
  [[nodiscard]] std::set<RayIndexSet> faces() const;

  /// Index of the generated lattice in the saturated span of the rays.
  [[nodiscard]] Integer multiplicity() const;

private:
  std::size_t rank_ = 0;
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<LatticeVector> equations_;
  std::vector<Facet> facets_;
};

/// Finite rational polyhedral fan. Cones are stored as ray index sets; the
/// zero cone is the empty set.
class Fan {
public:
  Fan() = default;
  /// Raw constructor: stores exactly the given cones (deduplicated and
  /// sorted). Use `generated_by` to close under faces.
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RayIndexSet> cones);

  /// The fan consisting of the given cones together with all their faces.
  static Fan generated_by(std::size_t rank, std::vector<LatticeVector> rays,
                          const std::vector<RayIndexSet> &cones);
  /// Convenience: cones given by explicit generator vectors.
  static Fan from_cone_rays(std::size_t rank,
                            const std::vector<std::vector<LatticeVector>> &cones);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] const std::vector<LatticeVector> &rays() const noexcept { return rays_; }
  [[nodiscard]] const std::vector<RayIndexSet> &cones() const noexcept { return cones_; }
  [[nodiscard]] std::size_t num_cones() const noexcept { return cones_.size(); }
  [[nodiscard]] const Cone &cone(std::size_t i) const { return cone_objects_.at(i); }
  [[nodiscard]] std::optional<std::size_t> ray_index(const LatticeVector &v) const;
  [[nodiscard]] std::optional<std::size_t> cone_index(const RayIndexSet &s) const;
  [[nodiscard]] std::vector<LatticeVector> cone_rays(std::size_t i) const;

  /// Indices of cones not properly contained in another cone.
  [[nodiscard]] std::vector<std::size_t> maximal_cones() const;
  [[nodiscard]] std::size_t dim() const;
  /// Some cone contains v.
  [[nodiscard]] bool support_contains(const LatticeVector &v) const;
  [[nodiscard]] bool support_contains(const RationalVector &v) const;
  /// Cones (ray index sets) that contain v, in index order.
  [[nodiscard]] std::vector<std::size_t> cones_containing(const LatticeVector &v) const;

  /// Order-independent description: set of cones, each a sorted set of rays.
  [[nodiscard]] std::set<std::vector<LatticeVector>> canonical_cones() const;

private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<RayIndexSet> cones_;
  std::vector<Cone> cone_objects_;
  std::map<LatticeVector, std::size_t> ray_lookup_;
  std::map<RayIndexSet, std::size_t> cone_lookup_;
};

/// Same cones over the same rays, regardless of ordering.
bool same_fan(const Fan &a, const Fan &b);

/// Group of unimodular integer matrices. Finite groups are enumerated by
/// closure; a group whose closure exceeds the budget is marked infinite and
/// only its generators are available.
class MatrixGroup {
public:
  static constexpr std::size_t kDefaultClosureBudget = 20000;

  MatrixGroup() = default;
  MatrixGroup(std::size_t rank, std::vector<IntMatrix> generators,
              std::size_t closure_budget = kDefaultClosureBudget);
  static MatrixGroup trivial(std::size_t rank);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] const std::vector<IntMatrix> &generators() const noexcept {
    return generators_;
  }
  [[nodiscard]] bool is_finite() const noexcept { return finite_; }
  /// Enumerated elements, identity first. Throws InfiniteGroup.
  [[nodiscard]] const std::vector<IntMatrix> &elements() const;
  [[nodiscard]] std::size_t order() const { return elements().size(); }
  [[nodiscard]] bool contains(const IntMatrix &m) const;

  /// Group generated by the union of both generator sets.
  [[nodiscard]] MatrixGroup join(const MatrixGroup &other) const;

private:
  std::size_t rank_ = 0;
  std::vector<IntMatrix> generators_;
  std::vector<IntMatrix> elements_;
  bool finite_ = true;
};

// ---------------------------------------------------------------------------
// Predicates and constructions.

struct ValidationReport {
  std::vector<std::string> violations;
  [[nodiscard]] bool valid() const { return violations.empty(); }
};

/// Checks ray primitivity/distinctness, pointedness and irredundancy of each
/// cone, closure under faces, and that maximal cones pairwise meet in a
/// common face (via an exact separating-hyperplane program).
ValidationReport fan_validate(const Fan &f);

struct SmoothnessReport {
  bool smooth = true;
  std::optional<std::size_t> witness_cone; ///< first non-smooth cone
  Integer witness_index = 1;               ///< its multiplicity (0 if not simplicial)
};
SmoothnessReport is_smooth(const Fan &f);
bool is_simplicial(const Fan &f);

struct CompletenessReport {
  bool complete = false;
  bool pairing_certificate = false;  ///< facet pairing + connectivity
  bool probing_certificate = false;  ///< every probe vector covered
  std::optional<LatticeVector> uncovered_probe;
};
/// Throws NotFullDimensional when no cone has dim = rank; throws
/// std::logic_error if the two certificates disagree.
CompletenessReport is_complete(const Fan &f);

struct ProjectivityReport {
  bool projective = false;
  std::vector<std::size_t> maximal_cones;   ///< cone indices
  std::vector<RationalVector> support_function; ///< one functional per maximal cone
};
/// Searches for a piecewise-linear function, linear on maximal cones, that is
/// strictly concave across every interior wall. Throws NonConvexSupport.
ProjectivityReport is_projective(const Fan &f);
/// Independent exact check of a support-function witness.
bool verify_support_function(const Fan &f, const std::vector<std::size_t> &maximal_cones,
                             const std::vector<RationalVector> &functionals);

/// Support of the fan equals cone(all rays) (pseudo-manifold test).
bool has_convex_support(const Fan &f);

bool refines(const Fan &fine, const Fan &coarse);

struct StabilityReport {
  bool stable = true;
  std::optional<std::size_t> generator;    ///< offending generator
  std::optional<std::size_t> moved_cone;   ///< cone of the fan whose image is missing
};
StabilityReport is_stable(const Fan &f, const MatrixGroup &g);

Fan apply_matrix(const Fan &f, const IntMatrix &m);
/// Smallest g-stable fan containing f. Throws OverlapError.
Fan saturate(const Fan &f, const MatrixGroup &g);
/// Star subdivision at a primitive vector of the support. Throws
/// RayNotInSupport.
Fan star_subdivide(const Fan &f, const LatticeVector &v);

/// Pure-dimensional subfan `sub` (contained in cone c) covers c.
bool covers_cone(const Fan &sub, const Cone &c);

} // namespace chamber
