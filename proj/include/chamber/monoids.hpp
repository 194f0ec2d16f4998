#pragma once

#include "chamber/lattice.hpp"
#include "chamber/polyhedral.hpp"

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace chamber {

/// Submonoid of Z^rank generated by finitely many vectors. Zero and
/// duplicate generators are dropped; the rest are kept in lexicographic order.
class AffineMonoid {
public:
  AffineMonoid(std::size_t rank, std::vector<LatticeVector> generators);

  [[nodiscard]] std::size_t rank() const noexcept { return rank_; }
  [[nodiscard]] const std::vector<LatticeVector> &generators() const noexcept {
    return generators_;
  }
  /// cone(Q), built on first use; for Q = {0} a cone without generators.
  [[nodiscard]] const Cone &cone() const;

private:
  std::size_t rank_;
  std::vector<LatticeVector> generators_;
  struct LazyCone {
    std::once_flag once;
    std::optional<Cone> cone;
  };
  std::shared_ptr<LazyCone> cone_ = std::make_shared<LazyCone>();
};

struct MembershipResult {
  bool member = false;
  std::vector<Integer> coefficients; ///< nonnegative, aligned with generators()
  /// Largest coefficient the search allowed for a generator outside the
  /// lineality space of cone(Q).
  Integer coefficient_bound = 0;
};

/// Exact decision of a in Q by bounded search: a grading functional that
/// vanishes on the lineality space and is positive on the other generators
/// bounds their coefficients; the rest must lie in the group generated by
/// the lineality generators.
MembershipResult monoid_membership(const AffineMonoid &q, const LatticeVector &a);

LatticeDescription group_generated(const AffineMonoid &q);

struct MultipleCertificate {
  Integer multiple;                  ///< n >= 1 with n * a in Q (not necessarily least)
  std::vector<Integer> coefficients; ///< nonnegative, aligned with generators()
};

/// Exact rational decomposition of a over the generators, scaled to clear
/// denominators. nullopt iff a lies outside cone(Q). Does not build the
/// H-description of the cone.
std::optional<MultipleCertificate> multiple_in_monoid(const AffineMonoid &q,
                                                      const LatticeVector &a);

/// a lies in cone(Q) and in Z^rank.
bool in_saturation(const AffineMonoid &q, const LatticeVector &a);

struct SaturationCertificate {
  LatticeVector element;
  Integer multiple;                  ///< least n >= 1 with n * element in Q
  std::vector<Integer> coefficients; ///< witness for n * element
};

struct SaturationResult {
  bool pointed = true;
  /// Hilbert basis of the saturation when pointed; otherwise a (non-minimal)
  /// monoid generating set of cone(Q) cap Z^rank.
  std::vector<LatticeVector> saturated_generators;
  std::vector<LatticeVector> added; ///< generators of the saturation outside Q
  std::vector<SaturationCertificate> certificates; ///< one per added element
  std::vector<LatticeVector> cone_rays; ///< primitive extremal rays of cone(Q) when pointed
  LatticeDescription group;
};

SaturationResult saturate_monoid(const AffineMonoid &q);

/// Minimal generating set of c cap Z^rank, sorted. Throws NotPointed.
std::vector<LatticeVector> hilbert_basis(const Cone &c);

struct FiberChecks {
  bool generates_lattice = false;
  bool saturated = false;
};

FiberChecks fiber_checks(const AffineMonoid &q);

} // namespace chamber
