#pragma once

#include "chamber/polyhedral.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace chamber {

/// Fan in Z^n x Z>=0 describing a toric scheme over a discrete valuation
/// ring; the last coordinate is the height.
class DvrFan {
public:
  /// Throws InvalidFan when a ray has negative height or the fan is invalid.
  explicit DvrFan(Fan fan);

  [[nodiscard]] std::size_t base_rank() const noexcept { return fan_.rank() - 1; }
  [[nodiscard]] const Fan &fan() const noexcept { return fan_; }

private:
  Fan fan_;
};

/// The constant family: every cone s of `base` contributes s x {0} and
/// s x R>=0.
DvrFan pullback(const Fan &base);

/// Projection of the height-zero parts of all cones. Throws NotAFan.
Fan recession_fan(const DvrFan &d);

/// Vertices of the slice at height one, sorted; there is one per ray of
/// positive height.
std::vector<RationalVector> special_fiber_components(const DvrFan &d);

/// Every ray is vertical or at height zero.
bool is_constant_family(const DvrFan &d);

/// Unimodular integer matrix acting on the base lattice (and trivially on
/// the height).
class UnipotentAction {
public:
  /// Throws std::invalid_argument unless |det A| = 1.
  explicit UnipotentAction(IntMatrix a);

  [[nodiscard]] const IntMatrix &matrix() const noexcept { return a_; }
  [[nodiscard]] std::size_t rank() const noexcept { return a_.rows(); }
  /// (A - I)^2 = 0 and A != I.
  [[nodiscard]] bool is_nontrivial_unipotent() const;
  /// Primitive basis of ker(A - I).
  [[nodiscard]] std::vector<LatticeVector> fixed_axis() const;
  /// A extended by 1 on the height coordinate.
  [[nodiscard]] IntMatrix extended() const;
  [[nodiscard]] LatticeVector power_apply(const LatticeVector &v, std::size_t n) const;

private:
  IntMatrix a_;
};

/// Image of a base fan (rank n) or of a fan with a height coordinate
/// (rank n + 1). Throws DimensionMismatch.
Fan apply_action(const Fan &f, const UnipotentAction &u);
DvrFan apply_action(const DvrFan &d, const UnipotentAction &u);

struct EscapeWitness {
  LatticeVector ray;   ///< ray of the fan moved by A
  std::size_t power = 0;
  LatticeVector image; ///< A^power(ray), not a ray of the fan
};

/// Ray off the fixed axis together with the least n such that A^n(ray) is
/// not a ray; the smallest n wins, ties go to the earlier ray. Throws
/// NotUnipotent, NoRayOffAxis, BoundExceeded.
EscapeWitness orbit_escape_witness(const Fan &f, const UnipotentAction &u, std::size_t bound);

struct Refutation {
  bool stable = false;                  ///< A maps the fan to itself
  std::optional<std::size_t> moved_cone; ///< cone whose image is missing
  std::optional<EscapeWitness> escape;
  [[nodiscard]] bool refuted() const { return !stable || escape.has_value(); }
};

struct NoStableFanReport {
  std::vector<Refutation> refutations; ///< in candidate order
  std::size_t unrefuted = 0;           ///< candidates passing every check (a bug if nonzero)
};

/// Throws NotUnipotent.
NoStableFanReport no_stable_fan_report(const UnipotentAction &u, const std::vector<Fan> &candidates);

/// Primitive vectors of Z^2 with max-norm at most `bound`, sorted by angle
/// starting from the positive x-axis.
std::vector<LatticeVector> primitive_box_vectors(long bound);

/// Every complete fan in Z^2 whose rays are primitive vectors with max-norm
/// at most `bound`; ordered by the bitmask of chosen rays.
std::vector<Fan> complete_rank2_fans(long bound);

/// A^n(v) for n = 0..count-1.
std::vector<LatticeVector> orbit_table(const UnipotentAction &u, const LatticeVector &v,
                                       std::size_t count);

} // namespace chamber
