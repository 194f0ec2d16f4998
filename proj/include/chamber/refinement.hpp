#pragma once

#include "chamber/errors.hpp"
#include "chamber/polyhedral.hpp"
#include "chamber/root_data.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace chamber {

/// Non-smoothness of a fan: for every non-smooth maximal cone the pair
/// (generators minus dimension, multiplicity), sorted in descending order.
/// Compared lexicographically; the empty measure means smooth.
using SmoothnessMeasure = std::vector<std::pair<std::size_t, Integer>>;

SmoothnessMeasure smoothness_measure(const Fan &f);

struct RefinementStep {
  std::vector<LatticeVector> rays; ///< one group orbit of new rays, in insertion order
  SmoothnessMeasure before;
  SmoothnessMeasure after;
};

struct RefinementTrace {
  std::vector<RefinementStep> steps;
  std::size_t iterations = 0;
  std::size_t budget = 0;
};

class BudgetExceeded : public Error {
public:
  BudgetExceeded(const std::string &what, RefinementTrace trace)
      : Error("BudgetExceeded", what), trace_(std::move(trace)) {}
  [[nodiscard]] const RefinementTrace &trace() const noexcept { return trace_; }

private:
  RefinementTrace trace_;
};

constexpr std::size_t kDefaultRefinementBudget = 1000;

/// Smooth g-stable refinement by orbits of star subdivisions. Each step
/// picks the orbit of minimal non-smooth cones with the largest
/// (excess, multiplicity), ties broken by the lexicographically smallest
/// sorted generator list, and subdivides every member at the image of one
/// canonical point fixed by the stabilizer of the representative.
///
/// Throws NotStable, InfiniteGroup, BudgetExceeded, EquivarianceViolation.
std::pair<Fan, RefinementTrace>
equivariant_smooth_refine(const Fan &f, const MatrixGroup &g,
                          std::size_t budget = kDefaultRefinementBudget);

/// Subfan of cones inside the dominant chamber. Throws NotCovering.
Fan intersect_with_chamber(const Fan &f, const RootDatum &rd);

struct GoodFanResult {
  Fan sigma;           ///< subdivision of the dominant chamber
  Fan saturated;       ///< its W-saturation
  RefinementTrace trace;
};

/// Gamma-stable subdivision of the dominant chamber whose W-saturation is
/// smooth and projective. `g_extra` must consist of diagram automorphisms
/// (std::invalid_argument otherwise).
GoodFanResult good_fan(const RootDatum &rd, const MatrixGroup &g_extra,
                       std::size_t budget = kDefaultRefinementBudget);

} // namespace chamber
