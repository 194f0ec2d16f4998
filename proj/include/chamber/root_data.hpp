#pragma once

#include "chamber/lattice.hpp"
#include "chamber/polyhedral.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace chamber {

enum class LatticeForm { Adjoint, SimplyConnected };

std::string to_string(LatticeForm form);

/// Semisimple root datum of adjoint or simply-connected type.
///
/// Cocharacter coordinates: fundamental coweights for the adjoint form,
/// simple coroots for the simply-connected form. Simple roots are stored as
/// integer functionals on those coordinates, so alpha_i(v) = dot(root_i, v).
/// Convention: cartan(i, j) = <alpha_j, alpha_i^vee>.
class RootDatum {
public:
  /// Throws NotFiniteType.
  RootDatum(IntMatrix cartan, LatticeForm form);

  [[nodiscard]] const IntMatrix &cartan() const noexcept { return cartan_; }
  [[nodiscard]] LatticeForm form() const noexcept { return form_; }
  [[nodiscard]] std::size_t rank() const noexcept { return cartan_.rows(); }
  [[nodiscard]] const std::vector<LatticeVector> &simple_roots() const noexcept {
    return roots_;
  }
  [[nodiscard]] const std::vector<LatticeVector> &simple_coroots() const noexcept {
    return coroots_;
  }
  /// Matrix of s_i(v) = v - alpha_i(v) alpha_i^vee.
  [[nodiscard]] IntMatrix simple_reflection(std::size_t i) const;

private:
  IntMatrix cartan_;
  LatticeForm form_;
  std::vector<LatticeVector> roots_;
  std::vector<LatticeVector> coroots_;
};

/// Cartan matrix of a named type: A1, A2, A3, B2, C2, G2. Throws
/// std::invalid_argument for other names.
IntMatrix cartan_preset(const std::string &name);

/// Throws NotFiniteType unless the matrix is a finite-type Cartan matrix
/// (symmetrizable with positive-definite symmetrization).
void validate_finite_type(const IntMatrix &cartan);

RootDatum build_root_datum(const IntMatrix &cartan, LatticeForm form);

/// Closure of the simple reflections. Throws ClosureBudgetExceeded.
MatrixGroup weyl_group(const RootDatum &rd);

/// Node permutations preserving the Cartan matrix, as permutation matrices.
MatrixGroup diagram_automorphisms(const RootDatum &rd);

/// Cone where every simple root is nonnegative, with primitive generators
/// ordered by node.
Cone dominant_chamber(const RootDatum &rd);

/// The dominant chamber and its faces as a fan.
Fan chamber_fan(const RootDatum &rd);

/// W-saturation of the dominant chamber.
Fan weyl_fan(const RootDatum &rd);

struct Stratum {
  std::vector<std::size_t> nodes; ///< subset S of the simple roots
  RayIndexSet face;               ///< generators of the dominant chamber spanning the face
  std::size_t codimension = 0;    ///< |S|
};

/// Strata indexed by subsets of the simple roots. The stratum of S is the
/// orbit attached to cone{omega_i : i in S}; S lies in the closure of T iff
/// S contains T, so the poset is the subset lattice under reverse inclusion.
struct StrataPoset {
  std::vector<Stratum> strata; ///< ordered by (codimension, nodes)
  /// Stratum a lies in the closure of stratum b.
  [[nodiscard]] bool in_closure_of(std::size_t a, std::size_t b) const;
  [[nodiscard]] std::vector<std::size_t> divisors() const;
};

/// Throws NotAdjoint.
StrataPoset boundary_strata(const RootDatum &rd);

} // namespace chamber
