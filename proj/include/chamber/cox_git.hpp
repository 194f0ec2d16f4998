#pragma once

#include "chamber/lattice.hpp"
#include "chamber/polyhedral.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

namespace chamber {

/// Subset of the index set I, as sorted positions.
using SupportPattern = std::vector<std::size_t>;

/// Homogeneous-coordinate data of a fan. I is ordered by decreasing
/// lexicographic order of the ray generators.
struct RayData {
  std::size_t rank = 0;
  std::vector<LatticeVector> beta;       ///< beta[i] for i in I
  std::vector<std::size_t> fan_index;    ///< beta[i] == f.rays()[fan_index[i]]
  [[nodiscard]] std::size_t size() const { return beta.size(); }
};

RayData ray_data(const Fan &f);

/// Zero sets of points of the nondegenerate locus: every subset of the ray
/// set of some cone.
std::set<SupportPattern> nondegenerate_patterns(const Fan &f);
std::set<SupportPattern> nondegenerate_patterns(const Fan &f, const RayData &rd);

/// Torus weights on A^I: coordinate i has weight e_i, and the characters of
/// T contribute the lattice L = {(<m, beta_i>)_i}.
struct GitWeights {
  std::size_t size = 0;                 ///< |I|
  std::vector<LatticeVector> l_generators; ///< one per coordinate of the base lattice
  LatticeDescription l;
};

GitWeights git_weights(const RayData &rd);

struct SemistabilityVerdict {
  bool semistable = false;
  /// n with n * rho in L + N{e_i : i not in pattern}, witnessed by a
  /// nonnegative combination of `generators` (the L generators, their
  /// negatives and the allowed e_i, with zeros and duplicates dropped).
  std::optional<Integer> multiple;
  std::vector<LatticeVector> generators;
  std::vector<Integer> coefficients;
};

/// Points whose zero set is `pattern` are semistable for rho: some positive
/// multiple of rho lies in L + N{e_i : i not in pattern}.
SemistabilityVerdict semistability(const SupportPattern &pattern, const LatticeVector &rho,
                                   const GitWeights &w);
bool is_semistable(const SupportPattern &pattern, const LatticeVector &rho, const GitWeights &w);

struct PatternVerdict {
  SupportPattern pattern;
  bool nondegenerate = false;
  bool semistable = false;
  std::optional<Integer> multiple;
};

struct LinearizationResult {
  LatticeVector rho;
  long box = 0;                        ///< max-norm bound searched
  std::size_t candidates_tried = 0;
  std::vector<PatternVerdict> transcript; ///< all 2^|I| patterns, by bitmask
  [[nodiscard]] bool verified() const;
};

/// Least rho in the max-norm box (by norm, then lexicographically) whose
/// semistable patterns are exactly the nondegenerate ones. The default box
/// is 3|I|. Throws SearchExhausted.
LinearizationResult find_linearization(const Fan &f, std::optional<long> box = std::nullopt);

} // namespace chamber
