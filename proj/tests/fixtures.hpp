#pragma once

#include "chamber/polyhedral.hpp"

#include <vector>

namespace chamber::fixtures {

inline Fan projective_line() {
  return Fan::from_cone_rays(1, {{LatticeVector{1}}, {LatticeVector{-1}}});
}

inline Fan projective_plane() {
  const LatticeVector a{1, 0}, b{0, 1}, c{-1, -1};
  return Fan::from_cone_rays(2, {{a, b}, {b, c}, {c, a}});
}

inline Fan p1_times_p1() {
  const LatticeVector e1{1, 0}, e2{0, 1}, f1{-1, 0}, f2{0, -1};
  return Fan::from_cone_rays(2, {{e1, e2}, {e2, f1}, {f1, f2}, {f2, e1}});
}

inline Fan single_cone(std::size_t rank, std::vector<LatticeVector> rays) {
  return Fan::from_cone_rays(rank, {std::move(rays)});
}

/// Complete fan over the boundary of a triangular prism whose square sides are
/// cut by cyclically twisted diagonals; the three wall inequalities sum to
/// 0 > 0, so no strictly convex support function exists.
inline Fan twisted_prism() {
  const LatticeVector w1{1, 0, -1}, w2{0, 1, -1}, w3{-1, -1, -1};
  const LatticeVector v1{1, 0, 1}, v2{0, 1, 1}, v3{-1, -1, 1};
  return Fan::from_cone_rays(3, {{v1, v2, v3},
                                 {w1, w2, w3},
                                 {v1, v2, w2},
                                 {v1, w2, w1},
                                 {v2, v3, w3},
                                 {v2, w3, w2},
                                 {v3, v1, w1},
                                 {v3, w1, w3}});
}

/// Same prism with a non-cyclic choice of diagonals (projective).
inline Fan untwisted_prism() {
  const LatticeVector w1{1, 0, -1}, w2{0, 1, -1}, w3{-1, -1, -1};
  const LatticeVector v1{1, 0, 1}, v2{0, 1, 1}, v3{-1, -1, 1};
  return Fan::from_cone_rays(3, {{v1, v2, v3},
                                 {w1, w2, w3},
                                 {v1, v2, w2},
                                 {v1, w2, w1},
                                 {v2, v3, w3},
                                 {v2, w3, w2},
                                 {v1, v3, w3},
                                 {v1, w3, w1}});
}

/// Fan over the faces of the cube [-1,1]^3 (complete, not simplicial).
inline Fan cube_fan() {
  std::vector<std::vector<LatticeVector>> cones;
  for (std::size_t axis = 0; axis < 3; ++axis)
    for (long side : {-1L, 1L}) {
      std::vector<LatticeVector> face;
      for (long a : {-1L, 1L})
        for (long b : {-1L, 1L}) {
          LatticeVector v(3);
          v[axis] = side;
          v[(axis + 1) % 3] = a;
          v[(axis + 2) % 3] = b;
          face.push_back(v);
        }
      cones.push_back(face);
    }
  return Fan::from_cone_rays(3, cones);
}

inline Fan standard_orthant(std::size_t rank) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < rank; ++i) {
    LatticeVector e(rank);
    e[i] = 1;
    rays.push_back(e);
  }
  return single_cone(rank, rays);
}

inline MatrixGroup negation_group(std::size_t rank) {
  IntMatrix m = IntMatrix::identity(rank);
  for (std::size_t i = 0; i < rank; ++i) m(i, i) = -1;
  return MatrixGroup(rank, {m});
}

} // namespace chamber::fixtures
