#include "chamber/root_data.hpp"

#include "chamber/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace chamber {

std::string to_string(LatticeForm form) {
  return form == LatticeForm::Adjoint ? "adjoint" : "sc";
}

IntMatrix cartan_preset(const std::string &name) {
  if (name == "A1") return IntMatrix{{2}};
  if (name == "A2") return IntMatrix{{2, -1}, {-1, 2}};
  if (name == "A3") return IntMatrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  if (name == "B2") return IntMatrix{{2, -1}, {-2, 2}};
  if (name == "C2") return IntMatrix{{2, -2}, {-1, 2}};
  if (name == "G2") return IntMatrix{{2, -3}, {-1, 2}};
  throw std::invalid_argument("unknown root system preset: " + name);
}

void validate_finite_type(const IntMatrix &a) {
  const std::size_t n = a.rows();
  if (n == 0 || a.cols() != n) throw NotFiniteType("Cartan matrix must be square and nonempty");
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) != 2) throw NotFiniteType("diagonal entries must be 2");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a(i, j) > 0) throw NotFiniteType("off-diagonal entries must be <= 0");
      if ((a(i, j) == 0) != (a(j, i) == 0))
        throw NotFiniteType("a_ij = 0 must imply a_ji = 0");
    }
  }
  // d_i a_ij = d_j a_ji, propagated along the Dynkin graph
  std::vector<Rational> d(n, 0);
  for (std::size_t start = 0; start < n; ++start) {
    if (d[start] != 0) continue;
    d[start] = 1;
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || a(i, j) == 0) continue;
        const Rational dj = d[i] * Rational(a(i, j)) / Rational(a(j, i));
        if (d[j] == 0) {
          d[j] = dj;
          queue.push_back(j);
        } else if (d[j] != dj) {
          throw NotFiniteType("Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  Integer scale = 1;
  for (const auto &x : d) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = d[i] * Rational(scale) * Rational(a(i, j));
      b(i, j) = v.get_num();
    }
  for (std::size_t k = 1; k <= n; ++k) {
    IntMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = b(i, j);
    if (determinant(minor) <= 0)
      throw NotFiniteType("symmetrized Cartan matrix is not positive definite");
  }
}

RootDatum::RootDatum(IntMatrix cartan, LatticeForm form)
    : cartan_(std::move(cartan)), form_(form) {
  validate_finite_type(cartan_);
  const std::size_t n = rank();
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n);
    e[i] = 1;
    if (form_ == LatticeForm::Adjoint) {
      roots_.push_back(e);
      coroots_.push_back(cartan_.row(i));
    } else {
      roots_.push_back(cartan_.column(i));
      coroots_.push_back(e);
    }
  }
}

IntMatrix RootDatum::simple_reflection(std::size_t i) const {
  const std::size_t n = rank();
  IntMatrix s = IntMatrix::identity(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) s(r, c) -= coroots_[i][r] * roots_[i][c];
  return s;
}

RootDatum build_root_datum(const IntMatrix &cartan, LatticeForm form) {
  return RootDatum(cartan, form);
}

MatrixGroup weyl_group(const RootDatum &rd) {
  std::vector<IntMatrix> gens;
  for (std::size_t i = 0; i < rd.rank(); ++i) gens.push_back(rd.simple_reflection(i));
  MatrixGroup w(rd.rank(), std::move(gens));
  if (!w.is_finite()) throw ClosureBudgetExceeded("Weyl group closure exceeded its budget");
  return w;
}

MatrixGroup diagram_automorphisms(const RootDatum &rd) {
  const std::size_t n = rd.rank();
  const IntMatrix &a = rd.cartan();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IntMatrix> gens;
  while (std::next_permutation(perm.begin(), perm.end())) {
    bool preserves = true;
    for (std::size_t i = 0; i < n && preserves; ++i)
      for (std::size_t j = 0; j < n && preserves; ++j)
        preserves = a(perm[i], perm[j]) == a(i, j);
    if (!preserves) continue;
    IntMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i) p(perm[i], i) = 1;
    gens.push_back(std::move(p));
  }
  return gens.empty() ? MatrixGroup::trivial(n) : MatrixGroup(n, std::move(gens));
}

Cone dominant_chamber(const RootDatum &rd) {
  // generator j is dual to the simple roots: alpha_k(c) = delta_jk
  const std::size_t n = rd.rank();
  const IntMatrix roots = IntMatrix::from_rows(rd.simple_roots(), n);
  std::vector<LatticeVector> columns;
  for (std::size_t i = 0; i < n; ++i) columns.push_back(roots.column(i));
  std::vector<LatticeVector> rays;
  for (std::size_t j = 0; j < n; ++j) {
    LatticeVector e(n);
    e[j] = 1;
    const auto c = coordinates_in(columns, e);
    rays.push_back(primitive(RationalVector(*c).clear_denominators()));
  }
  return Cone(std::move(rays), n);
}

Fan chamber_fan(const RootDatum &rd) {
  const Cone c = dominant_chamber(rd);
  return Fan::from_cone_rays(rd.rank(), {c.rays()});
}

Fan weyl_fan(const RootDatum &rd) { return saturate(chamber_fan(rd), weyl_group(rd)); }

bool StrataPoset::in_closure_of(std::size_t a, std::size_t b) const {
  const auto &big = strata.at(a).nodes;
  const auto &small = strata.at(b).nodes;
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<std::size_t> StrataPoset::divisors() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < strata.size(); ++i)
    if (strata[i].codimension == 1) out.push_back(i);
  return out;
}

StrataPoset boundary_strata(const RootDatum &rd) {
  if (rd.form() != LatticeForm::Adjoint)
    throw NotAdjoint("boundary strata are defined for the adjoint form");
  const std::size_t n = rd.rank();
  StrataPoset poset;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Stratum s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.nodes.push_back(i);
    s.face = s.nodes;
    s.codimension = s.nodes.size();
    poset.strata.push_back(std::move(s));
  }
  std::sort(poset.strata.begin(), poset.strata.end(), [](const Stratum &a, const Stratum &b) {
    return std::tie(a.codimension, a.nodes) < std::tie(b.codimension, b.nodes);
  });
  return poset;
}

} // namespace chamber
