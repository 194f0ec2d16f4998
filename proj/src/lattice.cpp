#include "chamber/lattice.hpp"

#include "chamber/errors.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <utility>

namespace chamber {

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Integer &c) { return c == 0; });
}

LatticeVector &LatticeVector::operator+=(const LatticeVector &o) {
  if (o.rank() != rank()) throw DimensionMismatch("vector addition");
  for (std::size_t i = 0; i < rank(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LatticeVector &LatticeVector::operator-=(const LatticeVector &o) {
  if (o.rank() != rank()) throw DimensionMismatch("vector subtraction");
  for (std::size_t i = 0; i < rank(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LatticeVector operator-(LatticeVector a) {
  for (auto &c : a.coords_) c = -c;
  return a;
}

LatticeVector operator*(const Integer &s, LatticeVector a) {
  for (auto &c : a.coords_) c *= s;
  return a;
}

bool operator<(const LatticeVector &a, const LatticeVector &b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a.coords_[i] != b.coords_[i]) return a.coords_[i] < b.coords_[i];
  }
  return false;
}

std::string LatticeVector::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const LatticeVector &v) {
  os << '(';
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  return os << ')';
}

RationalVector::RationalVector(std::vector<Rational> coords)
    : coords_(std::move(coords)) {
  for (auto &c : coords_) c.canonicalize();
}

RationalVector::RationalVector(const LatticeVector &v) {
  coords_.reserve(v.rank());
  for (const auto &c : v.coords()) coords_.emplace_back(c);
}

bool RationalVector::is_integral() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](const Rational &c) { return c.get_den() == 1; });
}

Integer RationalVector::denominator() const {
  Integer d = 1;
  for (const auto &c : coords_) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), c.get_den_mpz_t());
  return d;
}

LatticeVector RationalVector::clear_denominators() const {
  const Integer d = denominator();
  std::vector<Integer> out;
  out.reserve(rank());
  for (const auto &c : coords_) out.emplace_back(c.get_num() * (d / c.get_den()));
  return LatticeVector(std::move(out));
}

bool operator<(const RationalVector &a, const RationalVector &b) {
  if (a.rank() != b.rank()) return a.rank() < b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (a.coords_[i] != b.coords_[i]) return a.coords_[i] < b.coords_[i];
  }
  return false;
}

std::string RationalVector::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream &operator<<(std::ostream &os, const RationalVector &v) {
  os << '(';
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) os << ',';
    os << v[i].get_str();
  }
  return os << ')';
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto &r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::span<const LatticeVector> cols,
                                  std::size_t rank) {
  IntMatrix m(rank, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].rank() != rank) throw DimensionMismatch("column rank");
    for (std::size_t r = 0; r < rank; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const LatticeVector> rows,
                               std::size_t rank) {
  IntMatrix m(rows.size(), rank);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].rank() != rank) throw DimensionMismatch("row rank");
    for (std::size_t c = 0; c < rank; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeVector IntMatrix::row(std::size_t r) const {
  std::vector<Integer> out(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                           data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  return LatticeVector(std::move(out));
}

LatticeVector IntMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
  IntMatrix p(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer &aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) p(i, j) += aik * b(k, j);
    }
  return p;
}

LatticeVector operator*(const IntMatrix &a, const LatticeVector &v) {
  if (a.cols_ != v.rank()) throw DimensionMismatch("matrix-vector product");
  LatticeVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

IntMatrix operator-(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw DimensionMismatch("matrix difference");
  IntMatrix d = a;
  for (std::size_t i = 0; i < d.data_.size(); ++i) d.data_[i] -= b.data_[i];
  return d;
}

bool operator<(const IntMatrix &a, const IntMatrix &b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t i = 0; i < a.data_.size(); ++i)
    if (a.data_[i] != b.data_[i]) return a.data_[i] < b.data_[i];
  return false;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ',';
    os << row(r);
  }
  os << ']';
  return os.str();
}

Integer dot(const LatticeVector &a, const LatticeVector &b) {
  if (a.rank() != b.rank()) throw DimensionMismatch("dot product");
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector &a, const LatticeVector &b) {
  if (a.rank() != b.rank()) throw DimensionMismatch("dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector &a, const RationalVector &b) {
  if (a.rank() != b.rank()) throw DimensionMismatch("dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

Integer gcd_of(const LatticeVector &v) {
  Integer g = 0;
  for (const auto &c : v.coords()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

LatticeVector primitive(const LatticeVector &v) {
  const Integer g = gcd_of(v);
  if (g == 0) throw ZeroVector("primitive generator of the zero vector");
  std::vector<Integer> out;
  out.reserve(v.rank());
  for (const auto &c : v.coords()) out.emplace_back(c / g);
  return LatticeVector(std::move(out));
}

Integer determinant(const IntMatrix &m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix &m) {
  if (m.rows() != m.cols()) return false;
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  const std::size_t k = std::min(diagonal.rows(), diagonal.cols());
  for (std::size_t i = 0; i < k; ++i)
    if (diagonal(i, i) != 0) out.push_back(diagonal(i, i));
  return out;
}

namespace {

void swap_rows(IntMatrix &a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMatrix &a, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

// row_i += f * row_j
void add_row(IntMatrix &a, std::size_t i, std::size_t j, const Integer &f) {
  for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += f * a(j, c);
}

// col_i += f * col_j
void add_col(IntMatrix &a, std::size_t i, std::size_t j, const Integer &f) {
  for (std::size_t r = 0; r < a.rows(); ++r) a(r, i) += f * a(r, j);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t limit = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < limit; ++t) {
    while (true) {
      // pivot on the entry of least absolute value
      std::size_t pr = t, pc = t;
      bool found = false;
      for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a(i, j) == 0) continue;
          if (!found || abs(a(i, j)) < abs(a(pr, pc))) {
            pr = i;
            pc = j;
            found = true;
          }
        }
      if (!found) return {std::move(u), std::move(a), std::move(v)};
      swap_rows(a, t, pr);
      swap_rows(u, t, pr);
      swap_cols(a, t, pc);
      swap_cols(v, t, pc);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = a(i, t) / a(t, t);
        add_row(a, i, t, -q);
        add_row(u, i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = a(t, j) / a(t, t);
        add_col(a, j, t, -q);
        add_col(v, j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility d_t | remaining block
      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (a(i, j) % a(t, t) != 0) {
            add_row(a, t, i, 1);
            add_row(u, t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < a.cols(); ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < u.cols(); ++c) u(t, c) = -u(t, c);
    }
  }
  return {std::move(u), std::move(a), std::move(v)};
}

std::optional<Integer> sublattice_index(std::span<const LatticeVector> generators,
                                        std::size_t rank) {
  if (rank == 0) return Integer(1);
  const SmithForm s = smith_normal_form(IntMatrix::from_columns(generators, rank));
  const auto factors = s.invariant_factors();
  if (factors.size() < rank) return std::nullopt;
  Integer idx = 1;
  for (const auto &d : factors) idx *= d;
  return idx;
}

Integer saturated_span_index(std::span<const LatticeVector> generators,
                             std::size_t rank) {
  if (generators.empty()) return 1;
  const SmithForm s = smith_normal_form(IntMatrix::from_columns(generators, rank));
  Integer idx = 1;
  for (const auto &d : s.invariant_factors()) idx *= d;
  return idx;
}

namespace {

using RationalRows = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form; returns pivot columns. Only the first
// `ncols` columns are used for pivoting.
std::vector<std::size_t> rref(RationalRows &rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    const Rational inv = 1 / rows[r][c];
    for (auto &x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RationalRows as_rows(std::span<const LatticeVector> vectors, std::size_t rank) {
  RationalRows rows;
  rows.reserve(vectors.size());
  for (const auto &v : vectors) {
    if (v.rank() != rank) throw DimensionMismatch("vector rank");
    std::vector<Rational> row;
    row.reserve(rank);
    for (const auto &c : v.coords()) row.emplace_back(c);
    rows.push_back(std::move(row));
  }
  return rows;
}

// Columns are `vectors`, augmented by `target`.
RationalRows augmented_columns(std::span<const LatticeVector> vectors,
                               const RationalVector &target) {
  const std::size_t rank = target.rank();
  RationalRows rows(rank, std::vector<Rational>(vectors.size() + 1));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    if (vectors[c].rank() != rank) throw DimensionMismatch("vector rank");
    for (std::size_t r = 0; r < rank; ++r) rows[r][c] = vectors[c][r];
  }
  for (std::size_t r = 0; r < rank; ++r) rows[r][vectors.size()] = target[r];
  return rows;
}

} // namespace

std::size_t rank_of(std::span<const LatticeVector> vectors, std::size_t rank) {
  auto rows = as_rows(vectors, rank);
  return rref(rows, rank).size();
}

std::vector<LatticeVector> orthogonal_complement(std::span<const LatticeVector> vectors,
                                                 std::size_t rank) {
  auto rows = as_rows(vectors, rank);
  const auto pivots = rref(rows, rank);
  std::vector<bool> is_pivot(rank, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<LatticeVector> basis;
  for (std::size_t f = 0; f < rank; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(rank, 0);
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -rows[i][f];
    basis.push_back(primitive(RationalVector(std::move(x)).clear_denominators()));
  }
  return basis;
}

std::optional<std::vector<Rational>>
solve_combination(std::span<const LatticeVector> vectors, const RationalVector &target) {
  auto rows = augmented_columns(vectors, target);
  const std::size_t n = vectors.size();
  const auto pivots = rref(rows, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  std::vector<Rational> sol(n, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) sol[pivots[i]] = rows[i][n];
  return sol;
}

std::optional<std::vector<Rational>>
coordinates_in(std::span<const LatticeVector> basis, const LatticeVector &target) {
  if (rank_of(basis, target.rank()) != basis.size()) return std::nullopt;
  return solve_combination(basis, RationalVector(target));
}

namespace {

IntMatrix unimodular_inverse(const IntMatrix &m) {
  const std::size_t n = m.rows();
  RationalRows rows(n, std::vector<Rational>(2 * n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) rows[r][c] = m(r, c);
    rows[r][n + r] = 1;
  }
  rref(rows, n);
  IntMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = rows[r][n + c].get_num();
  return inv;
}

} // namespace

LatticeDescription describe_subgroup(std::span<const LatticeVector> generators,
                                     std::size_t rank) {
  LatticeDescription out;
  out.rank = rank;
  out.generator_matrix = IntMatrix::from_columns(generators, rank);
  out.smith = smith_normal_form(out.generator_matrix);
  const auto factors = out.smith.invariant_factors();
  const IntMatrix u_inv = unimodular_inverse(out.smith.left);
  for (std::size_t i = 0; i < factors.size(); ++i)
    out.basis.push_back(factors[i] * u_inv.column(i));
  if (factors.size() == rank) {
    Integer idx = 1;
    for (const auto &d : factors) idx *= d;
    out.index = idx;
  }
  return out;
}

std::optional<std::vector<Integer>>
integer_combination(const LatticeDescription &lattice, const LatticeVector &v) {
  if (v.rank() != lattice.rank) throw DimensionMismatch("lattice membership");
  const LatticeVector uv = lattice.smith.left * v;
  const auto &d = lattice.smith.diagonal;
  const std::size_t ngen = lattice.generator_matrix.cols();
  LatticeVector y(ngen);
  for (std::size_t i = 0; i < lattice.rank; ++i) {
    const Integer dii = (i < ngen) ? d(i, i) : Integer(0);
    if (dii == 0) {
      if (uv[i] != 0) return std::nullopt;
      continue;
    }
    if (uv[i] % dii != 0) return std::nullopt;
    y[i] = uv[i] / dii;
  }
  const LatticeVector c = lattice.smith.right * y;
  return c.coords();
}

bool LatticeDescription::contains(const LatticeVector &v) const {
  return integer_combination(*this, v).has_value();
}

} // namespace chamber
