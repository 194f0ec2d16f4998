#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chamber {

using Integer = mpz_class;
using Rational = mpq_class;

/// Point of a free abelian group Z^n with arbitrary-precision coordinates.
class LatticeVector {
public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank, 0) {}
  explicit LatticeVector(std::vector<Integer> coords)
      : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> coords);

  [[nodiscard]] std::size_t rank() const noexcept { return coords_.size(); }
  [[nodiscard]] const Integer &operator[](std::size_t i) const {
    return coords_[i];
  }
  Integer &operator[](std::size_t i) { return coords_[i]; }
  [[nodiscard]] const std::vector<Integer> &coords() const noexcept {
    return coords_;
  }
  [[nodiscard]] bool is_zero() const;

  LatticeVector &operator+=(const LatticeVector &o);
  LatticeVector &operator-=(const LatticeVector &o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector &b) {
    return a += b;
  }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector &b) {
    return a -= b;
  }
  friend LatticeVector operator-(LatticeVector a);
  friend LatticeVector operator*(const Integer &s, LatticeVector a);

  friend bool operator==(const LatticeVector &a, const LatticeVector &b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const LatticeVector &a, const LatticeVector &b) {
    return !(a == b);
  }
  /// Lexicographic order on coordinates (shorter vectors first).
  friend bool operator<(const LatticeVector &a, const LatticeVector &b);

  [[nodiscard]] std::string to_string() const;

private:
  std::vector<Integer> coords_;
};

std::ostream &operator<<(std::ostream &os, const LatticeVector &v);

/// Point of Q^n; coordinates are kept canonical (reduced, positive
/// denominators) by mpq.
class RationalVector {
public:
  RationalVector() = default;
  explicit RationalVector(std::size_t rank) : coords_(rank, 0) {}
  explicit RationalVector(std::vector<Rational> coords);
  explicit RationalVector(const LatticeVector &v);

  [[nodiscard]] std::size_t rank() const noexcept { return coords_.size(); }
  [[nodiscard]] const Rational &operator[](std::size_t i) const {
    return coords_[i];
  }
  [[nodiscard]] const std::vector<Rational> &coords() const noexcept {
    return coords_;
  }
  [[nodiscard]] bool is_integral() const;
  /// Common denominator of all coordinates.
  [[nodiscard]] Integer denominator() const;
  /// The integer vector `denominator() * (*this)`.
  [[nodiscard]] LatticeVector clear_denominators() const;

  friend bool operator==(const RationalVector &a, const RationalVector &b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator<(const RationalVector &a, const RationalVector &b);

  [[nodiscard]] std::string to_string() const;

private:
  std::vector<Rational> coords_;
};

std::ostream &operator<<(std::ostream &os, const RationalVector &v);

/// Dense row-major integer matrix.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of rank `rank`).
  static IntMatrix from_columns(std::span<const LatticeVector> cols,
                                std::size_t rank);
  static IntMatrix from_rows(std::span<const LatticeVector> rows,
                             std::size_t rank);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] const Integer &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  Integer &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  [[nodiscard]] LatticeVector row(std::size_t r) const;
  [[nodiscard]] LatticeVector column(std::size_t c) const;
  [[nodiscard]] IntMatrix transpose() const;
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend LatticeVector operator*(const IntMatrix &a, const LatticeVector &v);
  friend IntMatrix operator-(const IntMatrix &a, const IntMatrix &b);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const IntMatrix &a, const IntMatrix &b);

  [[nodiscard]] std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

Integer dot(const LatticeVector &a, const LatticeVector &b);
Rational dot(const RationalVector &a, const LatticeVector &b);
Rational dot(const RationalVector &a, const RationalVector &b);

Integer gcd_of(const LatticeVector &v);

/// v / gcd(v). Throws ZeroVector for v = 0.
LatticeVector primitive(const LatticeVector &v);

/// Bareiss fraction-free determinant of a square matrix.
Integer determinant(const IntMatrix &m);
bool is_unimodular(const IntMatrix &m);

struct SmithForm {
  IntMatrix left;     ///< U, unimodular
  IntMatrix diagonal; ///< D = U * m * V
  IntMatrix right;    ///< V, unimodular
  /// Nonzero invariant factors d_1 | d_2 | ...
  [[nodiscard]] std::vector<Integer> invariant_factors() const;
};

/// U * m * V = D with D diagonal, d_1 | d_2 | ..., all d_i >= 0.
SmithForm smith_normal_form(const IntMatrix &m);

/// Index of the subgroup generated by `generators` in Z^rank; nullopt means
/// the generators do not span Q^rank (infinite index).
std::optional<Integer> sublattice_index(std::span<const LatticeVector> generators,
                                        std::size_t rank);

/// Index of the subgroup generated by `generators` inside the saturation of
/// its own rational span, i.e. the product of nonzero invariant factors.
Integer saturated_span_index(std::span<const LatticeVector> generators,
                             std::size_t rank);

/// Rank over Q of a set of vectors.
std::size_t rank_of(std::span<const LatticeVector> vectors, std::size_t rank);

/// Primitive integer basis of { x : <x, v> = 0 for all v }, in a canonical
/// (reduced row echelon derived) order.
std::vector<LatticeVector> orthogonal_complement(std::span<const LatticeVector> vectors,
                                                 std::size_t rank);

/// Solves sum_i c_i * basis[i] = target over Q when basis is linearly
/// independent and target lies in its span; nullopt otherwise.
std::optional<std::vector<Rational>>
coordinates_in(std::span<const LatticeVector> basis, const LatticeVector &target);

/// Any rational solution of sum_i c_i * vectors[i] = target (vectors may be
/// dependent); nullopt if target is outside the span.
std::optional<std::vector<Rational>>
solve_combination(std::span<const LatticeVector> vectors,
                  const RationalVector &target);

/// Subgroup of Z^rank generated by `generators`: Z-basis and index.
struct LatticeDescription {
  std::size_t rank = 0;
  std::vector<LatticeVector> basis;
  std::optional<Integer> index; ///< nullopt = infinite
  [[nodiscard]] bool contains(const LatticeVector &v) const;

  IntMatrix generator_matrix;  ///< columns = original generators
  SmithForm smith;
};

LatticeDescription describe_subgroup(std::span<const LatticeVector> generators,
                                     std::size_t rank);

/// Integer coefficients c with sum c_i * generators[i] = v, if any.
std::optional<std::vector<Integer>>
integer_combination(const LatticeDescription &lattice, const LatticeVector &v);

} // namespace chamber
