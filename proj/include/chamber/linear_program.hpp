#pragma once

#include "chamber/lattice.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace chamber::lp {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::GreaterEqual;
  Rational rhs;
};

/// Feasibility problem over free rational variables, optionally with some
/// variables required to be nonnegative.
class System {
public:
  explicit System(std::size_t num_vars) : num_vars_(num_vars), nonneg_(num_vars, false) {}

  [[nodiscard]] std::size_t num_vars() const noexcept { return num_vars_; }
  [[nodiscard]] const std::vector<Constraint> &constraints() const noexcept {
    return constraints_;
  }
  [[nodiscard]] bool is_nonneg(std::size_t var) const { return nonneg_[var]; }

  void add(std::vector<Rational> coeffs, Relation rel, Rational rhs);
  void require_nonneg(std::size_t var);

  /// True iff `point` satisfies every constraint exactly.
  [[nodiscard]] bool satisfied_by(const std::vector<Rational> &point) const;

private:
  std::size_t num_vars_;
  std::vector<bool> nonneg_;
  std::vector<Constraint> constraints_;
};

enum class Method { Auto, Simplex, FourierMotzkin };

/// Exact feasibility: returns a point satisfying the system or nullopt.
/// `Auto` uses Fourier-Motzkin for small systems and simplex otherwise; the
/// returned point is always re-checked against the system.
std::optional<std::vector<Rational>> find_feasible_point(const System &system,
                                                         Method method = Method::Auto);

/// Upper bound on variable count for which `Auto` picks Fourier-Motzkin.
inline constexpr std::size_t kFourierMotzkinMaxVars = 4;

} // namespace chamber::lp
