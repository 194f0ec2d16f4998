#include "chamber/linear_program.hpp"

#include "chamber/errors.hpp"

#include <algorithm>
#include <map>

namespace chamber::lp {

void System::add(std::vector<Rational> coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != num_vars_) throw DimensionMismatch("constraint width");
  constraints_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void System::require_nonneg(std::size_t var) { nonneg_.at(var) = true; }

bool System::satisfied_by(const std::vector<Rational> &point) const {
  if (point.size() != num_vars_) return false;
  for (std::size_t i = 0; i < num_vars_; ++i)
    if (nonneg_[i] && point[i] < 0) return false;
  for (const auto &c : constraints_) {
    Rational lhs = 0;
    for (std::size_t i = 0; i < num_vars_; ++i) lhs += c.coeffs[i] * point[i];
    switch (c.relation) {
    case Relation::LessEqual:
      if (lhs > c.rhs) return false;
      break;
    case Relation::GreaterEqual:
      if (lhs < c.rhs) return false;
      break;
    case Relation::Equal:
      if (lhs != c.rhs) return false;
      break;
    }
  }
  return true;
}

namespace {

// Phase-one simplex with Bland's rule on a dense exact tableau.
std::optional<std::vector<Rational>> simplex_feasible(const System &sys) {
  const std::size_t n = sys.num_vars();
  // column layout: [structural columns][slack columns][artificial columns]
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t i = 0; i < n; ++i) {
    pos_col[i] = ncols++;
    if (!sys.is_nonneg(i)) neg_col[i] = ncols++;
  }
  const auto &cons = sys.constraints();
  const std::size_t m = cons.size();
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t r = 0; r < m; ++r)
    if (cons[r].relation != Relation::Equal) slack_col[r] = ncols++;
  const std::size_t first_artificial = ncols;
  ncols += m;

  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(ncols + 1, 0));
  for (std::size_t r = 0; r < m; ++r) {
    auto &row = t[r];
    for (std::size_t i = 0; i < n; ++i) {
      row[pos_col[i]] = cons[r].coeffs[i];
      if (neg_col[i] != SIZE_MAX) row[neg_col[i]] = -cons[r].coeffs[i];
    }
    if (cons[r].relation == Relation::LessEqual) row[slack_col[r]] = 1;
    if (cons[r].relation == Relation::GreaterEqual) row[slack_col[r]] = -1;
    row[ncols] = cons[r].rhs;
    if (row[ncols] < 0)
      for (auto &x : row) x = -x;
    row[first_artificial + r] = 1;
  }
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) basis[r] = first_artificial + r;

  // reduced costs of the phase-one objective sum(artificials)
  std::vector<Rational> cost(ncols + 1, 0);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= ncols; ++j)
      if (j < first_artificial || j == ncols) cost[j] -= t[r][j];

  while (true) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < ncols; ++j)
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    if (enter == SIZE_MAX) break;
    std::size_t leave = SIZE_MAX;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][ncols] / t[r][enter];
      if (leave == SIZE_MAX || ratio < best ||
          (ratio == best && basis[r] < basis[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == SIZE_MAX) break; // unbounded direction; cannot happen in phase one
    const Rational inv = 1 / t[leave][enter];
    for (auto &x : t[leave]) x *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      const Rational f = t[r][enter];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (t[leave][j] != 0) t[r][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j <= ncols; ++j)
        if (t[leave][j] != 0) cost[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  if (cost[ncols] != 0) return std::nullopt; // -objective; infeasible if nonzero

  std::vector<Rational> col_value(ncols, 0);
  for (std::size_t r = 0; r < m; ++r) col_value[basis[r]] = t[r][ncols];
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = col_value[pos_col[i]];
    if (neg_col[i] != SIZE_MAX) x[i] -= col_value[neg_col[i]];
  }
  return x;
}

struct Inequality { // coeffs . x >= rhs
  std::vector<Rational> coeffs;
  Rational rhs;
};

void normalize(Inequality &q, std::size_t nvars) {
  for (std::size_t i = 0; i < nvars; ++i) {
    if (q.coeffs[i] == 0) continue;
    const Rational s = abs(q.coeffs[i]);
    for (auto &c : q.coeffs) c /= s;
    q.rhs /= s;
    return;
  }
}

// Keeps, for each coefficient vector, only the tightest right-hand side.
std::vector<Inequality> prune(std::vector<Inequality> rows, std::size_t nvars) {
  std::map<std::vector<Rational>, Rational> tightest;
  for (auto &q : rows) {
    normalize(q, nvars);
    auto [it, inserted] = tightest.emplace(q.coeffs, q.rhs);
    if (!inserted && q.rhs > it->second) it->second = q.rhs;
  }
  std::vector<Inequality> out;
  out.reserve(tightest.size());
  for (auto &[c, r] : tightest) out.push_back({c, r});
  return out;
}

std::optional<std::vector<Rational>> fourier_motzkin_feasible(const System &sys) {
  const std::size_t n = sys.num_vars();
  std::vector<Inequality> rows;
  for (const auto &c : sys.constraints()) {
    switch (c.relation) {
    case Relation::GreaterEqual:
      rows.push_back({c.coeffs, c.rhs});
      break;
    case Relation::LessEqual: {
      Inequality q{c.coeffs, -c.rhs};
      for (auto &x : q.coeffs) x = -x;
      rows.push_back(std::move(q));
      break;
    }
    case Relation::Equal: {
      rows.push_back({c.coeffs, c.rhs});
      Inequality q{c.coeffs, -c.rhs};
      for (auto &x : q.coeffs) x = -x;
      rows.push_back(std::move(q));
      break;
    }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (sys.is_nonneg(i)) {
      Inequality q{std::vector<Rational>(n, 0), 0};
      q.coeffs[i] = 1;
      rows.push_back(std::move(q));
    }

  // stages[k] = system over variables 0..n-1-k before eliminating var n-1-k
  std::vector<std::vector<Inequality>> stages;
  rows = prune(std::move(rows), n);
  for (std::size_t k = n; k-- > 0;) {
    stages.push_back(rows);
    std::vector<Inequality> pos, neg, next;
    for (auto &q : rows) {
      if (q.coeffs[k] > 0)
        pos.push_back(q);
      else if (q.coeffs[k] < 0)
        neg.push_back(q);
      else
        next.push_back(q);
    }
    for (const auto &p : pos)
      for (const auto &q : neg) {
        // p: a x_k + ... >= b (a>0), q: -c x_k + ... >= d (c>0)
        const Rational a = p.coeffs[k], c = -q.coeffs[k];
        Inequality r{std::vector<Rational>(n, 0), c * p.rhs + a * q.rhs};
        for (std::size_t i = 0; i < n; ++i) r.coeffs[i] = c * p.coeffs[i] + a * q.coeffs[i];
        r.coeffs[k] = 0;
        next.push_back(std::move(r));
      }
    rows = prune(std::move(next), n);
  }
  for (const auto &q : rows)
    if (q.rhs > 0) return std::nullopt;

  std::vector<Rational> x(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto &stage = stages[n - 1 - k];
    std::optional<Rational> lo, hi;
    for (const auto &q : stage) {
      if (q.coeffs[k] == 0) continue;
      Rational rest = q.rhs;
      for (std::size_t i = 0; i < k; ++i) rest -= q.coeffs[i] * x[i];
      const Rational bound = rest / q.coeffs[k];
      if (q.coeffs[k] > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (lo)
      x[k] = *lo;
    else if (hi)
      x[k] = *hi;
  }
  return x;
}

} // namespace

std::optional<std::vector<Rational>> find_feasible_point(const System &system,
                                                         Method method) {
  if (method == Method::Auto)
    method = system.num_vars() <= kFourierMotzkinMaxVars &&
                     system.constraints().size() <= 64
                 ? Method::FourierMotzkin
                 : Method::Simplex;
  auto point = method == Method::Simplex ? simplex_feasible(system)
                                         : fourier_motzkin_feasible(system);
  if (point && !system.satisfied_by(*point))
    throw std::logic_error("linear program solver returned an infeasible point");
  return point;
}

} // namespace chamber::lp
