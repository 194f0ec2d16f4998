#include "doctest.h"

#include "chamber/linear_program.hpp"

#include <random>

using namespace chamber;
using lp::Method;
using lp::Relation;

TEST_CASE("feasible and infeasible toy systems") {
  lp::System feasible(2);
  feasible.add({1, 1}, Relation::GreaterEqual, 1);
  feasible.add({1, -1}, Relation::Equal, 0);
  for (auto m : {Method::Simplex, Method::FourierMotzkin}) {
    const auto x = lp::find_feasible_point(feasible, m);
    REQUIRE(x.has_value());
    CHECK(feasible.satisfied_by(*x));
  }

  lp::System infeasible(1);
  infeasible.add({1}, Relation::GreaterEqual, 1);
  infeasible.add({1}, Relation::LessEqual, 0);
  CHECK_FALSE(lp::find_feasible_point(infeasible, Method::Simplex));
  CHECK_FALSE(lp::find_feasible_point(infeasible, Method::FourierMotzkin));
}

TEST_CASE("nonnegativity is honoured") {
  lp::System sys(2);
  sys.require_nonneg(0);
  sys.require_nonneg(1);
  sys.add({1, 1}, Relation::LessEqual, -1);
  CHECK_FALSE(lp::find_feasible_point(sys, Method::Simplex));
  CHECK_FALSE(lp::find_feasible_point(sys, Method::FourierMotzkin));
}

TEST_CASE("zero-variable systems") {
  lp::System ok(0);
  ok.add({}, Relation::LessEqual, 0);
  CHECK(lp::find_feasible_point(ok, Method::FourierMotzkin));
  CHECK(lp::find_feasible_point(ok, Method::Simplex));
  lp::System bad(0);
  bad.add({}, Relation::GreaterEqual, 1);
  CHECK_FALSE(lp::find_feasible_point(bad, Method::FourierMotzkin));
  CHECK_FALSE(lp::find_feasible_point(bad, Method::Simplex));
}

TEST_CASE("simplex and Fourier-Motzkin agree on random small systems") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-3, 3), rhs(-4, 4), nvars(1, 4), nrows(1, 7),
      rel(0, 4);
  int feasible_count = 0;
  for (int trial = 0; trial < 400; ++trial) {
    lp::System sys(static_cast<std::size_t>(nvars(rng)));
    const int rows = nrows(rng);
    for (int r = 0; r < rows; ++r) {
      std::vector<Rational> c;
      for (std::size_t i = 0; i < sys.num_vars(); ++i) c.emplace_back(coef(rng));
      const int k = rel(rng);
      const Relation relation =
          k == 0 ? Relation::Equal : (k % 2 ? Relation::GreaterEqual : Relation::LessEqual);
      sys.add(std::move(c), relation, rhs(rng));
    }
    if (trial % 5 == 0) sys.require_nonneg(0);
    const auto a = lp::find_feasible_point(sys, Method::Simplex);
    const auto b = lp::find_feasible_point(sys, Method::FourierMotzkin);
    CHECK(a.has_value() == b.has_value());
    feasible_count += a.has_value();
  }
  CHECK(feasible_count > 50);
  CHECK(feasible_count < 390);
}
