#include "doctest.h"

#include "chamber/errors.hpp"
#include "chamber/root_data.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

#include <set>

using namespace chamber;

namespace {

const std::vector<std::string> kPresets{"A1", "A2", "A3", "B2", "C2", "G2"};

} // namespace

TEST_CASE("named root datum examples") {
  const auto a1 = build_root_datum(cartan_preset("A1"), LatticeForm::Adjoint);
  CHECK(a1.rank() == 1);
  CHECK(a1.simple_coroots()[0] == LatticeVector{2});

  const auto a2 = build_root_datum(cartan_preset("A2"), LatticeForm::Adjoint);
  CHECK(a2.simple_coroots()[0] == LatticeVector{2, -1});
  CHECK(a2.simple_coroots()[1] == LatticeVector{-1, 2});

  const auto a2sc = build_root_datum(cartan_preset("A2"), LatticeForm::SimplyConnected);
  CHECK(a2sc.simple_coroots()[0] == LatticeVector{1, 0});
  CHECK(a2sc.simple_coroots()[1] == LatticeVector{0, 1});
}

TEST_CASE("pairings reproduce the Cartan matrix") {
  for (const auto &name : kPresets)
    for (auto form : {LatticeForm::Adjoint, LatticeForm::SimplyConnected}) {
      const auto rd = build_root_datum(cartan_preset(name), form);
      for (std::size_t i = 0; i < rd.rank(); ++i)
        for (std::size_t j = 0; j < rd.rank(); ++j)
          CHECK(dot(rd.simple_roots()[j], rd.simple_coroots()[i]) == rd.cartan()(i, j));
      for (std::size_t i = 0; i < rd.rank(); ++i) {
        const IntMatrix s = rd.simple_reflection(i);
        CHECK((s * s).is_identity());
        CHECK(s * rd.simple_coroots()[i] == -rd.simple_coroots()[i]);
      }
    }
}

TEST_CASE("finite type validation") {
  CHECK_THROWS_AS(build_root_datum(IntMatrix{{2, -2}, {-2, 2}}, LatticeForm::Adjoint),
                  NotFiniteType);
  CHECK_THROWS_AS(build_root_datum(IntMatrix{{2, -4}, {-1, 2}}, LatticeForm::Adjoint),
                  NotFiniteType);
  CHECK_THROWS_AS(build_root_datum(IntMatrix{{2, 1}, {1, 2}}, LatticeForm::Adjoint),
                  NotFiniteType);
  CHECK_THROWS_AS(build_root_datum(IntMatrix{{2, -1}, {0, 2}}, LatticeForm::Adjoint),
                  NotFiniteType);
  CHECK_THROWS_AS(
      build_root_datum(IntMatrix{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}, LatticeForm::Adjoint),
      NotFiniteType);
  // non-symmetrizable cycle
  CHECK_THROWS_AS(
      build_root_datum(IntMatrix{{2, -1, -2}, {-1, 2, -1}, {-1, -1, 2}}, LatticeForm::Adjoint),
      NotFiniteType);
  // A1 x A1 is fine
  CHECK_NOTHROW(build_root_datum(IntMatrix{{2, 0}, {0, 2}}, LatticeForm::Adjoint));
  CHECK_THROWS_AS(cartan_preset("E9"), std::invalid_argument);
}

TEST_CASE("Weyl group orders") {
  const std::map<std::string, std::size_t> classical{
      {"A1", 2}, {"A2", 6}, {"A3", 24}, {"B2", 8}, {"C2", 8}, {"G2", 12}};
  for (const auto &name : kPresets)
    for (auto form : {LatticeForm::Adjoint, LatticeForm::SimplyConnected}) {
      const auto rd = build_root_datum(cartan_preset(name), form);
      const auto w = weyl_group(rd);
      CHECK(w.order() == classical.at(name));
      CHECK(w.order() == oracles::orbit_order(rd.cartan()));
      CHECK(w.contains(IntMatrix::identity(rd.rank())));
    }
}

TEST_CASE("dominant chambers") {
  const auto a2 = dominant_chamber(build_root_datum(cartan_preset("A2"), LatticeForm::Adjoint));
  CHECK(a2.rays() == std::vector<LatticeVector>{{1, 0}, {0, 1}});
  CHECK(a2.multiplicity() == 1);

  const auto sc = dominant_chamber(
      build_root_datum(cartan_preset("A2"), LatticeForm::SimplyConnected));
  CHECK(sc.rays() == std::vector<LatticeVector>{{2, 1}, {1, 2}});
  CHECK(sc.multiplicity() == 3);

  const auto a1 = dominant_chamber(build_root_datum(cartan_preset("A1"), LatticeForm::Adjoint));
  CHECK(a1.rays() == std::vector<LatticeVector>{LatticeVector{1}});

  for (const auto &name : kPresets)
    for (auto form : {LatticeForm::Adjoint, LatticeForm::SimplyConnected}) {
      const auto rd = build_root_datum(cartan_preset(name), form);
      const auto c = dominant_chamber(rd);
      if (form == LatticeForm::Adjoint) CHECK(c.multiplicity() == 1);
      // every generator pairs to zero with all but one simple root
      for (std::size_t j = 0; j < rd.rank(); ++j)
        for (std::size_t k = 0; k < rd.rank(); ++k) {
          const Integer p = dot(rd.simple_roots()[k], c.rays()[j]);
          CHECK((k == j ? p > 0 : p == 0));
        }
    }
  const auto a3 = dominant_chamber(
      build_root_datum(cartan_preset("A3"), LatticeForm::SimplyConnected));
  CHECK(a3.multiplicity() == 8);
}

TEST_CASE("Weyl fans") {
  const auto a1 = weyl_fan(build_root_datum(cartan_preset("A1"), LatticeForm::Adjoint));
  CHECK(same_fan(a1, fixtures::projective_line()));

  const std::map<std::string, std::size_t> counts{{"A1", 2}, {"A2", 6}, {"B2", 8}, {"G2", 12}};
  for (const auto &[name, count] : counts)
    for (auto form : {LatticeForm::Adjoint, LatticeForm::SimplyConnected}) {
      const auto rd = build_root_datum(cartan_preset(name), form);
      const Fan f = weyl_fan(rd);
      CHECK(f.maximal_cones().size() == count);
      CHECK(fan_validate(f).valid());
      CHECK(is_complete(f).complete);
      CHECK(is_stable(f, weyl_group(rd)).stable);
      const auto proj = is_projective(f);
      CHECK(proj.projective);
      CHECK(verify_support_function(f, proj.maximal_cones, proj.support_function));
    }
}

TEST_CASE("diagram automorphisms") {
  const std::map<std::string, std::size_t> orders{
      {"A1", 1}, {"A2", 2}, {"A3", 2}, {"B2", 1}, {"C2", 1}, {"G2", 1}};
  for (const auto &[name, order] : orders)
    for (auto form : {LatticeForm::Adjoint, LatticeForm::SimplyConnected}) {
      const auto rd = build_root_datum(cartan_preset(name), form);
      const auto gamma = diagram_automorphisms(rd);
      CHECK(gamma.order() == order);
      CHECK(is_stable(chamber_fan(rd), gamma).stable);
      std::set<IntMatrix> reflections;
      for (std::size_t i = 0; i < rd.rank(); ++i) reflections.insert(rd.simple_reflection(i));
      for (const auto &g : gamma.elements()) {
        const IntMatrix inv = [&] {
          for (const auto &h : gamma.elements())
            if ((g * h).is_identity()) return h;
          return g;
        }();
        for (const auto &s : reflections) CHECK(reflections.count(g * s * inv) == 1);
      }
    }
}

TEST_CASE("boundary strata") {
  const std::map<std::string, std::size_t> sizes{{"A1", 2}, {"A2", 4}, {"A3", 8}};
  for (const auto &[name, size] : sizes) {
    const auto rd = build_root_datum(cartan_preset(name), LatticeForm::Adjoint);
    const auto poset = boundary_strata(rd);
    CHECK(poset.strata.size() == size);
    CHECK(poset.divisors().size() == rd.rank());
    // faces of the chamber correspond bijectively to strata
    std::set<RayIndexSet> faces;
    for (const auto &s : poset.strata) faces.insert(s.face);
    CHECK(faces == dominant_chamber(rd).faces());
    // closure order is reverse inclusion and the open stratum is the top
    for (std::size_t a = 0; a < poset.strata.size(); ++a) {
      CHECK(poset.in_closure_of(a, 0));
      CHECK(poset.in_closure_of(a, a));
    }
  }
  const auto a2 = boundary_strata(build_root_datum(cartan_preset("A2"), LatticeForm::Adjoint));
  CHECK(a2.strata[0].nodes.empty());
  CHECK(a2.strata[3].nodes == std::vector<std::size_t>{0, 1});
  CHECK(a2.in_closure_of(3, 1));
  CHECK_FALSE(a2.in_closure_of(1, 3));
  CHECK_FALSE(a2.in_closure_of(1, 2));
  CHECK_THROWS_AS(
      boundary_strata(build_root_datum(cartan_preset("A2"), LatticeForm::SimplyConnected)),
      NotAdjoint);
}
