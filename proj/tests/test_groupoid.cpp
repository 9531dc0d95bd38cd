#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "ogk/errors.hpp"
#include "ogk/groupoid.hpp"

using namespace ogk;

TEST_CASE("pair groupoid structure") {
  const auto g = zoo::pair_groupoid(2);
  CHECK(g.size() == 4);
  CHECK(g.unit_count() == 2);
  // Element id (a,b) = 2a + b; units are (0,0)=0 and (1,1)=3.
  CHECK(g.units() == std::vector<int>{0, 3});
  // G^{(0,0)} = {(0,0), (0,1)}.
  CHECK(g.fiber(0) == std::vector<int>{0, 1});
  CHECK(g.cofiber(0) == std::vector<int>{0, 2});
  // (0,1)(1,1)... products: (a,b)(b,c) = (a,c).
  CHECK(g.product(1, 3) == 1);
  CHECK(g.product(1, 2) == 0);
  CHECK(g.inverse(1) == 2);
  CHECK_FALSE(g.composable(1, 1));
  CHECK_THROWS_AS(g.product(1, 1), NotComposable);
  CHECK_THROWS_AS(g.unit_index(1), UnknownUnit);
  CHECK(validate_groupoid(g).ok());

  const auto g3 = zoo::pair_groupoid(3);
  CHECK(g3.size() == 9);
  CHECK(g3.unit_count() == 3);
  CHECK(validate_groupoid(g3).ok());
}

TEST_CASE("group bundle structure") {
  const auto g = zoo::group_bundle({zoo::cyclic(2), zoo::cyclic(3)});
  CHECK(g.size() == 5);
  CHECK(g.unit_count() == 2);
  CHECK(g.is_group_bundle());
  // The Z3 block occupies ids 2,3,4 with unit 2.
  CHECK(g.fiber(2) == std::vector<int>{2, 3, 4});
  CHECK(validate_groupoid(g).ok());

  const auto s3 = zoo::group_bundle({zoo::symmetric3()});
  CHECK(s3.size() == 6);
  CHECK(validate_groupoid(s3).ok());
  CHECK_FALSE(zoo::symmetric3().is_abelian());
  CHECK(zoo::cyclic(5).is_abelian());
}

TEST_CASE("transformation groupoid for the swap action") {
  // Z2 = {e, s} acting on {0, 1} by swap; element (gamma, x) has id 2*gamma + x.
  const auto g = zoo::transformation_groupoid(zoo::cyclic(2), {{0, 1}, {1, 0}});
  CHECK(g.size() == 4);
  CHECK(g.unit_count() == 2);
  CHECK(validate_groupoid(g).ok());
  CHECK_FALSE(g.is_group_bundle());
  // G^{(e,0)} = elements with gamma.x = 0: (e,0) id 0 and (s,1) id 3.
  CHECK(g.fiber(0) == std::vector<int>{0, 3});
  CHECK(g.fiber(1) == std::vector<int>{1, 2});

  // The trivial action is a legal action.
  CHECK_NOTHROW(zoo::transformation_groupoid(zoo::cyclic(2), {{0, 1}, {0, 1}}));
  // But the identity acting nontrivially is not...
  CHECK_THROWS_AS(zoo::transformation_groupoid(zoo::cyclic(2), {{1, 0}, {0, 1}}),
                  ConfigError);
  // ...nor is a family that breaks the homomorphism law (Z4 where the
  // generator swaps but the square does not return).
  CHECK_THROWS_AS(zoo::transformation_groupoid(zoo::cyclic(4),
                                               {{0, 1}, {1, 0}, {1, 0}, {1, 0}}),
                  ConfigError);
}

TEST_CASE("disjoint union validates and counts add") {
  const auto g = zoo::disjoint_union(zoo::pair_groupoid(2),
                                     zoo::group_bundle({zoo::cyclic(3)}));
  CHECK(g.size() == 7);
  CHECK(g.unit_count() == 3);
  CHECK(validate_groupoid(g).ok());
}

TEST_CASE("validator reports corrupted product tables with witnesses") {
  const auto good = zoo::group_bundle({zoo::cyclic(4)});
  std::vector<int> r, d, inv;
  for (int x = 0; x < good.size(); ++x) {
    r.push_back(good.r(x));
    d.push_back(good.d(x));
    inv.push_back(good.inverse(x));
  }
  auto triples = good.product_triples();
  for (auto& t : triples)
    if (t[0] == 1 && t[1] == 1) t[2] = 3;  // 1+1 remapped from 2 to 3
  const FiniteGroupoid bad(good.size(), std::move(r), std::move(d), std::move(inv),
                           std::move(triples), good.units());
  const auto rep = validate_groupoid(bad);
  CHECK_FALSE(rep.ok());
  bool assoc = false;
  for (const auto& v : rep.violations) assoc = assoc || v.axiom == "associativity";
  CHECK(assoc);
}

TEST_CASE("haar systems: counting and unit-mass weights validate") {
  for (const char* id : {"pair:3", "bundle:z2+z3", "trans:z2swap", "bundle:s3"}) {
    const auto g = zoo::groupoid_by_id(id);
    CAPTURE(id);
    CHECK(validate_haar(g, HaarSystem::counting(g)).ok());
    std::vector<double> m;
    for (int i = 0; i < g.unit_count(); ++i) m.push_back(0.5 + 0.75 * i);
    CHECK(validate_haar(g, HaarSystem::from_unit_masses(g, m)).ok());
  }
}

TEST_CASE("haar validator catches broken transport and bad support") {
  const auto g = zoo::pair_groupoid(2);
  // Pair-groupoid invariance forces column weights; break it.
  const HaarSystem broken(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0, 1.0}});
  const auto rep = validate_haar(g, broken);
  CHECK_FALSE(rep.ok());
  bool invariance = false;
  for (const auto& v : rep.violations) invariance = invariance || v.axiom == "left_invariance";
  CHECK(invariance);

  const HaarSystem nonpositive(std::vector<std::vector<double>>{{1.0, 0.0}, {1.0, 1.0}});
  CHECK_FALSE(validate_haar(g, nonpositive).ok());

  // Column weights do validate.
  const HaarSystem columns(std::vector<std::vector<double>>{{0.5, 2.5}, {0.5, 2.5}});
  CHECK(validate_haar(g, columns).ok());
  // ... and the continuity axiom is recorded as trivially satisfied.
  CHECK_FALSE(validate_haar(g, columns).notes.empty());
}

TEST_CASE("groupoid_by_id round trips the zoo") {
  for (const auto& id : zoo::groupoid_ids()) {
    CAPTURE(id);
    CHECK(validate_groupoid(zoo::groupoid_by_id(id)).ok());
  }
  CHECK_THROWS_AS(zoo::groupoid_by_id("pair:0"), ConfigError);
  CHECK_THROWS_AS(zoo::groupoid_by_id("bundle:q8"), ConfigError);
  CHECK_THROWS_AS(zoo::groupoid_by_id("nope"), ConfigError);
}
