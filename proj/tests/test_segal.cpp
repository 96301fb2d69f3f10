#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nabla/segal.hpp"
#include "nabla/util.hpp"

using namespace nabla;

namespace {

Perm pm(std::vector<int> img) { return make_perm(std::move(img)); }

}  // namespace

TEST_CASE("monoid samples validate") {
  CHECK(validate_monoid(trivial_monoid(), "trivial").ok());
  CHECK(validate_monoid(cyclic_monoid(2), "z2").ok());
  CHECK(validate_monoid(cyclic_monoid(4), "z4").ok());
  CHECK(validate_monoid(left_zero_monoid(), "left-zero").ok());

  FinMonoid bad = cyclic_monoid(3);
  bad.table[1][2] = 1;  // 1+2 = 1 breaks associativity
  CHECK_FALSE(validate_monoid(bad, "bad").ok());
}

TEST_CASE("nerve structure maps") {
  FinMonoid z2 = cyclic_monoid(2);

  // Identity map: identity on tuples.
  CHECK(nerve_map(z2, interval_identity(2), {1, 0}) == std::vector<int>{1, 0});
  // Total multiplication: (1,1) -> 0 in Z/2.
  CHECK(nerve_map(z2, mu_map(2), {1, 1}) == std::vector<int>{0});
  // The projection keeping only the first letter drops the second.
  CHECK(nerve_map(z2, rho_map(2, 1), {1, 0}) == std::vector<int>{1});
  CHECK(nerve_map(z2, rho_map(2, 2), {1, 0}) == std::vector<int>{0});
  // A map with an empty fiber inserts the unit.
  CHECK(nerve_map(z2, make_interval(1, 2, {2}), {1}) == std::vector<int>{0, 1});

  // Products are taken in increasing order: in the left-zero monoid the
  // first factor wins.
  FinMonoid lz = left_zero_monoid();
  CHECK(nerve_map(lz, mu_map(2), {1, 2}) == std::vector<int>{1});
  CHECK(nerve_map(lz, mu_map(2), {2, 1}) == std::vector<int>{2});
}

TEST_CASE("nerve functoriality") {
  CHECK(verify_nerve(trivial_monoid(), 3).ok());
  CHECK(verify_nerve(cyclic_monoid(2), 3).ok());
  CHECK(verify_nerve(left_zero_monoid(), 3).ok());
  CHECK(verify_nerve(cyclic_monoid(4), 2).ok());
}

TEST_CASE("nerve equivariance") {
  SymmetricOperad sym(6);
  CHECK(verify_nerve_equivariance(cyclic_monoid(2), sym, 3).ok());
  CHECK(verify_nerve_equivariance(left_zero_monoid(), sym, 3).ok());
}

TEST_CASE("category of elements is a discrete fibration") {
  FinMonoid z2 = cyclic_monoid(2);
  ElementsCategory E = grothendieck(z2, 2);

  // Objects are tuples: 1 + 2 + 4 of them, and the fiber over <<2>> has
  // |M|^2 = 4 objects.
  CHECK(E.cat->object_count() == 7);
  int over2 = 0;
  for (const auto& [n, t] : E.objects) over2 += n == 2 ? 1 : 0;
  CHECK(over2 == 4);
  // One morphism out of (m, tuple) per interval map from <<m>>.
  CHECK(E.cat->morphism_count() == 97);
  CHECK(check_discrete_fibration(E).ok());

  // The composite of two lifts follows the monoid: (1,1) --mu--> (0).
  int o = E.find_object(2, {1, 1});
  int f = E.lift_from(o, E.base.find(mu_map(2)));
  REQUIRE(f >= 0);
  CHECK(E.objects[E.cat->tgt(f)].second == std::vector<int>{0});

  // For the trivial monoid the projection is an isomorphism.
  ElementsCategory T = grothendieck(trivial_monoid(), 2);
  CHECK(T.cat->object_count() == T.base.cat->object_count());
  CHECK(T.cat->morphism_count() == T.base.cat->morphism_count());
  CHECK(check_discrete_fibration(T).ok());
}

TEST_CASE("commutativity criterion") {
  CommutativityResult z2 = commutativity_check(cyclic_monoid(2), 3);
  CHECK(z2.commutative);
  CHECK(z2.report.ok());

  CommutativityResult lz = commutativity_check(left_zero_monoid(), 3);
  CHECK_FALSE(lz.commutative);
  CHECK(lz.witness == "witness=(a,b)");
  CHECK_FALSE(lz.report.ok());
  // The two criteria still agree on the verdict.
  for (const auto& c : lz.report.checks)
    if (c.id == "commutativity-criteria-agree") CHECK(c.pass);

  CHECK(commutativity_check(trivial_monoid(), 3).commutative);
}

TEST_CASE("criterion agreement over every small monoid") {
  std::vector<FinMonoid> all = all_monoids_up_to(4);
  // Frozen counts for tables with a fixed unit: 1, 2, 11, 156.
  CHECK(all.size() == 170);

  int commutative = 0;
  for (const FinMonoid& M : all) {
    REQUIRE(validate_monoid(M, M.name).ok());
    CommutativityResult r = commutativity_check(M, 3);
    bool pairwise = true;
    for (int a = 0; a < M.size() && pairwise; ++a)
      for (int b = 0; b < M.size(); ++b)
        if (M.mul(a, b) != M.mul(b, a)) {
          pairwise = false;
          break;
        }
    CHECK(r.commutative == pairwise);
    commutative += pairwise ? 1 : 0;
  }
  CHECK(commutative == 106);
}
