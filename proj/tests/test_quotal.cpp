#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "nabla/quotal.hpp"

using namespace nabla;

namespace {

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("truncated monotone-map category") {
  IntervalCategory ic = truncated_interval_category(3);
  CHECK(ic.cat->object_count() == 4);
  CHECK(ic.cat->morphism_count() == 121);
  CHECK(ic.cat->hom(2, 1).size() == 6);
  CHECK(ic.cat->hom(1, 2).size() == 4);
  CHECK(ic.cat->hom(2, 2).size() == 10);
  CHECK(validate_category(*ic.cat).ok());
  CHECK(ic.find(mu_map(3)) >= 0);
  CHECK(ic.find(make_interval(1, 3, {2})) >= 0);
}

TEST_CASE("group-decorated quotient with the trivial family") {
  TrivialOperad triv(8);
  QuotalCategory Q = build_quotal(triv, trivial_family(triv), 2);
  IntervalCategory ic = truncated_interval_category(2);
  CHECK(Q.cat->morphism_count() == ic.cat->morphism_count());
  CHECK(validate_category(*Q.cat).ok());

  SymmetricOperad sym(8);
  QuotalCategory Qs = build_quotal(sym, trivial_family(sym), 2);
  CHECK(Qs.cat->hom(1, 1).size() == 3);
  CHECK(Qs.cat->hom(2, 1).size() == 12);
  CHECK(validate_category(*Qs.cat).ok());

  // Pinned composite: the outer group part acts on the inner map.
  int f = Qs.find(make_interval(2, 2, {1, 1}), perm_identity(2));
  int g = Qs.find(mu_map(2), make_perm({2, 1}));
  REQUIRE(f >= 0);
  REQUIRE(g >= 0);
  int gf = Qs.cat->compose(g, f);
  // Swapping the target letters permutes the fibres {1,2} and {}, which
  // induces the identity on the source letters: the swap is absorbed.
  CHECK(gf == Qs.find(mu_map(2), perm_identity(2)));
}

TEST_CASE("pinned composite through a genuinely crossed square") {
  SymmetricOperad sym(8);
  QuotalCategory Q = build_quotal(sym, trivial_family(sym), 3);
  int f = Q.find(make_interval(3, 2, {1, 1, 2}), perm_identity(3));
  int g = Q.find(mu_map(2), make_perm({2, 1}));
  REQUIRE(f >= 0);
  REQUIRE(g >= 0);
  CHECK(Q.cat->compose(g, f) == Q.find(mu_map(3), make_perm({2, 3, 1})));
}

TEST_CASE("quotient by the closed block kernel family") {
  SymmetricOperad sym(8);
  CongruenceFamily kecbar = builtin_family(sym, "block-kernel-closure");
  QuotalCategory E = build_quotal(sym, kecbar, 2);
  CHECK(validate_category(*E.cat).ok());
  CHECK(E.cat->hom(2, 1).size() == 10);
  CHECK(E.cat->hom(1, 1).size() == 3);

  // Per-map coset counts across hom(2,1): 1+2+2+2+2+1.
  std::map<IntervalMap, int> per_map;
  for (int m : E.cat->hom(2, 1)) per_map[E.phi_of[m]]++;
  std::vector<int> counts;
  for (const auto& [phi, k] : per_map) counts.push_back(k);
  CHECK(counts == std::vector<int>{1, 2, 2, 2, 2, 1});

  // Hom sizes match the coset-count formula.
  for (int m = 0; m <= 2; ++m)
    for (int n = 0; n <= 2; ++n) {
      std::size_t expect = 0;
      for (const auto& phi : enumerate_interval_maps(m, n))
        expect += kecbar.coset_count(phi);
      CHECK(E.cat->hom(m, n).size() == expect);
    }
}

TEST_CASE("the family is recovered from its quotient") {
  SymmetricOperad sym(8);
  for (const char* slug : {"trivial", "block-kernel-closure", "block-closure"}) {
    CongruenceFamily K = builtin_family(sym, slug);
    QuotalCategory Q = build_quotal(sym, K, 2);
    for (int m = 0; m <= 2; ++m)
      for (int n = 0; n <= 2; ++n)
        for (const auto& phi : enumerate_interval_maps(m, n))
          CHECK(recover_family(Q, phi) == K.members(phi));
  }
}

TEST_CASE("inclusion of families induces a functor of quotients") {
  SymmetricOperad sym(8);
  QuotalCategory fine = build_quotal(sym, trivial_family(sym), 2);
  QuotalCategory coarse = build_quotal(sym, builtin_family(sym, "block-kernel-closure"), 2);
  Functor proj = inclusion_induced_functor(fine, coarse);
  CHECK(validate_functor(proj, "coarsen").ok());
}

TEST_CASE("two-level quotient is a double category") {
  SymmetricOperad sym(8);
  DoubleQuotal D = build_double_quotal(sym, builtin_family(sym, "block-closure"),
                                       builtin_family(sym, "block-kernel-closure"), 2);
  CHECK(D.cells->morphism_count() == 50);
  CHECK(validate_category(*D.cells).ok());
  Report r = check_double_category(D.dc);
  INFO(r.summary());
  CHECK(r.ok());
}

TEST_CASE("pinned cell composite") {
  SymmetricOperad sym(8);
  DoubleQuotal D = build_double_quotal(sym, builtin_family(sym, "block-closure"),
                                       builtin_family(sym, "block-kernel-closure"), 3);
  int f = D.find(make_interval(3, 2, {1, 1, 2}), perm_identity(3), perm_identity(3));
  int g = D.find(mu_map(2), make_perm({2, 1}), perm_identity(2));
  REQUIRE(f >= 0);
  REQUIRE(g >= 0);
  CHECK(D.cells->compose(g, f) ==
        D.find(mu_map(3), make_perm({2, 3, 1}), perm_identity(3)));
}

TEST_CASE("tilde quotient of the decorated interval category") {
  SymmetricOperad sym(8);
  QuotalCategory E = build_quotal(sym, builtin_family(sym, "block-kernel-closure"), 2);
  TildeQuotal T = tilde_quotient(E);
  CHECK(validate_category(*T.cat).ok());
  CHECK(validate_functor(T.projection, "tilde-projection").ok());

  CHECK(T.cat->hom(1, 1).size() == 2);
  CHECK(T.cat->hom(2, 1).size() == 5);

  Perm e1 = perm_identity(1), e2 = perm_identity(2), sw = make_perm({2, 1});
  // The two endpoint-constant endomorphisms of <<1>> merge.
  CHECK(T.class_of[E.find(make_interval(1, 1, {0}), e1)] ==
        T.class_of[E.find(make_interval(1, 1, {2}), e1)]);
  // All four all-endpoint maps 2 -> 1 merge.
  int c00 = E.find(make_interval(2, 1, {0, 0}), e2);
  int c02 = E.find(make_interval(2, 1, {0, 2}), e2);
  int c02s = E.find(make_interval(2, 1, {0, 2}), sw);
  int c22 = E.find(make_interval(2, 1, {2, 2}), e2);
  CHECK(T.class_of[c00] == T.class_of[c02]);
  CHECK(T.class_of[c00] == T.class_of[c02s]);
  CHECK(T.class_of[c00] == T.class_of[c22]);
  // Half-degenerate maps merge across base maps with a twist.
  int lo_e = E.find(make_interval(2, 1, {0, 1}), e2);
  int lo_s = E.find(make_interval(2, 1, {0, 1}), sw);
  int hi_e = E.find(make_interval(2, 1, {1, 2}), e2);
  int hi_s = E.find(make_interval(2, 1, {1, 2}), sw);
  CHECK(T.class_of[lo_e] == T.class_of[hi_s]);
  CHECK(T.class_of[lo_s] == T.class_of[hi_e]);
  CHECK(T.class_of[lo_e] != T.class_of[lo_s]);
  // Surjections with distinct group parts stay distinct.
  CHECK(T.class_of[E.find(mu_map(2), e2)] != T.class_of[E.find(mu_map(2), sw)]);
  CHECK(T.class_of[E.find(mu_map(2), e2)] != T.class_of[c00]);
}

TEST_CASE("criterion-based congruence matches the generic quotient") {
  SymmetricOperad sym(8);
  QuotalCategory E = build_quotal(sym, builtin_family(sym, "block-kernel-closure"), 2);
  TildeQuotal T = tilde_quotient(E);
  std::vector<char> active(E.cat->morphism_count());
  for (int m = 0; m < E.cat->morphism_count(); ++m) active[m] = is_active(E.phi_of[m]);
  QuotientResult G = quotient_left_cancellative(*E.cat, active, "generic");
  INFO(G.report.summary());
  REQUIRE(G.report.ok());
  REQUIRE(same_partition(T.class_of, G.class_of));

  TrivialOperad triv(8);
  QuotalCategory Et = build_quotal(triv, trivial_family(triv), 2);
  TildeQuotal Tt = tilde_quotient(Et);
  std::vector<char> at(Et.cat->morphism_count());
  for (int m = 0; m < Et.cat->morphism_count(); ++m) at[m] = is_active(Et.phi_of[m]);
  QuotientResult Gt = quotient_left_cancellative(*Et.cat, at, "generic-plain");
  REQUIRE(Gt.report.ok());
  REQUIRE(same_partition(Tt.class_of, Gt.class_of));
}

TEST_CASE("cell congruence matches the generic quotient and separates verticals") {
  SymmetricOperad sym(8);
  DoubleQuotal D = build_double_quotal(sym, builtin_family(sym, "block-closure"),
                                       builtin_family(sym, "block-kernel-closure"), 2);
  TildeQuotal T = tilde_cells_quotient(D);
  CHECK(validate_category(*T.cat).ok());
  CHECK(validate_functor(T.projection, "tilde-cells-projection").ok());

  std::vector<char> active(D.cells->morphism_count());
  for (int m = 0; m < D.cells->morphism_count(); ++m) active[m] = is_active(D.phi_of[m]);
  QuotientResult G = quotient_left_cancellative(*D.cells, active, "generic-cells");
  INFO(G.report.summary());
  REQUIRE(G.report.ok());
  REQUIRE(same_partition(T.class_of, G.class_of));

  // Cells over one base morphism with distinct vertical cosets stay distinct.
  for (int a = 0; a < D.cells->morphism_count(); ++a)
    for (int b = a + 1; b < D.cells->morphism_count(); ++b)
      if (D.phi_of[a] == D.phi_of[b] && D.x_of[a] == D.x_of[b] && D.u_of[a] != D.u_of[b])
        CHECK(T.class_of[a] != T.class_of[b]);
}

TEST_CASE("tilde double category structure") {
  SymmetricOperad sym(8);
  DoubleQuotal D = build_double_quotal(sym, builtin_family(sym, "block-closure"),
                                       builtin_family(sym, "block-kernel-closure"), 2);
  TildeDouble T = build_tilde_double(D);
  Report r = check_double_category(T.dc);
  INFO(r.summary());
  CHECK(r.ok());

  Report sq = verify_pullback_squares(D, T);
  INFO(sq.summary());
  CHECK(sq.ok());

  // Vertical composition is independent of representative choices.
  std::vector<std::vector<int>> members(T.cells.cat->morphism_count());
  for (int m = 0; m < D.cells->morphism_count(); ++m)
    members[T.cells.class_of[m]].push_back(m);
  for (int gt = 0; gt < T.cells.cat->morphism_count(); ++gt)
    for (int ft = 0; ft < T.cells.cat->morphism_count(); ++ft) {
      if (T.dc.src_f.morphism_map[gt] != T.dc.tgt_f.morphism_map[ft]) continue;
      int expect = T.dc.vcomp(gt, ft);
      for (int g : members[gt])
        for (int f : members[ft]) {
          if (D.dc.src_f.morphism_map[g] != D.dc.tgt_f.morphism_map[f]) continue;
          CHECK(T.cells.class_of[D.dc.vcomp(g, f)] == expect);
        }
    }
}

TEST_CASE("inert and active parts split cells") {
  SymmetricOperad sym(8);
  DoubleQuotal D = build_double_quotal(sym, builtin_family(sym, "block-closure"),
                                       builtin_family(sym, "block-kernel-closure"), 2);
  for (int m = 0; m < D.cells->morphism_count(); ++m) {
    Factorization fac = classify_and_factorize(D.phi_of[m]);
    if (fac.cls != MapClass::Mixed) continue;
    Perm du = crossed_pullback(sym, fac.delta, D.u_of[m]);
    int active_part = D.find(fac.mu, du, sym.unit(fac.mu.dom_n));
    int inert_part = D.find(fac.rho, sym.unit(D.phi_of[m].dom_n), D.x_of[m]);
    REQUIRE(active_part >= 0);
    REQUIRE(inert_part >= 0);
    CHECK(D.cells->compose(active_part, inert_part) == m);
  }
}
