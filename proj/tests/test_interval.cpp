#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "nabla/interval.hpp"

using namespace nabla;

namespace {

IntervalMap im(int m, int n, std::vector<int> vals) { return make_interval(m, n, std::move(vals)); }

}  // namespace

TEST_CASE("construction and validation") {
  CHECK_NOTHROW(im(3, 2, {0, 1, 3}));
  CHECK_THROWS_AS(im(3, 2, {1, 0, 3}), std::invalid_argument);  // not monotone
  CHECK_THROWS_AS(im(3, 2, {0, 1, 4}), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(im(2, 2, {1}), std::invalid_argument);        // wrong length
  CHECK(interval_identity(2) == im(2, 2, {1, 2}));
  CHECK(interval_identity(0).vals.empty());
}

TEST_CASE("composition") {
  // (<<3>> -> <<2>> -> <<1>>)
  IntervalMap f = im(3, 2, {0, 1, 2});
  IntervalMap g = im(2, 1, {1, 2});
  CHECK(compose(g, f) == im(3, 1, {0, 1, 2}));
  CHECK(compose(interval_identity(2), f) == f);
  CHECK(compose(f, interval_identity(3)) == f);
  CHECK_THROWS_AS(compose(f, g), std::invalid_argument);
}

TEST_CASE("fiber tuples") {
  CHECK(fiber_tuple(interval_identity(2)) == FiberTuple{0, {1, 1}, 0});
  CHECK(fiber_tuple(im(3, 2, {0, 1, 1})) == FiberTuple{1, {2, 0}, 0});
  CHECK(fiber_tuple(mu_map(3)) == FiberTuple{0, {3}, 0});
  CHECK(fiber_tuple(im(0, 1, {})) == FiberTuple{0, {0}, 0});
}

TEST_CASE("activity and inertness") {
  CHECK(is_active(mu_map(3)));
  CHECK(is_active(interval_identity(4)));
  CHECK(!is_active(rho_map(3, 2)));
  CHECK(is_inert(rho_map(3, 2)));
  CHECK(is_inert(interval_identity(4)));
  CHECK(!is_inert(mu_map(2)));
  CHECK(!is_active(im(3, 2, {0, 1, 1})));
  CHECK(!is_inert(im(3, 2, {0, 1, 1})));
}

TEST_CASE("classification and factorization: frozen examples") {
  {
    auto fac = classify_and_factorize(im(3, 2, {0, 1, 1}));
    CHECK(fac.cls == MapClass::Mixed);
    CHECK(fac.rho == im(3, 2, {0, 1, 2}));
    CHECK(fac.mu == im(2, 2, {1, 1}));
    CHECK(fac.delta == im(2, 3, {2, 3}));
  }
  {
    auto fac = classify_and_factorize(rho_map(3, 2));  // [-inf, 1, +inf]
    CHECK(fac.cls == MapClass::Inert);
    CHECK(fac.rho == rho_map(3, 2));
    CHECK(fac.mu == interval_identity(1));
    CHECK(fac.delta == im(1, 3, {2}));
  }
  {
    auto fac = classify_and_factorize(mu_map(3));
    CHECK(fac.cls == MapClass::Active);
    CHECK(fac.rho == interval_identity(3));
    CHECK(fac.mu == mu_map(3));
    CHECK(fac.delta == interval_identity(3));
  }
}

TEST_CASE("factorization law and uniqueness, exhaustively") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& f : enumerate_interval_maps(m, n)) {
        auto fac = classify_and_factorize(f);
        CHECK(is_inert(fac.rho));
        CHECK(is_active(fac.mu));
        CHECK(compose(fac.mu, fac.rho) == f);
        CHECK(compose(fac.rho, fac.delta) == interval_identity(fac.rho.cod_n));
        // Uniqueness of the inert/active splitting through <<t>>.
        int t = fac.rho.cod_n;
        int count = 0;
        for (const auto& rho : enumerate_interval_maps(m, t)) {
          if (!is_inert(rho)) continue;
          for (const auto& mu : enumerate_interval_maps(t, n)) {
            if (!is_active(mu)) continue;
            if (compose(mu, rho) == f) ++count;
          }
        }
        CHECK(count == 1);
        // Uniqueness of the section of the inert part.
        int sections = 0;
        for (const auto& d : enumerate_interval_maps(t, m))
          if (compose(fac.rho, d) == interval_identity(t)) ++sections;
        CHECK(sections == 1);
      }
}

TEST_CASE("section characterization: maps with active composite factor through delta") {
  // For every f = mu.rho with section delta: f.delta is active, and every
  // psi with f.psi active factors uniquely as delta.psi'.
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const auto& f : enumerate_interval_maps(m, n)) {
        auto fac = classify_and_factorize(f);
        CHECK(is_active(compose(f, fac.delta)));
        int t = fac.delta.dom_n;
        for (int l = 0; l <= 4; ++l)
          for (const auto& psi : enumerate_interval_maps(l, m)) {
            if (!is_active(compose(f, psi))) continue;
            int factorizations = 0;
            for (const auto& through : enumerate_interval_maps(l, t))
              if (compose(fac.delta, through) == psi) ++factorizations;
            CHECK(factorizations == 1);
          }
      }
}

TEST_CASE("canonical morphisms: frozen examples") {
  CHECK(mu_map(3) == im(3, 1, {1, 1, 1}));
  CHECK(rho_map(3, 2) == im(3, 1, {0, 1, 2}));
  CHECK(block_rho({1, 2}, 2) == im(3, 2, {0, 1, 2}));
  CHECK(block_rho({1, 2}, 1) == im(3, 1, {1, 2, 2}));
  CHECK(fiber_section(im(3, 2, {0, 1, 1}), 1) == im(2, 3, {2, 3}));
  CHECK(fiber_section(mu_map(2), 1) == im(2, 2, {1, 2}));
  CHECK(rho_map(1, 1) == im(1, 1, {1}));
}

TEST_CASE("joins of active morphisms: frozen examples") {
  CHECK(join_active({interval_identity(1), interval_identity(1)}) == interval_identity(2));
  CHECK(join_active({mu_map(2), mu_map(1)}) == im(3, 2, {1, 1, 2}));
  CHECK(join_active({mu_map(2), mu_map(2)}) == im(4, 2, {1, 1, 2, 2}));
  CHECK(compose(mu_map(2), join_active({mu_map(2), mu_map(1)})) == mu_map(3));
  CHECK_THROWS_AS(join_active({rho_map(2, 1)}), std::invalid_argument);
  CHECK(join_active({}) == interval_identity(0));
}

TEST_CASE("joins: compatibility with composition and block projections") {
  // Pairs (nu'_i . nu_i) joined blockwise agree with composing the joins, and
  // block projections intertwine joins with their components.
  std::vector<std::vector<IntervalMap>> actives(4);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (const auto& f : enumerate_interval_maps(a, b))
        if (is_active(f) && a <= 3 && b <= 3) actives[a].push_back(f);

  for (const auto& nu1 : actives[1])
    for (const auto& nu2 : actives[2]) {
      std::vector<IntervalMap> nus = {nu1, nu2};
      IntervalMap joined = join_active(nus);
      // compose with further actives out of each target
      for (const auto& out1 : actives[nu1.cod_n])
        for (const auto& out2 : actives[nu2.cod_n]) {
          IntervalMap lhs = join_active({compose(out1, nu1), compose(out2, nu2)});
          IntervalMap rhs = compose(join_active({out1, out2}), joined);
          CHECK(lhs == rhs);
        }
      // block projections
      std::vector<int> ks = {nu1.dom_n, nu2.dom_n};
      std::vector<int> ls = {nu1.cod_n, nu2.cod_n};
      CHECK(compose(block_rho(ls, 1), joined) == compose(nu1, block_rho(ks, 1)));
      CHECK(compose(block_rho(ls, 2), joined) == compose(nu2, block_rho(ks, 2)));
    }
}

TEST_CASE("mu interacts with joins via block projections") {
  // rho_i . mu_{k} = mu_{k_i} . blockrho_i  (the key triangle for wreath units)
  for (int k1 = 0; k1 <= 3; ++k1)
    for (int k2 = 0; k2 <= 3; ++k2) {
      std::vector<int> ks = {k1, k2};
      IntervalMap mu_join = join_active({mu_map(k1), mu_map(k2)});
      for (int i = 1; i <= 2; ++i)
        CHECK(compose(rho_map(2, i), mu_join) == compose(mu_map(ks[i - 1]), block_rho(ks, i)));
    }
}

TEST_CASE("enumeration: frozen counts, order, closure") {
  CHECK(enumerate_interval_maps(1, 1).size() == 3);
  CHECK(enumerate_interval_maps(2, 1).size() == 6);
  for (int n = 0; n <= 4; ++n) CHECK(enumerate_interval_maps(0, n).size() == 1);

  auto maps11 = enumerate_interval_maps(1, 1);
  CHECK(maps11[0] == im(1, 1, {0}));
  CHECK(maps11[1] == im(1, 1, {1}));
  CHECK(maps11[2] == im(1, 1, {2}));

  // all enumerated maps are valid and distinct
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) {
      auto maps = enumerate_interval_maps(m, n);
      std::set<IntervalMap> seen(maps.begin(), maps.end());
      CHECK(seen.size() == maps.size());
      for (const auto& f : maps) CHECK_NOTHROW(make_interval(f.dom_n, f.cod_n, f.vals));
    }

  // composition closure: composing enumerated sets stays inside the enumeration
  for (int m = 0; m <= 3; ++m)
    for (int k = 0; k <= 3; ++k)
      for (int n = 0; n <= 3; ++n) {
        auto fs = enumerate_interval_maps(m, k);
        auto gs = enumerate_interval_maps(k, n);
        auto hs = enumerate_interval_maps(m, n);
        std::set<IntervalMap> target(hs.begin(), hs.end());
        for (const auto& f : fs)
          for (const auto& g : gs) CHECK(target.count(compose(g, f)) == 1);
      }
}

TEST_CASE("word fibers") {
  std::vector<char> w = {'a', 'b', 'c'};
  IntervalMap f = im(3, 2, {1, 1, 2});
  CHECK(word_fiber(w, f, 1) == std::vector<char>{'a', 'b'});
  CHECK(word_fiber(w, f, 2) == std::vector<char>{'c'});
  IntervalMap g = im(3, 1, {0, 1, 2});
  CHECK(word_fiber(w, g, 1) == std::vector<char>{'b'});
}

TEST_CASE("word fibers concatenate along composition") {
  // fibre of a composite = concatenation of fibres over the inner fibre
  std::vector<int> w;
  for (int m = 0; m <= 3; ++m) {
    w.resize(m);
    for (int i = 0; i < m; ++i) w[i] = i + 1;
    for (int k = 0; k <= 3; ++k)
      for (int n = 0; n <= 3; ++n)
        for (const auto& f : enumerate_interval_maps(m, k))
          for (const auto& g : enumerate_interval_maps(k, n)) {
            IntervalMap h = compose(g, f);
            for (int s = 1; s <= n; ++s) {
              std::vector<int> expect;
              for (int j = 1; j <= k; ++j)
                if (g.vals[j - 1] == s) {
                  auto part = word_fiber(w, f, j);
                  expect.insert(expect.end(), part.begin(), part.end());
                }
              CHECK(word_fiber(w, h, s) == expect);
            }
          }
  }
}

TEST_CASE("string rendering") {
  CHECK(to_string(im(3, 2, {0, 1, 3})) == "[-inf,1,+inf]:3->2");
  CHECK(to_string(interval_identity(0)) == "[]:0->0");
}
