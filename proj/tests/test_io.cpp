#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "nabla/io.hpp"
#include "nabla/quotal.hpp"

using namespace nabla;

namespace {

const std::string kData = NABLA_DATA_DIR;

Perm pm(std::vector<int> img) { return make_perm(std::move(img)); }

}  // namespace

TEST_CASE("terminal definition file") {
  SymmetricOperad sym(4);
  LoadedMulticat L = load_multicat(kData + "/multicat_terminal.json", 3);
  CHECK(L.cat.object_count() == 1);
  CHECK(L.cat.morphism_count() == 4);
  CHECK(validate_multicat(L.cat, "terminal-file").ok());
  CHECK(L.has_symmetry);
  CHECK(validate_gsym(L.cat, sym, L.action, "terminal-file").ok());

  // Same shape as the built-in instance.
  FinMulticategory T = terminal_multicat(3);
  for (int f = 0; f < T.morphism_count(); ++f)
    CHECK(L.cat.hom(T.morphism(f).inputs, T.morphism(f).output).size() == 1);
}

TEST_CASE("two-object definition file") {
  SymmetricOperad sym(4);
  LoadedMulticat L = load_multicat(kData + "/multicat_two_object.json", 3);
  CHECK(validate_multicat(L.cat, "two-object-file").ok());
  CHECK(validate_gsym(L.cat, sym, L.action, "two-object-file").ok());

  int a = L.cat.find_object("a");
  int b = L.cat.find_object("b");
  CHECK(L.cat.hom({a, b}, a).size() == 1);
  CHECK(L.cat.hom({b, a}, a).size() == 1);
  CHECK(L.cat.hom({a}, a).size() == 2);

  int f = L.cat.find_morphism("m_ab");
  int g = L.cat.find_morphism("m_ba");
  REQUIRE(f >= 0);
  CHECK(L.action.act(f, pm({2, 1})) == g);

  // Composition agrees with the built-in sample: the file was generated
  // independently, so this pins both against each other.
  TwoObjectSample S = two_object_sample(3);
  int id_b = L.cat.find_morphism("id_b");
  int h = L.cat.find_morphism("h");
  CHECK(L.cat.compose(f, {h, id_b}) == f);
  CHECK(L.cat.compose(h, {h}) == h);
  CHECK(L.cat.morphism_count() == S.cat.morphism_count());
}

TEST_CASE("one-object definition file") {
  SymmetricOperad sym(4);
  LoadedMulticat L = load_multicat(kData + "/multicat_one_object.json", 3);
  CHECK(validate_multicat(L.cat, "one-object-file").ok());
  CHECK(validate_gsym(L.cat, sym, L.action, "one-object-file").ok());
  int s = L.cat.find_morphism("s");
  CHECK(L.cat.compose(s, {s}) == L.cat.find_morphism("id"));
}

TEST_CASE("monoid definition files") {
  FinMonoid z2 = load_monoid(kData + "/monoid_z2.json");
  CHECK(validate_monoid(z2, "z2-file").ok());
  CHECK(z2.table == cyclic_monoid(2).table);
  CHECK(commutativity_check(z2, 3).commutative);

  FinMonoid lz = load_monoid(kData + "/monoid_leftzero.json");
  CHECK(validate_monoid(lz, "leftzero-file").ok());
  CHECK(lz.table == left_zero_monoid().table);
  CommutativityResult r = commutativity_check(lz, 3);
  CHECK_FALSE(r.commutative);
  CHECK(r.witness == "witness=(a,b)");
}

TEST_CASE("schema violations name the field") {
  std::string bad = "/tmp/nabla_bad_multicat.json";
  {
    std::ofstream out(bad);
    out << R"({"objects":["a"],"morphisms":[{"name":"f","inputs":["ghost"],"output":"a"}],)"
        << R"("identities":{"a":"f"},"compositions":[]})";
  }
  bool threw = false;
  try {
    load_multicat(bad, 2);
  } catch (const std::runtime_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("unknown name 'ghost'") != std::string::npos);
    CHECK(std::string(e.what()).find("inputs") != std::string::npos);
  }
  CHECK(threw);

  std::string missing = "/tmp/nabla_missing_field.json";
  {
    std::ofstream out(missing);
    out << R"({"objects":["a"]})";
  }
  CHECK_THROWS_AS(load_multicat(missing, 2), std::runtime_error);
}

TEST_CASE("dot export is deterministic") {
  SymmetricOperad sym(4);
  QuotalCategory Q = build_quotal(sym, builtin_family(sym, "block-kernel-closure"), 1);
  TildeQuotal T = tilde_quotient(Q);

  std::string once = dot_text(*T.cat);
  std::string twice = dot_text(*T.cat);
  CHECK(once == twice);

  // Two objects; the identities are suppressed.  Edge lines use " -> " with
  // spaces, which never occurs inside a label.
  int nodes = 0, edges = 0;
  std::istringstream lines(once);
  for (std::string line; std::getline(lines, line);) {
    if (line.find(" -> ") != std::string::npos)
      ++edges;
    else if (line.find("[label=") != std::string::npos)
      ++nodes;
  }
  CHECK(nodes == 2);
  CHECK(edges == T.cat->morphism_count() - T.cat->object_count());

  // An empty category yields a header-only digraph.
  FinCategory empty;
  empty.set_composer([](int, int) { return -1; });
  empty.finalize();
  CHECK(dot_text(empty) == "digraph category {\n}\n");
}
