#include "nabla/segal.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nabla/perm.hpp"
#include "nabla/util.hpp"

namespace nabla {

namespace {

std::string tuple_text(const FinMonoid& M, const std::vector<int>& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ",";
    os << M.elements[t[i]];
  }
  os << ")";
  return os.str();
}

}  // namespace

Report validate_monoid(const FinMonoid& M, const std::string& name) {
  Report r;
  r.title = name;
  int k = M.size();

  bool shape = k > 0 && M.unit >= 0 && M.unit < k && static_cast<int>(M.table.size()) == k;
  for (const auto& row : M.table)
    shape = shape && static_cast<int>(row.size()) == k &&
            std::all_of(row.begin(), row.end(), [k](int v) { return v >= 0 && v < k; });
  r.add(name + "-shape", shape);
  if (!shape) return r;

  {
    bool ok = true;
    std::string wit;
    for (int x = 0; x < k && ok; ++x)
      if (M.mul(M.unit, x) != x || M.mul(x, M.unit) != x) {
        ok = false;
        wit = M.elements[x];
      }
    r.add(name + "-unit", ok, wit);
  }
  {
    bool ok = true;
    std::string wit;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b)
        for (int c = 0; c < k; ++c)
          if (M.mul(M.mul(a, b), c) != M.mul(a, M.mul(b, c))) {
            ok = false;
            wit = M.elements[a] + "," + M.elements[b] + "," + M.elements[c];
            break;
          }
    r.add(name + "-associativity", ok, wit);
  }
  return r;
}

FinMonoid trivial_monoid() { return {"trivial", {"e"}, 0, {{0}}}; }

FinMonoid cyclic_monoid(int n) {
  FinMonoid M;
  M.name = "cyclic-" + std::to_string(n);
  for (int i = 0; i < n; ++i) M.elements.push_back(std::to_string(i));
  M.unit = 0;
  M.table.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) M.table[a][b] = (a + b) % n;
  return M;
}

FinMonoid left_zero_monoid() {
  FinMonoid M;
  M.name = "left-zero";
  M.elements = {"e", "a", "b"};
  M.unit = 0;
  M.table = {{0, 1, 2}, {1, 1, 1}, {2, 2, 2}};
  return M;
}

std::vector<std::vector<int>> all_tuples(int size, int n) {
  std::vector<std::vector<int>> out;
  for_each_tuple(std::vector<int>(n, size), [&](const std::vector<int>& t) {
    out.push_back(t);
    return true;
  });
  return out;
}

std::vector<int> nerve_map(const FinMonoid& M, const IntervalMap& phi,
                           const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != phi.dom_n)
    throw std::invalid_argument("tuple length does not match the map domain");
  std::vector<int> out(phi.cod_n, M.unit);
  for (int i = 1; i <= phi.dom_n; ++i) {
    int j = phi.vals[i - 1];
    if (j >= 1 && j <= phi.cod_n) out[j - 1] = M.mul(out[j - 1], tuple[i - 1]);
  }
  return out;
}

Report verify_nerve(const FinMonoid& M, int N) {
  Report r;
  r.title = "nerve of " + M.name;

  {
    bool ok = true;
    for (int n = 0; n <= N && ok; ++n)
      for (const auto& t : all_tuples(M.size(), n))
        if (nerve_map(M, interval_identity(n), t) != t) {
          ok = false;
          break;
        }
    r.add("nerve-identity", ok);
  }
  {
    bool ok = true;
    std::string wit;
    for (int m = 0; m <= N && ok; ++m) {
      auto tuples = all_tuples(M.size(), m);
      for (int n = 0; n <= N && ok; ++n)
        for (const auto& phi : enumerate_interval_maps(m, n)) {
          for (int l = 0; l <= N && ok; ++l)
            for (const auto& psi : enumerate_interval_maps(n, l)) {
              IntervalMap both = compose(psi, phi);
              for (const auto& t : tuples)
                if (nerve_map(M, psi, nerve_map(M, phi, t)) != nerve_map(M, both, t)) {
                  ok = false;
                  wit = to_string(psi) + " . " + to_string(phi) + " at " + tuple_text(M, t);
                  break;
                }
            }
          if (!ok) break;
        }
    }
    r.add("nerve-composition", ok, wit);
  }
  return r;
}

Report verify_nerve_equivariance(const FinMonoid& M, const GroupOperad& G, int N) {
  Report r;
  r.title = "nerve equivariance of " + M.name;
  bool ok = true;
  std::string wit;
  for (int m = 0; m <= N && ok; ++m) {
    auto tuples = all_tuples(M.size(), m);
    for (int n = 0; n <= N && ok; ++n)
      for (const auto& phi : enumerate_interval_maps(m, n)) {
        for (const Perm& y : G.elements(n)) {
          CrossedPair c = crossed_action(G, phi, y);
          for (const auto& t : tuples) {
            std::vector<int> lhs = act_word(y, nerve_map(M, phi, t));
            std::vector<int> rhs = nerve_map(M, c.pushed, act_word(c.pullback, t));
            if (lhs != rhs) {
              ok = false;
              wit = to_string(phi) + " under " + to_string(y) + " at " + tuple_text(M, t);
              break;
            }
          }
          if (!ok) break;
        }
        if (!ok) break;
      }
  }
  r.add("nerve-equivariance", ok, wit);
  return r;
}

int ElementsCategory::find_object(int n, const std::vector<int>& tuple) const {
  auto it = obj_index.find({n, tuple});
  return it == obj_index.end() ? -1 : it->second;
}

int ElementsCategory::lift_from(int obj, int base_mor) const {
  auto it = lift_index.find({obj, base_mor});
  return it == lift_index.end() ? -1 : it->second;
}

ElementsCategory grothendieck(const FinMonoid& M, int N) {
  ElementsCategory E;
  E.monoid = M;
  E.base = truncated_interval_category(N);
  E.cat = std::make_shared<FinCategory>();

  for (int n = 0; n <= N; ++n)
    for (const auto& t : all_tuples(M.size(), n)) {
      int id = E.cat->add_object("<<" + std::to_string(n) + ">>" + tuple_text(M, t));
      E.objects.emplace_back(n, t);
      E.obj_index[{n, t}] = id;
    }

  for (int o = 0; o < static_cast<int>(E.objects.size()); ++o) {
    const auto& [m, t] = E.objects[o];
    for (int b = 0; b < E.base.cat->morphism_count(); ++b) {
      const IntervalMap& phi = E.base.maps[b];
      if (phi.dom_n != m) continue;
      int target = E.obj_index.at({phi.cod_n, nerve_map(M, phi, t)});
      int id = E.cat->add_morphism(o, target,
                                   E.cat->object_label(o) + "|" + to_string(phi));
      E.base_of.push_back(b);
      E.lift_index[{o, b}] = id;
    }
  }

  for (int o = 0; o < static_cast<int>(E.objects.size()); ++o)
    E.cat->set_identity(o, E.lift_index.at({o, E.base.cat->identity(E.objects[o].first)}));

  // Composition is computed on the base and lifted back from the source.
  const FinCategory* base_cat = E.base.cat.get();
  auto base_of = std::make_shared<std::vector<int>>(E.base_of);
  auto lifts = std::make_shared<std::map<std::pair<int, int>, int>>(E.lift_index);
  FinCategory* cat_raw = E.cat.get();
  E.cat->set_composer([base_cat, base_of, lifts, cat_raw](int g, int f) {
    int b = base_cat->compose((*base_of)[g], (*base_of)[f]);
    return lifts->at({cat_raw->src(f), b});
  });
  E.cat->finalize();

  E.projection.src = E.cat.get();
  E.projection.tgt = E.base.cat.get();
  for (const auto& [n, t] : E.objects) E.projection.object_map.push_back(n);
  E.projection.morphism_map = E.base_of;
  return E;
}

Report check_discrete_fibration(const ElementsCategory& E) {
  Report r;
  r.title = "elements category of " + E.monoid.name;
  r.merge(validate_category(*E.cat));
  r.merge(validate_functor(E.projection, "elements-projection"));

  bool ok = true;
  std::string wit;
  std::map<std::pair<int, int>, int> over;  // (object, base mor) -> count
  for (int mor = 0; mor < E.cat->morphism_count(); ++mor)
    ++over[{E.cat->src(mor), E.base_of[mor]}];
  for (int o = 0; o < static_cast<int>(E.objects.size()) && ok; ++o) {
    int m = E.objects[o].first;
    for (int b = 0; b < E.base.cat->morphism_count(); ++b) {
      if (E.base.maps[b].dom_n != m) continue;
      auto it = over.find({o, b});
      if (it == over.end() || it->second != 1) {
        ok = false;
        wit = E.cat->object_label(o) + " over " + to_string(E.base.maps[b]);
        break;
      }
    }
  }
  r.add("elements-unique-lifts", ok, wit);
  return r;
}

CommutativityResult commutativity_check(const FinMonoid& M, int n_max) {
  CommutativityResult res;
  res.report.title = "commutativity of " + M.name;

  bool fib = true;
  std::string fib_wit;
  for (int n = 2; n <= n_max && fib; ++n) {
    IntervalMap mu = mu_map(n);
    auto tuples = all_tuples(M.size(), n);
    for (const Perm& s : all_perms(n)) {
      for (const auto& t : tuples)
        if (nerve_map(M, mu, act_word(s, t)) != nerve_map(M, mu, t)) {
          fib = false;
          fib_wit = "n=" + std::to_string(n) + " twist " + to_string(s) + " at " +
                    tuple_text(M, t);
          break;
        }
      if (!fib) break;
    }
  }

  bool pair = true;
  std::string pair_wit;
  for (int a = 0; a < M.size() && pair; ++a)
    for (int b = 0; b < M.size(); ++b)
      if (M.mul(a, b) != M.mul(b, a)) {
        pair = false;
        pair_wit = "witness=(" + M.elements[a] + "," + M.elements[b] + ")";
        break;
      }

  res.commutative = fib;
  res.witness = fib ? "" : (pair_wit.empty() ? fib_wit : pair_wit);
  res.report.add("commutativity", fib, fib ? "COMMUTATIVE" : res.witness);
  res.report.add("commutativity-criteria-agree", (n_max < 2) || fib == pair,
                 fib == pair ? "" : "fibration and elementwise tests disagree");
  return res;
}

std::vector<FinMonoid> all_monoids_up_to(int max_order) {
  std::vector<FinMonoid> out;
  for (int k = 1; k <= max_order; ++k) {
    std::vector<std::pair<int, int>> free_cells;
    for (int i = 1; i < k; ++i)
      for (int j = 1; j < k; ++j) free_cells.emplace_back(i, j);
    std::vector<int> radix(free_cells.size(), k);
    for_each_tuple(radix, [&](const std::vector<int>& vals) {
      FinMonoid M;
      M.unit = 0;
      M.table.assign(k, std::vector<int>(k));
      for (int i = 0; i < k; ++i) M.table[0][i] = M.table[i][0] = i;
      for (std::size_t c = 0; c < free_cells.size(); ++c)
        M.table[free_cells[c].first][free_cells[c].second] = vals[c];
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          for (int c = 0; c < k; ++c)
            if (M.table[M.table[a][b]][c] != M.table[a][M.table[b][c]]) return true;
      for (int i = 0; i < k; ++i) M.elements.push_back("x" + std::to_string(i));
      std::ostringstream nm;
      nm << "monoid-" << k << "-" << out.size();
      M.name = nm.str();
      out.push_back(std::move(M));
      return true;
    });
  }
  return out;
}

}  // namespace nabla
