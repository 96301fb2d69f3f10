#include "nabla/multicat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "nabla/util.hpp"

namespace nabla {

namespace {

const std::vector<int>& empty_vec() {
  static const std::vector<int> e;
  return e;
}

std::string word_text(const FinMulticategory& M, const std::vector<int>& word) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) os << " ";
    os << M.object_name(word[i]);
  }
  os << ")";
  return os.str();
}

}  // namespace

FinMulticategory::FinMulticategory(int arity_bound, std::string name)
    : name_(std::move(name)), bound_(arity_bound) {
  if (arity_bound < 1) throw std::invalid_argument("arity bound must be positive");
}

int FinMulticategory::add_object(std::string name) {
  if (finalized_) throw std::logic_error("multicategory already finalized");
  if (obj_index_.count(name)) throw std::invalid_argument("duplicate object name: " + name);
  int id = object_count();
  obj_index_[name] = id;
  obj_names_.push_back(std::move(name));
  identity_.push_back(-1);
  by_output_.emplace_back();
  return id;
}

int FinMulticategory::add_morphism(std::vector<int> inputs, int output, std::string label) {
  if (finalized_) throw std::logic_error("multicategory already finalized");
  if (static_cast<int>(inputs.size()) > bound_)
    throw TruncationError("morphism arity exceeds the bound: " + label);
  for (int a : inputs)
    if (a < 0 || a >= object_count()) throw std::invalid_argument("bad input object in " + label);
  if (output < 0 || output >= object_count())
    throw std::invalid_argument("bad output object in " + label);
  if (mor_index_.count(label)) throw std::invalid_argument("duplicate morphism label: " + label);
  int id = morphism_count();
  mor_index_[label] = id;
  hom_index_[{inputs, output}].push_back(id);
  by_output_[output].push_back(id);
  mors_.push_back({std::move(inputs), output, std::move(label)});
  return id;
}

void FinMulticategory::set_identity(int obj, int mor) {
  identity_[obj] = mor;
}

void FinMulticategory::set_composite(int outer, const std::vector<int>& inners, int result) {
  if (finalized_) throw std::logic_error("multicategory already finalized");
  comp_[{outer, inners}] = result;
}

void FinMulticategory::set_composer(Composer c) { composer_ = std::move(c); }

int FinMulticategory::find_object(const std::string& name) const {
  auto it = obj_index_.find(name);
  return it == obj_index_.end() ? -1 : it->second;
}

int FinMulticategory::find_morphism(const std::string& label) const {
  auto it = mor_index_.find(label);
  return it == mor_index_.end() ? -1 : it->second;
}

const std::vector<int>& FinMulticategory::hom(const std::vector<int>& inputs, int output) const {
  auto it = hom_index_.find({inputs, output});
  return it == hom_index_.end() ? empty_vec() : it->second;
}

const std::vector<int>& FinMulticategory::with_output(int obj) const {
  return by_output_[obj];
}

void FinMulticategory::check_tuple(int outer, const std::vector<int>& inners, int* total) const {
  const MulMorphism& f = mors_[outer];
  if (inners.size() != f.inputs.size())
    throw std::invalid_argument("slot count mismatch composing " + f.label);
  int t = 0;
  for (std::size_t i = 0; i < inners.size(); ++i) {
    const MulMorphism& g = mors_[inners[i]];
    if (g.output != f.inputs[i])
      throw std::invalid_argument("slot " + std::to_string(i + 1) + " mismatch composing " +
                                  f.label + " with " + g.label);
    t += static_cast<int>(g.inputs.size());
  }
  *total = t;
}

bool FinMulticategory::has_composite(int outer, const std::vector<int>& inners) const {
  return comp_.count({outer, inners}) != 0;
}

int FinMulticategory::compose(int outer, const std::vector<int>& inners) const {
  int total = 0;
  check_tuple(outer, inners, &total);
  auto it = comp_.find({outer, inners});
  if (it != comp_.end()) return it->second;
  if (total > bound_)
    throw TruncationError("composite arity " + std::to_string(total) +
                          " exceeds the bound " + std::to_string(bound_));
  throw std::invalid_argument("missing composition entry for " + mors_[outer].label);
}

void FinMulticategory::for_each_composable_of(
    int outer, const std::function<void(const std::vector<int>&)>& fn) const {
  const auto& in = mors_[outer].inputs;
  std::vector<int> tuple(in.size());
  std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int total) {
    if (slot == in.size()) {
      fn(tuple);
      return;
    }
    for (int g : by_output_[in[slot]]) {
      int t = total + arity(g);
      if (t > bound_) continue;
      tuple[slot] = g;
      rec(slot + 1, t);
    }
  };
  rec(0, 0);
}

void FinMulticategory::for_each_composable(
    const std::function<void(int, const std::vector<int>&)>& fn) const {
  for (int outer = 0; outer < morphism_count(); ++outer)
    for_each_composable_of(outer,
                           [&](const std::vector<int>& tuple) { fn(outer, tuple); });
}

void FinMulticategory::finalize() {
  if (finalized_) return;
  finalized_ = true;
  if (composer_) {
    for_each_composable([&](int outer, const std::vector<int>& inners) {
      auto key = std::make_pair(outer, inners);
      if (!comp_.count(key)) {
        int r = composer_(*this, outer, inners);
        if (r < 0 || r >= morphism_count())
          throw std::logic_error("composer returned a bad morphism id");
        comp_[key] = r;
      }
    });
  }
}

Report validate_multicat(const FinMulticategory& M, const std::string& name) {
  Report r;
  r.title = name;

  {
    bool ok = true;
    std::string wit;
    for (int o = 0; o < M.object_count() && ok; ++o) {
      int id = M.identity_of(o);
      if (id < 0 || id >= M.morphism_count() ||
          M.morphism(id).inputs != std::vector<int>{o} || M.morphism(id).output != o) {
        ok = false;
        wit = M.object_name(o);
      }
    }
    r.add(name + "-identity-defined", ok, wit);
    if (!ok) return r;
  }

  {
    bool ok = true;
    std::string wit;
    M.for_each_composable([&](int outer, const std::vector<int>& inners) {
      if (!ok) return;
      if (!M.has_composite(outer, inners)) {
        ok = false;
        wit = M.morphism(outer).label;
        return;
      }
      const MulMorphism& res = M.morphism(M.compose(outer, inners));
      std::vector<int> expect;
      for (int g : inners)
        expect.insert(expect.end(), M.morphism(g).inputs.begin(), M.morphism(g).inputs.end());
      if (res.inputs != expect || res.output != M.morphism(outer).output) {
        ok = false;
        wit = "composite of " + M.morphism(outer).label + " mistyped as " + res.label;
      }
    });
    r.add(name + "-composition-total", ok, wit);
    if (!ok) return r;
  }

  {
    bool okL = true, okR = true;
    std::string witL, witR;
    for (int f = 0; f < M.morphism_count(); ++f) {
      const MulMorphism& m = M.morphism(f);
      if (okL && M.compose(M.identity_of(m.output), {f}) != f) {
        okL = false;
        witL = m.label;
      }
      if (okR) {
        std::vector<int> ids;
        for (int a : m.inputs) ids.push_back(M.identity_of(a));
        if (M.compose(f, ids) != f) {
          okR = false;
          witR = m.label;
        }
      }
    }
    r.add(name + "-unit-outer", okL, witL);
    r.add(name + "-unit-inner", okR, witR);
  }

  {
    bool ok = true;
    std::string wit;
    M.for_each_composable([&](int outer, const std::vector<int>& gs) {
      if (!ok) return;
      int fg = M.compose(outer, gs);
      M.for_each_composable_of(fg, [&](const std::vector<int>& hs) {
        if (!ok) return;
        int lhs = M.compose(fg, hs);
        std::vector<int> collapsed(gs.size());
        std::size_t off = 0;
        for (std::size_t i = 0; i < gs.size(); ++i) {
          std::vector<int> block(hs.begin() + off, hs.begin() + off + M.arity(gs[i]));
          off += M.arity(gs[i]);
          collapsed[i] = M.compose(gs[i], block);
        }
        int rhs = M.compose(outer, collapsed);
        if (lhs != rhs) {
          ok = false;
          wit = "outer " + M.morphism(outer).label;
        }
      });
    });
    r.add(name + "-associativity", ok, wit);
  }

  return r;
}

Report validate_multifunctor(const Multifunctor& F, const std::string& name) {
  Report r;
  r.title = name;
  const FinMulticategory& A = *F.src;
  const FinMulticategory& B = *F.tgt;

  bool shape = static_cast<int>(F.object_map.size()) == A.object_count() &&
               static_cast<int>(F.morphism_map.size()) == A.morphism_count();
  r.add(name + "-shape", shape);
  if (!shape) return r;

  {
    bool ok = true;
    std::string wit;
    for (int f = 0; f < A.morphism_count() && ok; ++f) {
      int img = F.morphism_map[f];
      if (img < 0 || img >= B.morphism_count()) {
        ok = false;
        wit = A.morphism(f).label;
        continue;
      }
      const MulMorphism& a = A.morphism(f);
      const MulMorphism& b = B.morphism(img);
      std::vector<int> expect;
      for (int x : a.inputs) expect.push_back(F.object_map[x]);
      if (b.inputs != expect || b.output != F.object_map[a.output]) {
        ok = false;
        wit = a.label;
      }
    }
    r.add(name + "-typing", ok, wit);
    if (!ok) return r;
  }

  {
    bool ok = true;
    std::string wit;
    for (int o = 0; o < A.object_count() && ok; ++o)
      if (F.morphism_map[A.identity_of(o)] != B.identity_of(F.object_map[o])) {
        ok = false;
        wit = A.object_name(o);
      }
    r.add(name + "-identities", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    A.for_each_composable([&](int outer, const std::vector<int>& inners) {
      if (!ok) return;
      std::vector<int> imgs;
      for (int g : inners) imgs.push_back(F.morphism_map[g]);
      if (F.morphism_map[A.compose(outer, inners)] !=
          B.compose(F.morphism_map[outer], imgs)) {
        ok = false;
        wit = A.morphism(outer).label;
      }
    });
    r.add(name + "-composition", ok, wit);
  }

  return r;
}

int Semidirect::find(int f, const Perm& x) const {
  auto it = index.find({f, x});
  return it == index.end() ? -1 : it->second;
}

Semidirect semidirect(const FinMulticategory& M, const GroupOperad& G) {
  if (G.arity_bound() < M.arity_bound())
    throw TruncationError("operad bound below the multicategory bound");
  Semidirect S{FinMulticategory(M.arity_bound(), M.name() + "*" + G.name()), {}, {}};
  for (int o = 0; o < M.object_count(); ++o) S.cat.add_object(M.object_name(o));
  for (int f = 0; f < M.morphism_count(); ++f) {
    int n = M.arity(f);
    for (const Perm& x : G.elements(n)) {
      std::vector<int> ins(n);
      for (int i = 1; i <= n; ++i) ins[i - 1] = M.morphism(f).inputs[x(i) - 1];
      int id = S.cat.add_morphism(std::move(ins), M.morphism(f).output,
                                  M.morphism(f).label + "|" + to_string(x));
      S.parts.emplace_back(f, x);
      S.index[{f, x}] = id;
    }
  }
  for (int o = 0; o < M.object_count(); ++o)
    S.cat.set_identity(o, S.index.at({M.identity_of(o), G.unit(1)}));

  // The composer needs the pair decomposition; capture it by value so the
  // returned struct can be moved freely.
  auto parts = S.parts;
  auto index = S.index;
  const FinMulticategory* Mp = &M;
  const GroupOperad* Gp = &G;
  S.cat.set_composer([parts, index, Mp, Gp](const FinMulticategory&, int outer,
                                            const std::vector<int>& inners) {
    const auto& [f, x] = parts[outer];
    int n = static_cast<int>(inners.size());
    std::vector<int> fs(n);
    std::vector<Perm> xs(n);
    for (int i = 1; i <= n; ++i) {
      fs[i - 1] = parts[inners[i - 1]].first;
      xs[i - 1] = parts[inners[i - 1]].second;
    }
    Perm xinv = inverse(x);
    std::vector<int> slotted(n);
    for (int j = 1; j <= n; ++j) slotted[j - 1] = fs[xinv(j) - 1];
    int mf = Mp->compose(f, slotted);
    Perm mx = Gp->gamma(x, xs);
    return index.at({mf, mx});
  });
  S.cat.finalize();
  return S;
}

Report validate_gsym(const FinMulticategory& M, const GroupOperad& G,
                     const GSymAction& A, const std::string& name) {
  Report r;
  r.title = name;

  {
    bool ok = true;
    std::string wit;
    for (int f = 0; f < M.morphism_count() && ok; ++f) {
      int n = M.arity(f);
      for (const Perm& x : G.elements(n)) {
        int img = A.act(f, x);
        if (img < 0 || img >= M.morphism_count()) {
          ok = false;
          wit = M.morphism(f).label + " under " + to_string(x);
          break;
        }
        std::vector<int> expect(n);
        for (int i = 1; i <= n; ++i) expect[i - 1] = M.morphism(f).inputs[x(i) - 1];
        if (M.morphism(img).inputs != expect ||
            M.morphism(img).output != M.morphism(f).output) {
          ok = false;
          wit = M.morphism(f).label + " mistyped under " + to_string(x) + ": got " +
                word_text(M, M.morphism(img).inputs);
          break;
        }
      }
    }
    r.add(name + "-typing", ok, wit);
    if (!ok) return r;
  }

  {
    bool ok = true;
    std::string wit;
    for (int f = 0; f < M.morphism_count() && ok; ++f)
      if (A.act(f, G.unit(M.arity(f))) != f) {
        ok = false;
        wit = M.morphism(f).label;
      }
    r.add(name + "-unit", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (int f = 0; f < M.morphism_count() && ok; ++f) {
      int n = M.arity(f);
      for (const Perm& x : G.elements(n)) {
        for (const Perm& y : G.elements(n))
          if (A.act(A.act(f, x), y) != A.act(f, mul(x, y))) {
            ok = false;
            wit = M.morphism(f).label + " under " + to_string(x) + "," + to_string(y);
            break;
          }
        if (!ok) break;
      }
    }
    r.add(name + "-mixed-associativity", ok, wit);
  }

  {
    // Collapsing a pair (f, x) to f^x must be a map of multicategories from
    // the semidirect expansion; its composition check is the equivariance law.
    Semidirect S = semidirect(M, G);
    Multifunctor F{&S.cat, &M, {}, {}};
    for (int o = 0; o < M.object_count(); ++o) F.object_map.push_back(o);
    for (int p = 0; p < S.cat.morphism_count(); ++p)
      F.morphism_map.push_back(A.act(S.parts[p].first, S.parts[p].second));
    r.merge(validate_multifunctor(F, name + "-collapse"));
  }

  return r;
}

FinMulticategory terminal_multicat(int arity_bound) {
  FinMulticategory M(arity_bound, "terminal");
  int z = M.add_object("z");
  std::vector<int> at_arity(arity_bound + 1);
  for (int n = 0; n <= arity_bound; ++n)
    at_arity[n] = M.add_morphism(std::vector<int>(n, z), z, "t" + std::to_string(n));
  M.set_identity(z, at_arity[1]);
  M.set_composer([at_arity](const FinMulticategory& m, int, const std::vector<int>& inners) {
    int total = 0;
    for (int g : inners) total += m.arity(g);
    return at_arity[total];
  });
  M.finalize();
  return M;
}

GSymAction fixing_action() {
  return {[](int f, const Perm&) { return f; }};
}

OperadMulticat operad_multicat(const GroupOperad& G, int arity_bound) {
  if (G.arity_bound() < arity_bound)
    throw TruncationError("operad bound below the requested arity bound");
  OperadMulticat R{FinMulticategory(arity_bound, G.name() + "-one-object"), {}, {}, {}};
  int z = R.cat.add_object("z");
  for (int n = 0; n <= arity_bound; ++n)
    for (const Perm& x : G.elements(n)) {
      int id = R.cat.add_morphism(std::vector<int>(n, z), z,
                                  "g" + std::to_string(n) + ":" + to_string(x));
      R.perm_of.push_back(x);
      R.index[{n, x}] = id;
    }
  R.cat.set_identity(z, R.index.at({1, G.unit(1)}));

  auto perm_of = R.perm_of;
  auto index = R.index;
  const GroupOperad* Gp = &G;
  R.cat.set_composer([perm_of, index, Gp](const FinMulticategory& m, int outer,
                                          const std::vector<int>& inners) {
    std::vector<Perm> blocks;
    int total = 0;
    for (int g : inners) {
      blocks.push_back(perm_of[g]);
      total += m.arity(g);
    }
    return index.at({total, Gp->gamma(perm_of[outer], blocks)});
  });
  R.cat.finalize();
  R.action.act = [perm_of, index, Gp](int f, const Perm& x) {
    auto it = index.find({x.size(), mul(perm_of[f], x)});
    return it == index.end() ? -1 : it->second;
  };
  return R;
}

TwoObjectSample two_object_sample(int arity_bound) {
  TwoObjectSample R{FinMulticategory(arity_bound, "two-object"), {}, -1, -1, -1};
  FinMulticategory& M = R.cat;
  int a = M.add_object("a");
  int b = M.add_object("b");
  int id_a = M.add_morphism({a}, a, "id_a");
  R.h = M.add_morphism({a}, a, "h");
  int id_b = M.add_morphism({b}, b, "id_b");

  // One morphism for every source word of length 2..bound, output a.
  std::map<std::vector<int>, int> word_mor;
  for (int len = 2; len <= arity_bound; ++len) {
    std::vector<int> radix(len, 2);
    for_each_tuple(radix, [&](const std::vector<int>& w) {
      std::string lbl = "m_";
      for (int letter : w) lbl += letter == a ? 'a' : 'b';
      word_mor[w] = M.add_morphism(w, a, lbl);
      return true;
    });
  }
  R.f_ab = word_mor.at({a, b});
  R.g_ba = word_mor.at({b, a});
  M.set_identity(a, id_a);
  M.set_identity(b, id_b);

  int h = R.h;
  M.set_composer([word_mor, id_a, h](const FinMulticategory& m, int outer,
                                     const std::vector<int>& inners) {
    std::vector<int> word;
    for (int g : inners)
      word.insert(word.end(), m.morphism(g).inputs.begin(), m.morphism(g).inputs.end());
    if (word.size() >= 2) return word_mor.at(word);
    // Unary outcome: a chain through id_a and the idempotent h.
    if (outer == h) return h;
    return inners.empty() ? outer : inners[0];
  });
  M.finalize();

  std::map<int, std::vector<int>> mor_word;
  for (const auto& [w, mor] : word_mor) mor_word[mor] = w;
  R.action.act = [word_mor, mor_word](int f, const Perm& x) {
    if (x.size() <= 1) return f;
    const std::vector<int>& w = mor_word.at(f);
    std::vector<int> moved(w.size());
    for (int i = 1; i <= x.size(); ++i) moved[i - 1] = w[x(i) - 1];
    return word_mor.at(moved);
  };
  return R;
}

OneObjectSample one_object_sample(int arity_bound) {
  OneObjectSample R{FinMulticategory(arity_bound, "one-object"), {}, -1};
  FinMulticategory& M = R.cat;
  int z = M.add_object("z");
  int id = M.add_morphism({z}, z, "id");
  R.s = M.add_morphism({z}, z, "s");
  std::vector<int> at_arity(arity_bound + 1, -1);
  for (int n = 2; n <= arity_bound; ++n)
    at_arity[n] = M.add_morphism(std::vector<int>(n, z), z, "p" + std::to_string(n));
  M.set_identity(z, id);

  int s = R.s;
  M.set_composer([at_arity, id, s](const FinMulticategory& m, int outer,
                                   const std::vector<int>& inners) {
    int total = 0;
    for (int g : inners) total += m.arity(g);
    if (total >= 2) return at_arity[total];
    // Unary outcome: the order-two group {id, s}.
    int flips = outer == s ? 1 : 0;
    for (int g : inners) flips += g == s ? 1 : 0;
    return flips % 2 ? s : id;
  });
  M.finalize();
  R.action = fixing_action();
  return R;
}

FinMulticategory asymmetric_sample(int arity_bound) {
  FinMulticategory M(arity_bound, "asymmetric");
  int a = M.add_object("a");
  int b = M.add_object("b");
  int id_a = M.add_morphism({a}, a, "id_a");
  int id_b = M.add_morphism({b}, b, "id_b");

  // One morphism for every source word of length 2..bound that ends in b;
  // this set is closed under substituting such words into a-slots.
  std::map<std::vector<int>, int> word_mor;
  for (int len = 2; len <= arity_bound; ++len) {
    std::vector<int> radix(len, 2);
    for_each_tuple(radix, [&](const std::vector<int>& w) {
      if (w.back() != b) return true;
      std::string lbl = "n_";
      for (int letter : w) lbl += letter == a ? 'a' : 'b';
      word_mor[w] = M.add_morphism(w, a, lbl);
      return true;
    });
  }
  M.set_identity(a, id_a);
  M.set_identity(b, id_b);
  M.set_composer([word_mor](const FinMulticategory& m, int outer,
                            const std::vector<int>& inners) {
    std::vector<int> word;
    for (int g : inners)
      word.insert(word.end(), m.morphism(g).inputs.begin(), m.morphism(g).inputs.end());
    if (word.size() >= 2) return word_mor.at(word);
    return inners.empty() ? outer : std::max(outer, inners[0]);
  });
  M.finalize();
  return M;
}

}  // namespace nabla
