#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nabla/util.hpp"
#include "nabla/wreath.hpp"

namespace nabla {

namespace {

// A chosen universal source for a word of carrier objects: lifts[i] is the
// first coCartesian morphism onto word[i] over the letterwise collapse class.
struct Varpi {
  int obj = -1;
  std::vector<int> lifts;
};

class Reconstructor {
 public:
  explicit Reconstructor(OperatorCandidate c) : C_(std::move(c)) {
    const FinCategory& X = *C_.cat;
    from_.resize(X.object_count());
    for (int m = 0; m < X.morphism_count(); ++m) from_[X.src(m)].push_back(m);
  }

  const OperatorCandidate& cand() const { return C_; }
  const FinCategory& carrier() const { return *C_.cat; }
  int level(int obj) const { return C_.anchor.on_object(obj); }
  int identity_class(int n) const { return C_.base->tilde_base().identity(n); }

  // The unique morphism src -> tgt over the anchor class satisfying every
  // condition compose(post, candidate) == want; throws otherwise.
  int solve_unique(int src, int tgt, int base_class,
                   const std::vector<std::pair<int, int>>& conds,
                   const std::string& what) const {
    const FinCategory& X = *C_.cat;
    int found = -1, count = 0;
    for (int cand : X.hom(src, tgt)) {
      if (C_.anchor.on_morphism(cand) != base_class) continue;
      bool ok = true;
      for (const auto& [post, want] : conds)
        if (X.compose(post, cand) != want) {
          ok = false;
          break;
        }
      if (ok) {
        ++count;
        found = cand;
      }
    }
    if (count != 1)
      throw std::runtime_error("reconstruct(" + C_.name + "): " + what + " admits " +
                               std::to_string(count) + " solutions from " +
                               X.object_label(src) + " to " + X.object_label(tgt));
    return found;
  }

  // Memoized universal source (std::map keeps references stable).
  const Varpi& varpi(const std::vector<int>& word) {
    auto it = memo_.find(word);
    if (it != memo_.end()) return it->second;
    Varpi v = compute_varpi(word);
    return memo_.emplace(word, std::move(v)).first->second;
  }

  // theta compares the universal source of nested universal sources with the
  // universal source of the flattened word; theta_inverse is its two-sided
  // inverse.
  int theta(const std::vector<std::vector<int>>& parts) {
    std::vector<int> nested_word, flat;
    for (const auto& part : parts) {
      nested_word.push_back(varpi(part).obj);
      flat.insert(flat.end(), part.begin(), part.end());
    }
    const Varpi nested = varpi(nested_word);
    const Varpi concat = varpi(flat);
    std::vector<std::pair<int, int>> conds;
    int pos = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const Varpi& inner = varpi(parts[i]);
      for (std::size_t j = 0; j < parts[i].size(); ++j, ++pos)
        conds.push_back({concat.lifts[pos],
                         carrier().compose(inner.lifts[j], nested.lifts[i])});
    }
    return solve_unique(nested.obj, concat.obj, identity_class((int)flat.size()), conds,
                        "flattening comparison");
  }

  int theta_inverse(const std::vector<std::vector<int>>& parts) {
    std::vector<int> nested_word, flat;
    for (const auto& part : parts) {
      nested_word.push_back(varpi(part).obj);
      flat.insert(flat.end(), part.begin(), part.end());
    }
    int nested_obj = varpi(nested_word).obj;
    int concat_obj = varpi(flat).obj;
    int th = theta(parts);
    int inv = solve_unique(concat_obj, nested_obj, identity_class((int)flat.size()),
                           {{th, carrier().identity(concat_obj)}},
                           "inverse flattening comparison");
    if (carrier().compose(inv, th) != carrier().identity(nested_obj))
      throw std::runtime_error("reconstruct(" + C_.name +
                               "): flattening comparison is not invertible");
    return inv;
  }

  // The joint extension of per-slot morphisms fs[i]: varpi(parts[i]) ->
  // targets[i] (targets at level 1) to a morphism between universal sources,
  // over the blockwise-collapse class.
  int vertex_joint(const std::vector<std::vector<int>>& parts,
                   const std::vector<int>& fs, const std::vector<int>& targets) {
    std::vector<int> nested_word;
    std::vector<IntervalMap> blocks;
    for (const auto& part : parts) {
      nested_word.push_back(varpi(part).obj);
      blocks.push_back(mu_map((int)part.size()));
    }
    const Varpi nested = varpi(nested_word);
    const Varpi vt = varpi(targets);
    IntervalMap join = join_active(blocks);
    int cls = C_.base->tilde_base_mor(join, C_.base->op->unit(join.dom_n));
    if (cls < 0)
      throw std::runtime_error("reconstruct(" + C_.name + "): collapse class missing");
    std::vector<std::pair<int, int>> conds;
    for (std::size_t i = 0; i < parts.size(); ++i)
      conds.push_back({vt.lifts[i], carrier().compose(fs[i], nested.lifts[i])});
    return solve_unique(nested.obj, vt.obj, cls, conds, "joint extension");
  }

 private:
  Varpi compute_varpi(const std::vector<int>& word) {
    const FinCategory& X = *C_.cat;
    if (word.empty()) {
      for (int o = 0; o < X.object_count(); ++o)
        if (level(o) == 0) return {o, {}};
      throw std::runtime_error("reconstruct(" + C_.name + "): no empty-level object");
    }
    if (word.size() == 1) return {word[0], {X.identity(word[0])}};
    std::vector<int> ks;
    int total = 0;
    for (int o : word) {
      ks.push_back(level(o));
      total += level(o);
    }
    if (total > C_.base->trunc)
      throw TruncationError("reconstruct(" + C_.name + "): universal source at level " +
                            std::to_string(total) + " exceeds the truncation");
    std::vector<int> classes(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) {
      classes[i] =
          C_.base->tilde_base_mor(block_rho(ks, (int)i + 1), C_.base->op->unit(total));
      if (classes[i] < 0)
        throw std::runtime_error("reconstruct(" + C_.name + "): restriction class missing");
    }
    for (int V = 0; V < X.object_count(); ++V) {
      if (level(V) != total) continue;
      Varpi v;
      v.obj = V;
      bool ok = true;
      for (std::size_t i = 0; i < word.size() && ok; ++i) {
        int found = -1;
        for (int f : from_[V]) {
          if (X.tgt(f) != word[i]) continue;
          if (C_.anchor.on_morphism(f) != classes[i]) continue;
          if (!is_cocartesian(C_.anchor, f)) continue;
          found = f;
          break;
        }
        if (found < 0)
          ok = false;
        else
          v.lifts.push_back(found);
      }
      if (ok) return v;
    }
    throw std::runtime_error("reconstruct(" + C_.name +
                             "): no universal source at level " + std::to_string(total));
  }

  OperatorCandidate C_;
  std::vector<std::vector<int>> from_;
  std::map<std::vector<int>, Varpi> memo_;
};

std::string word_string(const FinMulticategory& M, const std::vector<int>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += M.object_name(w[i]);
  }
  return s + ")";
}

}  // namespace

ReconstructResult reconstruct(const OperatorCandidate& C) {
  auto R = std::make_shared<Reconstructor>(C);
  const FinCategory& X = *C.cat;
  int trunc = C.base->trunc;

  ReconstructResult out;
  out.cat = std::make_shared<FinMulticategory>(trunc, C.name + "-multicat");
  FinMulticategory& M = *out.cat;

  auto carrier_objects = std::make_shared<std::vector<int>>();
  std::map<int, int> obj_index;  // carrier object -> extracted object
  for (int o = 0; o < X.object_count(); ++o) {
    if (R->level(o) != 1) continue;
    obj_index[o] = M.add_object(X.object_label(o));
    carrier_objects->push_back(o);
  }

  auto carrier_morphisms = std::make_shared<std::vector<int>>();
  auto registry = std::make_shared<std::map<std::pair<std::vector<int>, int>, int>>();
  for (int m = 0; m <= trunc; ++m) {
    int cls = C.base->tilde_base_mor(mu_map(m), C.base->op->unit(m));
    if (cls < 0) throw std::runtime_error("reconstruct(" + C.name + "): collapse class missing");
    std::vector<int> radix((std::size_t)m, (int)carrier_objects->size());
    for_each_tuple(radix, [&](const std::vector<int>& w) {
      std::vector<int> cword(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) cword[i] = (*carrier_objects)[w[i]];
      const Varpi& v = R->varpi(cword);
      for (int tgt : *carrier_objects) {
        for (int f : X.hom(v.obj, tgt)) {
          if (C.anchor.on_morphism(f) != cls) continue;
          int id = M.add_morphism(w, obj_index.at(tgt),
                                  X.morphism_label(f) + "@" + word_string(M, w));
          (*registry)[{w, f}] = id;
          carrier_morphisms->push_back(f);
        }
      }
      return true;
    });
  }

  for (const auto& [co, eo] : obj_index) {
    auto it = registry->find({{eo}, X.identity(co)});
    if (it == registry->end())
      throw std::runtime_error("reconstruct(" + C.name + "): identity not extracted");
    M.set_identity(eo, it->second);
  }

  M.set_composer([R, carrier_objects, carrier_morphisms, registry](
                     const FinMulticategory& MC, int outer,
                     const std::vector<int>& inners) -> int {
    const FinCategory& X = R->carrier();
    std::vector<std::vector<int>> parts;
    std::vector<int> fs, targets, flat_ext;
    for (std::size_t i = 0; i < inners.size(); ++i) {
      const MulMorphism& g = MC.morphism(inners[i]);
      std::vector<int> part(g.inputs.size());
      for (std::size_t j = 0; j < g.inputs.size(); ++j)
        part[j] = (*carrier_objects)[g.inputs[j]];
      parts.push_back(std::move(part));
      fs.push_back((*carrier_morphisms)[inners[i]]);
      targets.push_back((*carrier_objects)[g.output]);
      flat_ext.insert(flat_ext.end(), MC.morphism(inners[i]).inputs.begin(),
                      MC.morphism(inners[i]).inputs.end());
    }
    int vj = R->vertex_joint(parts, fs, targets);
    int ti = R->theta_inverse(parts);
    int res = X.compose((*carrier_morphisms)[outer], X.compose(vj, ti));
    auto it = registry->find({flat_ext, res});
    if (it == registry->end())
      throw std::runtime_error("reconstruct: composite fell outside the extraction");
    return it->second;
  });
  M.finalize();

  {
    std::shared_ptr<FinMulticategory> MC = out.cat;
    OperatorCandidate cc = C;
    out.action.act = [R, cc, MC, carrier_objects, carrier_morphisms, registry](
                         int e, const Perm& x) -> int {
      const FinCategory& X = R->carrier();
      const std::vector<int>& aword = MC->morphism(e).inputs;
      int m = (int)aword.size();
      if (x.size() != m) return -1;
      std::vector<int> bword(m), bcar(m), acar(m);
      for (int j = 1; j <= m; ++j) bword[j - 1] = aword[x(j) - 1];
      for (int j = 0; j < m; ++j) {
        bcar[j] = (*carrier_objects)[bword[j]];
        acar[j] = (*carrier_objects)[aword[j]];
      }
      const Varpi va = R->varpi(acar);
      const Varpi vb = R->varpi(bcar);
      int xcls = cc.base->tilde_base_mor(interval_identity(m), x);
      if (xcls < 0) return -1;
      Perm xinv = inverse(x);
      std::vector<std::pair<int, int>> conds;
      for (int j = 1; j <= m; ++j) conds.push_back({va.lifts[j - 1], vb.lifts[xinv(j) - 1]});
      int xhat;
      try {
        xhat = R->solve_unique(vb.obj, va.obj, xcls, conds, "permutation comparison");
      } catch (const std::runtime_error&) {
        return -1;
      }
      int xi = X.compose((*carrier_morphisms)[e], xhat);
      int cell = cc.base->tilde_cells_mor(mu_map(m), x, cc.base->op->unit(m));
      if (cell < 0) return -1;
      int res = cc.act(xi, cell);
      if (res < 0) return -1;
      auto it = registry->find({bword, res});
      return it == registry->end() ? -1 : it->second;
    };
  }

  out.carrier_objects = *carrier_objects;
  out.carrier_morphisms = *carrier_morphisms;
  out.source_of = [R, carrier_objects](const std::vector<int>& word) {
    std::vector<int> cword(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) cword[i] = (*carrier_objects)[word[i]];
    const Varpi& v = R->varpi(cword);
    return std::make_pair(v.obj, v.lifts);
  };
  return out;
}

Report roundtrip(const FinMulticategory& M, const GSymAction& A, const GroupOperad& G,
                 int N) {
  Report r;
  std::string name = M.name().empty() ? std::string("roundtrip") : M.name() + "-roundtrip";
  if (M.arity_bound() != N) {
    r.add(name + "-arity-window", false,
          "arity bound " + std::to_string(M.arity_bound()) + " differs from truncation " +
              std::to_string(N));
    return r;
  }
  auto base = make_standard_base(G, N);
  WreathOperator WO = wreath_operator(M, A, base);
  const WreathCategory& W = *WO.wreath;
  const FinCategory& X = *WO.mat.cat;

  ReconstructResult rec;
  try {
    rec = reconstruct(WO.candidate);
  } catch (const std::exception& e) {
    r.add(name + "-extraction", false, e.what());
    return r;
  }
  r.add(name + "-extraction", true, rec.cat->name());
  r.merge(validate_multicat(*rec.cat, name + "-laws"));
  r.merge(validate_gsym(*rec.cat, G, rec.action, name + "-action"));

  // The explicit comparison: each object goes to the extraction of its
  // singleton word, each morphism to the extracted morphism carried by its
  // wreath form corrected by the comparison onto the chosen universal source.
  std::map<int, int> ext_of_carrier;  // carrier object -> extracted object
  for (std::size_t e = 0; e < rec.carrier_objects.size(); ++e)
    ext_of_carrier[rec.carrier_objects[e]] = (int)e;
  std::map<std::pair<std::vector<int>, int>, int> lookup;
  for (int e = 0; e < rec.cat->morphism_count(); ++e)
    lookup[{rec.cat->morphism(e).inputs, rec.carrier_morphisms[e]}] = e;

  Multifunctor F;
  F.src = &M;
  F.tgt = rec.cat.get();
  bool built = true;
  std::string build_detail;
  F.object_map.resize(M.object_count(), -1);
  for (int a = 0; a < M.object_count() && built; ++a) {
    int wo = W.find_word({a});
    auto it = ext_of_carrier.find(wo);
    if (wo < 0 || it == ext_of_carrier.end()) {
      built = false;
      build_detail = "object " + M.object_name(a) + " not extracted";
      break;
    }
    F.object_map[a] = it->second;
  }
  F.morphism_map.resize(M.morphism_count(), -1);
  Reconstructor solver(WO.candidate);
  for (int f = 0; f < M.morphism_count() && built; ++f) {
    const MulMorphism& mm = M.morphism(f);
    int m = (int)mm.inputs.size();
    int src_obj = W.find_word(mm.inputs);
    int anchor = W.anchor_of(mu_map(m), G.unit(m), G.unit(m));
    int wf = anchor < 0 ? -1 : W.find(src_obj, anchor, {f});
    if (wf < 0) {
      built = false;
      build_detail = "wreath form of " + mm.label + " missing";
      break;
    }
    std::vector<int> eword(m);
    for (int i = 0; i < m; ++i) eword[i] = F.object_map[mm.inputs[i]];
    auto [vobj, vlifts] = rec.source_of(eword);
    // pi: chosen universal source -> the word object, matching lifts.
    int pi = -1;
    try {
      std::vector<std::pair<int, int>> conds;
      for (int i = 0; i < m; ++i) {
        int lcls = base->tilde_base_mor(rho_map(m, i + 1), G.unit(m));
        conds.push_back({std_cocart_lift(W, lcls, src_obj), vlifts[i]});
      }
      pi = solver.solve_unique(vobj, src_obj,
                               base->tilde_base().identity(m), conds, "source comparison");
    } catch (const std::exception& e) {
      built = false;
      build_detail = e.what();
      break;
    }
    auto it = lookup.find({eword, X.compose(wf, pi)});
    if (it == lookup.end()) {
      built = false;
      build_detail = "image of " + mm.label + " not extracted";
      break;
    }
    F.morphism_map[f] = it->second;
  }
  r.add(name + "-comparison", built, build_detail);
  if (!built) return r;

  r.merge(validate_multifunctor(F, name + "-map"));

  bool obj_bij = (int)rec.carrier_objects.size() == M.object_count();
  {
    std::vector<char> hit(rec.carrier_objects.size(), 0);
    for (int a = 0; a < M.object_count() && obj_bij; ++a) {
      if (hit[F.object_map[a]]) obj_bij = false;
      hit[F.object_map[a]] = 1;
    }
  }
  bool mor_bij = rec.cat->morphism_count() == M.morphism_count();
  {
    std::vector<char> hit(rec.cat->morphism_count(), 0);
    for (int f = 0; f < M.morphism_count() && mor_bij; ++f) {
      if (hit[F.morphism_map[f]]) mor_bij = false;
      hit[F.morphism_map[f]] = 1;
    }
  }
  r.add(name + "-bijective", obj_bij && mor_bij,
        std::to_string(rec.cat->morphism_count()) + " vs " +
            std::to_string(M.morphism_count()));

  bool equiv = true;
  std::string edetail;
  for (int f = 0; f < M.morphism_count() && equiv; ++f) {
    for (const Perm& x : G.elements(M.arity(f))) {
      int lhs = A.act(f, x);
      int rhs = rec.action.act(F.morphism_map[f], x);
      if (lhs < 0 || rhs < 0 || F.morphism_map[lhs] != rhs) {
        equiv = false;
        edetail = M.morphism(f).label + " by " + to_string(x);
        break;
      }
    }
  }
  r.add(name + "-equivariant", equiv, edetail);
  return r;
}

Report check_transfer(const WreathOperator& from, const WreathOperator& to,
                      const Multifunctor& F, const std::string& name) {
  Report r;
  const WreathCategory& W1 = *from.wreath;
  const WreathCategory& W2 = *to.wreath;
  const FinCategory& X2 = *to.mat.cat;
  const FinMulticategory& M1 = W1.multicat();
  const FinMulticategory& M2 = W2.multicat();
  const StandardBase& b = *from.base;
  const GroupOperad& G = *b.op;

  std::vector<int> H;
  try {
    H = induced_wreath_morphisms(W1, W2, F);
  } catch (const std::exception& e) {
    r.add(name + "-induced", false, e.what());
    return r;
  }
  r.add(name + "-induced", true);

  bool ok = true;
  std::string detail;
  for (int f = 0; f < M1.morphism_count() && ok; ++f) {
    const MulMorphism& mm = M1.morphism(f);
    int m = (int)mm.inputs.size();
    if (m > b.trunc) continue;  // outside the truncated wreath
    int src1 = W1.find_word(mm.inputs);
    int anchor = W1.anchor_of(mu_map(m), G.unit(m), G.unit(m));
    int wf = anchor < 0 ? -1 : W1.find(src1, anchor, {f});
    if (wf < 0) {
      ok = false;
      detail = "wreath form of " + mm.label + " missing";
      break;
    }
    int vertex = W2.at(H[wf]).fs[0];
    std::vector<int> lambdas(m);
    for (int i = 0; i < m && ok; ++i) {
      int lcls = b.tilde_base_mor(rho_map(m, i + 1), G.unit(m));
      int sl1 = std_cocart_lift(W1, lcls, src1);
      int img_src = W2.src(H[sl1]);
      int sl2 = std_cocart_lift(W2, lcls, img_src);
      int id1 = b.tilde_base().identity(1);
      int found = -1, count = 0;
      for (int cand : W2.hom(W2.tgt(H[sl1]), W2.tgt(sl2))) {
        if (W2.at(cand).anchor != id1) continue;
        if (X2.compose(cand, H[sl1]) != sl2) continue;
        ++count;
        found = cand;
      }
      if (count != 1) {
        ok = false;
        detail = "adapter " + std::to_string(i + 1) + " of " + mm.label + " admits " +
                 std::to_string(count) + " solutions";
        break;
      }
      int lam = W2.at(found).fs[0];
      // Adapters must be unary isomorphisms of the target multicategory.
      bool iso = false;
      for (int g : M2.hom({M2.morphism(lam).output}, M2.morphism(lam).inputs[0]))
        if (M2.compose(lam, {g}) == M2.identity_of(M2.morphism(lam).output) &&
            M2.compose(g, {lam}) == M2.identity_of(M2.morphism(lam).inputs[0])) {
          iso = true;
          break;
        }
      if (!iso) {
        ok = false;
        detail = "adapter " + std::to_string(i + 1) + " of " + mm.label + " is not invertible";
        break;
      }
      lambdas[i] = lam;
    }
    if (!ok) break;
    if (M2.compose(vertex, lambdas) != F.on_morphism(f)) {
      ok = false;
      detail = "transfer of " + mm.label + " disagrees";
    }
  }
  r.add(name + "-recovers", ok, detail);
  return r;
}

}  // namespace nabla
