#include "nabla/wreath.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

#include "nabla/util.hpp"

namespace nabla {

namespace {

// All morphisms of M whose input word is exactly w, in id order.
std::vector<int> mors_with_inputs(const FinMulticategory& M, const std::vector<int>& w) {
  std::vector<int> out;
  for (int b = 0; b < M.object_count(); ++b) {
    const auto& h = M.hom(w, b);
    out.insert(out.end(), h.begin(), h.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

int StandardBase::base_mor(const IntervalMap& phi, const Perm& x) const {
  return D.base.find(phi, x);
}

int StandardBase::cells_mor(const IntervalMap& phi, const Perm& u, const Perm& x) const {
  return D.find(phi, u, x);
}

int StandardBase::tilde_base_mor(const IntervalMap& phi, const Perm& x) const {
  int m = D.base.find(phi, x);
  return m < 0 ? -1 : T.base.class_of[m];
}

int StandardBase::tilde_cells_mor(const IntervalMap& phi, const Perm& u, const Perm& x) const {
  int m = D.find(phi, u, x);
  return m < 0 ? -1 : T.cells.class_of[m];
}

std::shared_ptr<StandardBase> make_standard_base(const GroupOperad& G, int N) {
  auto b = std::make_shared<StandardBase>();
  b->op = &G;
  b->trunc = N;
  b->vertical = closure_family(block_family(G));
  b->lower = closure_family(block_kernel_family(G));
  b->inner = min_proper_family(G);
  b->D = build_double_quotal(G, b->vertical, b->lower, N);
  b->T = build_tilde_double(b->D);
  return b;
}

// ---------------------------------------------------------------------------
// WreathCategory

WreathCategory::WreathCategory(const FinMulticategory& M,
                               std::shared_ptr<StandardBase> base, WreathVariant variant)
    : M_(&M), base_(std::move(base)), variant_(variant) {
  if (M.arity_bound() < base_->trunc)
    throw std::invalid_argument("wreath: multicategory arity bound below the truncation");
  for (int k = 0; k <= base_->trunc; ++k) units_.push_back(perm_identity(k));
  add_objects();
  add_morphisms();
}

const FinCategory& WreathCategory::anchor_category() const {
  switch (variant_) {
    case WreathVariant::Base: return *base_->D.base.cat;
    case WreathVariant::TildeBase: return *base_->T.base.cat;
    case WreathVariant::Cells: return *base_->D.cells;
    case WreathVariant::TildeCells: return *base_->T.cells.cat;
  }
  throw std::logic_error("wreath: bad variant");
}

void WreathCategory::anchor_data(int anchor, const IntervalMap** phi, const Perm** u,
                                 const Perm** x) const {
  const StandardBase& b = *base_;
  switch (variant_) {
    case WreathVariant::Base: {
      *phi = &b.D.base.phi_of[anchor];
      *x = &b.D.base.rep_of[anchor];
      *u = &units_[(*phi)->dom_n];
      return;
    }
    case WreathVariant::TildeBase: {
      int m = b.T.base.rep_mor[anchor];
      *phi = &b.D.base.phi_of[m];
      *x = &b.D.base.rep_of[m];
      *u = &units_[(*phi)->dom_n];
      return;
    }
    case WreathVariant::Cells: {
      *phi = &b.D.phi_of[anchor];
      *u = &b.D.u_of[anchor];
      *x = &b.D.x_of[anchor];
      return;
    }
    case WreathVariant::TildeCells: {
      int m = b.T.cells.rep_mor[anchor];
      *phi = &b.D.phi_of[m];
      *u = &b.D.u_of[m];
      *x = &b.D.x_of[m];
      return;
    }
  }
  throw std::logic_error("wreath: bad variant");
}

int WreathCategory::anchor_of(const IntervalMap& phi, const Perm& u, const Perm& x) const {
  switch (variant_) {
    case WreathVariant::Base: return base_->base_mor(phi, x);
    case WreathVariant::TildeBase: return base_->tilde_base_mor(phi, x);
    case WreathVariant::Cells: return base_->cells_mor(phi, u, x);
    case WreathVariant::TildeCells: return base_->tilde_cells_mor(phi, u, x);
  }
  throw std::logic_error("wreath: bad variant");
}

const IntervalMap& WreathCategory::phi_of(int mor) const {
  const IntervalMap* phi;
  const Perm *u, *x;
  anchor_data(mors_[mor].anchor, &phi, &u, &x);
  return *phi;
}

const Perm& WreathCategory::u_of(int mor) const {
  const IntervalMap* phi;
  const Perm *u, *x;
  anchor_data(mors_[mor].anchor, &phi, &u, &x);
  return *u;
}

const Perm& WreathCategory::x_of(int mor) const {
  const IntervalMap* phi;
  const Perm *u, *x;
  anchor_data(mors_[mor].anchor, &phi, &u, &x);
  return *x;
}

std::vector<int> WreathCategory::component_word(int anchor, const std::vector<int>& w,
                                                int j) const {
  const IntervalMap* phi;
  const Perm *u, *x;
  anchor_data(anchor, &phi, &u, &x);
  std::vector<int> moved = act_word(mul(*u, *x), w);
  return word_fiber(moved, *phi, j + 1);
}

void WreathCategory::add_objects() {
  int objs = M_->object_count();
  for (int len = 0; len <= base_->trunc; ++len) {
    std::vector<int> radix(len, objs);
    for_each_tuple(radix, [&](const std::vector<int>& t) {
      word_index_[t] = (int)words_.size();
      words_.push_back(t);
      return true;
    });
  }
}

void WreathCategory::add_morphisms() {
  const FinCategory& A = anchor_category();
  from_.resize(words_.size());
  for (int a = 0; a < A.morphism_count(); ++a) {
    const IntervalMap* phi;
    const Perm *u, *x;
    anchor_data(a, &phi, &u, &x);
    int m = phi->dom_n, n = phi->cod_n;
    for (int sobj = 0; sobj < object_count(); ++sobj) {
      if ((int)words_[sobj].size() != m) continue;
      std::vector<std::vector<int>> cands(n);
      std::vector<int> radix(n);
      bool feasible = true;
      for (int j = 0; j < n; ++j) {
        cands[j] = mors_with_inputs(*M_, component_word(a, words_[sobj], j));
        radix[j] = (int)cands[j].size();
        if (cands[j].empty()) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      for_each_tuple(radix, [&](const std::vector<int>& t) {
        std::vector<int> fs(n), outw(n);
        for (int j = 0; j < n; ++j) {
          fs[j] = cands[j][t[j]];
          outw[j] = M_->morphism(fs[j]).output;
        }
        int tobj = word_index_.at(outw);
        int id = (int)mors_.size();
        mors_.push_back({sobj, tobj, a, fs});
        index_[{sobj, a, fs}] = id;
        homs_[{sobj, tobj}].push_back(id);
        from_[sobj].push_back(id);
        return true;
      });
    }
  }
  identity_.assign(words_.size(), -1);
  for (int o = 0; o < object_count(); ++o) {
    int n = (int)words_[o].size();
    std::vector<int> fs(n);
    for (int j = 0; j < n; ++j) fs[j] = M_->identity_of(words_[o][j]);
    identity_[o] = find(o, anchor_category().identity(n), fs);
    if (identity_[o] < 0) throw std::logic_error("wreath: identity morphism missing");
  }
}

std::string WreathCategory::object_label(int obj) const {
  std::string s = "(";
  const std::vector<int>& w = words_[obj];
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += M_->object_name(w[i]);
  }
  return s + ")";
}

int WreathCategory::find_word(const std::vector<int>& w) const {
  auto it = word_index_.find(w);
  return it == word_index_.end() ? -1 : it->second;
}

std::string WreathCategory::label(int mor) const {
  const WreathMorphism& w = mors_[mor];
  std::string s = "[" + anchor_category().morphism_label(w.anchor) + ";";
  for (std::size_t j = 0; j < w.fs.size(); ++j) {
    if (j) s += ",";
    s += M_->morphism(w.fs[j]).label;
  }
  return s + "]@" + object_label(w.src);
}

int WreathCategory::find(int src_obj, int anchor, const std::vector<int>& fs) const {
  auto it = index_.find(std::make_tuple(src_obj, anchor, fs));
  return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& WreathCategory::hom(int a, int b) const {
  static const std::vector<int> empty;
  auto it = homs_.find({a, b});
  return it == homs_.end() ? empty : it->second;
}

int WreathCategory::compose(int g, int f) const {
  const WreathMorphism& wg = mors_[g];
  const WreathMorphism& wf = mors_[f];
  if (wf.tgt != wg.src) throw std::invalid_argument("wreath compose: endpoint mismatch");
  const GroupOperad& G = *base_->op;
  const IntervalMap *psi, *phi;
  const Perm *v, *y, *u, *x;
  anchor_data(wg.anchor, &psi, &v, &y);
  anchor_data(wf.anchor, &phi, &u, &x);
  CrossedPair c = crossed_action(G, *phi, *y);
  IntervalMap phi2 = nabla::compose(*psi, c.pushed);
  Perm vy = mul(*v, *y);
  Perm pvy = crossed_pullback(G, *phi, vy);
  Perm u2 = mul(pvy, mul(*u, inverse(c.pullback)));
  Perm x2 = mul(c.pullback, *x);
  std::vector<int> moved = act_word(vy, wf.fs);
  int l = psi->cod_n;
  std::vector<int> fs(l);
  for (int j = 0; j < l; ++j) fs[j] = M_->compose(wg.fs[j], word_fiber(moved, *psi, j + 1));
  int a2 = anchor_of(phi2, u2, x2);
  if (a2 < 0) throw std::logic_error("wreath compose: anchor missing");
  int r = find(wf.src, a2, fs);
  if (r < 0) throw std::logic_error("wreath compose: composite missing");
  return r;
}

WreathCategory::Materialized WreathCategory::materialize() const {
  Materialized out;
  out.cat = std::make_shared<FinCategory>();
  FinCategory& c = *out.cat;
  for (int o = 0; o < object_count(); ++o) c.add_object(object_label(o));
  for (int m = 0; m < morphism_count(); ++m)
    c.add_morphism(mors_[m].src, mors_[m].tgt, label(m));
  for (int o = 0; o < object_count(); ++o) c.set_identity(o, identity_[o]);
  c.set_composer([this](int g, int f) { return compose(g, f); });
  c.finalize();
  out.anchor.src = out.cat.get();
  out.anchor.tgt = &anchor_category();
  out.anchor.object_map.resize(object_count());
  for (int o = 0; o < object_count(); ++o)
    out.anchor.object_map[o] = (int)words_[o].size();
  out.anchor.morphism_map.resize(morphism_count());
  for (int m = 0; m < morphism_count(); ++m) out.anchor.morphism_map[m] = mors_[m].anchor;
  return out;
}

// ---------------------------------------------------------------------------
// Lifts

int std_cocart_lift(const WreathCategory& W, int anchor, int src_obj) {
  const IntervalMap* phi;
  const Perm *u, *x;
  W.anchor_data(anchor, &phi, &u, &x);
  if (!is_inert(*phi))
    throw std::invalid_argument("standard lift: anchor representative not inert");
  if ((int)W.word(src_obj).size() != phi->dom_n)
    throw std::invalid_argument("standard lift: word length mismatch");
  int n = phi->cod_n;
  std::vector<int> fs(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> w = W.component_word(anchor, W.word(src_obj), j);
    if (w.size() != 1) throw std::logic_error("standard lift: non-singleton fibre");
    fs[j] = W.multicat().identity_of(w[0]);
  }
  int r = W.find(src_obj, anchor, fs);
  if (r < 0) throw std::logic_error("standard lift: morphism missing");
  return r;
}

bool wreath_is_cocartesian(const WreathCategory& W, int mor, std::string* why) {
  const FinCategory& B = W.anchor_category();
  int pf = W.at(mor).anchor;
  for (int h : W.from(W.src(mor))) {
    int ph = W.at(h).anchor;
    for (int w : B.hom(B.tgt(pf), B.tgt(ph))) {
      if (B.compose(w, pf) != ph) continue;
      int count = 0;
      for (int g : W.hom(W.tgt(mor), W.tgt(h)))
        if (W.at(g).anchor == w && W.compose(g, mor) == h) ++count;
      if (count != 1) {
        if (why)
          *why = std::to_string(count) + " fillers for " + W.label(h) + " along " +
                 B.morphism_label(w);
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presheaf action and candidates

std::function<int(int, int)> wreath_presheaf_action(
    std::shared_ptr<const WreathCategory> W, GSymAction A) {
  if (W->variant() != WreathVariant::Base && W->variant() != WreathVariant::TildeBase)
    throw std::invalid_argument("presheaf action: need a single-level wreath");
  bool tilde = W->variant() == WreathVariant::TildeBase;
  return [W, A, tilde](int m, int cell) -> int {
    const StandardBase& b = W->standard();
    int rep = tilde ? b.T.cells.rep_mor[cell] : cell;
    const IntervalMap& phi = b.D.phi_of[rep];
    const Perm& u = b.D.u_of[rep];
    const Perm& x = b.D.x_of[rep];
    Perm ux = mul(u, x);
    int want = tilde ? b.tilde_base_mor(phi, ux) : b.base_mor(phi, ux);
    const WreathMorphism& wm = W->at(m);
    if (wm.anchor != want) return -1;
    int n = phi.cod_n;
    std::vector<int> fs(n);
    for (int j = 0; j < n; ++j) {
      Perm dj = crossed_pullback(*b.op, fiber_section(phi, j + 1), u);
      fs[j] = A.act ? A.act(wm.fs[j], dj) : -1;
      if (fs[j] < 0) return -1;
    }
    int a2 = tilde ? b.tilde_base_mor(phi, x) : b.base_mor(phi, x);
    if (a2 < 0) return -1;
    return W->find(wm.src, a2, fs);
  };
}

OperatorCandidate base_operator_candidate(std::shared_ptr<StandardBase> base) {
  OperatorCandidate c;
  c.base = base;
  c.cat = base->T.base.cat.get();
  c.anchor = identity_functor(*c.cat);
  c.act = [base](int m, int cell) -> int {
    if (base->T.dc.tgt_f.on_morphism(cell) != m) return -1;
    return base->T.dc.src_f.on_morphism(cell);
  };
  c.name = "anchor-base";
  return c;
}

OperatorCandidate cells_operator_candidate(std::shared_ptr<StandardBase> base) {
  OperatorCandidate c;
  c.base = base;
  c.cat = base->T.cells.cat.get();
  c.anchor = base->T.dc.src_f;
  c.act = [base](int m, int cell) -> int {
    if (base->T.dc.src_f.on_morphism(m) != base->T.dc.tgt_f.on_morphism(cell)) return -1;
    return base->T.dc.vcomp(m, cell);
  };
  c.name = "anchor-cells";
  return c;
}

WreathOperator wreath_operator(const FinMulticategory& M, const GSymAction& A,
                               std::shared_ptr<StandardBase> base) {
  WreathOperator w;
  w.base = base;
  w.wreath = std::make_shared<WreathCategory>(M, base, WreathVariant::TildeBase);
  w.mat = w.wreath->materialize();
  w.candidate.base = base;
  w.candidate.cat = w.mat.cat.get();
  w.candidate.anchor = w.mat.anchor;
  w.candidate.act = wreath_presheaf_action(w.wreath, A);
  w.candidate.name = (M.name().empty() ? std::string("wreath") : M.name() + "-wreath");
  return w;
}

// ---------------------------------------------------------------------------
// Operator-category validation

namespace {

struct Fiber {
  std::shared_ptr<FinCategory> cat;
  std::vector<int> objs;  // carrier object per fiber object
  std::map<int, int> obj_index;
  std::vector<int> mors;  // carrier morphism per fiber morphism
  std::map<int, int> mor_index;
};

Fiber make_fiber(const OperatorCandidate& C, int n) {
  Fiber F;
  F.cat = std::make_shared<FinCategory>();
  const FinCategory& X = *C.cat;
  int idn = C.base->tilde_base().identity(n);
  for (int o = 0; o < X.object_count(); ++o) {
    if (C.anchor.on_object(o) != n) continue;
    F.obj_index[o] = F.cat->add_object(X.object_label(o));
    F.objs.push_back(o);
  }
  for (int m = 0; m < X.morphism_count(); ++m) {
    if (C.anchor.on_morphism(m) != idn) continue;
    F.mor_index[m] =
        F.cat->add_morphism(F.obj_index.at(X.src(m)), F.obj_index.at(X.tgt(m)),
                            X.morphism_label(m));
    F.mors.push_back(m);
  }
  for (int o : F.objs) F.cat->set_identity(F.obj_index.at(o), F.mor_index.at(X.identity(o)));
  F.cat->set_composer(
      [cat = C.cat, mors = F.mors, idx = F.mor_index](int g, int f) {
        return idx.at(cat->compose(mors[g], mors[f]));
      });
  F.cat->finalize();
  return F;
}

struct Power {
  std::shared_ptr<FinCategory> cat;
  std::map<std::vector<int>, int> obj_index;
  std::map<std::vector<int>, int> mor_index;
};

Power make_power(std::shared_ptr<FinCategory> base, int n) {
  Power P;
  P.cat = std::make_shared<FinCategory>();
  std::vector<std::vector<int>> obj_tuples, mor_tuples;
  for_each_tuple(std::vector<int>(n, base->object_count()),
                 [&](const std::vector<int>& t) {
                   std::string lbl = "(";
                   for (std::size_t i = 0; i < t.size(); ++i) {
                     if (i) lbl += "|";
                     lbl += base->object_label(t[i]);
                   }
                   P.obj_index[t] = P.cat->add_object(lbl + ")");
                   obj_tuples.push_back(t);
                   return true;
                 });
  for_each_tuple(std::vector<int>(n, base->morphism_count()),
                 [&](const std::vector<int>& t) {
                   std::vector<int> s(n), g(n);
                   std::string lbl = "(";
                   for (int i = 0; i < n; ++i) {
                     s[i] = base->src(t[i]);
                     g[i] = base->tgt(t[i]);
                     if (i) lbl += "|";
                     lbl += base->morphism_label(t[i]);
                   }
                   P.mor_index[t] =
                       P.cat->add_morphism(P.obj_index.at(s), P.obj_index.at(g), lbl + ")");
                   mor_tuples.push_back(t);
                   return true;
                 });
  for (const auto& [t, o] : P.obj_index) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = base->identity(t[i]);
    P.cat->set_identity(o, P.mor_index.at(ids));
  }
  P.cat->set_composer([base, mi = P.mor_index, mt = mor_tuples](int g, int f) {
    std::vector<int> out(mt[g].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = base->compose(mt[g][i], mt[f][i]);
    return mi.at(out);
  });
  P.cat->finalize();
  return P;
}

}  // namespace

Report validate_operator_category(const OperatorCandidate& C) {
  Report r;
  const FinCategory& X = *C.cat;
  const FinCategory& B = C.base->tilde_base();
  const std::string& nm = C.name;

  r.merge(validate_functor(C.anchor, nm + "-anchor"));
  {
    InternalPresheaf p;
    p.dc = &C.base->T.dc;
    p.carrier = C.cat;
    p.anchor = C.anchor;
    p.act = C.act;
    Report pr = check_internal_presheaf(p);
    for (auto& c : pr.checks) c.id = nm + "-" + c.id;
    r.merge(pr);
  }

  std::vector<std::vector<int>> from(X.object_count());
  for (int m = 0; m < X.morphism_count(); ++m) from[X.src(m)].push_back(m);

  auto rep_phi = [&](int bm) -> const IntervalMap& {
    return C.base->D.base.phi_of[C.base->T.base.rep_mor[bm]];
  };

  // Every inert anchor class lifts coCartesianly from every object over its
  // source; remember the chosen lifts.
  std::map<std::pair<int, int>, int> chosen;
  bool lifts_ok = true;
  std::string lifts_detail;
  for (int bm = 0; bm < B.morphism_count() && lifts_ok; ++bm) {
    if (!is_inert(rep_phi(bm))) continue;
    for (int o = 0; o < X.object_count(); ++o) {
      if (C.anchor.on_object(o) != B.src(bm)) continue;
      int found = -1;
      for (int f : from[o]) {
        if (C.anchor.on_morphism(f) != bm) continue;
        if (!is_cocartesian(C.anchor, f)) continue;
        found = f;
        break;
      }
      if (found < 0) {
        lifts_ok = false;
        lifts_detail = "no lift of " + B.morphism_label(bm) + " from " + X.object_label(o);
        break;
      }
      chosen[{o, bm}] = found;
    }
  }
  r.add(nm + "-inert-lifts", lifts_ok, lifts_detail);

  // Letterwise projections from every object.
  std::vector<std::vector<int>> proj(X.object_count());
  bool proj_ok = lifts_ok;
  if (proj_ok) {
    for (int o = 0; o < X.object_count() && proj_ok; ++o) {
      int n = C.anchor.on_object(o);
      for (int i = 1; i <= n; ++i) {
        int bm = C.base->tilde_base_mor(rho_map(n, i), C.base->op->unit(n));
        auto it = chosen.find({o, bm});
        if (it == chosen.end()) {
          proj_ok = false;
          break;
        }
        proj[o].push_back(it->second);
      }
    }
  }

  // Morphisms into an object are exactly anchored tuples of letterwise
  // projections: injectivity plus the counting identity.
  bool pb_ok = proj_ok;
  std::string pb_detail = proj_ok ? "" : "no letterwise projections";
  if (pb_ok) {
    for (int o = 0; o < X.object_count() && pb_ok; ++o) {
      int n = C.anchor.on_object(o);
      std::vector<int> letters(n), beta(n);
      for (int i = 0; i < n; ++i) {
        letters[i] = X.tgt(proj[o][i]);
        beta[i] = C.anchor.on_morphism(proj[o][i]);
      }
      for (int w = 0; w < X.object_count() && pb_ok; ++w) {
        const std::vector<int>& homs = X.hom(w, o);
        std::set<std::vector<int>> seen;
        for (int h : homs) {
          std::vector<int> key{C.anchor.on_morphism(h)};
          for (int i = 0; i < n; ++i) key.push_back(X.compose(proj[o][i], h));
          if (!seen.insert(key).second) {
            pb_ok = false;
            pb_detail = "projections do not separate " + X.object_label(w) + " -> " +
                        X.object_label(o);
          }
        }
        if (!pb_ok) break;
        long total = 0;
        for (int b : B.hom(C.anchor.on_object(w), n)) {
          long prod = 1;
          for (int i = 0; i < n && prod; ++i) {
            int want = B.compose(beta[i], b);
            long cnt = 0;
            for (int h : X.hom(w, letters[i]))
              if (C.anchor.on_morphism(h) == want) ++cnt;
            prod *= cnt;
          }
          total += prod;
        }
        if (total != (long)homs.size()) {
          pb_ok = false;
          pb_detail = "counting mismatch at " + X.object_label(w) + " -> " +
                      X.object_label(o) + ": " + std::to_string(total) + " vs " +
                      std::to_string(homs.size());
        }
      }
    }
  }
  r.add(nm + "-hom-pullback", pb_ok, pb_detail);

  // The letterwise projections assemble into an equivalence from each fibre
  // onto the power of the letter fibre.
  bool comp_ok = proj_ok;
  std::string comp_detail = proj_ok ? "" : "no letterwise projections";
  if (proj_ok) {
    Fiber F1 = make_fiber(C, 1);
    for (int n = 0; n <= C.base->trunc && comp_ok; ++n) {
      Fiber Fn = make_fiber(C, n);
      Power P = make_power(F1.cat, n);
      Functor pi;
      pi.src = Fn.cat.get();
      pi.tgt = P.cat.get();
      int id1 = B.identity(1);
      for (int fo = 0; fo < (int)Fn.objs.size(); ++fo) {
        std::vector<int> t(n);
        for (int i = 0; i < n; ++i) t[i] = F1.obj_index.at(X.tgt(proj[Fn.objs[fo]][i]));
        pi.object_map.push_back(P.obj_index.at(t));
      }
      for (int fm = 0; fm < (int)Fn.mors.size() && comp_ok; ++fm) {
        int m = Fn.mors[fm];
        int so = X.src(m), to = X.tgt(m);
        std::vector<int> t(n);
        for (int i = 0; i < n && comp_ok; ++i) {
          int found = -1, cnt = 0;
          for (int g : X.hom(X.tgt(proj[so][i]), X.tgt(proj[to][i]))) {
            if (C.anchor.on_morphism(g) != id1) continue;
            if (X.compose(g, proj[so][i]) != X.compose(proj[to][i], m)) continue;
            ++cnt;
            found = g;
          }
          if (cnt != 1) {
            comp_ok = false;
            comp_detail = "component of " + X.morphism_label(m) + " at slot " +
                          std::to_string(i + 1) + " admits " + std::to_string(cnt) +
                          " solutions";
            break;
          }
          t[i] = F1.mor_index.at(found);
        }
        if (comp_ok) pi.morphism_map.push_back(P.mor_index.at(t));
      }
      if (comp_ok) {
        Report eq = check_equivalence(pi, nm + "-fiber-" + std::to_string(n));
        r.merge(eq);
        if (!eq.ok()) comp_ok = false;
      }
    }
  }
  r.add(nm + "-fiber-product", comp_ok, comp_detail);
  return r;
}

Report check_fiber_decomposition(const WreathCategory& W, const std::string& name) {
  Report r;
  const FinMulticategory& M = W.multicat();
  bool bij = true, comp = true;
  std::string d1, d2;
  for (int n = 0; n <= W.standard().trunc && (bij || comp); ++n) {
    int ia = W.anchor_category().identity(n);
    for (int a = 0; a < W.object_count(); ++a) {
      if ((int)W.word(a).size() != n) continue;
      for (int b = 0; b < W.object_count(); ++b) {
        if ((int)W.word(b).size() != n) continue;
        std::size_t prod = 1;
        for (int i = 0; i < n; ++i)
          prod *= M.hom({W.word(a)[i]}, W.word(b)[i]).size();
        std::size_t cnt = 0;
        std::vector<int> fiber;
        for (int m : W.hom(a, b))
          if (W.at(m).anchor == ia) {
            ++cnt;
            fiber.push_back(m);
          }
        if (cnt != prod) {
          bij = false;
          d1 = W.object_label(a) + " -> " + W.object_label(b) + ": " +
               std::to_string(cnt) + " vs " + std::to_string(prod);
        }
        for (int c = 0; c < W.object_count() && comp; ++c) {
          if ((int)W.word(c).size() != n) continue;
          for (int g : W.hom(b, c)) {
            if (W.at(g).anchor != ia) continue;
            for (int f : fiber) {
              int gf = W.compose(g, f);
              for (int i = 0; i < n; ++i) {
                if (W.at(gf).fs[i] != M.compose(W.at(g).fs[i], {W.at(f).fs[i]})) {
                  comp = false;
                  d2 = W.label(gf);
                  break;
                }
              }
              if (!comp) break;
            }
            if (!comp) break;
          }
        }
      }
    }
  }
  r.add(name + "-fiber-bijection", bij, d1);
  r.add(name + "-fiber-componentwise", comp, d2);
  return r;
}

// ---------------------------------------------------------------------------
// Induced maps and the pairing comparison

std::vector<int> induced_wreath_morphisms(const WreathCategory& from,
                                          const WreathCategory& to,
                                          const Multifunctor& F) {
  if (&from.standard() != &to.standard() || from.variant() != to.variant())
    throw std::invalid_argument("induced map: mismatched wreath categories");
  std::vector<int> out(from.morphism_count());
  for (int m = 0; m < from.morphism_count(); ++m) {
    const WreathMorphism& wm = from.at(m);
    std::vector<int> w;
    for (int letter : from.word(wm.src)) w.push_back(F.object_map[letter]);
    int so = to.find_word(w);
    if (so < 0) throw std::logic_error("induced map: image word missing");
    std::vector<int> fs(wm.fs.size());
    for (std::size_t j = 0; j < wm.fs.size(); ++j) fs[j] = F.morphism_map[wm.fs[j]];
    out[m] = to.find(so, wm.anchor, fs);
    if (out[m] < 0) throw std::logic_error("induced map: image morphism missing");
  }
  return out;
}

PairedWreaths pair_wreaths(const FinMulticategory& M, const GroupOperad& G,
                           std::shared_ptr<StandardBase> base, bool tilde) {
  PairedWreaths P;
  P.base = base;
  P.cells = std::make_shared<WreathCategory>(
      M, base, tilde ? WreathVariant::TildeCells : WreathVariant::Cells);
  P.sd = std::make_shared<Semidirect>(semidirect(M, G));
  P.pairs = std::make_shared<WreathCategory>(
      P.sd->cat, base, tilde ? WreathVariant::TildeBase : WreathVariant::Base);
  P.map.assign(P.cells->morphism_count(), -1);
  for (int m = 0; m < P.cells->morphism_count(); ++m) {
    const WreathMorphism& wm = P.cells->at(m);
    const IntervalMap* phi;
    const Perm *u, *x;
    P.cells->anchor_data(wm.anchor, &phi, &u, &x);
    int a2 = tilde ? base->tilde_base_mor(*phi, *x) : base->base_mor(*phi, *x);
    if (a2 < 0) continue;
    std::vector<int> fs(wm.fs.size());
    bool ok = true;
    for (std::size_t j = 0; j < wm.fs.size() && ok; ++j) {
      Perm dj = crossed_pullback(G, fiber_section(*phi, (int)j + 1), *u);
      fs[j] = P.sd->find(wm.fs[j], dj);
      if (fs[j] < 0) ok = false;
    }
    if (ok) P.map[m] = P.pairs->find(wm.src, a2, fs);
  }
  return P;
}

Report check_pairing(const PairedWreaths& P, const std::string& name) {
  Report r;
  const WreathCategory& C = *P.cells;
  const WreathCategory& W = *P.pairs;
  bool objs = C.object_count() == W.object_count();
  for (int o = 0; objs && o < C.object_count(); ++o)
    if (C.word(o) != W.word(o)) objs = false;
  r.add(name + "-objects", objs);

  bool total = true;
  for (int m : P.map)
    if (m < 0) total = false;
  std::vector<char> hit(W.morphism_count(), 0);
  bool inj = true;
  for (int m : P.map) {
    if (m < 0) continue;
    if (hit[m]) inj = false;
    hit[m] = 1;
  }
  bool bij = total && inj && C.morphism_count() == W.morphism_count();
  r.add(name + "-bijective", bij,
        std::to_string(C.morphism_count()) + " vs " + std::to_string(W.morphism_count()));

  bool ids = total;
  if (ids)
    for (int o = 0; o < C.object_count(); ++o)
      if (P.map[C.identity(o)] != W.identity(o)) ids = false;
  r.add(name + "-identities", ids);

  bool funct = total;
  std::string fdetail;
  if (funct) {
    std::vector<char> bad(C.morphism_count(), 0);
    parallel_for(C.morphism_count(), [&](std::size_t fi) {
      int f = (int)fi;
      for (int g : C.from(C.tgt(f)))
        if (P.map[C.compose(g, f)] != W.compose(P.map[g], P.map[f])) {
          bad[fi] = 1;
          return;
        }
    });
    for (int m = 0; m < C.morphism_count(); ++m)
      if (bad[m]) {
        funct = false;
        fdetail = C.label(m);
        break;
      }
  }
  r.add(name + "-functorial", funct, fdetail);
  return r;
}

Report check_pairing_natural(const PairedWreaths& P, const PairedWreaths& Q,
                             const Multifunctor& F, const std::string& name) {
  Report r;
  std::vector<int> indc = induced_wreath_morphisms(*P.cells, *Q.cells, F);
  Multifunctor SF;
  SF.src = &P.sd->cat;
  SF.tgt = &Q.sd->cat;
  SF.object_map = F.object_map;
  SF.morphism_map.resize(P.sd->cat.morphism_count());
  for (int m = 0; m < P.sd->cat.morphism_count(); ++m) {
    const auto& pr = P.sd->parts[m];
    SF.morphism_map[m] = Q.sd->find(F.on_morphism(pr.first), pr.second);
    if (SF.morphism_map[m] < 0) {
      r.add(name + "-square", false, "missing image in the paired expansion");
      return r;
    }
  }
  std::vector<int> indp = induced_wreath_morphisms(*P.pairs, *Q.pairs, SF);
  bool ok = true;
  std::string detail;
  for (int m = 0; m < P.cells->morphism_count() && ok; ++m) {
    if (P.map[m] < 0) {
      ok = false;
      detail = "undefined comparison";
      break;
    }
    if (Q.map[indc[m]] != indp[P.map[m]]) {
      ok = false;
      detail = P.cells->label(m);
    }
  }
  r.add(name + "-square", ok, detail);
  return r;
}

Report check_base_recovers(const FinMulticategory& M, std::shared_ptr<StandardBase> base,
                           const std::string& name) {
  Report r;
  auto tw = std::make_shared<WreathCategory>(M, base, WreathVariant::TildeBase);
  auto mat = tw->materialize();
  WreathCategory bw(M, base, WreathVariant::Base);
  PullbackResult P = pullback(mat.anchor, base->T.base.projection);

  bool count = (int)P.morphism_pairs.size() == bw.morphism_count();
  r.add(name + "-count", count,
        std::to_string(P.morphism_pairs.size()) + " vs " +
            std::to_string(bw.morphism_count()));

  std::vector<int> to_bw(P.morphism_pairs.size(), -1);
  bool defined = true, inj = true;
  std::vector<char> hit(bw.morphism_count(), 0);
  for (std::size_t i = 0; i < P.morphism_pairs.size() && defined; ++i) {
    const WreathMorphism& w = tw->at(P.morphism_pairs[i].first);
    to_bw[i] = bw.find(w.src, P.morphism_pairs[i].second, w.fs);
    if (to_bw[i] < 0) {
      defined = false;
      break;
    }
    if (hit[to_bw[i]]) inj = false;
    hit[to_bw[i]] = 1;
  }
  r.add(name + "-bijective", count && defined && inj);

  bool funct = defined;
  std::string fdetail;
  if (funct) {
    const FinCategory& pc = *P.cat;
    for (int f = 0; f < pc.morphism_count() && funct; ++f)
      for (int g = 0; g < pc.morphism_count(); ++g) {
        if (pc.src(g) != pc.tgt(f)) continue;
        if (to_bw[pc.compose(g, f)] != bw.compose(to_bw[g], to_bw[f])) {
          funct = false;
          fdetail = pc.morphism_label(f);
          break;
        }
      }
  }
  r.add(name + "-functorial", funct, fdetail);
  return r;
}

Report check_free_unit(const OperatorCandidate& C, const std::string& name) {
  Report r;
  const StandardBase& b = *C.base;
  PullbackResult P = pullback(C.anchor, b.T.dc.tgt_f);

  std::map<std::pair<int, int>, int> poi;
  for (std::size_t i = 0; i < P.object_pairs.size(); ++i)
    poi[P.object_pairs[i]] = (int)i;

  Functor eta;
  eta.src = C.cat;
  eta.tgt = P.cat.get();
  eta.object_map.resize(C.cat->object_count());
  for (int o = 0; o < C.cat->object_count(); ++o) {
    auto it = poi.find({o, C.anchor.on_object(o)});
    if (it == poi.end()) {
      r.add(name + "-unit", false, "missing unit object pair");
      return r;
    }
    eta.object_map[o] = it->second;
  }
  eta.morphism_map.resize(C.cat->morphism_count());
  for (int m = 0; m < C.cat->morphism_count(); ++m) {
    int cell = b.T.dc.unit_f.on_morphism(C.anchor.on_morphism(m));
    eta.morphism_map[m] = P.find_morphism(m, cell);
    if (eta.morphism_map[m] < 0) {
      r.add(name + "-unit", false, "missing unit morphism pair");
      return r;
    }
  }
  r.merge(validate_functor(eta, name + "-unit"));

  Functor q;
  q.src = P.cat.get();
  q.tgt = &b.tilde_base();
  for (const auto& op : P.object_pairs)
    q.object_map.push_back(b.T.dc.src_f.on_object(op.second));
  for (const auto& mp : P.morphism_pairs)
    q.morphism_map.push_back(b.T.dc.src_f.on_morphism(mp.second));
  r.merge(validate_functor(q, name + "-structure"));

  auto rep_phi = [&](int bm) -> const IntervalMap& {
    return b.D.base.phi_of[b.T.base.rep_mor[bm]];
  };
  bool lifts = true;
  std::string detail;
  for (int m = 0; m < C.cat->morphism_count() && lifts; ++m) {
    if (!is_inert(rep_phi(C.anchor.on_morphism(m)))) continue;
    if (!is_cocartesian(C.anchor, m)) continue;
    std::string why;
    if (!is_cocartesian(q, eta.on_morphism(m), &why)) {
      lifts = false;
      detail = C.cat->morphism_label(m) + ": " + why;
    }
  }
  r.add(name + "-unit-lifts", lifts, detail);
  return r;
}

}  // namespace nabla
