#include "nabla/quotal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace nabla {

int IntervalCategory::find(const IntervalMap& f) const {
  auto it = index.find(f);
  return it == index.end() ? -1 : it->second;
}

IntervalCategory truncated_interval_category(int N) {
  IntervalCategory ic;
  ic.trunc = N;
  ic.cat = std::make_shared<FinCategory>();
  for (int n = 0; n <= N; ++n) ic.cat->add_object("<<" + std::to_string(n) + ">>");
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& f : enumerate_interval_maps(m, n)) {
        ic.index[f] = ic.cat->add_morphism(m, n, to_string(f));
        ic.maps.push_back(f);
      }
  for (int n = 0; n <= N; ++n)
    ic.cat->set_identity(n, ic.index.at(interval_identity(n)));
  auto maps = ic.maps;
  auto index = ic.index;
  ic.cat->set_composer([maps, index](int g, int f) {
    auto it = index.find(compose(maps[g], maps[f]));
    return it == index.end() ? -1 : it->second;
  });
  ic.cat->finalize();
  return ic;
}

namespace {

struct QuotalTables {
  const GroupOperad* op;
  CongruenceFamily family;
  std::vector<IntervalMap> phi_of;
  std::vector<Perm> rep_of;
  std::map<std::pair<IntervalMap, Perm>, int> index;
};

struct CellTables {
  const GroupOperad* op;
  CongruenceFamily vertical, lower, inner;
  std::vector<IntervalMap> phi_of;
  std::vector<Perm> u_of, x_of;
  std::map<std::tuple<IntervalMap, Perm, Perm>, int> index;
};

}  // namespace

int QuotalCategory::find(const IntervalMap& phi, const Perm& x) const {
  auto it = index.find({phi, family.coset_rep(phi, x)});
  return it == index.end() ? -1 : it->second;
}

QuotalCategory build_quotal(const GroupOperad& G, const CongruenceFamily& K, int N) {
  QuotalCategory Q;
  Q.op = &G;
  Q.family = K;
  Q.trunc = N;
  Q.cat = std::make_shared<FinCategory>();
  for (int n = 0; n <= N; ++n) Q.cat->add_object("<<" + std::to_string(n) + ">>");
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& phi : enumerate_interval_maps(m, n)) {
        std::set<Perm> seen;
        for (const Perm& x : G.elements(m)) {
          Perm rep = K.coset_rep(phi, x);
          if (!seen.insert(rep).second) continue;
          int idx =
              Q.cat->add_morphism(m, n, to_string(phi) + " x=" + to_string(rep));
          Q.phi_of.push_back(phi);
          Q.rep_of.push_back(rep);
          Q.index[{phi, rep}] = idx;
        }
      }
  for (int n = 0; n <= N; ++n)
    Q.cat->set_identity(n, Q.index.at({interval_identity(n), G.unit(n)}));

  auto tab = std::make_shared<QuotalTables>();
  tab->op = &G;
  tab->family = K;
  tab->phi_of = Q.phi_of;
  tab->rep_of = Q.rep_of;
  tab->index = Q.index;
  Q.cat->set_composer([tab](int g, int f) {
    CrossedPair c = crossed_action(*tab->op, tab->phi_of[f], tab->rep_of[g]);
    IntervalMap comp = compose(tab->phi_of[g], c.pushed);
    Perm z = mul(c.pullback, tab->rep_of[f]);
    auto it = tab->index.find({comp, tab->family.coset_rep(comp, z)});
    return it == tab->index.end() ? -1 : it->second;
  });
  Q.cat->finalize();
  return Q;
}

std::vector<Perm> recover_family(const QuotalCategory& Q, const IntervalMap& phi) {
  int unit_mor = Q.find(phi, Q.op->unit(phi.dom_n));
  std::vector<Perm> out;
  for (const Perm& x : Q.op->elements(phi.dom_n))
    if (Q.find(phi, x) == unit_mor) out.push_back(x);
  return out;
}

Functor inclusion_induced_functor(const QuotalCategory& from, const QuotalCategory& to) {
  if (from.op != to.op || from.trunc != to.trunc)
    throw std::invalid_argument("quotients are not comparable");
  Functor f;
  f.src = from.cat.get();
  f.tgt = to.cat.get();
  for (int a = 0; a < from.cat->object_count(); ++a) f.object_map.push_back(a);
  for (int m = 0; m < from.cat->morphism_count(); ++m) {
    int im = to.find(from.phi_of[m], from.rep_of[m]);
    if (im < 0) throw std::logic_error("no image for " + from.cat->morphism_label(m));
    f.morphism_map.push_back(im);
  }
  return f;
}

int DoubleQuotal::find(const IntervalMap& phi, const Perm& u, const Perm& x) const {
  auto it = index.find({phi, inner.coset_rep(phi, u), lower.coset_rep(phi, x)});
  return it == index.end() ? -1 : it->second;
}

DoubleQuotal build_double_quotal(const GroupOperad& G, const CongruenceFamily& K,
                                 const CongruenceFamily& L, int N) {
  DoubleQuotal D;
  D.op = &G;
  D.vertical = K;
  D.lower = L;
  D.inner = min_proper_family(G);
  D.trunc = N;
  D.base = build_quotal(G, L, N);
  D.cells = std::make_shared<FinCategory>();
  for (int n = 0; n <= N; ++n) D.cells->add_object("<<" + std::to_string(n) + ">>");
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& phi : enumerate_interval_maps(m, n)) {
        std::vector<Perm> ureps;
        {
          std::set<Perm> seen;
          for (const Perm& u : K.members(phi)) {
            Perm r = D.inner.coset_rep(phi, u);
            if (seen.insert(r).second) ureps.push_back(r);
          }
        }
        std::vector<Perm> xreps;
        {
          std::set<Perm> seen;
          for (const Perm& x : G.elements(m)) {
            Perm r = L.coset_rep(phi, x);
            if (seen.insert(r).second) xreps.push_back(r);
          }
        }
        for (const Perm& u : ureps)
          for (const Perm& x : xreps) {
            int idx = D.cells->add_morphism(
                m, n, to_string(phi) + " u=" + to_string(u) + " x=" + to_string(x));
            D.phi_of.push_back(phi);
            D.u_of.push_back(u);
            D.x_of.push_back(x);
            D.index[{phi, u, x}] = idx;
          }
      }
  for (int n = 0; n <= N; ++n)
    D.cells->set_identity(
        n, D.index.at({interval_identity(n), G.unit(n), G.unit(n)}));

  auto tab = std::make_shared<CellTables>();
  tab->op = &G;
  tab->vertical = K;
  tab->lower = L;
  tab->inner = D.inner;
  tab->phi_of = D.phi_of;
  tab->u_of = D.u_of;
  tab->x_of = D.x_of;
  tab->index = D.index;
  D.cells->set_composer([tab](int g, int f) {
    const IntervalMap& phi = tab->phi_of[f];
    CrossedPair c = crossed_action(*tab->op, phi, tab->x_of[g]);
    IntervalMap comp = compose(tab->phi_of[g], c.pushed);
    Perm pvy = crossed_pullback(*tab->op, phi, mul(tab->u_of[g], tab->x_of[g]));
    Perm u2 = mul(pvy, mul(tab->u_of[f], inverse(c.pullback)));
    Perm x2 = mul(c.pullback, tab->x_of[f]);
    auto it = tab->index.find({comp, tab->inner.coset_rep(comp, u2),
                               tab->lower.coset_rep(comp, x2)});
    return it == tab->index.end() ? -1 : it->second;
  });
  D.cells->finalize();

  D.dc.cells = D.cells.get();
  D.dc.base = D.base.cat.get();
  D.dc.src_f.src = D.cells.get();
  D.dc.src_f.tgt = D.base.cat.get();
  D.dc.tgt_f.src = D.cells.get();
  D.dc.tgt_f.tgt = D.base.cat.get();
  D.dc.unit_f.src = D.base.cat.get();
  D.dc.unit_f.tgt = D.cells.get();
  for (int n = 0; n <= N; ++n) {
    D.dc.src_f.object_map.push_back(n);
    D.dc.tgt_f.object_map.push_back(n);
    D.dc.unit_f.object_map.push_back(n);
  }
  for (int m = 0; m < D.cells->morphism_count(); ++m) {
    D.dc.src_f.morphism_map.push_back(D.base.find(D.phi_of[m], D.x_of[m]));
    D.dc.tgt_f.morphism_map.push_back(
        D.base.find(D.phi_of[m], mul(D.u_of[m], D.x_of[m])));
  }
  for (int b = 0; b < D.base.cat->morphism_count(); ++b)
    D.dc.unit_f.morphism_map.push_back(
        D.find(D.base.phi_of[b], G.unit(D.base.phi_of[b].dom_n), D.base.rep_of[b]));
  D.dc.vcomp = [tab](int g, int f) {
    if (tab->phi_of[g] != tab->phi_of[f]) return -1;
    const IntervalMap& phi = tab->phi_of[f];
    auto it = tab->index.find({phi, tab->inner.coset_rep(phi, mul(tab->u_of[g], tab->u_of[f])),
                               tab->lower.coset_rep(phi, tab->x_of[f])});
    return it == tab->index.end() ? -1 : it->second;
  };
  return D;
}

namespace {

// The canonical active continuation of (phi, [x]): the fibre section of the
// inert part, pushed along the inverse group part.
IntervalMap active_section(const GroupOperad& G, const IntervalMap& phi, const Perm& x) {
  Factorization fac = classify_and_factorize(phi);
  return crossed_action(G, fac.delta, inverse(x)).pushed;
}

struct ContinuationProbe {
  IntervalMap composite;
  Perm lower_rep;   // class of the pulled-back group part
  Perm vert_rep;    // class of the pulled-back vertical part (cells only)
};

ContinuationProbe probe(const GroupOperad& G, const CongruenceFamily& L,
                        const CongruenceFamily* inner, const IntervalMap& phi,
                        const Perm& x, const Perm* u, const IntervalMap& psi) {
  ContinuationProbe p;
  CrossedPair c = crossed_action(G, psi, x);
  p.composite = compose(phi, c.pushed);
  p.lower_rep = L.coset_rep(p.composite, c.pullback);
  if (u && inner)
    p.vert_rep = inner->coset_rep(p.composite, crossed_pullback(G, c.pushed, *u));
  return p;
}

bool related_by_sections(const GroupOperad& G, const CongruenceFamily& L,
                         const CongruenceFamily* inner, const IntervalMap& phi1,
                         const Perm& x1, const Perm* u1, const IntervalMap& phi2,
                         const Perm& x2, const Perm* u2) {
  IntervalMap s1 = active_section(G, phi1, x1);
  IntervalMap s2 = active_section(G, phi2, x2);
  for (const IntervalMap& psi : {s1, s2}) {
    ContinuationProbe a = probe(G, L, inner, phi1, x1, u1, psi);
    ContinuationProbe b = probe(G, L, inner, phi2, x2, u2, psi);
    if (a.composite != b.composite) return false;
    if (a.lower_rep != b.lower_rep) return false;
    if (u1 && a.vert_rep != b.vert_rep) return false;
  }
  return true;
}

}  // namespace

bool tilde_related_base(const QuotalCategory& Q, int f, int g) {
  if (Q.cat->src(f) != Q.cat->src(g) || Q.cat->tgt(f) != Q.cat->tgt(g)) return false;
  return related_by_sections(*Q.op, Q.family, nullptr, Q.phi_of[f], Q.rep_of[f],
                             nullptr, Q.phi_of[g], Q.rep_of[g], nullptr);
}

bool tilde_related_cells(const DoubleQuotal& D, int f, int g) {
  if (D.cells->src(f) != D.cells->src(g) || D.cells->tgt(f) != D.cells->tgt(g))
    return false;
  return related_by_sections(*D.op, D.lower, &D.inner, D.phi_of[f], D.x_of[f],
                             &D.u_of[f], D.phi_of[g], D.x_of[g], &D.u_of[g]);
}

namespace {

struct TildeTables {
  std::shared_ptr<FinCategory> src;
  std::vector<int> rep_mor;
  std::vector<int> class_of;
};

TildeQuotal build_tilde(std::shared_ptr<FinCategory> src_cat,
                        const std::function<bool(int, int)>& related,
                        const std::string& context) {
  const FinCategory& src = *src_cat;
  src.materialize();
  int M = src.morphism_count();
  std::vector<int> rep(M, -1);
  std::map<std::pair<int, int>, std::vector<int>> groups;
  for (int m = 0; m < M; ++m) groups[{src.src(m), src.tgt(m)}].push_back(m);

  for (const auto& [key, mors] : groups) {
    (void)key;
    int k = static_cast<int>(mors.size());
    std::vector<char> rel(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        rel[static_cast<std::size_t>(i) * k + j] =
            i == j ? 1 : (related(mors[i], mors[j]) ? 1 : 0);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < i; ++j)
        if (rel[static_cast<std::size_t>(i) * k + j] !=
            rel[static_cast<std::size_t>(j) * k + i])
          throw std::runtime_error(context + ": relation not symmetric at " +
                                   src.morphism_label(mors[i]) + " / " +
                                   src.morphism_label(mors[j]));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        if (!rel[static_cast<std::size_t>(i) * k + j]) continue;
        for (int l = 0; l < k; ++l)
          if (rel[static_cast<std::size_t>(j) * k + l] &&
              !rel[static_cast<std::size_t>(i) * k + l])
            throw std::runtime_error(context + ": relation not transitive at " +
                                     src.morphism_label(mors[i]));
      }
    for (int i = 0; i < k; ++i)
      for (int j = 0; j <= i; ++j)
        if (rel[static_cast<std::size_t>(i) * k + j]) {
          rep[mors[i]] = mors[j];
          break;
        }
  }

  TildeQuotal out;
  out.cat = std::make_shared<FinCategory>();
  for (int a = 0; a < src.object_count(); ++a) out.cat->add_object(src.object_label(a));
  out.class_of.assign(M, -1);
  for (int m = 0; m < M; ++m) {
    if (rep[m] != m) continue;
    out.class_of[m] =
        out.cat->add_morphism(src.src(m), src.tgt(m), "[" + src.morphism_label(m) + "]");
    out.rep_mor.push_back(m);
  }
  for (int m = 0; m < M; ++m) out.class_of[m] = out.class_of[rep[m]];
  for (int a = 0; a < src.object_count(); ++a)
    out.cat->set_identity(a, out.class_of[src.identity(a)]);

  auto tab = std::make_shared<TildeTables>();
  tab->src = src_cat;
  tab->rep_mor = out.rep_mor;
  tab->class_of = out.class_of;
  out.cat->set_composer([tab](int g, int f) {
    return tab->class_of[tab->src->compose(tab->rep_mor[g], tab->rep_mor[f])];
  });
  out.cat->finalize();

  out.projection.src = src_cat.get();
  out.projection.tgt = out.cat.get();
  for (int a = 0; a < src.object_count(); ++a) out.projection.object_map.push_back(a);
  out.projection.morphism_map = out.class_of;
  return out;
}

}  // namespace

TildeQuotal tilde_quotient(const QuotalCategory& Q) {
  return build_tilde(Q.cat, [&Q](int f, int g) { return tilde_related_base(Q, f, g); },
                     "base quotient");
}

TildeQuotal tilde_cells_quotient(const DoubleQuotal& D) {
  return build_tilde(D.cells,
                     [&D](int f, int g) { return tilde_related_cells(D, f, g); },
                     "cell quotient");
}

namespace {

struct TildeVcompTables {
  std::function<int(int, int)> cell_vcomp;
  std::vector<int> cell_src, cell_tgt;  // per original cell, base morphisms
  std::vector<int> class_of, rep_mor;
  std::vector<std::vector<int>> members;  // per tilde cell
};

}  // namespace

TildeDouble build_tilde_double(const DoubleQuotal& D) {
  TildeDouble T;
  T.base = tilde_quotient(D.base);
  T.cells = tilde_cells_quotient(D);

  int tilde_cells = T.cells.cat->morphism_count();
  std::vector<std::vector<int>> members(tilde_cells);
  for (int m = 0; m < D.cells->morphism_count(); ++m)
    members[T.cells.class_of[m]].push_back(m);

  T.dc.cells = T.cells.cat.get();
  T.dc.base = T.base.cat.get();
  T.dc.src_f.src = T.cells.cat.get();
  T.dc.src_f.tgt = T.base.cat.get();
  T.dc.tgt_f.src = T.cells.cat.get();
  T.dc.tgt_f.tgt = T.base.cat.get();
  T.dc.unit_f.src = T.base.cat.get();
  T.dc.unit_f.tgt = T.cells.cat.get();
  for (int a = 0; a < T.cells.cat->object_count(); ++a) {
    T.dc.src_f.object_map.push_back(a);
    T.dc.tgt_f.object_map.push_back(a);
    T.dc.unit_f.object_map.push_back(a);
  }
  for (int c = 0; c < tilde_cells; ++c) {
    int s = -1, t = -1;
    for (int m : members[c]) {
      int sm = T.base.class_of[D.dc.src_f.morphism_map[m]];
      int tm = T.base.class_of[D.dc.tgt_f.morphism_map[m]];
      if (s < 0) {
        s = sm;
        t = tm;
      } else if (s != sm || t != tm) {
        throw std::runtime_error("tilde source/target not well-defined at " +
                                 T.cells.cat->morphism_label(c));
      }
    }
    T.dc.src_f.morphism_map.push_back(s);
    T.dc.tgt_f.morphism_map.push_back(t);
  }
  {
    std::vector<std::vector<int>> base_members(T.base.cat->morphism_count());
    for (int b = 0; b < D.base.cat->morphism_count(); ++b)
      base_members[T.base.class_of[b]].push_back(b);
    for (int bt = 0; bt < T.base.cat->morphism_count(); ++bt) {
      int val = -1;
      for (int b : base_members[bt]) {
        int cb = T.cells.class_of[D.dc.unit_f.morphism_map[b]];
        if (val < 0)
          val = cb;
        else if (val != cb)
          throw std::runtime_error("tilde unit not well-defined at " +
                                   T.base.cat->morphism_label(bt));
      }
      T.dc.unit_f.morphism_map.push_back(val);
    }
  }

  auto tab = std::make_shared<TildeVcompTables>();
  tab->cell_vcomp = D.dc.vcomp;
  tab->cell_src = D.dc.src_f.morphism_map;
  tab->cell_tgt = D.dc.tgt_f.morphism_map;
  tab->class_of = T.cells.class_of;
  tab->rep_mor = T.cells.rep_mor;
  tab->members = members;
  T.dc.vcomp = [tab](int g, int f) {
    int frep = tab->rep_mor[f];
    int tf = tab->cell_tgt[frep];
    for (int m : tab->members[g])
      if (tab->cell_src[m] == tf) return tab->class_of[tab->cell_vcomp(m, frep)];
    throw std::runtime_error("no vertically composable representative");
  };
  return T;
}

Report verify_pullback_squares(const DoubleQuotal& D, const TildeDouble& T) {
  Report r;
  r.title = "tilde comparison squares";
  struct Side {
    const char* name;
    const Functor* tilde_leg;  // tilde cells -> tilde base
    const Functor* cell_leg;   // cells -> base
  };
  for (const Side& side : {Side{"source", &T.dc.src_f, &D.dc.src_f},
                           Side{"target", &T.dc.tgt_f, &D.dc.tgt_f}}) {
    PullbackResult P = pullback(*side.tilde_leg, T.base.projection);
    std::string prefix = std::string("square-") + side.name;
    bool ok = P.cat->object_count() == D.cells->object_count() &&
              P.cat->morphism_count() == D.cells->morphism_count();
    Functor comparison;
    comparison.src = D.cells.get();
    comparison.tgt = P.cat.get();
    std::set<int> image;
    if (ok) {
      std::map<std::pair<int, int>, int> obj_index;
      for (int i = 0; i < static_cast<int>(P.object_pairs.size()); ++i)
        obj_index[P.object_pairs[i]] = i;
      for (int a = 0; a < D.cells->object_count(); ++a)
        comparison.object_map.push_back(obj_index.at({a, a}));
      for (int m = 0; m < D.cells->morphism_count() && ok; ++m) {
        int pm = P.find_morphism(T.cells.class_of[m], side.cell_leg->morphism_map[m]);
        if (pm < 0 || !image.insert(pm).second) ok = false;
        comparison.morphism_map.push_back(pm);
      }
    }
    r.add(prefix + "-bijective", ok);
    if (ok) r.merge(validate_functor(comparison, prefix + "-comparison"));
  }
  return r;
}

}  // namespace nabla
