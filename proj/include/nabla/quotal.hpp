#pragma once

#include <map>
#include <memory>
#include <tuple>
#include <utility>
#include <vector>

#include "nabla/congruence.hpp"
#include "nabla/fincat.hpp"
#include "nabla/interval.hpp"
#include "nabla/operad.hpp"
#include "nabla/perm.hpp"

namespace nabla {

// The monotone-map category on objects <<0>> .. <<N>>.
struct IntervalCategory {
  int trunc = 0;
  std::shared_ptr<FinCategory> cat;
  std::vector<IntervalMap> maps;  // per morphism
  std::map<IntervalMap, int> index;
  int find(const IntervalMap& f) const;  // -1 if absent
};
IntervalCategory truncated_interval_category(int N);

// Quotient category of group-decorated interval maps: morphisms are pairs
// (phi, [x]) with [x] a left coset of K_phi in G(dom phi); composition acts
// by the crossed action of the outer group part on the inner map.
struct QuotalCategory {
  const GroupOperad* op = nullptr;
  CongruenceFamily family;
  int trunc = 0;
  std::shared_ptr<FinCategory> cat;
  std::vector<IntervalMap> phi_of;  // per morphism
  std::vector<Perm> rep_of;         // canonical (least) coset representative
  std::map<std::pair<IntervalMap, Perm>, int> index;
  int find(const IntervalMap& phi, const Perm& x) const;  // -1 if absent
};
QuotalCategory build_quotal(const GroupOperad& G, const CongruenceFamily& K, int N);

// The subgroup recovered from the quotient: all x identified with the unit
// over phi.  Equals K_phi when the construction is sound.
std::vector<Perm> recover_family(const QuotalCategory& Q, const IntervalMap& phi);

// Functor induced by a pointwise inclusion from.family <= to.family.
Functor inclusion_induced_functor(const QuotalCategory& from, const QuotalCategory& to);

// Two-level quotient: cells (phi, [u], [x]) with [u] a coset of the minimal
// proper family inside K_phi and [x] a left coset of L_phi, sitting over the
// base Q_L via source (phi, [x]) and target (phi, [ux]).
struct DoubleQuotal {
  const GroupOperad* op = nullptr;
  CongruenceFamily vertical;  // K
  CongruenceFamily lower;     // L
  CongruenceFamily inner;     // minimal proper family
  int trunc = 0;
  QuotalCategory base;
  std::shared_ptr<FinCategory> cells;
  std::vector<IntervalMap> phi_of;
  std::vector<Perm> u_of, x_of;  // canonical representatives
  std::map<std::tuple<IntervalMap, Perm, Perm>, int> index;
  DoubleCategory dc;  // wired cells/base/source/target/unit/vcomp
  int find(const IntervalMap& phi, const Perm& u, const Perm& x) const;
};
DoubleQuotal build_double_quotal(const GroupOperad& G, const CongruenceFamily& K,
                                 const CongruenceFamily& L, int N);

// Congruence test via the canonical active continuations: morphisms are
// identified when precomposition with the standard sections equalizes the
// underlying map, the group-part coset, and (for cells) the vertical coset.
bool tilde_related_base(const QuotalCategory& Q, int f, int g);
bool tilde_related_cells(const DoubleQuotal& D, int f, int g);

// Quotient by the relation above.  rep_mor picks the least member of each
// class; the projection functor certifies well-definedness when validated.
struct TildeQuotal {
  std::shared_ptr<FinCategory> cat;
  std::vector<int> class_of;  // source morphism -> tilde morphism
  std::vector<int> rep_mor;   // tilde morphism -> least source morphism
  Functor projection;
};
TildeQuotal tilde_quotient(const QuotalCategory& Q);
TildeQuotal tilde_cells_quotient(const DoubleQuotal& D);

// The induced two-level structure on the tilde quotients; vertical
// composition hunts for on-the-nose composable representatives.
struct TildeDouble {
  TildeQuotal base;   // of D.base.cat
  TildeQuotal cells;  // of D.cells
  DoubleCategory dc;
};
TildeDouble build_tilde_double(const DoubleQuotal& D);

// The source/target squares relating cells to their tilde quotients are
// pullbacks: the canonical comparison functors are isomorphisms.
Report verify_pullback_squares(const DoubleQuotal& D, const TildeDouble& T);

}  // namespace nabla
