#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nabla/report.hpp"

namespace nabla {

// A finite category with labelled objects and morphisms.  Morphisms are dense
// integer indices; composition is supplied as a callback and memoized into a
// flat table.  Build with add_object/add_morphism/set_identity/set_composer,
// then finalize() before use.
class FinCategory {
 public:
  using Composer = std::function<int(int, int)>;  // composer(g, f) = g after f

  int add_object(std::string label);
  int add_morphism(int src, int tgt, std::string label);
  void set_identity(int obj, int mor);
  void set_composer(Composer c);
  void finalize();

  int object_count() const { return static_cast<int>(obj_labels_.size()); }
  int morphism_count() const { return static_cast<int>(labels_.size()); }
  int src(int mor) const { return src_[mor]; }
  int tgt(int mor) const { return tgt_[mor]; }
  const std::string& object_label(int obj) const { return obj_labels_[obj]; }
  const std::string& morphism_label(int mor) const { return labels_[mor]; }
  int identity(int obj) const { return identity_[obj]; }
  bool is_identity(int mor) const { return identity_[src_[mor]] == mor && src_[mor] == tgt_[mor]; }

  // Sorted morphism indices from a to b (empty if none).
  const std::vector<int>& hom(int a, int b) const;
  int find_object(const std::string& label) const;  // -1 if absent

  // Composite g . f; requires tgt(f) == src(g).
  int compose(int g, int f) const;
  // Precompute every composable pair (thread-safe reads afterwards).
  void materialize() const;

 private:
  std::vector<std::string> obj_labels_;
  std::vector<std::string> labels_;
  std::vector<int> src_, tgt_;
  std::vector<int> identity_;
  Composer composer_;
  std::map<std::pair<int, int>, std::vector<int>> homs_;
  std::map<std::string, int> obj_index_;
  mutable std::vector<int> table_;  // -1 = not yet computed
  mutable bool materialized_ = false;
  bool finalized_ = false;
};

// A functor between finalized categories, stored pointwise.
struct Functor {
  const FinCategory* src = nullptr;
  const FinCategory* tgt = nullptr;
  std::vector<int> object_map;    // per source object
  std::vector<int> morphism_map;  // per source morphism

  int on_object(int a) const { return object_map[a]; }
  int on_morphism(int f) const { return morphism_map[f]; }
};

Functor identity_functor(const FinCategory& c);

// Category laws: identities, endpoint compatibility of composites, and full
// associativity (parallelized over the outer morphism).
Report validate_category(const FinCategory& c);

// Functorality: endpoints, identities, composition.
Report validate_functor(const Functor& f, const std::string& name);

// Morphisms f with a two-sided inverse.
bool is_isomorphism(const FinCategory& c, int mor);
// iso_class[obj] = smallest object index isomorphic to obj.
std::vector<int> isomorphism_classes(const FinCategory& c);

// Fully faithful + essentially surjective; `name` labels the report checks.
Report check_equivalence(const Functor& f, const std::string& name);

// Quotient by the coarsest congruence that identifies morphisms which become
// equal under every precomposition landing in the given class M (a morphism
// class containing identities, closed under composition, and left
// cancellative: whenever a composite g.f lies in M, so does f).
// The source category must outlive the result (the quotient composer and the
// projection functor refer back to it); the quotient itself is heap-held so
// the result can be moved freely.
struct QuotientResult {
  std::shared_ptr<FinCategory> cat;
  std::vector<int> class_of;  // original morphism -> quotient morphism
  Functor projection;
  Report report;
};
QuotientResult quotient_left_cancellative(const FinCategory& c,
                                          const std::vector<char>& in_class,
                                          const std::string& name);

// Pullback category of F: A -> C and G: B -> C: pairs of objects/morphisms
// with equal images, componentwise composition.  The categories of F and G
// must outlive the result.
struct PullbackResult {
  std::shared_ptr<FinCategory> cat;
  Functor to_first;
  Functor to_second;
  std::vector<std::pair<int, int>> object_pairs;
  std::vector<std::pair<int, int>> morphism_pairs;
  std::map<std::pair<int, int>, int> morphism_index;
  int find_morphism(int in_first, int in_second) const;  // -1 if absent
};
PullbackResult pullback(const Functor& F, const Functor& G);

// A category internal to finite categories: cells over a base with source,
// target, identity-cell and vertical composition data.
struct DoubleCategory {
  const FinCategory* cells = nullptr;
  const FinCategory* base = nullptr;
  Functor src_f;                          // cells -> base
  Functor tgt_f;                          // cells -> base
  Functor unit_f;                         // base -> cells
  std::function<int(int, int)> vcomp;     // (g, f) with src(g) == tgt(f), morphism level
};

// Unit/associativity/endpoint laws for the vertical composition plus
// functoriality of all four structure maps (vcomp as a functor from the
// pullback of src_f and tgt_f, which is the interchange law).
Report check_double_category(const DoubleCategory& dc);

// A presheaf internal to finite categories over the cells/base pair: a
// carrier anchored over the base, acted on by cells along their targets.
struct InternalPresheaf {
  const DoubleCategory* dc = nullptr;
  const FinCategory* carrier = nullptr;
  Functor anchor;                      // carrier -> base
  std::function<int(int, int)> act;    // (carrier mor, cell mor) with anchor == tgt image
};

// Typing (results live over the cell source), unit and associativity laws.
Report check_internal_presheaf(const InternalPresheaf& p);

// Whether f admits unique fillers: for every h out of src(f) and every
// factorization p(h) = d . p(f), exactly one l with p(l) = d and l.f = h.
bool is_cocartesian(const Functor& p, int f, std::string* why = nullptr);

}  // namespace nabla
