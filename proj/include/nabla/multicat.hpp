#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nabla/operad.hpp"
#include "nabla/perm.hpp"
#include "nabla/report.hpp"

namespace nabla {

// A multimorphism: a finite list of input objects and a single output.
struct MulMorphism {
  std::vector<int> inputs;
  int output = 0;
  std::string label;
};

// A finite multicategory truncated at a fixed arity bound.  Hom sets and the
// composition table are stored explicitly; a composite whose arity stays
// within the bound must be present (validate_multicat checks totality), and
// asking for one beyond the bound raises TruncationError.
//
// Build with add_object/add_morphism/set_identity, then either record
// explicit entries with set_composite or install a composer callback, and
// call finalize() before use.
class FinMulticategory {
 public:
  using Composer = std::function<int(const FinMulticategory&, int, const std::vector<int>&)>;

  explicit FinMulticategory(int arity_bound, std::string name = {});

  int add_object(std::string name);
  int add_morphism(std::vector<int> inputs, int output, std::string label);
  void set_identity(int obj, int mor);
  void set_composite(int outer, const std::vector<int>& inners, int result);
  void set_composer(Composer c);
  void finalize();

  const std::string& name() const { return name_; }
  int arity_bound() const { return bound_; }
  int object_count() const { return static_cast<int>(obj_names_.size()); }
  int morphism_count() const { return static_cast<int>(mors_.size()); }
  const std::string& object_name(int obj) const { return obj_names_[obj]; }
  const MulMorphism& morphism(int mor) const { return mors_[mor]; }
  int arity(int mor) const { return static_cast<int>(mors_[mor].inputs.size()); }
  int identity_of(int obj) const { return identity_[obj]; }
  int find_object(const std::string& name) const;  // -1 if absent
  int find_morphism(const std::string& label) const;

  // Sorted morphism ids with the given signature (empty if none).
  const std::vector<int>& hom(const std::vector<int>& inputs, int output) const;
  // Sorted morphism ids with the given output, any input word.
  const std::vector<int>& with_output(int obj) const;

  bool has_composite(int outer, const std::vector<int>& inners) const;
  // The composite of outer with one inner morphism per input slot.  Throws
  // std::invalid_argument on a typing mismatch or a missing in-bound entry,
  // TruncationError when the total arity exceeds the bound.
  int compose(int outer, const std::vector<int>& inners) const;

  // Runs fn on every in-bound composable tuple (outer, inners).
  void for_each_composable(
      const std::function<void(int, const std::vector<int>&)>& fn) const;
  // Runs fn on every in-bound inner tuple for one outer morphism.
  void for_each_composable_of(
      int outer, const std::function<void(const std::vector<int>&)>& fn) const;

 private:
  void check_tuple(int outer, const std::vector<int>& inners, int* total) const;

  std::string name_;
  int bound_;
  std::vector<std::string> obj_names_;
  std::vector<MulMorphism> mors_;
  std::vector<int> identity_;
  std::map<std::string, int> obj_index_;
  std::map<std::string, int> mor_index_;
  std::map<std::pair<std::vector<int>, int>, std::vector<int>> hom_index_;
  std::vector<std::vector<int>> by_output_;
  std::map<std::pair<int, std::vector<int>>, int> comp_;
  Composer composer_;
  bool finalized_ = false;
};

// Identity/unit laws, typing and totality of the stored table, and full
// associativity over all in-bound double composites.
Report validate_multicat(const FinMulticategory& M, const std::string& name);

// A map of multicategories, stored pointwise.
struct Multifunctor {
  const FinMulticategory* src = nullptr;
  const FinMulticategory* tgt = nullptr;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  int on_object(int a) const { return object_map[a]; }
  int on_morphism(int f) const { return morphism_map[f]; }
};

// Typing, identities and compatibility with every in-bound composite.
Report validate_multifunctor(const Multifunctor& F, const std::string& name);

// An action of the group operad on a multicategory: act(f, x) is the
// conjugate morphism f^x with inputs[i] = f.inputs[x(i)], defined for
// x in G(arity f).  Implementations return -1 for pairs outside their table;
// validate_gsym reports that as a failure.
struct GSymAction {
  std::function<int(int, const Perm&)> act;
};

// The semidirect expansion of M by the group operad: morphisms are pairs
// (f, x) with x in G(n) and f an n-ary morphism, the pair having the inputs
// of f conjugated by x; composition pairs the operad law with composition of
// the f-parts in x-permuted order.
struct Semidirect {
  FinMulticategory cat;
  std::vector<std::pair<int, Perm>> parts;       // per pair morphism
  std::map<std::pair<int, Perm>, int> index;     // (f, x) -> pair morphism

  int find(int f, const Perm& x) const;          // -1 if absent
};
Semidirect semidirect(const FinMulticategory& M, const GroupOperad& G);

// Action laws: totality and typing, unit, mixed associativity
// (f^x)^y = f^{xy}, and equivariance, i.e. collapsing pairs (f, x) to f^x
// is a map of multicategories from the semidirect expansion.
Report validate_gsym(const FinMulticategory& M, const GroupOperad& G,
                     const GSymAction& A, const std::string& name);

// Built-in instances -------------------------------------------------------

// One object, one morphism of every arity up to the bound.
FinMulticategory terminal_multicat(int arity_bound);
// The action that fixes every morphism (valid whenever all conjugation
// orbits are singletons, e.g. for the terminal instance).
GSymAction fixing_action();

// One object z with hom(z^n; z) = G(n), composition the operad law, and the
// group acting by right translation.
struct OperadMulticat {
  FinMulticategory cat;
  std::vector<Perm> perm_of;                 // per morphism
  std::map<std::pair<int, Perm>, int> index; // (arity, x) -> morphism
  GSymAction action;
};
OperadMulticat operad_multicat(const GroupOperad& G, int arity_bound);

// Two objects a, b; one morphism for every source word of length 2..bound
// with output a; unary homs {id_a, h} (h idempotent) and {id_b}.  The
// symmetric groups act by permuting the source word.
struct TwoObjectSample {
  FinMulticategory cat;
  GSymAction action;
  int f_ab = -1;  // the morphism ab -> a
  int g_ba = -1;  // the morphism ba -> a
  int h = -1;     // the non-identity endomorphism of a
};
TwoObjectSample two_object_sample(int arity_bound);

// One object z; unary homs {id, s} with s.s = id, and a single morphism of
// every arity 2..bound.  Fixed by every conjugation.
struct OneObjectSample {
  FinMulticategory cat;
  GSymAction action;
  int s = -1;
};
OneObjectSample one_object_sample(int arity_bound);

// Two objects with hom(ab; a) inhabited but hom(ba; a) empty: one morphism
// for every source word of length 2..bound that ends in b and outputs a.
// Not symmetric; used to probe the semidirect expansion.
FinMulticategory asymmetric_sample(int arity_bound);

}  // namespace nabla
