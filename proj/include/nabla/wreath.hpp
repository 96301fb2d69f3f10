#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nabla/congruence.hpp"
#include "nabla/fincat.hpp"
#include "nabla/interval.hpp"
#include "nabla/multicat.hpp"
#include "nabla/operad.hpp"
#include "nabla/perm.hpp"
#include "nabla/quotal.hpp"
#include "nabla/report.hpp"

namespace nabla {

// The quotient categories of one group operad at one truncation, shared by
// every construction below: the coset category over the block-kernel closure,
// the two-level cell category over it, and both section-congruence quotients.
// The operad must outlive this bundle.
struct StandardBase {
  const GroupOperad* op = nullptr;
  int trunc = 0;
  CongruenceFamily vertical;  // block closure (cell vertical parts)
  CongruenceFamily lower;     // block-kernel closure (base group parts)
  CongruenceFamily inner;     // minimal proper family (cell inner cosets)
  DoubleQuotal D;             // cells (phi, [u], [x]) over the base D.base
  TildeDouble T;              // the same two levels after the section congruence

  const QuotalCategory& coset_base() const { return D.base; }
  const FinCategory& tilde_base() const { return *T.base.cat; }
  const FinCategory& tilde_cells() const { return *T.cells.cat; }

  // Morphism ids holding the given representatives; -1 if out of range.
  int base_mor(const IntervalMap& phi, const Perm& x) const;
  int cells_mor(const IntervalMap& phi, const Perm& u, const Perm& x) const;
  int tilde_base_mor(const IntervalMap& phi, const Perm& x) const;
  int tilde_cells_mor(const IntervalMap& phi, const Perm& u, const Perm& x) const;
};
std::shared_ptr<StandardBase> make_standard_base(const GroupOperad& G, int N);

// Which quotient a wreath category is anchored over.
enum class WreathVariant { Base, TildeBase, Cells, TildeCells };

// A wreath morphism: an anchor morphism plus one multimorphism per target
// letter, each consuming the fibre of the permuted source word over it.
struct WreathMorphism {
  int src = 0;
  int tgt = 0;
  int anchor = 0;
  std::vector<int> fs;
};

// The category of operators of a multicategory over the chosen anchor.
// Objects are words of length <= trunc in the objects of M; composition pushes
// the inner components through the crossed action of the outer group part and
// composes fibrewise.  Morphism data is stored against the canonical anchor
// representatives, which is consistent because fibre words only depend on the
// coset (and section-congruence) class of the anchor.
class WreathCategory {
 public:
  WreathCategory(const FinMulticategory& M, std::shared_ptr<StandardBase> base,
                 WreathVariant variant);
  WreathCategory(const WreathCategory&) = delete;
  WreathCategory& operator=(const WreathCategory&) = delete;

  const FinMulticategory& multicat() const { return *M_; }
  const StandardBase& standard() const { return *base_; }
  std::shared_ptr<StandardBase> standard_ptr() const { return base_; }
  WreathVariant variant() const { return variant_; }
  const FinCategory& anchor_category() const;

  int object_count() const { return static_cast<int>(words_.size()); }
  const std::vector<int>& word(int obj) const { return words_[obj]; }
  std::string object_label(int obj) const;
  int find_word(const std::vector<int>& w) const;  // -1 if absent

  int morphism_count() const { return static_cast<int>(mors_.size()); }
  const WreathMorphism& at(int mor) const { return mors_[mor]; }
  int src(int mor) const { return mors_[mor].src; }
  int tgt(int mor) const { return mors_[mor].tgt; }
  int identity(int obj) const { return identity_[obj]; }
  std::string label(int mor) const;
  int find(int src_obj, int anchor, const std::vector<int>& fs) const;  // -1
  const std::vector<int>& hom(int a, int b) const;
  const std::vector<int>& from(int a) const { return from_[a]; }

  // Canonical representatives of the anchor of `mor` (u is the unit for the
  // single-level variants).
  const IntervalMap& phi_of(int mor) const;
  const Perm& u_of(int mor) const;
  const Perm& x_of(int mor) const;
  // The same, for an anchor morphism id.
  void anchor_data(int anchor, const IntervalMap** phi, const Perm** u,
                   const Perm** x) const;
  // Anchor id holding (phi, u, x) after canonicalization; -1 if absent.
  int anchor_of(const IntervalMap& phi, const Perm& u, const Perm& x) const;

  // Source word of component j (0-based) for the given anchor and source
  // word: the fibre over letter j+1 of the word permuted by the anchor group
  // parts.
  std::vector<int> component_word(int anchor, const std::vector<int>& w, int j) const;

  // g after f, computed by the crossed-action formula; throws
  // std::logic_error if the composite is missing (construction bug).
  int compose(int g, int f) const;

  struct Materialized {
    std::shared_ptr<FinCategory> cat;  // ids match the wreath category
    Functor anchor;                    // into anchor_category()
  };
  // Copies into a finalized FinCategory (quadratic composition table: only
  // for instances of a few thousand morphisms).  This object must outlive
  // the result.
  Materialized materialize() const;

 private:
  void add_objects();
  void add_morphisms();

  const FinMulticategory* M_;
  std::shared_ptr<StandardBase> base_;
  WreathVariant variant_;
  std::vector<std::vector<int>> words_;
  std::map<std::vector<int>, int> word_index_;
  std::vector<WreathMorphism> mors_;
  std::vector<int> identity_;
  std::map<std::tuple<int, int, std::vector<int>>, int> index_;
  std::map<std::pair<int, int>, std::vector<int>> homs_;
  std::vector<std::vector<int>> from_;
  std::vector<Perm> units_;  // unit group parts by arity, for the single-level variants
};

// The morphism over an inert anchor whose components are all identities:
// the canonical coCartesian lift of that anchor from the given source word.
// Throws std::invalid_argument if the anchor representative is not inert.
int std_cocart_lift(const WreathCategory& W, int anchor, int src_obj);

// Unique-filler test against the anchor functor, at the formula level.
bool wreath_is_cocartesian(const WreathCategory& W, int mor, std::string* why = nullptr);

// The action of the cell quotient on a single-level wreath category (variant
// Base acted on by the cells, TildeBase by their quotient): a cell conjugates
// each component by the fibre restriction of its vertical part.  Returns -1
// for incompatible pairs.  The wreath category and the multicategory behind
// `A` must outlive the returned callback.
std::function<int(int, int)> wreath_presheaf_action(
    std::shared_ptr<const WreathCategory> W, GSymAction A);

// A candidate category of operators: a carrier anchored over the tilde base
// with a presheaf action of the tilde cells.  Referents must outlive the
// candidate and everything derived from it.
struct OperatorCandidate {
  std::shared_ptr<StandardBase> base;
  const FinCategory* cat = nullptr;
  Functor anchor;                    // carrier -> tilde base category
  std::function<int(int, int)> act;  // (carrier mor, tilde cell) -> carrier mor
  std::string name;
};

// The tilde base over itself: cells act by passing to their source leg.
OperatorCandidate base_operator_candidate(std::shared_ptr<StandardBase> base);
// The tilde cells over their source leg: cells act by vertical composition.
OperatorCandidate cells_operator_candidate(std::shared_ptr<StandardBase> base);

// A materialized tilde-anchored wreath category bundled as a candidate.
struct WreathOperator {
  std::shared_ptr<StandardBase> base;
  std::shared_ptr<WreathCategory> wreath;
  WreathCategory::Materialized mat;
  OperatorCandidate candidate;
};
WreathOperator wreath_operator(const FinMulticategory& M, const GSymAction& A,
                               std::shared_ptr<StandardBase> base);

// The defining properties of a category of operators, checked exhaustively:
// the anchor is a functor and the action a lawful internal presheaf; every
// inert anchor class admits a coCartesian lift from every object over its
// source; morphisms into an object are determined by their anchor together
// with their letterwise projections, in the exact counting form; and the
// letterwise projections assemble into an equivalence from each fibre onto
// the matching power of the letter fibre.
Report validate_operator_category(const OperatorCandidate& C);

// Fibres of a wreath category over identity anchors decompose letterwise:
// morphism sets match products of unary homs and composition works
// componentwise.
Report check_fiber_decomposition(const WreathCategory& W, const std::string& name);

// Morphism map induced by a multifunctor between wreath categories over the
// same standard base and variant (anchors fixed, components mapped).
std::vector<int> induced_wreath_morphisms(const WreathCategory& from,
                                          const WreathCategory& to,
                                          const Multifunctor& F);

// The comparison between the cell-anchored wreath of M and the coset-anchored
// wreath of its semidirect expansion: identity on objects, each component
// paired with the fibre restriction of the anchor's vertical part.
struct PairedWreaths {
  std::shared_ptr<StandardBase> base;
  std::shared_ptr<WreathCategory> cells;  // M over Cells / TildeCells
  std::shared_ptr<Semidirect> sd;
  std::shared_ptr<WreathCategory> pairs;  // sd->cat over Base / TildeBase
  std::vector<int> map;                   // cells morphism -> pairs morphism
};
PairedWreaths pair_wreaths(const FinMulticategory& M, const GroupOperad& G,
                           std::shared_ptr<StandardBase> base, bool tilde);
// Identity on objects, bijective on morphisms, functorial, unit-preserving.
Report check_pairing(const PairedWreaths& P, const std::string& name);
// The comparison commutes with the maps induced by an equivariant
// multifunctor on both sides.
Report check_pairing_natural(const PairedWreaths& P, const PairedWreaths& Q,
                             const Multifunctor& F, const std::string& name);

// The single-level wreath is recovered from its tilde quotient by change of
// anchor: pairing the tilde wreath with the coset base over the tilde base
// gives a category isomorphic to the coset-anchored wreath.
Report check_base_recovers(const FinMulticategory& M, std::shared_ptr<StandardBase> base,
                           const std::string& name);

// Adjoining free cell actions to a candidate: the pullback of its anchor
// along the target leg of the tilde cells.  The unit pairs a morphism with
// the identity cell of its anchor; it preserves coCartesian lifts.
Report check_free_unit(const OperatorCandidate& C, const std::string& name);

// The multicategory extracted from a candidate: objects are the carrier
// objects over the singleton level, multimorphisms are carrier morphisms out
// of a chosen universal source for each word, composition is transport along
// the unique structure comparisons, and the group acts through the presheaf
// action.  Throws std::runtime_error (with context) when a required
// comparison morphism is missing or ambiguous, i.e. when the candidate is not
// a category of operators.
struct ReconstructResult {
  std::shared_ptr<FinMulticategory> cat;
  GSymAction action;
  std::vector<int> carrier_objects;    // per extracted object
  std::vector<int> carrier_morphisms;  // per extracted morphism
  // The chosen universal source for a word of extracted objects: the carrier
  // object together with its letterwise coCartesian comparisons.
  std::function<std::pair<int, std::vector<int>>(const std::vector<int>&)> source_of;
};
ReconstructResult reconstruct(const OperatorCandidate& C);

// Builds the wreath operator of (M, A), extracts the multicategory back, and
// checks the explicit comparison is an equivariant isomorphism; also checks
// the extracted structure satisfies the multicategory and action laws.
Report roundtrip(const FinMulticategory& M, const GSymAction& A,
                 const GroupOperad& G, int N);

// An equivariant multifunctor is recovered from the functor it induces
// between wreath operators: composing the image of a morphism's vertex with
// the unary adapters of its source word returns the original image.
Report check_transfer(const WreathOperator& from, const WreathOperator& to,
                      const Multifunctor& F, const std::string& name);

}  // namespace nabla
