#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nabla/interval.hpp"
#include "nabla/perm.hpp"
#include "nabla/report.hpp"

namespace nabla {

// An operad in groups together with its map to the symmetric operad.  The
// built-in instances are stored faithfully: an element of G(n) is represented
// by its underlying permutation, so to_perm is the inclusion and the group
// law is permutation composition.
class GroupOperad {
 public:
  virtual ~GroupOperad() = default;

  virtual std::string name() const = 0;
  // Largest arity this instance can work at; operations beyond it throw
  // TruncationError.
  virtual int arity_bound() const = 0;
  // Elements of G(n), sorted lexicographically.
  virtual const std::vector<Perm>& elements(int n) const = 0;
  virtual bool contains(int n, const Perm& x) const = 0;

  Perm unit(int n) const;
  Perm to_perm(const Perm& x) const { return x; }

  // Operadic composition; validates membership and the arity bound.
  virtual Perm gamma(const Perm& x, const std::vector<Perm>& ys) const;

  // Throws unless x is an element of G(n) within the arity bound.
  void check_member(int n, const Perm& x, const char* role) const;
};

class TrivialOperad final : public GroupOperad {
 public:
  explicit TrivialOperad(int arity_bound = 16);
  std::string name() const override { return "trivial"; }
  int arity_bound() const override { return bound_; }
  const std::vector<Perm>& elements(int n) const override;
  bool contains(int n, const Perm& x) const override;

 private:
  int bound_;
  mutable std::vector<std::vector<Perm>> cache_;
};

class SymmetricOperad : public GroupOperad {
 public:
  explicit SymmetricOperad(int arity_bound = 8);
  std::string name() const override { return "symmetric"; }
  int arity_bound() const override { return bound_; }
  const std::vector<Perm>& elements(int n) const override;
  bool contains(int n, const Perm& x) const override;

 private:
  int bound_;
  mutable std::vector<std::vector<Perm>> cache_;
  mutable std::mutex mu_;
};

// Looks up a built-in operad by name ("trivial" or "symmetric");
// throws std::invalid_argument otherwise.
std::unique_ptr<GroupOperad> make_operad(const std::string& name, int arity_bound = 8);

// The compatible pair of a morphism phi: <<m>> -> <<n>> and y in G(n):
//   pullback = phi*(y) in G(m), assembled blockwise from the fibres of phi;
//   pushed   = phi^y, the unique monotone map with
//              ybar . phi = pushed . (underlying pullback extended by the
//              endpoints).
// Throws std::runtime_error if the solved candidate fails monotonicity,
// which signals corrupted operad data.
struct CrossedPair {
  Perm pullback;
  IntervalMap pushed;
};

CrossedPair crossed_action(const GroupOperad& G, const IntervalMap& phi, const Perm& y);
Perm crossed_pullback(const GroupOperad& G, const IntervalMap& phi, const Perm& y);
IntervalMap crossed_pushforward(const GroupOperad& G, const IntervalMap& phi, const Perm& y);

// Blockwise element of G(m) supported on the fibres of phi: <<m>> -> <<n>>:
// block j (over the finite letter j) acts by blocks[j-1], endpoint fibres act
// trivially.  blocks[j-1] must lie in G(k_j).
Perm fiber_block_element(const GroupOperad& G, const IntervalMap& phi,
                         const std::vector<Perm>& blocks);

// Exhaustive check of the defining laws up to arity/truncation n_max:
// groups, operad unit/associativity/interchange, compatibility with the
// symmetric operad, and the two crossed-action equations.
Report verify_operad_axioms(const GroupOperad& G, int n_max);

}  // namespace nabla
