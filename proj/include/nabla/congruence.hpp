#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nabla/interval.hpp"
#include "nabla/operad.hpp"
#include "nabla/perm.hpp"
#include "nabla/report.hpp"

namespace nabla {

// A family of subgroups K_phi <= G(dom phi), one per interval morphism,
// memoized per morphism.  Value-semantic: copies share the computed state.
class CongruenceFamily {
 public:
  using Rule = std::function<std::vector<Perm>(const IntervalMap&)>;

  CongruenceFamily() = default;
  CongruenceFamily(const GroupOperad* op, std::string name, Rule rule);

  const GroupOperad& operad() const;
  const std::string& name() const;

  // Sorted elements of K_phi.
  const std::vector<Perm>& members(const IntervalMap& phi) const;
  bool contains(const IntervalMap& phi, const Perm& x) const;
  // Lexicographically least element of the left coset K_phi * x.
  Perm coset_rep(const IntervalMap& phi, const Perm& x) const;
  // Number of left cosets K_phi \ G(m).
  std::size_t coset_count(const IntervalMap& phi) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

// Elements of G(m) whose underlying permutation preserves every fibre of phi
// setwise (equivalently phi . xbar = phi).
std::vector<Perm> right_stabilizer_elements(const GroupOperad& G, const IntervalMap& phi);

// Built-in families.
CongruenceFamily trivial_family(const GroupOperad& G);
CongruenceFamily rstab_family(const GroupOperad& G);
// Blockwise subgroup over the fibre decomposition of phi (endpoint fibres included).
CongruenceFamily block_family(const GroupOperad& G);
// Elements of the block family whose underlying permutation is the identity.
CongruenceFamily block_kernel_family(const GroupOperad& G);
// K-bar: on actives it is K; in general {x in RStab_phi : delta*(x) in K_mu}
// for the factorization phi = mu.rho with section delta.
CongruenceFamily closure_family(const CongruenceFamily& K);
// Closure of the trivial family: the least family fixed by closure.
CongruenceFamily min_proper_family(const GroupOperad& G);

// Looks up a family by slug: trivial, rstab, block, block-kernel,
// block-closure, block-kernel-closure, min-proper.
CongruenceFamily builtin_family(const GroupOperad& G, const std::string& slug);

// Brute-force oracles used to validate the closed-form member rules.
// x in RStab_phi iff phi.psi^x = phi.psi for every psi with dom <= l_bound.
std::vector<Perm> rstab_oracle(const GroupOperad& G, const IntervalMap& phi, int l_bound);
// Direct closure definition: x in RStab_phi such that psi*(x) in K(phi.psi)
// for every psi with phi.psi active, dom psi <= l_bound.
std::vector<Perm> closure_oracle(const CongruenceFamily& K, const IntervalMap& phi,
                                 int l_bound);

// Axioms of a congruence family over all phi: <<m>> -> <<n>> with m, n <= N:
// subgroup of the right stabilizers, monotone under postcomposition, stable
// under pullback, and conjugation-compatible with the crossed action.
Report verify_family(const CongruenceFamily& K, int N);

// Pair conditions for building the two-level quotient: both families proper
// (fixed by closure), K normalizes L pointwise, and pulled-back L-conjugation
// fixes K-classes modulo the minimal proper family.
Report verify_pair(const CongruenceFamily& K, const CongruenceFamily& L, int N);

}  // namespace nabla
