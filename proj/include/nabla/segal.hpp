#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nabla/fincat.hpp"
#include "nabla/interval.hpp"
#include "nabla/operad.hpp"
#include "nabla/quotal.hpp"
#include "nabla/report.hpp"

namespace nabla {

// A finite monoid with named elements.
struct FinMonoid {
  std::string name;
  std::vector<std::string> elements;
  int unit = 0;
  std::vector<std::vector<int>> table;  // table[x][y] = x*y

  int size() const { return static_cast<int>(elements.size()); }
  int mul(int x, int y) const { return table[x][y]; }
};

// Table shape, unit laws and associativity.
Report validate_monoid(const FinMonoid& M, const std::string& name);

FinMonoid trivial_monoid();
FinMonoid cyclic_monoid(int n);
// {e, a, b} with xy = x whenever x, y are both non-units.
FinMonoid left_zero_monoid();

// All tuples over {0..size-1} of length n, in lexicographic order.
std::vector<std::vector<int>> all_tuples(int size, int n);

// The structure map of the monoid nerve: sends an m-tuple along
// phi: <<m>> -> <<n>> by multiplying each fiber in increasing index order
// (empty fibers give the unit, endpoint fibers are dropped).
std::vector<int> nerve_map(const FinMonoid& M, const IntervalMap& phi,
                           const std::vector<int>& tuple);

// Exhaustive functoriality of the nerve over the truncated interval category.
Report verify_nerve(const FinMonoid& M, int N);

// Compatibility of the nerve with the group action on tuples:
// (phi_* w)^y = (phi^y)_*(w^{phi*(y)}) for all phi, y, w within bounds.
Report verify_nerve_equivariance(const FinMonoid& M, const GroupOperad& G, int N);

// The category of elements of the nerve, projecting to the truncated
// interval category.
struct ElementsCategory {
  FinMonoid monoid;
  IntervalCategory base;
  std::shared_ptr<FinCategory> cat;
  std::vector<std::pair<int, std::vector<int>>> objects;  // (n, tuple)
  std::vector<int> base_of;                               // per morphism
  Functor projection;
  std::map<std::pair<int, std::vector<int>>, int> obj_index;
  std::map<std::pair<int, int>, int> lift_index;  // (object, base mor) -> mor

  int find_object(int n, const std::vector<int>& tuple) const;
  int lift_from(int obj, int base_mor) const;  // -1 if absent
};
ElementsCategory grothendieck(const FinMonoid& M, int N);

// Exactly one morphism out of each object over every base morphism starting
// at its image, plus the category and projection laws.
Report check_discrete_fibration(const ElementsCategory& E);

// The fibration-level commutativity criterion: every twisted multiplication
// map (mu_n precomposed with a permutation of the tuple) agrees with the
// untwisted one, for all n <= n_max.  Cross-checked against the elementwise
// pairwise test; a failure carries the witnessing pair.
struct CommutativityResult {
  bool commutative = false;
  std::string witness;  // "witness=(x,y)" for the first failing pair
  Report report;
};
CommutativityResult commutativity_check(const FinMonoid& M, int n_max);

// Every monoid structure on {x0..x_{k-1}} with unit x0, k <= max_order.
std::vector<FinMonoid> all_monoids_up_to(int max_order);

}  // namespace nabla
