#pragma once

#include <compare>
#include <string>
#include <vector>

namespace nabla {

// A morphism of the augmented-interval category: a weakly monotone map
// {-oo, 1, ..., dom_n, +oo} -> {-oo, 1, ..., cod_n, +oo} fixing both endpoints.
// Only the images of the finite letters are stored, encoded as integers with
// 0 standing for -oo and cod_n + 1 for +oo, so monotonicity is plain integer
// order on `vals`.
struct IntervalMap {
  int dom_n = 0;
  int cod_n = 0;
  std::vector<int> vals;  // vals[i-1] = image of letter i, in [0, cod_n + 1]

  auto operator<=>(const IntervalMap&) const = default;

  int neg_inf() const { return 0; }
  int pos_inf() const { return cod_n + 1; }
  bool is_finite_value(int v) const { return v >= 1 && v <= cod_n; }

  // Total map on encoded letters: 0 and dom_n + 1 go to the endpoints.
  int operator()(int i) const;
};

// Validating factory; throws std::invalid_argument on bad shape or
// non-monotone values.
IntervalMap make_interval(int dom_n, int cod_n, std::vector<int> vals);

IntervalMap interval_identity(int n);

// g after f; throws std::invalid_argument unless f.cod_n == g.dom_n.
IntervalMap compose(const IntervalMap& g, const IntervalMap& f);

// Fibre cardinalities: k[j-1] = |f^{-1}{j}| for finite j, and the endpoint
// entries count only the finite letters sent to that endpoint.
struct FiberTuple {
  int k_neg = 0;
  std::vector<int> k;
  int k_pos = 0;

  auto operator<=>(const FiberTuple&) const = default;
  int total() const;
};

FiberTuple fiber_tuple(const IntervalMap& f);

// Active: no finite letter maps to an endpoint.
bool is_active(const IntervalMap& f);
// Inert: f restricts to a bijection onto the finite letters of the codomain.
bool is_inert(const IntervalMap& f);

enum class MapClass { Active, Inert, Mixed };

// f = mu . rho with rho inert onto <<t>> (t = number of letters with finite
// image) and mu active; delta is the unique section of rho.
struct Factorization {
  MapClass cls = MapClass::Mixed;
  IntervalMap rho;
  IntervalMap mu;
  IntervalMap delta;
};

Factorization classify_and_factorize(const IntervalMap& f);

// <<n>> -> <<1>> sending every finite letter to 1.
IntervalMap mu_map(int n);
// <<n>> -> <<1>> sending i to 1, letters below i to -oo and above to +oo.
IntervalMap rho_map(int n, int i);
// <<k_1+...+k_n>> -> <<k_i>> collapsing everything outside the i-th block.
IntervalMap block_rho(const std::vector<int>& ks, int i);
// <<k_j>> -> <<dom of f>> enumerating the fibre f^{-1}{j} in increasing order.
IntervalMap fiber_section(const IntervalMap& f, int j);

// Blockwise join of active morphisms nu_i: <<k_i>> -> <<l_i>>; the i-th block
// of the source maps into the i-th block of the target via nu_i.
// Throws std::invalid_argument if some input is not active.
IntervalMap join_active(const std::vector<IntervalMap>& nus);

// All morphisms <<m>> -> <<n>> in lexicographic order of their value vectors.
std::vector<IntervalMap> enumerate_interval_maps(int m, int n);

std::string to_string(const IntervalMap& f);

// Subword of w (one letter per domain position of f) lying over the finite
// letter j of the codomain, in increasing position order.
template <class T>
std::vector<T> word_fiber(const std::vector<T>& w, const IntervalMap& f, int j) {
  std::vector<T> out;
  for (int i = 1; i <= f.dom_n; ++i)
    if (f.vals[i - 1] == j) out.push_back(w[i - 1]);
  return out;
}

}  // namespace nabla
