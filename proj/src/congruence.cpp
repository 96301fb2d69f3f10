#include "nabla/congruence.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "nabla/util.hpp"

namespace nabla {

struct CongruenceFamily::State {
  const GroupOperad* op = nullptr;
  std::string name;
  Rule rule;
  std::map<IntervalMap, std::vector<Perm>> memo;
  std::mutex mu;
};

CongruenceFamily::CongruenceFamily(const GroupOperad* op, std::string name, Rule rule)
    : state_(std::make_shared<State>()) {
  state_->op = op;
  state_->name = std::move(name);
  state_->rule = std::move(rule);
}

const GroupOperad& CongruenceFamily::operad() const { return *state_->op; }
const std::string& CongruenceFamily::name() const { return state_->name; }

const std::vector<Perm>& CongruenceFamily::members(const IntervalMap& phi) const {
  std::lock_guard<std::mutex> lock(state_->mu);
  auto it = state_->memo.find(phi);
  if (it != state_->memo.end()) return it->second;
  std::vector<Perm> els = state_->rule(phi);
  std::sort(els.begin(), els.end());
  els.erase(std::unique(els.begin(), els.end()), els.end());
  return state_->memo.emplace(phi, std::move(els)).first->second;
}

bool CongruenceFamily::contains(const IntervalMap& phi, const Perm& x) const {
  const auto& els = members(phi);
  return std::binary_search(els.begin(), els.end(), x);
}

Perm CongruenceFamily::coset_rep(const IntervalMap& phi, const Perm& x) const {
  const auto& els = members(phi);
  Perm best = mul(els.front(), x);
  for (std::size_t i = 1; i < els.size(); ++i) {
    Perm cand = mul(els[i], x);
    if (cand < best) best = std::move(cand);
  }
  return best;
}

std::size_t CongruenceFamily::coset_count(const IntervalMap& phi) const {
  return operad().elements(phi.dom_n).size() / members(phi).size();
}

std::vector<Perm> right_stabilizer_elements(const GroupOperad& G, const IntervalMap& phi) {
  std::vector<Perm> out;
  for (const Perm& x : G.elements(phi.dom_n)) {
    Perm p = G.to_perm(x);
    bool ok = true;
    for (int i = 1; i <= phi.dom_n && ok; ++i)
      if (phi.vals[p(i) - 1] != phi.vals[i - 1]) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

CongruenceFamily trivial_family(const GroupOperad& G) {
  return CongruenceFamily(&G, "trivial", [&G](const IntervalMap& phi) {
    return std::vector<Perm>{G.unit(phi.dom_n)};
  });
}

CongruenceFamily rstab_family(const GroupOperad& G) {
  return CongruenceFamily(&G, "rstab", [&G](const IntervalMap& phi) {
    return right_stabilizer_elements(G, phi);
  });
}

CongruenceFamily block_family(const GroupOperad& G) {
  return CongruenceFamily(&G, "block", [&G](const IntervalMap& phi) {
    FiberTuple t = fiber_tuple(phi);
    std::vector<int> sizes;
    sizes.push_back(t.k_neg);
    for (int kj : t.k) sizes.push_back(kj);
    sizes.push_back(t.k_pos);
    int parts = static_cast<int>(sizes.size());
    std::vector<int> radix(parts);
    for (int i = 0; i < parts; ++i)
      radix[i] = static_cast<int>(G.elements(sizes[i]).size());
    std::vector<Perm> out;
    for_each_tuple(radix, [&](const std::vector<int>& idx) {
      std::vector<Perm> blocks(parts);
      for (int i = 0; i < parts; ++i) blocks[i] = G.elements(sizes[i])[idx[i]];
      out.push_back(G.gamma(G.unit(parts), blocks));
      return true;
    });
    return out;
  });
}

CongruenceFamily block_kernel_family(const GroupOperad& G) {
  CongruenceFamily blocks = block_family(G);
  return CongruenceFamily(&G, "block-kernel", [&G, blocks](const IntervalMap& phi) {
    std::vector<Perm> out;
    for (const Perm& x : blocks.members(phi))
      if (G.to_perm(x).is_identity()) out.push_back(x);
    return out;
  });
}

CongruenceFamily closure_family(const CongruenceFamily& K) {
  const GroupOperad& G = K.operad();
  return CongruenceFamily(&G, K.name() + "-closure", [&G, K](const IntervalMap& phi) {
    Factorization fac = classify_and_factorize(phi);
    std::vector<Perm> out;
    for (const Perm& x : right_stabilizer_elements(G, phi))
      if (K.contains(fac.mu, crossed_pullback(G, fac.delta, x))) out.push_back(x);
    return out;
  });
}

CongruenceFamily min_proper_family(const GroupOperad& G) {
  CongruenceFamily f = closure_family(trivial_family(G));
  return CongruenceFamily(&G, "min-proper", [f](const IntervalMap& phi) {
    return f.members(phi);
  });
}

CongruenceFamily builtin_family(const GroupOperad& G, const std::string& slug) {
  if (slug == "trivial") return trivial_family(G);
  if (slug == "rstab") return rstab_family(G);
  if (slug == "block") return block_family(G);
  if (slug == "block-kernel") return block_kernel_family(G);
  if (slug == "block-closure") return closure_family(block_family(G));
  if (slug == "block-kernel-closure") return closure_family(block_kernel_family(G));
  if (slug == "min-proper") return min_proper_family(G);
  throw std::invalid_argument("unknown congruence family: " + slug);
}

std::vector<Perm> rstab_oracle(const GroupOperad& G, const IntervalMap& phi, int l_bound) {
  std::vector<Perm> out;
  int m = phi.dom_n;
  std::vector<IntervalMap> psis;
  for (int l = 0; l <= l_bound; ++l)
    for (const auto& psi : enumerate_interval_maps(l, m)) psis.push_back(psi);
  for (const Perm& x : G.elements(m)) {
    bool ok = true;
    for (const auto& psi : psis) {
      if (compose(phi, crossed_pushforward(G, psi, x)) != compose(phi, psi)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

std::vector<Perm> closure_oracle(const CongruenceFamily& K, const IntervalMap& phi,
                                 int l_bound) {
  const GroupOperad& G = K.operad();
  int m = phi.dom_n;
  std::vector<IntervalMap> actives;
  for (int l = 0; l <= l_bound; ++l)
    for (const auto& psi : enumerate_interval_maps(l, m))
      if (is_active(compose(phi, psi))) actives.push_back(psi);
  std::vector<Perm> out;
  for (const Perm& x : right_stabilizer_elements(G, phi)) {
    bool ok = true;
    for (const auto& psi : actives) {
      if (!K.contains(compose(phi, psi), crossed_pullback(G, psi, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

namespace {

std::vector<IntervalMap> all_maps_up_to(int N) {
  std::vector<IntervalMap> out;
  for (int m = 0; m <= N; ++m)
    for (int n = 0; n <= N; ++n)
      for (const auto& f : enumerate_interval_maps(m, n)) out.push_back(f);
  return out;
}

bool subgroup_of(const std::vector<Perm>& sub, const std::vector<Perm>& sup) {
  for (const Perm& x : sub)
    if (!std::binary_search(sup.begin(), sup.end(), x)) return false;
  return true;
}

std::vector<Perm> conjugate_set(const std::vector<Perm>& els, const Perm& g) {
  Perm ginv = inverse(g);
  std::vector<Perm> out;
  out.reserve(els.size());
  for (const Perm& x : els) out.push_back(mul(g, mul(x, ginv)));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Report verify_family(const CongruenceFamily& K, int N) {
  const GroupOperad& G = K.operad();
  Report r;
  r.title = "congruence axioms for " + K.name() + " up to " + std::to_string(N);
  auto phis = all_maps_up_to(N);

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      const auto& els = K.members(phi);
      std::vector<Perm> rst = right_stabilizer_elements(G, phi);
      std::sort(rst.begin(), rst.end());
      if (!std::binary_search(els.begin(), els.end(), G.unit(phi.dom_n))) {
        ok = false;
        wit = "unit missing at " + to_string(phi);
        break;
      }
      if (!subgroup_of(els, rst)) {
        ok = false;
        wit = "not inside the right stabilizers at " + to_string(phi);
        break;
      }
      for (const Perm& x : els) {
        if (!K.contains(phi, inverse(x))) {
          ok = false;
          wit = "inverse missing at " + to_string(phi);
          break;
        }
        for (const Perm& y : els)
          if (!K.contains(phi, mul(x, y))) {
            ok = false;
            wit = "product missing at " + to_string(phi);
            break;
          }
        if (!ok) break;
      }
      if (!ok) break;
    }
    r.add("family-subgroup", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      for (int p = 0; p <= N && ok; ++p)
        for (const auto& chi : enumerate_interval_maps(phi.cod_n, p)) {
          IntervalMap comp = compose(chi, phi);
          for (const Perm& x : K.members(phi))
            if (!K.contains(comp, x)) {
              ok = false;
              wit = "postcomposition drops " + to_string(x) + " at " + to_string(chi) +
                    " . " + to_string(phi);
              break;
            }
          if (!ok) break;
        }
      if (!ok) break;
    }
    r.add("family-postcompose", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      for (int l = 0; l <= N && ok; ++l)
        for (const auto& psi : enumerate_interval_maps(l, phi.dom_n)) {
          IntervalMap comp = compose(phi, psi);
          for (const Perm& x : K.members(phi))
            if (!K.contains(comp, crossed_pullback(G, psi, x))) {
              ok = false;
              wit = "pullback leaves the family at " + to_string(phi) + " via " +
                    to_string(psi);
              break;
            }
          if (!ok) break;
        }
      if (!ok) break;
    }
    r.add("family-pullback", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      for (const Perm& y : G.elements(phi.cod_n)) {
        CrossedPair c = crossed_action(G, phi, y);
        std::vector<Perm> conj = conjugate_set(K.members(phi), c.pullback);
        if (conj != K.members(c.pushed)) {
          ok = false;
          wit = "conjugation mismatch at " + to_string(phi) + " by " + to_string(y);
          break;
        }
      }
      if (!ok) break;
    }
    r.add("family-conjugation", ok, wit);
  }

  return r;
}

Report verify_pair(const CongruenceFamily& K, const CongruenceFamily& L, int N) {
  const GroupOperad& G = K.operad();
  Report r;
  r.title = "pair conditions for (" + K.name() + ", " + L.name() + ") up to " +
            std::to_string(N);
  auto phis = all_maps_up_to(N);
  CongruenceFamily inr = min_proper_family(G);

  {
    bool ok = true;
    std::string wit;
    CongruenceFamily kbar = closure_family(K);
    CongruenceFamily lbar = closure_family(L);
    for (const auto& phi : phis) {
      if (kbar.members(phi) != K.members(phi)) {
        ok = false;
        wit = K.name() + " not closure-fixed at " + to_string(phi);
        break;
      }
      if (lbar.members(phi) != L.members(phi)) {
        ok = false;
        wit = L.name() + " not closure-fixed at " + to_string(phi);
        break;
      }
    }
    r.add("pair-proper", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      const auto& lels = L.members(phi);
      for (const Perm& x : K.members(phi))
        if (conjugate_set(lels, x) != lels) {
          ok = false;
          wit = "vertical family fails to normalize the lower one at " + to_string(phi);
          break;
        }
      if (!ok) break;
    }
    r.add("pair-normalizer", ok, wit);
  }

  {
    bool ok = true;
    std::string wit;
    for (const auto& phi : phis) {
      if (!ok) break;
      for (int p = 0; p <= N && ok; ++p)
        for (const auto& psi : enumerate_interval_maps(phi.cod_n, p)) {
          IntervalMap comp = compose(psi, phi);
          for (const Perm& u : L.members(psi)) {
            Perm pu = crossed_pullback(G, phi, u);
            Perm puinv = inverse(pu);
            for (const Perm& x : K.members(phi)) {
              Perm c = mul(pu, mul(x, puinv));
              if (!K.contains(comp, c) || !inr.contains(comp, mul(c, inverse(x)))) {
                ok = false;
                wit = "conjugated class moves at " + to_string(psi) + " . " + to_string(phi);
                break;
              }
            }
            if (!ok) break;
          }
          if (!ok) break;
        }
    }
    r.add("pair-inner-conjugation", ok, wit);
  }

  return r;
}

}  // namespace nabla
