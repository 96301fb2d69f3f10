#include "nabla/operad.hpp"

#include <algorithm>
#include <stdexcept>

#include "nabla/util.hpp"

namespace nabla {

Perm GroupOperad::unit(int n) const {
  if (n > arity_bound())
    throw TruncationError(name() + ": arity " + std::to_string(n) + " beyond bound");
  return perm_identity(n);
}

void GroupOperad::check_member(int n, const Perm& x, const char* role) const {
  if (n > arity_bound())
    throw TruncationError(name() + ": arity " + std::to_string(n) + " beyond bound");
  if (x.size() != n || !contains(n, x))
    throw std::invalid_argument(name() + ": " + role + " " + to_string(x) +
                                " is not an element at arity " + std::to_string(n));
}

Perm GroupOperad::gamma(const Perm& x, const std::vector<Perm>& ys) const {
  check_member(x.size(), x, "outer factor");
  int total = 0;
  for (const auto& y : ys) {
    check_member(y.size(), y, "inner factor");
    total += y.size();
  }
  if (total > arity_bound())
    throw TruncationError(name() + ": composite arity " + std::to_string(total) +
                          " beyond bound");
  Perm z = gamma_perm(x, ys);
  if (!contains(total, z))
    throw std::invalid_argument(name() + ": composition left the operad at arity " +
                                std::to_string(total));
  return z;
}

TrivialOperad::TrivialOperad(int arity_bound) : bound_(arity_bound) {}

const std::vector<Perm>& TrivialOperad::elements(int n) const {
  if (n > bound_) throw TruncationError("trivial: arity beyond bound");
  if (static_cast<int>(cache_.size()) <= n) cache_.resize(n + 1);
  if (cache_[n].empty()) cache_[n] = {perm_identity(n)};
  return cache_[n];
}

bool TrivialOperad::contains(int n, const Perm& x) const {
  return x.size() == n && x.is_identity();
}

SymmetricOperad::SymmetricOperad(int arity_bound) : bound_(arity_bound) {}

const std::vector<Perm>& SymmetricOperad::elements(int n) const {
  if (n > bound_) throw TruncationError("symmetric: arity beyond bound");
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(cache_.size()) <= n) cache_.resize(n + 1);
  if (cache_[n].empty()) cache_[n] = all_perms(n);
  return cache_[n];
}

bool SymmetricOperad::contains(int n, const Perm& x) const {
  return x.size() == n;
}

std::unique_ptr<GroupOperad> make_operad(const std::string& name, int arity_bound) {
  if (name == "trivial") return std::make_unique<TrivialOperad>(std::max(arity_bound, 16));
  if (name == "symmetric") return std::make_unique<SymmetricOperad>(arity_bound);
  throw std::invalid_argument("unknown operad: " + name);
}

Perm crossed_pullback(const GroupOperad& G, const IntervalMap& phi, const Perm& y) {
  G.check_member(phi.cod_n, y, "acting element");
  FiberTuple t = fiber_tuple(phi);
  std::vector<Perm> units;
  units.reserve(t.k.size());
  for (int kj : t.k) units.push_back(G.unit(kj));
  Perm mid = G.gamma(y, units);
  return G.gamma(G.unit(3), {G.unit(t.k_neg), mid, G.unit(t.k_pos)});
}

IntervalMap crossed_pushforward(const GroupOperad& G, const IntervalMap& phi, const Perm& y) {
  return crossed_action(G, phi, y).pushed;
}

CrossedPair crossed_action(const GroupOperad& G, const IntervalMap& phi, const Perm& y) {
  CrossedPair out;
  out.pullback = crossed_pullback(G, phi, y);
  Perm pinv = inverse(out.pullback);
  int m = phi.dom_n, n = phi.cod_n;
  IntervalMap pushed{m, n, std::vector<int>(m)};
  for (int i = 1; i <= m; ++i) {
    int w = phi.vals[pinv(i) - 1];
    if (w == 0 || w == n + 1)
      pushed.vals[i - 1] = w;
    else
      pushed.vals[i - 1] = y(w);
  }
  for (int i = 1; i < m; ++i)
    if (pushed.vals[i] < pushed.vals[i - 1])
      throw std::runtime_error(
          "crossed_action: pushed map is not monotone (corrupted operad data?)");
  out.pushed = std::move(pushed);
  return out;
}

Perm fiber_block_element(const GroupOperad& G, const IntervalMap& phi,
                         const std::vector<Perm>& blocks) {
  FiberTuple t = fiber_tuple(phi);
  if (blocks.size() != t.k.size())
    throw std::invalid_argument("fiber_block_element: one block per finite letter required");
  std::vector<Perm> padded;
  padded.reserve(blocks.size() + 2);
  padded.push_back(G.unit(t.k_neg));
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].size() != t.k[j])
      throw std::invalid_argument("fiber_block_element: block size must match fibre size");
    padded.push_back(blocks[j]);
  }
  padded.push_back(G.unit(t.k_pos));
  return G.gamma(G.unit(static_cast<int>(padded.size())), padded);
}

namespace {

// Weak compositions (k_1..k_parts) with sum <= limit.
void weak_compositions(int parts, int limit,
                       const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> k(parts, 0);
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == parts) {
      fn(k);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      k[idx] = v;
      self(self, idx + 1, remaining - v);
    }
  };
  rec(rec, 0, limit);
}

// All tuples (y_1..y_parts) with y_i in G(k_i).
void element_tuples(const GroupOperad& G, const std::vector<int>& ks,
                    const std::function<void(const std::vector<Perm>&)>& fn) {
  std::vector<Perm> ys(ks.size());
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == ks.size()) {
      fn(ys);
      return;
    }
    for (const Perm& y : G.elements(ks[idx])) {
      ys[idx] = y;
      self(self, idx + 1);
    }
  };
  rec(rec, 0);
}

}  // namespace

Report verify_operad_axioms(const GroupOperad& G, int n_max) {
  Report r;
  r.title = G.name() + " operad axioms up to " + std::to_string(n_max);

  // Group laws and compatibility of the underlying-permutation map.
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    for (int n = 0; n <= n_max && ok; ++n) {
      const auto& els = G.elements(n);
      if (!G.contains(n, perm_identity(n))) {
        ok = false;
        wit = "unit missing at arity " + std::to_string(n);
        break;
      }
      for (const Perm& x : els) {
        if (!G.contains(n, inverse(x))) {
          ok = false;
          wit = "inverse of " + to_string(x) + " missing";
          break;
        }
        for (const Perm& y : els) {
          ++count;
          Perm xy = mul(x, y);
          if (!G.contains(n, xy)) {
            ok = false;
            wit = "product " + to_string(x) + "*" + to_string(y) + " missing";
            break;
          }
          if (G.to_perm(xy) != mul(G.to_perm(x), G.to_perm(y))) {
            ok = false;
            wit = "underlying map not a homomorphism at " + to_string(x);
            break;
          }
        }
        if (!ok) break;
      }
    }
    r.add("group-laws", ok, ok ? std::to_string(count) + " products checked" : wit);
  }

  // Operad unit laws.
  {
    bool ok = true;
    std::string wit;
    for (int n = 0; n <= n_max && ok; ++n) {
      for (const Perm& x : G.elements(n)) {
        std::vector<Perm> units(n, G.unit(1));
        if (G.gamma(x, units) != x) {
          ok = false;
          wit = "gamma(x; units) != x at " + to_string(x);
          break;
        }
        if (n <= G.arity_bound() && G.gamma(G.unit(1), {x}) != x) {
          ok = false;
          wit = "gamma(unit; x) != x at " + to_string(x);
          break;
        }
      }
    }
    r.add("operad-units", ok, wit);
  }

  // Closure and compatibility with the block composition of permutations.
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    for (int n = 0; n <= n_max && ok; ++n) {
      weak_compositions(n, n_max, [&](const std::vector<int>& ks) {
        if (!ok) return;
        for (const Perm& x : G.elements(n)) {
          element_tuples(G, ks, [&](const std::vector<Perm>& ys) {
            if (!ok) return;
            ++count;
            Perm z;
            try {
              z = G.gamma(x, ys);
            } catch (const std::exception& e) {
              ok = false;
              wit = e.what();
              return;
            }
            if (G.to_perm(z) != gamma_perm(G.to_perm(x), ys)) {
              ok = false;
              wit = "underlying map not operadic at " + to_string(x);
            }
          });
          if (!ok) break;
        }
      });
    }
    r.add("operad-closure", ok, ok ? std::to_string(count) + " composites checked" : wit);
  }

  // Operad associativity.
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    for (int n = 0; n <= n_max && ok; ++n) {
      weak_compositions(n, n_max, [&](const std::vector<int>& ks) {
        if (!ok) return;
        int t = 0;
        for (int kj : ks) t += kj;
        weak_compositions(t, n_max, [&](const std::vector<int>& ls) {
          if (!ok) return;
          for (const Perm& x : G.elements(n)) {
            element_tuples(G, ks, [&](const std::vector<Perm>& ys) {
              if (!ok) return;
              element_tuples(G, ls, [&](const std::vector<Perm>& zs) {
                if (!ok) return;
                ++count;
                Perm lhs = G.gamma(G.gamma(x, ys), zs);
                std::vector<Perm> inner(n);
                int off = 0;
                for (int i = 0; i < n; ++i) {
                  std::vector<Perm> slice(zs.begin() + off, zs.begin() + off + ks[i]);
                  inner[i] = G.gamma(ys[i], slice);
                  off += ks[i];
                }
                Perm rhs = G.gamma(x, inner);
                if (lhs != rhs) {
                  ok = false;
                  wit = "associativity failed at outer " + to_string(x);
                }
              });
              if (!ok) return;
            });
            if (!ok) break;
          }
        });
      });
    }
    r.add("operad-assoc", ok, ok ? std::to_string(count) + " triples checked" : wit);
  }

  // Interchange of the group and operad structures.
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    for (int n = 0; n <= n_max && ok; ++n) {
      weak_compositions(n, n_max, [&](const std::vector<int>& ks) {
        if (!ok) return;
        for (const Perm& x : G.elements(n)) {
          for (const Perm& y : G.elements(n)) {
            element_tuples(G, ks, [&](const std::vector<Perm>& xs) {
              if (!ok) return;
              element_tuples(G, ks, [&](const std::vector<Perm>& ys) {
                if (!ok) return;
                ++count;
                std::vector<Perm> prods(n);
                for (int i = 0; i < n; ++i) prods[i] = mul(xs[i], ys[i]);
                Perm lhs = G.gamma(mul(x, y), prods);
                Perm yinv = inverse(G.to_perm(y));
                std::vector<Perm> xs_moved(n);
                for (int i = 1; i <= n; ++i) xs_moved[i - 1] = xs[yinv(i) - 1];
                Perm rhs = mul(G.gamma(x, xs_moved), G.gamma(y, ys));
                if (lhs != rhs) {
                  ok = false;
                  wit = "interchange failed at outer pair " + to_string(x) + "," + to_string(y);
                }
              });
              if (!ok) return;
            });
            if (!ok) break;
          }
          if (!ok) break;
        }
      });
    }
    r.add("operad-interchange", ok, ok ? std::to_string(count) + " instances checked" : wit);
  }

  // Crossed action: unit laws, the multiplicativity of the pullback, and
  // functoriality in the interval morphism.
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    try {
    for (int n = 0; n <= n_max && ok; ++n) {
      for (int m = 0; m <= n_max && ok; ++m) {
        for (const IntervalMap& phi : enumerate_interval_maps(m, n)) {
          if (crossed_pullback(G, phi, G.unit(n)) != G.unit(m) ||
              crossed_pushforward(G, phi, G.unit(n)) != phi) {
            ok = false;
            wit = "unit action moved " + to_string(phi);
            break;
          }
          for (const Perm& x : G.elements(n)) {
            CrossedPair cx = crossed_action(G, phi, x);
            if (m == n && phi == interval_identity(n) && cx.pullback != x) {
              ok = false;
              wit = "pullback along identity is not the identity map";
              break;
            }
            for (const Perm& y : G.elements(n)) {
              ++count;
              CrossedPair cy = crossed_action(G, phi, y);
              Perm lhs = crossed_pullback(G, phi, mul(x, y));
              Perm rhs = mul(crossed_pullback(G, cy.pushed, x), cy.pullback);
              if (lhs != rhs) {
                ok = false;
                wit = "pullback not multiplicative at " + to_string(phi);
                break;
              }
              if (crossed_pushforward(G, phi, mul(x, y)) !=
                  crossed_pushforward(G, cy.pushed, x)) {
                ok = false;
                wit = "pushforward not an action at " + to_string(phi);
                break;
              }
            }
            if (!ok) break;
          }
          if (!ok) break;
        }
      }
    }
    } catch (const std::exception& e) {
      ok = false;
      wit = e.what();
    }
    r.add("crossed-group-action", ok, ok ? std::to_string(count) + " pairs checked" : wit);
  }
  {
    bool ok = true;
    std::string wit;
    long count = 0;
    try {
    for (int n = 0; n <= n_max && ok; ++n) {
      for (int m = 0; m <= n_max && ok; ++m) {
        auto phis = enumerate_interval_maps(m, n);
        for (int l = 0; l <= n_max && ok; ++l) {
          for (const IntervalMap& psi : enumerate_interval_maps(l, m)) {
            for (const IntervalMap& phi : phis) {
              IntervalMap comp = compose(phi, psi);
              for (const Perm& x : G.elements(n)) {
                ++count;
                CrossedPair cphi = crossed_action(G, phi, x);
                CrossedPair cpsi = crossed_action(G, psi, cphi.pullback);
                if (crossed_pushforward(G, comp, x) != compose(cphi.pushed, cpsi.pushed)) {
                  ok = false;
                  wit = "pushforward not functorial at " + to_string(psi) + ";" + to_string(phi);
                  break;
                }
                if (crossed_pullback(G, comp, x) != cpsi.pullback) {
                  ok = false;
                  wit = "pullback not functorial at " + to_string(psi) + ";" + to_string(phi);
                  break;
                }
              }
              if (!ok) break;
            }
            if (!ok) break;
          }
        }
      }
    }
    } catch (const std::exception& e) {
      ok = false;
      wit = e.what();
    }
    r.add("crossed-functorial", ok, ok ? std::to_string(count) + " triples checked" : wit);
  }

  return r;
}

}  // namespace nabla
