// Exhaustive acceptance gate: one CHECK line per criterion, exit 1 on any
// failure.  Each criterion recomputes its expected values from an independent
// oracle or a frozen count.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nabla/congruence.hpp"
#include "nabla/fincat.hpp"
#include "nabla/interval.hpp"
#include "nabla/multicat.hpp"
#include "nabla/operad.hpp"
#include "nabla/quotal.hpp"
#include "nabla/segal.hpp"
#include "nabla/wreath.hpp"

using namespace nabla;

namespace {

int failures = 0;

void criterion(const std::string& id, double time_bound,
               const std::function<bool(std::string&)>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && time_bound > 0 && elapsed > time_bound) {
    ok = false;
    detail = "time bound exceeded";
  }
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.1fs", elapsed);
  std::printf("CHECK %s %s %s%s%s\n", id.c_str(), ok ? "PASS" : "FAIL", timing,
              detail.empty() ? "" : " ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

bool report_ok(const Report& r, std::string& detail) {
  if (r.ok()) return true;
  detail = r.first_failure()->id + ": " + r.first_failure()->detail;
  return false;
}

std::vector<IntervalMap> maps_up_to(int bound) {
  std::vector<IntervalMap> out;
  for (int m = 0; m <= bound; ++m)
    for (int n = 0; n <= bound; ++n)
      for (const auto& f : enumerate_interval_maps(m, n)) out.push_back(f);
  return out;
}

std::vector<Perm> sorted(std::vector<Perm> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto f = fwd.emplace(a[i], b[i]);
    auto g = bwd.emplace(b[i], a[i]);
    if (f.first->second != b[i] || g.first->second != a[i]) return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion("crossed-axioms", 60.0, [](std::string& detail) {
    SymmetricOperad S(12);
    return report_ok(verify_operad_axioms(S, 4), detail);
  });

  criterion("stabilizer-criterion", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    TrivialOperad T(8);
    int bad = 0;
    for (const auto& phi : maps_up_to(3)) {
      if (sorted(right_stabilizer_elements(S, phi)) !=
          sorted(rstab_oracle(S, phi, phi.dom_n + 1)))
        ++bad;
      if (sorted(right_stabilizer_elements(T, phi)) !=
          sorted(rstab_oracle(T, phi, phi.dom_n + 1)))
        ++bad;
    }
    if (bad) detail = std::to_string(bad) + " disagreements";
    return bad == 0;
  });

  criterion("closure-operator", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    std::vector<CongruenceFamily> ks = {trivial_family(S), block_family(S),
                                        block_kernel_family(S)};
    auto maps = maps_up_to(4);
    for (const auto& K : ks) {
      CongruenceFamily bar = closure_family(K);
      CongruenceFamily barbar = closure_family(bar);
      for (const auto& phi : maps) {
        for (const Perm& x : K.members(phi))
          if (!bar.contains(phi, x)) {
            detail = "not extensive over " + to_string(phi);
            return false;
          }
        if (sorted(bar.members(phi)) != sorted(barbar.members(phi))) {
          detail = "not idempotent over " + to_string(phi);
          return false;
        }
      }
    }
    for (const auto& K : ks)
      for (const auto& L : ks) {
        bool leq = true;
        for (const auto& phi : maps)
          for (const Perm& x : K.members(phi))
            if (!L.contains(phi, x)) leq = false;
        if (!leq) continue;
        CongruenceFamily kb = closure_family(K), lb = closure_family(L);
        for (const auto& phi : maps)
          for (const Perm& x : kb.members(phi))
            if (!lb.contains(phi, x)) {
              detail = "not monotone over " + to_string(phi);
              return false;
            }
      }
    CongruenceFamily inr = min_proper_family(S);
    CongruenceFamily tbar = closure_family(trivial_family(S));
    CongruenceFamily kbar = closure_family(block_kernel_family(S));
    for (const auto& phi : maps) {
      if (sorted(tbar.members(phi)) != sorted(inr.members(phi))) {
        detail = "trivial closure misses the minimum proper family at " + to_string(phi);
        return false;
      }
      if (sorted(kbar.members(phi)) != sorted(inr.members(phi))) {
        detail = "kernel closure differs from the minimum proper family at " + to_string(phi);
        return false;
      }
    }
    return true;
  });

  criterion("family-roundtrip", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    for (const char* slug : {"trivial", "min-proper", "block-closure",
                             "block-kernel-closure", "rstab"}) {
      CongruenceFamily K = builtin_family(S, slug);
      QuotalCategory Q = build_quotal(S, K, 4);
      for (const auto& phi : maps_up_to(4))
        if (sorted(recover_family(Q, phi)) != sorted(K.members(phi))) {
          detail = std::string(slug) + " not recovered at " + to_string(phi);
          return false;
        }
    }
    return true;
  });

  criterion("hom-counts", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    QuotalCategory E = build_quotal(S, builtin_family(S, "block-kernel-closure"), 2);
    TildeQuotal T = tilde_quotient(E);
    std::vector<char> active(E.cat->morphism_count());
    for (int m = 0; m < E.cat->morphism_count(); ++m) active[m] = is_active(E.phi_of[m]);
    QuotientResult G = quotient_left_cancellative(*E.cat, active, "generic");
    if (!report_ok(G.report, detail)) return false;
    if (!same_partition(T.class_of, G.class_of)) {
      detail = "section congruence differs from the generic quotient";
      return false;
    }
    std::size_t e21 = E.cat->hom(2, 1).size();
    std::size_t t21 = T.cat->hom(2, 1).size();
    std::size_t t11 = T.cat->hom(1, 1).size();
    if (e21 != 10 || t21 != 5 || t11 != 2) {
      detail = "got " + std::to_string(e21) + "/" + std::to_string(t21) + "/" +
               std::to_string(t11) + ", want 10/5/2";
      return false;
    }
    return true;
  });

  criterion("double-category", 300.0, [](std::string& detail) {
    SymmetricOperad S(8);
    CongruenceFamily K = closure_family(block_family(S));
    CongruenceFamily L = closure_family(block_kernel_family(S));
    Report r = verify_pair(K, L, 3);
    DoubleQuotal D = build_double_quotal(S, K, L, 3);
    r.merge(check_double_category(D.dc));
    TildeDouble T = build_tilde_double(D);
    r.merge(check_double_category(T.dc));
    r.merge(verify_pullback_squares(D, T));
    return report_ok(r, detail);
  });

  criterion("pairing-isomorphism", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    TwoObjectSample two = two_object_sample(3);
    auto base = make_standard_base(S, 3);
    Report r = check_pairing(pair_wreaths(two.cat, S, base, false), "coset");
    r.merge(check_pairing(pair_wreaths(two.cat, S, base, true), "tilde"));
    return report_ok(r, detail);
  });

  criterion("inert-lifts", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    TwoObjectSample two = two_object_sample(3);
    auto base = make_standard_base(S, 3);
    WreathOperator WO = wreath_operator(two.cat, two.action, base);
    Report r = validate_operator_category(WO.candidate);
    r.merge(check_fiber_decomposition(*WO.wreath, "fiber"));
    if (!report_ok(r, detail)) return false;
    const WreathCategory& W = *WO.wreath;
    const FinCategory& B = W.anchor_category();
    for (int anc = 0; anc < B.morphism_count(); ++anc) {
      const IntervalMap* phi;
      const Perm *u, *x;
      W.anchor_data(anc, &phi, &u, &x);
      if (!is_inert(*phi)) continue;
      for (int o = 0; o < W.object_count(); ++o) {
        if ((int)W.word(o).size() != phi->dom_n) continue;
        if (!wreath_is_cocartesian(W, std_cocart_lift(W, anc, o))) {
          detail = "standard lift fails at " + B.morphism_label(anc) + " from " +
                   W.object_label(o);
          return false;
        }
      }
    }
    return true;
  });

  criterion("reconstruction", 0, [](std::string& detail) {
    SymmetricOperad S(8);
    FinMulticategory T = terminal_multicat(3);
    Report r = roundtrip(T, fixing_action(), S, 3);
    TwoObjectSample two = two_object_sample(3);
    r.merge(roundtrip(two.cat, two.action, S, 3));
    OneObjectSample one = one_object_sample(3);
    r.merge(roundtrip(one.cat, one.action, S, 3));
    if (!report_ok(r, detail)) return false;
    auto base = make_standard_base(S, 3);
    ReconstructResult rec = reconstruct(cells_operator_candidate(base));
    std::size_t want[] = {1, 1, 2, 6};
    for (int n = 0; n <= 3; ++n) {
      std::size_t got = rec.cat->hom(std::vector<int>((std::size_t)n, 0), 0).size();
      if (got != want[n]) {
        detail = "group homs at arity " + std::to_string(n) + ": " + std::to_string(got) +
                 ", want " + std::to_string(want[n]);
        return false;
      }
    }
    return true;
  });

  criterion("segal-commutativity", 30.0, [](std::string& detail) {
    CommutativityResult z2 = commutativity_check(cyclic_monoid(2), 3);
    if (!z2.commutative || !z2.report.ok()) {
      detail = "two-element cyclic monoid not reported commutative";
      return false;
    }
    CommutativityResult lz = commutativity_check(left_zero_monoid(), 3);
    if (lz.commutative) {
      detail = "left-zero monoid not reported noncommutative";
      return false;
    }
    if (lz.witness.empty()) {
      detail = "missing witness for the left-zero monoid";
      return false;
    }
    auto agree_check = [](const Report& r) {
      for (const Check& c : r.checks)
        if (c.id == "commutativity-criteria-agree") return c.pass;
      return false;
    };
    if (!agree_check(lz.report)) {
      detail = "criteria disagree for the left-zero monoid";
      return false;
    }
    for (const FinMonoid& M : all_monoids_up_to(4)) {
      CommutativityResult c = commutativity_check(M, 3);
      bool elementwise = true;
      for (int x = 0; x < M.size() && elementwise; ++x)
        for (int y = 0; y < M.size(); ++y)
          if (M.mul(x, y) != M.mul(y, x)) {
            elementwise = false;
            break;
          }
      if (!agree_check(c.report) || c.commutative != elementwise) {
        detail = "criterion disagrees with elementwise commutativity for " + M.name;
        return false;
      }
    }
    return true;
  });

  return failures ? 1 : 0;
}
