#include "nabla/interval.hpp"

#include <numeric>
#include <stdexcept>

namespace nabla {

namespace {

void check_shape(const IntervalMap& f) {
  if (f.dom_n < 0 || f.cod_n < 0) throw std::invalid_argument("interval map: negative size");
  if (static_cast<int>(f.vals.size()) != f.dom_n)
    throw std::invalid_argument("interval map: value count does not match domain size");
  int prev = 0;
  for (int v : f.vals) {
    if (v < 0 || v > f.cod_n + 1)
      throw std::invalid_argument("interval map: value out of range");
    if (v < prev) throw std::invalid_argument("interval map: values not monotone");
    prev = v;
  }
}

}  // namespace

int IntervalMap::operator()(int i) const {
  if (i == 0) return 0;
  if (i == dom_n + 1) return cod_n + 1;
  return vals[i - 1];
}

IntervalMap make_interval(int dom_n, int cod_n, std::vector<int> vals) {
  IntervalMap f{dom_n, cod_n, std::move(vals)};
  check_shape(f);
  return f;
}

IntervalMap interval_identity(int n) {
  IntervalMap f{n, n, std::vector<int>(n)};
  std::iota(f.vals.begin(), f.vals.end(), 1);
  return f;
}

IntervalMap compose(const IntervalMap& g, const IntervalMap& f) {
  if (f.cod_n != g.dom_n)
    throw std::invalid_argument("compose: codomain/domain mismatch");
  IntervalMap h{f.dom_n, g.cod_n, std::vector<int>(f.dom_n)};
  for (int i = 1; i <= f.dom_n; ++i) {
    int v = f.vals[i - 1];
    if (v == 0)
      h.vals[i - 1] = 0;
    else if (v == f.cod_n + 1)
      h.vals[i - 1] = g.cod_n + 1;
    else
      h.vals[i - 1] = g.vals[v - 1];
  }
  return h;
}

int FiberTuple::total() const {
  return k_neg + std::accumulate(k.begin(), k.end(), 0) + k_pos;
}

FiberTuple fiber_tuple(const IntervalMap& f) {
  FiberTuple t;
  t.k.assign(f.cod_n, 0);
  for (int v : f.vals) {
    if (v == 0)
      ++t.k_neg;
    else if (v == f.cod_n + 1)
      ++t.k_pos;
    else
      ++t.k[v - 1];
  }
  return t;
}

bool is_active(const IntervalMap& f) {
  for (int v : f.vals)
    if (v == 0 || v == f.cod_n + 1) return false;
  return true;
}

bool is_inert(const IntervalMap& f) {
  FiberTuple t = fiber_tuple(f);
  for (int kj : t.k)
    if (kj != 1) return false;
  return true;
}

Factorization classify_and_factorize(const IntervalMap& f) {
  Factorization out;
  bool act = is_active(f), in = is_inert(f);
  out.cls = act ? MapClass::Active : (in ? MapClass::Inert : MapClass::Mixed);

  std::vector<int> finite_positions;  // letters of the domain with finite image
  for (int i = 1; i <= f.dom_n; ++i)
    if (f.is_finite_value(f.vals[i - 1])) finite_positions.push_back(i);
  int t = static_cast<int>(finite_positions.size());

  out.rho = IntervalMap{f.dom_n, t, std::vector<int>(f.dom_n)};
  {
    int next = 1;
    for (int i = 1; i <= f.dom_n; ++i) {
      int v = f.vals[i - 1];
      if (v == 0)
        out.rho.vals[i - 1] = 0;
      else if (v == f.cod_n + 1)
        out.rho.vals[i - 1] = t + 1;
      else
        out.rho.vals[i - 1] = next++;
    }
  }
  out.mu = IntervalMap{t, f.cod_n, std::vector<int>(t)};
  out.delta = IntervalMap{t, f.dom_n, std::vector<int>(t)};
  for (int s = 1; s <= t; ++s) {
    out.mu.vals[s - 1] = f.vals[finite_positions[s - 1] - 1];
    out.delta.vals[s - 1] = finite_positions[s - 1];
  }
  return out;
}

IntervalMap mu_map(int n) {
  return IntervalMap{n, 1, std::vector<int>(n, 1)};
}

IntervalMap rho_map(int n, int i) {
  if (i < 1 || i > n) throw std::invalid_argument("rho_map: letter out of range");
  IntervalMap f{n, 1, std::vector<int>(n)};
  for (int j = 1; j <= n; ++j) f.vals[j - 1] = (j < i) ? 0 : (j == i ? 1 : 2);
  return f;
}

IntervalMap block_rho(const std::vector<int>& ks, int i) {
  int n = static_cast<int>(ks.size());
  if (i < 1 || i > n) throw std::invalid_argument("block_rho: block index out of range");
  int total = std::accumulate(ks.begin(), ks.end(), 0);
  int before = std::accumulate(ks.begin(), ks.begin() + (i - 1), 0);
  IntervalMap f{total, ks[i - 1], std::vector<int>(total)};
  for (int j = 1; j <= total; ++j) {
    if (j <= before)
      f.vals[j - 1] = 0;
    else if (j <= before + ks[i - 1])
      f.vals[j - 1] = j - before;
    else
      f.vals[j - 1] = ks[i - 1] + 1;
  }
  return f;
}

IntervalMap fiber_section(const IntervalMap& f, int j) {
  if (j < 1 || j > f.cod_n) throw std::invalid_argument("fiber_section: letter out of range");
  std::vector<int> pos;
  for (int i = 1; i <= f.dom_n; ++i)
    if (f.vals[i - 1] == j) pos.push_back(i);
  IntervalMap d{static_cast<int>(pos.size()), f.dom_n, std::move(pos)};
  return d;
}

IntervalMap join_active(const std::vector<IntervalMap>& nus) {
  int dom = 0, cod = 0;
  for (const auto& nu : nus) {
    if (!is_active(nu)) throw std::invalid_argument("join_active: input not active");
    dom += nu.dom_n;
    cod += nu.cod_n;
  }
  IntervalMap f{dom, cod, std::vector<int>(dom)};
  int off_dom = 0, off_cod = 0;
  for (const auto& nu : nus) {
    for (int p = 1; p <= nu.dom_n; ++p)
      f.vals[off_dom + p - 1] = off_cod + nu.vals[p - 1];
    off_dom += nu.dom_n;
    off_cod += nu.cod_n;
  }
  return f;
}

std::vector<IntervalMap> enumerate_interval_maps(int m, int n) {
  std::vector<IntervalMap> out;
  std::vector<int> vals(m);
  // weakly increasing sequences over {0..n+1}
  auto rec = [&](auto&& self, int idx, int low) -> void {
    if (idx == m) {
      out.push_back(IntervalMap{m, n, vals});
      return;
    }
    for (int v = low; v <= n + 1; ++v) {
      vals[idx] = v;
      self(self, idx + 1, v);
    }
  };
  rec(rec, 0, 0);
  return out;
}

std::string to_string(const IntervalMap& f) {
  std::string s = "[";
  for (int i = 0; i < f.dom_n; ++i) {
    if (i) s += ",";
    int v = f.vals[i];
    if (v == 0)
      s += "-inf";
    else if (v == f.cod_n + 1)
      s += "+inf";
    else
      s += std::to_string(v);
  }
  s += "]:";
  s += std::to_string(f.dom_n) + "->" + std::to_string(f.cod_n);
  return s;
}

}  // namespace nabla
