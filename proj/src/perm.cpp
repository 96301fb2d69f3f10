#include "nabla/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace nabla {

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i)
    if (img[i] != i + 1) return false;
  return true;
}

Perm perm_identity(int n) {
  Perm x{std::vector<int>(n)};
  std::iota(x.img.begin(), x.img.end(), 1);
  return x;
}

Perm make_perm(std::vector<int> img) {
  int n = static_cast<int>(img.size());
  std::vector<bool> seen(n, false);
  for (int v : img) {
    if (v < 1 || v > n || seen[v - 1])
      throw std::invalid_argument("make_perm: not a permutation");
    seen[v - 1] = true;
  }
  return Perm{std::move(img)};
}

Perm mul(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("mul: size mismatch");
  Perm c{std::vector<int>(a.size())};
  for (int i = 0; i < a.size(); ++i) c.img[i] = a.img[b.img[i] - 1];
  return c;
}

Perm inverse(const Perm& x) {
  Perm y{std::vector<int>(x.size())};
  for (int i = 0; i < x.size(); ++i) y.img[x.img[i] - 1] = i + 1;
  return y;
}

Perm gamma_perm(const Perm& x, const std::vector<Perm>& blocks) {
  int n = x.size();
  if (static_cast<int>(blocks.size()) != n)
    throw std::invalid_argument("gamma_perm: block count must equal outer arity");
  std::vector<int> k(n);
  for (int i = 0; i < n; ++i) k[i] = blocks[i].size();
  int total = std::accumulate(k.begin(), k.end(), 0);

  // off_src[i]: letters before block i+1 on the source side
  // off_tgt[b]: letters before the image of block whose x-value is b+1
  std::vector<int> off_src(n, 0), off_tgt(n, 0);
  for (int i = 1; i < n; ++i) off_src[i] = off_src[i - 1] + k[i - 1];
  for (int b = 1; b <= n; ++b) {
    int off = 0;
    for (int i = 1; i <= n; ++i)
      if (x(i) < b) off += k[i - 1];
    off_tgt[b - 1] = off;
  }

  Perm z{std::vector<int>(total)};
  for (int i = 1; i <= n; ++i)
    for (int p = 1; p <= k[i - 1]; ++p)
      z.img[off_src[i - 1] + p - 1] = off_tgt[x(i) - 1] + blocks[i - 1](p);
  return z;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm x = perm_identity(n);
  do {
    out.push_back(x);
  } while (std::next_permutation(x.img.begin(), x.img.end()));
  return out;
}

std::string to_string(const Perm& x) {
  std::string s = "[";
  for (int i = 0; i < x.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(x.img[i]);
  }
  return s + "]";
}

}  // namespace nabla
