#pragma once

#include <compare>
#include <string>
#include <vector>

namespace nabla {

// Permutation of {1..n} in one-line notation: img[i-1] = x(i).
struct Perm {
  std::vector<int> img;

  auto operator<=>(const Perm&) const = default;

  int size() const { return static_cast<int>(img.size()); }
  int operator()(int i) const { return img[i - 1]; }
  bool is_identity() const;
};

Perm perm_identity(int n);

// Validating factory; throws std::invalid_argument if img is not a
// permutation of {1..n}.
Perm make_perm(std::vector<int> img);

// Function composition: (a*b)(i) = a(b(i)).
Perm mul(const Perm& a, const Perm& b);
Perm inverse(const Perm& x);

// Block composition of permutations: the i-th source block (of size equal to
// blocks[i-1].size()) is mapped by blocks[i-1] into the position that x
// assigns to block i on the target side.
Perm gamma_perm(const Perm& x, const std::vector<Perm>& blocks);

// All permutations of {1..n} in lexicographic order.
std::vector<Perm> all_perms(int n);

std::string to_string(const Perm& x);

// Left action on words: (x . w)_j = w_{x^{-1}(j)}.
template <class T>
std::vector<T> act_word(const Perm& x, const std::vector<T>& w) {
  std::vector<T> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[x.img[i] - 1] = w[i];
  return out;
}

}  // namespace nabla
