#pragma once

#include <utility>
#include <vector>

#include "subgroup_forge/errors.hpp"

namespace sforge {

// A permutation of {0..n-1}. Action convention, fixed project-wide:
//   apply(p, x)[i] = x[p.mapping()[i]]
// so the matrix of p is the identity with row i replaced by e_{mapping[i]},
// and apply(compose(p, q), x) == apply(p, apply(q, x)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
    const int n = static_cast<int>(map_.size());
    std::vector<char> seen(map_.size(), 0);
    for (int v : map_) {
      if (v < 0 || v >= n || seen[v]) {
        throw DimensionError("permutation mapping is not a bijection on 0..n-1");
      }
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
  }

  // transposition of a and b
  static Permutation swap_of(int n, int a, int b) {
    Permutation p = identity(n);
    std::swap(p.map_[a], p.map_[b]);
    return p;
  }

  int degree() const { return static_cast<int>(map_.size()); }
  const std::vector<int>& mapping() const { return map_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (map_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < degree(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  // +1 for even, -1 for odd
  int parity() const {
    std::vector<char> seen(map_.size(), 0);
    int transpositions = 0;
    for (int i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = map_[j]) {
        seen[j] = 1;
        ++len;
      }
      transpositions += len - 1;
    }
    return transpositions % 2 == 0 ? 1 : -1;
  }

  template <typename T>
  std::vector<T> apply(const std::vector<T>& x) const {
    if (static_cast<int>(x.size()) != degree()) {
      throw DimensionError("apply_permutation: vector length != degree");
    }
    std::vector<T> out(x.size());
    for (int i = 0; i < degree(); ++i) out[i] = x[map_[i]];
    return out;
  }

  template <typename T>
  void apply_into(const T* x, T* out) const {
    for (int i = 0; i < degree(); ++i) out[i] = x[map_[i]];
  }

  bool operator==(const Permutation& o) const { return map_ == o.map_; }
  bool operator<(const Permutation& o) const { return map_ < o.map_; }

 private:
  std::vector<int> map_;
};

inline Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw DimensionError("compose: degree mismatch");
  std::vector<int> m(p.degree());
  for (int i = 0; i < p.degree(); ++i) m[i] = q.mapping()[p.mapping()[i]];
  return Permutation(std::move(m));
}

template <typename T>
std::vector<T> apply_permutation(const Permutation& p, const std::vector<T>& x) {
  return p.apply(x);
}

}  // namespace sforge
