#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "subgroup_forge/autodiff.hpp"
#include "subgroup_forge/linear_map.hpp"
#include "subgroup_forge/rng.hpp"

namespace sforge {

enum class MaskVariant { Sk, ZD };

// The exact mask constructions under which the composed model is provably
// invariant for the matching subgroup:
//   Sk: M = diagonal selector of the k indices, head emits [(I-M)x; Mx];
//   ZD: M = n/k stacked k-selectors over the cycle, L = diagonal k-selector,
//       head emits [Mx; (I-L)x]; requires k | n.
struct IdealMask {
  int n = 0;
  int k = 0;
  MaskVariant variant = MaskVariant::Sk;
  std::vector<int> indices;

  Tensor mask_m() const {
    Tensor m({static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    if (variant == MaskVariant::Sk) {
      for (int idx : indices) m.at(idx, idx) = 1.0;
    } else {
      const int stacks = n / k;
      for (int r = 0; r < stacks; ++r)
        for (int j = 0; j < k; ++j) m.at(r * k + j, indices[j]) = 1.0;
    }
    return m;
  }

  Tensor mask_l() const {
    if (variant != MaskVariant::ZD) throw DimensionError("mask_l: only ZD masks carry L");
    Tensor l({static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    for (int idx : indices) l.at(idx, idx) = 1.0;
    return l;
  }
};

inline IdealMask build_ideal(int n, int k, MaskVariant variant, std::vector<int> indices) {
  if (static_cast<int>(indices.size()) != k) {
    throw DimensionError("build_ideal: index count != k");
  }
  for (int i : indices) {
    if (i < 0 || i >= n) throw DimensionError("build_ideal: index out of range");
  }
  if (variant == MaskVariant::ZD && n % k != 0) {
    throw DimensionError("build_ideal: ZD mask requires k | n");
  }
  return IdealMask{n, k, variant, std::move(indices)};
}

// The learnable linear transformation and its theorem-specific stacking.
// Sk couples both blocks through one matrix; ZD carries an independent L.
struct MaskHead {
  int n = 0;
  MaskVariant variant = MaskVariant::Sk;
  double l1_penalty = 0.0;
  bool frozen = false;
  NodePtr m;  // [n x n]
  NodePtr l;  // [n x n], ZD only

  // entries iid uniform in [0, 2/n]: near-uniform column norms, no index favored
  static MaskHead learnable(int n, MaskVariant variant, Rng& rng, double l1_penalty = 0.0) {
    MaskHead head;
    head.n = n;
    head.variant = variant;
    head.l1_penalty = l1_penalty;
    const double hi = 2.0 / static_cast<double>(n);
    Tensor m({static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    for (std::size_t i = 0; i < m.numel(); ++i) m[i] = rng.uniform(0.0, hi);
    head.m = param(std::move(m));
    if (variant == MaskVariant::ZD) {
      Tensor l({static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
      for (std::size_t i = 0; i < l.numel(); ++i) l[i] = rng.uniform(0.0, hi);
      head.l = param(std::move(l));
    }
    return head;
  }

  static MaskHead from_ideal(const IdealMask& ideal, double l1_penalty = 0.0) {
    MaskHead head;
    head.n = ideal.n;
    head.variant = ideal.variant;
    head.l1_penalty = l1_penalty;
    head.frozen = true;
    head.m = constant(ideal.mask_m());
    if (ideal.variant == MaskVariant::ZD) head.l = constant(ideal.mask_l());
    return head;
  }

  // [N x n] -> [N x 2n]
  NodePtr forward(const NodePtr& x) const {
    if (static_cast<int>(x->value.cols()) != n) {
      throw DimensionError("mask head: input width != n");
    }
    NodePtr mx = matmul_nt(x, m);
    if (variant == MaskVariant::Sk) {
      return concat_cols(sub(x, mx), mx);  // [(I-M)x; Mx]
    }
    NodePtr lx = matmul_nt(x, l);
    return concat_cols(mx, sub(x, lx));  // [Mx; (I-L)x]
  }

  // l1_penalty * (sum |M| + sum |L|); a zero-valued constant when disabled
  NodePtr regularization() const {
    if (l1_penalty == 0.0) return constant(Tensor::scalar(0.0));
    NodePtr term = sum_all(abs(m));
    if (variant == MaskVariant::ZD) term = add(term, sum_all(abs(l)));
    return scale(term, l1_penalty);
  }

  std::vector<NodePtr> parameters() const {
    if (frozen) return {};
    std::vector<NodePtr> out{m};
    if (variant == MaskVariant::ZD) out.push_back(l);
    return out;
  }

  Tensor mask_snapshot() const { return m->value; }
  Tensor l_snapshot() const { return variant == MaskVariant::ZD ? l->value : Tensor(); }
};

// Mhat = [I-M; M] of the Sk construction as a single (2n x n) exact map,
// in the block order the heads emit.
inline LinearMap ideal_sk_mhat(const IdealMask& ideal) {
  if (ideal.variant != MaskVariant::Sk) throw DimensionError("ideal_sk_mhat: Sk mask required");
  const int n = ideal.n;
  const Tensor m = ideal.mask_m();
  LinearMap out(2 * n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double mij = m.at(i, j);
      out.at(i, j) = (i == j ? 1.0 : 0.0) - mij;
      out.at(n + i, j) = mij;
    }
  }
  return out;
}

// The n x n stacked-selector M of the ZD construction as an exact map.
inline LinearMap ideal_zd_m(const IdealMask& ideal) {
  if (ideal.variant != MaskVariant::ZD) throw DimensionError("ideal_zd_m: ZD mask required");
  return LinearMap::from_tensor(ideal.mask_m());
}

// 8-bit binary PGM, entries min-max normalized per matrix.
inline void write_pgm(const Tensor& m, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ParseError("cannot open for writing: " + path);
  const std::size_t rows = m.rows(), cols = m.cols();
  double lo = m[0], hi = m[0];
  for (std::size_t i = 0; i < m.numel(); ++i) {
    lo = std::min(lo, m[i]);
    hi = std::max(hi, m[i]);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  os << "P5\n" << cols << " " << rows << "\n255\n";
  for (std::size_t i = 0; i < m.numel(); ++i) {
    const double v = (m[i] - lo) / span;
    os.put(static_cast<char>(static_cast<unsigned char>(v * 255.0 + 0.5)));
  }
}

}  // namespace sforge
