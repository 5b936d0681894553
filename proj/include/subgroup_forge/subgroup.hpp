#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "subgroup_forge/permutation.hpp"

namespace sforge {

inline constexpr std::uint64_t kDefaultEnumerationCap = 3628800;  // 10!

enum class SubgroupFamily { SFull, Sk, Zk, D2k, Ak, Explicit };

inline std::string family_name(SubgroupFamily f) {
  switch (f) {
    case SubgroupFamily::SFull: return "S_full";
    case SubgroupFamily::Sk: return "Sk";
    case SubgroupFamily::Zk: return "Zk";
    case SubgroupFamily::D2k: return "D2k";
    case SubgroupFamily::Ak: return "Ak";
    case SubgroupFamily::Explicit: return "Explicit";
  }
  return "?";
}

// A named subgroup of S_n acting on index subsets. Sk/Ak take an index set,
// Zk/D2k an ordered cycle, Explicit a raw element list.
class SubgroupSpec {
 public:
  static SubgroupSpec s_full(int n) { return SubgroupSpec(SubgroupFamily::SFull, n, {}); }

  static SubgroupSpec s_k_on(std::vector<int> indices, int n) {
    return SubgroupSpec(SubgroupFamily::Sk, n, std::move(indices));
  }

  static SubgroupSpec z_k_on(std::vector<int> cycle, int n) {
    return SubgroupSpec(SubgroupFamily::Zk, n, std::move(cycle));
  }

  static SubgroupSpec d_2k_on(std::vector<int> cycle, int n) {
    SubgroupSpec s(SubgroupFamily::D2k, n, std::move(cycle));
    if (s.k() < 3) {
      // for k = 2 the dihedral action on the cycle is not faithful
      throw DimensionError("D2k requires a cycle of length >= 3");
    }
    return s;
  }

  static SubgroupSpec a_k_on(std::vector<int> indices, int n) {
    SubgroupSpec s(SubgroupFamily::Ak, n, std::move(indices));
    if (s.k() < 2) throw DimensionError("Ak requires at least 2 indices");
    return s;
  }

  static SubgroupSpec explicit_group(std::vector<Permutation> elements, int n) {
    SubgroupSpec s(SubgroupFamily::Explicit, n, {});
    for (const auto& e : elements) {
      if (e.degree() != n) throw DimensionError("explicit element degree != n");
    }
    // exactly-once contract
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    s.elements_ = std::move(elements);
    return s;
  }

  static SubgroupSpec trivial(int n) {
    return explicit_group({Permutation::identity(n)}, n);
  }

  SubgroupFamily family() const { return family_; }
  int degree() const { return n_; }
  const std::vector<int>& indices() const { return indices_; }
  const std::vector<Permutation>& explicit_elements() const { return elements_; }

  int k() const {
    return family_ == SubgroupFamily::SFull ? n_ : static_cast<int>(indices_.size());
  }

  std::uint64_t order() const {
    auto factorial = [](int m) {
      if (m > 20) return UINT64_MAX;  // would overflow; far above any cap
      std::uint64_t f = 1;
      for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
      return f;
    };
    switch (family_) {
      case SubgroupFamily::SFull: return factorial(n_);
      case SubgroupFamily::Sk: return factorial(k());
      case SubgroupFamily::Zk: return static_cast<std::uint64_t>(k());
      case SubgroupFamily::D2k: return 2 * static_cast<std::uint64_t>(k());
      case SubgroupFamily::Ak: return factorial(k()) / 2;
      case SubgroupFamily::Explicit: return elements_.size();
    }
    return 0;
  }

  std::string label() const {
    switch (family_) {
      case SubgroupFamily::SFull: return "S" + std::to_string(n_);
      case SubgroupFamily::Sk: return "S" + std::to_string(k());
      case SubgroupFamily::Zk: return "Z" + std::to_string(k());
      case SubgroupFamily::D2k: return "D" + std::to_string(2 * k());
      case SubgroupFamily::Ak: return "A" + std::to_string(k());
      case SubgroupFamily::Explicit: return "G(" + std::to_string(elements_.size()) + ")";
    }
    return "?";
  }

 private:
  SubgroupSpec(SubgroupFamily f, int n, std::vector<int> indices)
      : family_(f), n_(n), indices_(std::move(indices)) {
    if (n_ < 1) throw DimensionError("subgroup degree must be positive");
    std::set<int> seen;
    for (int i : indices_) {
      if (i < 0 || i >= n_) throw DimensionError("subgroup index out of range");
      if (!seen.insert(i).second) throw DimensionError("subgroup indices must be distinct");
    }
    if (family_ != SubgroupFamily::SFull && family_ != SubgroupFamily::Explicit &&
        indices_.empty()) {
      throw DimensionError("subgroup needs a nonempty index list");
    }
  }

  SubgroupFamily family_;
  int n_;
  std::vector<int> indices_;
  std::vector<Permutation> elements_;
};

namespace detail {

// cyclic generator: map[c_j] = c_{j+1 mod k}
inline Permutation cycle_generator(const std::vector<int>& cycle, int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  const int k = static_cast<int>(cycle.size());
  for (int j = 0; j < k; ++j) m[cycle[j]] = cycle[(j + 1) % k];
  return Permutation(std::move(m));
}

// reflection: map[c_j] = c_{(k-j) mod k}
inline Permutation cycle_reflection(const std::vector<int>& cycle, int n) {
  std::vector<int> m(n);
  for (int i = 0; i < n; ++i) m[i] = i;
  const int k = static_cast<int>(cycle.size());
  for (int j = 0; j < k; ++j) m[cycle[j]] = cycle[(k - j) % k];
  return Permutation(std::move(m));
}

// Streams all arrangements of `indices` as permutations of degree n,
// identity-first. pred filters (used for the alternating family).
template <typename Fn, typename Pred>
void for_each_arrangement(std::vector<int> indices, int n, Fn&& fn, Pred&& pred) {
  std::sort(indices.begin(), indices.end());
  const std::vector<int> base = indices;
  std::vector<int> arrangement = indices;
  do {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    for (std::size_t j = 0; j < base.size(); ++j) m[base[j]] = arrangement[j];
    Permutation p(std::move(m));
    if (pred(p)) fn(p);
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
}

}  // namespace detail

// Streams every element exactly once (identity included). Use this instead
// of enumerate() when the order is large.
template <typename Fn>
void for_each_element(const SubgroupSpec& spec, Fn&& fn,
                      std::uint64_t cap = kDefaultEnumerationCap) {
  if (spec.order() > cap) {
    throw CapacityError("subgroup order " + std::to_string(spec.order()) +
                        " exceeds enumeration cap " + std::to_string(cap));
  }
  const int n = spec.degree();
  switch (spec.family()) {
    case SubgroupFamily::SFull: {
      std::vector<int> all(n);
      for (int i = 0; i < n; ++i) all[i] = i;
      detail::for_each_arrangement(all, n, fn, [](const Permutation&) { return true; });
      return;
    }
    case SubgroupFamily::Sk:
      detail::for_each_arrangement(spec.indices(), n, fn,
                                   [](const Permutation&) { return true; });
      return;
    case SubgroupFamily::Ak:
      detail::for_each_arrangement(spec.indices(), n, fn,
                                   [](const Permutation& p) { return p.parity() == 1; });
      return;
    case SubgroupFamily::Zk: {
      const Permutation gen = detail::cycle_generator(spec.indices(), n);
      Permutation e = Permutation::identity(n);
      for (int i = 0; i < spec.k(); ++i) {
        fn(e);
        e = compose(gen, e);
      }
      return;
    }
    case SubgroupFamily::D2k: {
      const Permutation gen = detail::cycle_generator(spec.indices(), n);
      const Permutation refl = detail::cycle_reflection(spec.indices(), n);
      Permutation e = Permutation::identity(n);
      for (int i = 0; i < spec.k(); ++i) {
        fn(e);
        fn(compose(e, refl));
        e = compose(gen, e);
      }
      return;
    }
    case SubgroupFamily::Explicit:
      for (const auto& e : spec.explicit_elements()) fn(e);
      return;
  }
}

inline std::vector<Permutation> enumerate(const SubgroupSpec& spec,
                                          std::uint64_t cap = kDefaultEnumerationCap) {
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(spec.order()));
  for_each_element(spec, [&out](const Permutation& p) { out.push_back(p); }, cap);
  return out;
}

// {g h g^-1 : h in spec}; always returns an Explicit spec.
inline SubgroupSpec conjugate_subgroup(const SubgroupSpec& spec, const Permutation& g,
                                       std::uint64_t cap = kDefaultEnumerationCap) {
  if (g.degree() != spec.degree()) {
    throw DimensionError("conjugate_subgroup: degree mismatch");
  }
  const Permutation ginv = g.inverse();
  std::vector<Permutation> elements;
  elements.reserve(static_cast<std::size_t>(spec.order()));
  for_each_element(
      spec,
      [&](const Permutation& h) { elements.push_back(compose(compose(g, h), ginv)); },
      cap);
  return SubgroupSpec::explicit_group(std::move(elements), spec.degree());
}

// Exhaustive group-axiom audit: closure, identity, inverses.
inline bool is_group(const std::vector<Permutation>& elements) {
  if (elements.empty()) return false;
  std::set<std::vector<int>> members;
  for (const auto& e : elements) members.insert(e.mapping());
  if (members.size() != elements.size()) return false;
  if (!members.count(Permutation::identity(elements.front().degree()).mapping())) return false;
  for (const auto& a : elements) {
    if (!members.count(a.inverse().mapping())) return false;
    for (const auto& b : elements) {
      if (!members.count(compose(a, b).mapping())) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// JSON serde: {"family": "Zk", "cycle": [0,1,2,3], "n": 16}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SubgroupSpec& spec) {
  nlohmann::json j;
  j["family"] = family_name(spec.family());
  j["n"] = spec.degree();
  switch (spec.family()) {
    case SubgroupFamily::SFull: break;
    case SubgroupFamily::Sk:
    case SubgroupFamily::Ak: j["indices"] = spec.indices(); break;
    case SubgroupFamily::Zk:
    case SubgroupFamily::D2k: j["cycle"] = spec.indices(); break;
    case SubgroupFamily::Explicit: {
      nlohmann::json elems = nlohmann::json::array();
      for (const auto& e : spec.explicit_elements()) elems.push_back(e.mapping());
      j["elements"] = std::move(elems);
      break;
    }
  }
  return j;
}

inline SubgroupSpec subgroup_from_json(const nlohmann::json& j) {
  if (!j.contains("family")) throw ParseError("subgroup: missing field 'family'");
  if (!j.contains("n")) throw ParseError("subgroup: missing field 'n'");
  const std::string fam = j.at("family").get<std::string>();
  const int n = j.at("n").get<int>();
  auto ints = [&j](const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("subgroup: missing field '") + key + "'");
    return j.at(key).get<std::vector<int>>();
  };
  if (fam == "S_full") return SubgroupSpec::s_full(n);
  if (fam == "Sk") return SubgroupSpec::s_k_on(ints("indices"), n);
  if (fam == "Ak") return SubgroupSpec::a_k_on(ints("indices"), n);
  if (fam == "Zk") return SubgroupSpec::z_k_on(ints("cycle"), n);
  if (fam == "D2k") return SubgroupSpec::d_2k_on(ints("cycle"), n);
  if (fam == "Explicit") {
    if (!j.contains("elements")) throw ParseError("subgroup: missing field 'elements'");
    std::vector<Permutation> elems;
    for (const auto& m : j.at("elements")) elems.emplace_back(m.get<std::vector<int>>());
    return SubgroupSpec::explicit_group(std::move(elems), n);
  }
  throw ParseError("subgroup: unknown family '" + fam + "'");
}

}  // namespace sforge
