#pragma once

#include "flatact/errors.hpp"
#include "flatact/groups/finite_group.hpp"

#include <map>
#include <set>

namespace flatact {

using Element = EnumeratedGroup::Element;

/// Subgroup of an enumerated group: generators plus membership mask.
struct Subgroup {
  std::vector<Element> generators;
  std::vector<char> mask;

  std::size_t order() const {
    std::size_t k = 0;
    for (char c : mask) k += c ? 1 : 0;
    return k;
  }
  bool contains(Element x) const { return mask.at(x) != 0; }
  std::vector<Element> elements() const {
    std::vector<Element> out;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) out.push_back(static_cast<Element>(i));
    return out;
  }
};

inline Subgroup make_subgroup(const EnumeratedGroup& g, std::vector<Element> gens) {
  Subgroup s;
  s.mask = g.closure_mask(gens);
  s.generators = std::move(gens);
  return s;
}

/// True iff g_i h g_i^-1 lies in <h> for every generator g_i of g and generator h.
inline bool is_normal(const EnumeratedGroup& g, const std::vector<Element>& h_gens) {
  for (auto h : h_gens)
    if (h >= g.size()) throw GroupError("is_normal: subgroup generator outside the group");
  auto mask = g.closure_mask(h_gens);
  for (auto s : g.generators())
    for (auto h : h_gens)
      if (!mask[g.conjugate(h, s)]) return false;
  return true;
}

inline bool is_normal(const FiniteGroup& g, const std::vector<Permutation>& h_gens) {
  return g.permutations().is_normal(h_gens);
}

/// Conjugacy classes, each sorted, listed by smallest member.
inline std::vector<std::vector<Element>> conjugacy_classes(const EnumeratedGroup& g) {
  std::vector<int> cls(g.size(), -1);
  std::vector<std::vector<Element>> out;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (cls[x] >= 0) continue;
    std::vector<Element> orbit{static_cast<Element>(x)};
    cls[x] = static_cast<int>(out.size());
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (auto s : g.generators()) {
        const Element y = g.conjugate(orbit[q], s);
        if (cls[y] < 0) {
          cls[y] = static_cast<int>(out.size());
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct PrimeOrderRep {
  Element element;
  std::uint64_t prime;
};

/// One representative (the least index) per conjugacy class of elements of prime order.
inline std::vector<PrimeOrderRep> prime_order_class_reps(const EnumeratedGroup& g) {
  std::vector<PrimeOrderRep> out;
  for (const auto& c : conjugacy_classes(g)) {
    const std::size_t o = g.order_of(c.front());
    if (is_prime(o)) out.push_back({c.front(), o});
  }
  return out;
}

/// Every abelian normal subgroup, ordered by size then membership mask. Built by adjoining whole
/// conjugacy classes to already-found abelian normal subgroups.
inline std::vector<Subgroup> abelian_normal_subgroups(const EnumeratedGroup& g, std::size_t max_order = 20000) {
  if (g.size() > max_order)
    throw BoundExceeded("abelian_normal_subgroups: group order " + std::to_string(g.size()) +
                        " exceeds bound " + std::to_string(max_order));
  const auto classes = conjugacy_classes(g);
  std::vector<char> class_abelian(classes.size(), 0);
  for (std::size_t i = 0; i < classes.size(); ++i) class_abelian[i] = g.is_abelian_subset(classes[i]);

  std::set<std::vector<char>> seen;
  std::vector<std::vector<char>> queue;
  std::vector<char> trivial(g.size(), 0);
  trivial[g.identity()] = 1;
  seen.insert(trivial);
  queue.push_back(trivial);
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const std::vector<char> n = queue[q];
    std::vector<Element> n_elems;
    for (std::size_t i = 0; i < n.size(); ++i)
      if (n[i]) n_elems.push_back(static_cast<Element>(i));
    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
      const auto& c = classes[ci];
      if (!class_abelian[ci] || n[c.front()]) continue;
      bool commutes = true;
      for (auto x : c) {
        for (auto y : n_elems)
          if (g.mul(x, y) != g.mul(y, x)) { commutes = false; break; }
        if (!commutes) break;
      }
      if (!commutes) continue;
      std::vector<Element> gens = n_elems;
      gens.insert(gens.end(), c.begin(), c.end());
      auto m = g.closure_mask(gens);
      if (seen.insert(m).second) queue.push_back(std::move(m));
    }
  }
  std::vector<Subgroup> out;
  for (auto& mask : queue) {
    Subgroup s;
    s.generators = g.generators_of(mask);
    s.mask = std::move(mask);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.mask > b.mask;
  });
  return out;
}

/// Quotient by a normal subgroup. Cosets are numbered by their least element; the quotient's
/// generators are the images of g's generators, in order.
struct Quotient {
  EnumeratedGroup group;
  std::vector<Element> projection;
};

inline Quotient quotient(const EnumeratedGroup& g, const std::vector<char>& normal_mask) {
  std::vector<Element> members;
  for (std::size_t i = 0; i < normal_mask.size(); ++i)
    if (normal_mask[i]) members.push_back(static_cast<Element>(i));
  const Element unset = static_cast<Element>(g.size());
  std::vector<Element> coset(g.size(), unset);
  std::vector<Element> reps;
  for (std::size_t x = 0; x < g.size(); ++x) {
    if (coset[x] != unset) continue;
    const auto id = static_cast<Element>(reps.size());
    reps.push_back(static_cast<Element>(x));
    for (auto n : members) coset[g.mul(static_cast<Element>(x), n)] = id;
  }
  const std::size_t m = reps.size();
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = coset[g.mul(reps[a], reps[b])];
  std::vector<Element> gens;
  for (auto s : g.generators()) gens.push_back(coset[s]);
  return {EnumeratedGroup::from_table(t, gens), std::move(coset)};
}

}  // namespace flatact
