#pragma once

#include "flatact/groups/perm_group.hpp"

#include <numeric>
#include <optional>
#include <unordered_map>

namespace flatact {

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite group whose elements are the indices 0..size-1. Backed by a full multiplication
/// table, or for larger permutation groups by an element list with hashed lookup.
class EnumeratedGroup {
 public:
  using Element = std::uint32_t;

  /// The trivial group.
  EnumeratedGroup() : n_(1), identity_(0), table_{0}, inverse_{0} {}

  /// Table rows: table[a][b] = a*b. Verifies the group axioms (associativity via Light's test
  /// over the generating set). Without explicit generators a canonical set is chosen greedily.
  static EnumeratedGroup from_table(const std::vector<std::vector<Element>>& table,
                                    std::optional<std::vector<Element>> generators = std::nullopt) {
    EnumeratedGroup g;
    const std::size_t n = table.size();
    if (n == 0) throw GroupError("table group: empty table");
    g.n_ = n;
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw GroupError("table group: table is not square");
      std::vector<char> seen(n, 0);
      for (std::size_t b = 0; b < n; ++b) {
        const Element x = table[a][b];
        if (x >= n) throw GroupError("table group: entry out of range");
        if (seen[x]) throw GroupError("table group: row " + std::to_string(a) + " is not a permutation");
        seen[x] = 1;
        g.table_[a * n + b] = x;
      }
    }
    g.identity_ = n;
    for (std::size_t e = 0; e < n && g.identity_ == n; ++e) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) ok = g.table_[e * n + b] == b && g.table_[b * n + e] == b;
      if (ok) g.identity_ = static_cast<Element>(e);
    }
    if (g.identity_ == n) throw GroupError("table group: no identity element");
    g.finish_inverses();
    if (generators) {
      for (auto x : *generators)
        if (x >= n) throw GroupError("table group: generator out of range");
      g.generators_ = *generators;
      if (g.closure(g.generators_).size() != n) throw GroupError("table group: generators do not generate");
    } else {
      g.generators_ = g.canonical_generators();
    }
    // Light's associativity test: (x s) y = x (s y) for generators s suffices.
    for (auto s : g.generators_)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (g.mul(g.mul(static_cast<Element>(x), s), static_cast<Element>(y)) !=
              g.mul(static_cast<Element>(x), g.mul(s, static_cast<Element>(y))))
            throw GroupError("table group: multiplication is not associative");
    return g;
  }

  /// Enumerates a permutation group; element indices follow the sorted permutation order.
  static EnumeratedGroup from_permutations(const PermGroup& p, std::size_t max_order = 20000) {
    if (p.order() > static_cast<unsigned long>(max_order))
      throw GroupError("enumeration: group order " + p.order().get_str() + " exceeds bound " +
                       std::to_string(max_order));
    EnumeratedGroup g;
    g.perms_ = p.elements();
    g.n_ = g.perms_.size();
    g.table_.clear();
    g.identity_ = 0;
    for (std::size_t i = 0; i < g.n_; ++i) g.lookup_.emplace(g.perms_[i], static_cast<Element>(i));
    if (g.n_ <= kTableLimit) {
      g.table_.resize(g.n_ * g.n_);
      for (std::size_t a = 0; a < g.n_; ++a)
        for (std::size_t b = 0; b < g.n_; ++b) g.table_[a * g.n_ + b] = g.lookup_.at(g.perms_[a] * g.perms_[b]);
    }
    g.finish_inverses();
    for (const auto& s : p.generators()) g.generators_.push_back(g.lookup_.at(s));
    return g;
  }

  static EnumeratedGroup cyclic(std::size_t m) {
    std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) t[a][b] = static_cast<Element>((a + b) % m);
    return from_table(t, m > 1 ? std::optional<std::vector<Element>>(std::vector<Element>{1}) : std::nullopt);
  }

  static EnumeratedGroup trivial() { return cyclic(1); }

  /// Direct product; element (a, b) has index a * |right| + b; generators are (s,1) then (1,t).
  static EnumeratedGroup direct_product(const EnumeratedGroup& l, const EnumeratedGroup& r) {
    const std::size_t n = l.size() * r.size();
    std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        const auto a = l.mul(static_cast<Element>(x / r.size()), static_cast<Element>(y / r.size()));
        const auto b = r.mul(static_cast<Element>(x % r.size()), static_cast<Element>(y % r.size()));
        t[x][y] = static_cast<Element>(a * r.size() + b);
      }
    std::vector<Element> gens;
    for (auto s : l.generators()) gens.push_back(static_cast<Element>(s * r.size() + r.identity()));
    for (auto s : r.generators()) gens.push_back(static_cast<Element>(l.identity() * r.size() + s));
    return from_table(t, gens);
  }

  std::size_t size() const noexcept { return n_; }
  Element identity() const noexcept { return identity_; }
  const std::vector<Element>& generators() const noexcept { return generators_; }
  bool has_permutations() const noexcept { return !perms_.empty(); }
  const Permutation& permutation(Element a) const { return perms_.at(a); }
  std::optional<Element> index_of(const Permutation& p) const {
    auto it = lookup_.find(p);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  Element mul(Element a, Element b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * n_ + b];
    return lookup_.at(perms_[a] * perms_[b]);
  }
  Element inv(Element a) const { return inverse_[a]; }
  Element conjugate(Element x, Element g) const { return mul(mul(g, x), inv(g)); }
  Element pow(Element a, long long e) const {
    Element base = e < 0 ? inv(a) : a;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Element r = identity_;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  std::size_t order_of(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  /// Membership mask of the subgroup generated by `gens`.
  std::vector<char> closure_mask(const std::vector<Element>& gens) const {
    std::vector<char> in(n_, 0);
    std::vector<Element> queue{identity_};
    in[identity_] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto s : gens) {
        const Element y = mul(queue[q], s);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    return in;
  }

  /// Sorted element list of <gens>.
  std::vector<Element> closure(const std::vector<Element>& gens) const {
    auto mask = closure_mask(gens);
    std::vector<Element> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (mask[i]) out.push_back(static_cast<Element>(i));
    return out;
  }

  /// Greedy generating set of a subgroup given by its element mask: lowest indices first.
  std::vector<Element> generators_of(const std::vector<char>& subgroup) const {
    std::vector<Element> gens;
    std::vector<char> have(n_, 0);
    have[identity_] = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!subgroup[i] || have[i]) continue;
      gens.push_back(static_cast<Element>(i));
      have = closure_mask(gens);
    }
    return gens;
  }

  bool is_abelian_subset(const std::vector<Element>& elems) const {
    for (auto a : elems)
      for (auto b : elems)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Cayley-graph BFS from the identity over the generators: every element with a word.
  /// word_tree[x] = (parent, generator index) with parent reached first.
  std::vector<std::pair<Element, std::size_t>> spanning_tree(std::vector<Element>* order = nullptr) const {
    std::vector<std::pair<Element, std::size_t>> parent(n_, {n_, 0});
    std::vector<Element> queue{identity_};
    parent[identity_] = {identity_, 0};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t s = 0; s < generators_.size(); ++s) {
        const Element y = mul(queue[q], generators_[s]);
        if (parent[y].first == n_) {
          parent[y] = {queue[q], s};
          queue.push_back(y);
        }
      }
    if (order) *order = std::move(queue);
    return parent;
  }

  std::vector<std::vector<Element>> table() const {
    std::vector<std::vector<Element>> t(n_, std::vector<Element>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = mul(static_cast<Element>(a), static_cast<Element>(b));
    return t;
  }

  /// Copy with a different generating list (which must generate the group).
  EnumeratedGroup with_generators(std::vector<Element> gens) const {
    for (auto x : gens)
      if (x >= n_) throw GroupError("generator out of range");
    if (closure(gens).size() != n_) throw GroupError("generators do not generate the group");
    EnumeratedGroup g = *this;
    g.generators_ = std::move(gens);
    return g;
  }

 private:
  static constexpr std::size_t kTableLimit = 2048;

  void finish_inverses() {
    inverse_.assign(n_, 0);
    if (!table_.empty()) {
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          if (table_[a * n_ + b] == identity_) {
            inverse_[a] = static_cast<Element>(b);
            break;
          }
    } else {
      for (std::size_t a = 0; a < n_; ++a) inverse_[a] = lookup_.at(perms_[a].inverse());
    }
  }

  std::vector<Element> canonical_generators() const {
    std::vector<char> all(n_, 1);
    return generators_of(all);
  }

  std::size_t n_ = 0;
  Element identity_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<Element> generators_;
  std::vector<Permutation> perms_;
  std::unordered_map<Permutation, Element, PermutationHash> lookup_;
};

}  // namespace flatact
