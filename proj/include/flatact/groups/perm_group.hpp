#pragma once

#include "flatact/groups/permutation.hpp"
#include "flatact/zlinalg/int_matrix.hpp"

#include <optional>
#include <random>
#include <utility>

namespace flatact {

/// Permutation group with a base and strong generating set built by deterministic Schreier-Sims.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators)
      : degree_(degree), generators_(std::move(generators)) {
    for (const auto& g : generators_)
      if (g.degree() != degree_) throw std::invalid_argument("PermGroup: generator degree mismatch");
    build();
  }

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  static PermGroup symmetric(std::size_t n) {
    std::vector<Permutation> gens;
    if (n >= 2) {
      gens.push_back(Permutation::from_cycles(n, {{0, 1}}));
      std::vector<std::uint32_t> cyc(n);
      std::iota(cyc.begin(), cyc.end(), 0u);
      if (n > 2) gens.push_back(Permutation::from_cycles(n, {cyc}));
    }
    return PermGroup(n, gens);
  }

  static PermGroup alternating(std::size_t n) {
    std::vector<Permutation> gens;
    for (std::uint32_t k = 2; k < n; ++k) gens.push_back(Permutation::from_cycles(n, {{0, 1, k}}));
    return PermGroup(n, gens);
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  Permutation identity() const { return Permutation(degree_); }

  Integer order() const {
    Integer o = 1;
    for (const auto& l : levels_) o *= static_cast<unsigned long>(l.orbit.size());
    return o;
  }

  std::vector<std::uint32_t> base() const {
    std::vector<std::uint32_t> b;
    for (const auto& l : levels_) b.push_back(l.base_point);
    return b;
  }

  std::vector<Permutation> strong_generators() const {
    std::vector<Permutation> out;
    if (!levels_.empty()) out = levels_.front().gens;
    return out;
  }

  bool contains(const Permutation& x) const {
    if (x.degree() != degree_) throw std::invalid_argument("PermGroup::contains: degree mismatch");
    return sift(x, 0).first.is_identity();
  }

  /// Uniform random element via the transversal product.
  template <class Rng>
  Permutation random_element(Rng& rng) const {
    Permutation g(degree_);
    for (const auto& l : levels_) {
      std::uniform_int_distribution<std::size_t> pick(0, l.orbit.size() - 1);
      g = g * l.transversal[pick(rng)];
    }
    return g;
  }

  /// Every element, sorted lexicographically by image list (the identity comes first).
  std::vector<Permutation> elements() const {
    std::vector<Permutation> out;
    out.push_back(identity());
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
      std::vector<Permutation> next;
      next.reserve(out.size() * it->transversal.size());
      for (const auto& u : it->transversal)
        for (const auto& g : out) next.push_back(u * g);
      out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// True iff g h g^-1 lies in <subgroup_gens> for every generator g of this group and h of the
  /// subgroup. Throws if a subgroup generator is not an element of this group.
  bool is_normal(const std::vector<Permutation>& subgroup_gens) const {
    for (const auto& h : subgroup_gens)
      if (!contains(h)) throw std::invalid_argument("is_normal: subgroup generator outside the group");
    PermGroup h(degree_, subgroup_gens);
    for (const auto& g : generators_)
      for (const auto& x : subgroup_gens)
        if (!h.contains(x.conjugate_by(g))) return false;
    return true;
  }

  /// Sift x through the chain starting at `level`; returns the residue and the level where it stopped.
  std::pair<Permutation, std::size_t> sift(Permutation x, std::size_t level) const {
    for (std::size_t l = level; l < levels_.size(); ++l) {
      const auto& lv = levels_[l];
      const std::uint32_t delta = x[lv.base_point];
      const int idx = lv.orbit_index[delta];
      if (idx < 0) return {std::move(x), l};
      x = lv.transversal_inverse[static_cast<std::size_t>(idx)] * x;
    }
    return {std::move(x), levels_.size()};
  }

 private:
  struct Level {
    std::uint32_t base_point = 0;
    std::vector<Permutation> gens;
    std::vector<std::uint32_t> orbit;
    std::vector<int> orbit_index;
    std::vector<Permutation> transversal;
    std::vector<Permutation> transversal_inverse;
  };

  void compute_orbit(Level& l) const {
    l.orbit.assign(1, l.base_point);
    l.orbit_index.assign(degree_, -1);
    l.orbit_index[l.base_point] = 0;
    l.transversal.assign(1, identity());
    for (std::size_t q = 0; q < l.orbit.size(); ++q) {
      const std::uint32_t delta = l.orbit[q];
      for (const auto& s : l.gens) {
        const std::uint32_t gamma = s[delta];
        if (l.orbit_index[gamma] >= 0) continue;
        l.orbit_index[gamma] = static_cast<int>(l.orbit.size());
        l.orbit.push_back(gamma);
        l.transversal.push_back(s * l.transversal[q]);
      }
    }
    l.transversal_inverse.clear();
    for (const auto& u : l.transversal) l.transversal_inverse.push_back(u.inverse());
  }

  static std::uint32_t first_moved_point(const Permutation& g) {
    for (std::uint32_t i = 0; i < g.degree(); ++i)
      if (g[i] != i) return i;
    return 0;
  }

  // Adds a strong generator at levels [from, to], extending the base when to == depth.
  void add_strong_generator(const Permutation& g, std::size_t from, std::size_t to) {
    if (to == levels_.size()) {
      Level l;
      l.base_point = first_moved_point(g);
      levels_.push_back(std::move(l));
    }
    for (std::size_t l = from; l <= to; ++l) {
      levels_[l].gens.push_back(g);
      compute_orbit(levels_[l]);
    }
  }

  void build() {
    levels_.clear();
    for (const auto& g : generators_) {
      auto [r, j] = sift(g, 0);
      if (r.is_identity()) continue;
      add_strong_generator(r, 0, j);
    }
    if (levels_.empty()) return;
    std::size_t i = levels_.size();
    while (i > 0) {
      const std::size_t level = i - 1;
      bool extended = false;
      const Level& lv = levels_[level];
      for (std::size_t q = 0; !extended && q < lv.orbit.size(); ++q) {
        const std::uint32_t delta = lv.orbit[q];
        for (std::size_t si = 0; si < lv.gens.size(); ++si) {
          const Permutation& s = lv.gens[si];
          const std::uint32_t gamma = s[delta];
          Permutation h = lv.transversal_inverse[static_cast<std::size_t>(lv.orbit_index[gamma])] * s *
                          lv.transversal[q];
          if (h.is_identity()) continue;
          auto [r, j] = sift(std::move(h), level + 1);
          if (r.is_identity()) continue;
          add_strong_generator(r, level + 1, j);
          i = j + 1;
          extended = true;
          break;
        }
      }
      if (!extended) --i;
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Level> levels_;
};

}  // namespace flatact
