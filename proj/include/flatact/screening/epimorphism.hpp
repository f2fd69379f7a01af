#pragma once

#include "flatact/groups/homomorphism.hpp"
#include "flatact/screening/fp_group.hpp"

#include <functional>
#include <optional>
#include <unordered_map>

namespace flatact {

struct EpimorphismOptions {
  std::size_t node_limit = 1000000000;
  /// Group acting on the target by conjugation (normalizing it); surjections are reported up to
  /// this action. Defaults to the target itself (inner automorphisms).
  std::optional<PermGroup> automorphisms;
  std::size_t automorphism_order_limit = 2000000;
  /// Per-generator order bounds (0 = unknown); overrides those read off the relators.
  std::vector<long> generator_orders;
};

struct Epimorphism {
  std::vector<Permutation> images;
};

struct EpimorphismSearchStats {
  std::size_t nodes = 0;
  std::size_t leaves = 0;
};

namespace detail {

inline Permutation word_image(const Word& w, const std::vector<Permutation>& images, std::size_t degree) {
  Permutation r(degree);
  for (int x : w) r = r * (x > 0 ? images[static_cast<std::size_t>(x - 1)] : images[static_cast<std::size_t>(-x - 1)].inverse());
  return r;
}

class EpimorphismSearch {
 public:
  using Partial = std::function<bool(std::size_t level, const std::vector<Permutation>& images)>;
  using Leaf = std::function<bool(const std::vector<Permutation>& images)>;

  EpimorphismSearch(const PermGroup& target, const std::vector<long>& orders, const EpimorphismOptions& options,
                    Partial partial, Leaf leaf)
      : target_(target), orders_(orders), limit_(options.node_limit), partial_(std::move(partial)), leaf_(std::move(leaf)) {
    aut_ = options.automorphisms ? *options.automorphisms : target;
    if (aut_.degree() != target.degree()) throw std::invalid_argument("epimorphism search: automorphism group degree differs");
    for (const auto& a : aut_.generators())
      for (const auto& t : target.generators())
        if (!target.contains(t.conjugate_by(a)))
          throw std::invalid_argument("epimorphism search: automorphism group does not normalize the target");
    if (aut_.order() > static_cast<unsigned long>(options.automorphism_order_limit))
      throw BoundExceeded("epimorphism search: automorphism group order " + aut_.order().get_str() + " exceeds bound");
    const auto elems = target.elements();
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      const long m = orders_[i];
      if (!candidates_.count(m)) {
        auto& c = candidates_[m];
        for (const auto& e : elems)
          if (m == 0 || m % static_cast<long>(e.order()) == 0) c.push_back(e);
        auto& idx = index_[m];
        for (std::size_t k = 0; k < c.size(); ++k) idx.emplace(c[k], k);
      }
    }
  }

  std::vector<Epimorphism> run(EpimorphismSearchStats* stats) {
    std::vector<Permutation> images(orders_.size());
    if (orders_.empty()) {
      if (leaf_(images)) found_.push_back({images});
    } else {
      recurse(0, images, aut_.elements(), aut_.generators());
    }
    if (stats) *stats = stats_;
    return found_;
  }

 private:
  // Least member of each orbit of `gens` (acting by conjugation) on the candidate list.
  std::vector<std::size_t> orbit_representatives(long m, const std::vector<Permutation>& gens) {
    const auto& c = candidates_.at(m);
    const auto& idx = index_.at(m);
    std::vector<char> seen(c.size(), 0);
    std::vector<std::size_t> reps;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (seen[k]) continue;
      reps.push_back(k);
      seen[k] = 1;
      std::vector<std::size_t> queue{k};
      for (std::size_t q = 0; q < queue.size(); ++q)
        for (const auto& s : gens) {
          const std::size_t y = idx.at(c[queue[q]].conjugate_by(s));
          if (!seen[y]) {
            seen[y] = 1;
            queue.push_back(y);
          }
        }
    }
    return reps;
  }

  std::vector<Permutation> generators_of(const std::vector<Permutation>& elems) const {
    std::vector<Permutation> gens;
    PermGroup h(target_.degree(), {});
    for (const auto& e : elems)
      if (!h.contains(e)) {
        gens.push_back(e);
        h = PermGroup(target_.degree(), gens);
        if (h.order() == static_cast<unsigned long>(elems.size())) break;
      }
    return gens;
  }

  void recurse(std::size_t level, std::vector<Permutation>& images, const std::vector<Permutation>& stab,
               const std::vector<Permutation>& stab_gens) {
    if (level == orders_.size()) {
      ++stats_.leaves;
      if (leaf_(images)) found_.push_back({images});
      return;
    }
    const long m = orders_[level];
    const auto& c = candidates_.at(m);
    std::vector<std::size_t> order;
    if (stab.size() > 1) {
      order = orbit_representatives(m, stab_gens);
    } else {
      order.resize(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) order[k] = k;
    }
    for (auto k : order) {
      if (++stats_.nodes > limit_)
        throw BoundExceeded("epimorphism search: node limit " + std::to_string(limit_) + " exceeded");
      images[level] = c[k];
      if (!partial_(level, images)) continue;
      if (stab.size() > 1) {
        std::vector<Permutation> next;
        for (const auto& s : stab)
          if (c[k].conjugate_by(s) == c[k]) next.push_back(s);
        recurse(level + 1, images, next, next.size() > 1 ? generators_of(next) : std::vector<Permutation>{});
      } else {
        recurse(level + 1, images, stab, stab_gens);
      }
    }
  }

  const PermGroup& target_;
  PermGroup aut_;
  std::vector<long> orders_;
  std::size_t limit_;
  Partial partial_;
  Leaf leaf_;
  std::map<long, std::vector<Permutation>> candidates_;
  std::map<long, std::unordered_map<Permutation, std::size_t, PermutationHash>> index_;
  std::vector<Epimorphism> found_;
  EpimorphismSearchStats stats_;
};

}  // namespace detail

/// Relators die under the images and the images generate the target.
inline bool verify_epimorphism(const FpGroup& source, const PermGroup& target, const Epimorphism& e) {
  if (e.images.size() != source.generator_count()) return false;
  for (const auto& x : e.images)
    if (x.degree() != target.degree() || !target.contains(x)) return false;
  for (const auto& r : source.relators())
    if (!detail::word_image(r, e.images, target.degree()).is_identity()) return false;
  return PermGroup(target.degree(), e.images).order() == target.order();
}

inline bool verify_epimorphism(const PermGroup& source, const PermGroup& target, const Epimorphism& e) {
  for (const auto& x : e.images)
    if (x.degree() != target.degree() || !target.contains(x)) return false;
  auto h = PermHom::from_generator_images(source, target, e.images);
  return h && h->is_surjective();
}

/// Surjections from a finitely presented group onto a permutation group, one per orbit of the
/// automorphism action. Each generator image is filtered by the generator's order bound, and
/// each relator is checked as soon as all its letters have images. Throws BoundExceeded past
/// options.node_limit candidate images.
inline std::vector<Epimorphism> epimorphism_search(const FpGroup& source, const PermGroup& target,
                                                   EpimorphismOptions options = {},
                                                   EpimorphismSearchStats* stats = nullptr) {
  const std::size_t n = source.generator_count();
  std::vector<long> orders = options.generator_orders.empty() ? source.generator_order_bounds() : options.generator_orders;
  if (orders.size() != n) throw std::invalid_argument("epimorphism search: need one order bound per generator");
  std::vector<std::vector<const Word*>> due(n);
  for (const auto& r : source.relators()) {
    int top = 0;
    for (int x : r) top = std::max(top, std::abs(x));
    due[static_cast<std::size_t>(top - 1)].push_back(&r);
  }
  const std::size_t deg = target.degree();
  auto partial = [&](std::size_t level, const std::vector<Permutation>& images) {
    for (const Word* r : due[level]) {
      for (std::uint32_t p = 0; p < deg; ++p) {
        // Right-to-left action of the product images[x1] * images[x2] * ... on p.
        std::uint32_t q = p;
        for (auto it = r->rbegin(); it != r->rend(); ++it) {
          const int x = *it;
          const auto& im = images[static_cast<std::size_t>(std::abs(x) - 1)];
          if (x > 0) {
            q = im[q];
          } else {
            std::uint32_t pre = 0;
            while (im[pre] != q) ++pre;
            q = pre;
          }
        }
        if (q != p) return false;
      }
    }
    return true;
  };
  auto leaf = [&](const std::vector<Permutation>& images) {
    return PermGroup(deg, images).order() == target.order();
  };
  detail::EpimorphismSearch search(target, orders, options, partial, leaf);
  auto found = search.run(stats);
  for (const auto& e : found)
    if (!verify_epimorphism(source, target, e)) throw std::logic_error("epimorphism search: result fails verification");
  return found;
}

/// Surjections from a concrete permutation group, generator images filtered by exact orders and
/// checked through the graph subgroup at the leaves.
inline std::vector<Epimorphism> epimorphism_search(const PermGroup& source, const PermGroup& target,
                                                   EpimorphismOptions options = {},
                                                   EpimorphismSearchStats* stats = nullptr) {
  std::vector<long> orders;
  for (const auto& s : source.generators()) orders.push_back(static_cast<long>(s.order()));
  auto partial = [](std::size_t, const std::vector<Permutation>&) { return true; };
  auto leaf = [&](const std::vector<Permutation>& images) {
    auto h = PermHom::from_generator_images(source, target, images);
    return h && h->is_surjective();
  };
  detail::EpimorphismSearch search(target, orders, options, partial, leaf);
  auto found = search.run(stats);
  for (const auto& e : found)
    if (!verify_epimorphism(source, target, e)) throw std::logic_error("epimorphism search: result fails verification");
  return found;
}

}  // namespace flatact
