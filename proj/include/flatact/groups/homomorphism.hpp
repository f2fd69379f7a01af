#pragma once

#include "flatact/groups/subgroups.hpp"

namespace flatact {

/// Homomorphism between enumerated groups, stored as the full element map.
class GroupHom {
 public:
  /// Extends generator images along the Cayley graph, checking every edge; nullopt when the
  /// images violate a relation of the domain.
  static std::optional<GroupHom> from_generator_images(const EnumeratedGroup& domain,
                                                       const EnumeratedGroup& codomain,
                                                       const std::vector<Element>& images) {
    if (images.size() != domain.generators().size())
      throw GroupError("GroupHom: need one image per domain generator");
    for (auto y : images)
      if (y >= codomain.size()) throw GroupError("GroupHom: image outside the codomain");
    const Element unset = static_cast<Element>(codomain.size());
    std::vector<Element> map(domain.size(), unset);
    map[domain.identity()] = codomain.identity();
    std::vector<Element> queue{domain.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Element x = queue[q];
      for (std::size_t s = 0; s < images.size(); ++s) {
        const Element y = domain.mul(x, domain.generators()[s]);
        const Element fy = codomain.mul(map[x], images[s]);
        if (map[y] == unset) {
          map[y] = fy;
          queue.push_back(y);
        } else if (map[y] != fy) {
          return std::nullopt;
        }
      }
    }
    GroupHom h;
    h.domain_ = domain;
    h.codomain_ = codomain;
    h.images_ = images;
    h.map_ = std::move(map);
    return h;
  }

  const EnumeratedGroup& domain() const noexcept { return domain_; }
  const EnumeratedGroup& codomain() const noexcept { return codomain_; }
  const std::vector<Element>& generator_images() const noexcept { return images_; }
  Element operator()(Element x) const { return map_.at(x); }
  const std::vector<Element>& map() const noexcept { return map_; }

  std::vector<char> kernel_mask() const {
    std::vector<char> k(domain_.size(), 0);
    for (std::size_t x = 0; x < map_.size(); ++x) k[x] = map_[x] == codomain_.identity();
    return k;
  }
  std::vector<char> image_mask() const {
    std::vector<char> im(codomain_.size(), 0);
    for (auto y : map_) im[y] = 1;
    return im;
  }
  bool is_injective() const {
    auto k = kernel_mask();
    return std::count(k.begin(), k.end(), 1) == 1;
  }
  bool is_surjective() const {
    auto im = image_mask();
    return static_cast<std::size_t>(std::count(im.begin(), im.end(), 1)) == codomain_.size();
  }

 private:
  GroupHom() = default;
  EnumeratedGroup domain_;
  EnumeratedGroup codomain_;
  std::vector<Element> images_;
  std::vector<Element> map_;
};

/// Homomorphism between permutation groups given on generators, verified through the graph
/// subgroup <(g_i, t_i)> of the direct product: it is a function exactly when its order equals
/// the domain order.
class PermHom {
 public:
  static std::optional<PermHom> from_generator_images(const PermGroup& domain, const PermGroup& codomain,
                                                      const std::vector<Permutation>& images) {
    if (images.size() != domain.generators().size())
      throw GroupError("PermHom: need one image per domain generator");
    const std::size_t d1 = domain.degree(), d2 = codomain.degree();
    std::vector<Permutation> graph_gens;
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (!codomain.contains(images[i])) throw GroupError("PermHom: image outside the codomain");
      graph_gens.push_back(join(domain.generators()[i], images[i]));
    }
    PermGroup graph(d1 + d2, graph_gens);
    if (graph.order() != domain.order()) return std::nullopt;
    PermHom h;
    h.domain_ = domain;
    h.codomain_ = codomain;
    h.images_ = images;
    h.graph_ = std::move(graph);
    return h;
  }

  const PermGroup& domain() const noexcept { return domain_; }
  const PermGroup& codomain() const noexcept { return codomain_; }
  const std::vector<Permutation>& generator_images() const noexcept { return images_; }

  Permutation operator()(const Permutation& x) const {
    if (!domain_.contains(x)) throw GroupError("PermHom: argument outside the domain");
    auto [r, level] = graph_.sift(join(x, codomain_.identity()), 0);
    (void)level;
    std::vector<std::uint32_t> img(codomain_.degree());
    for (std::size_t i = 0; i < img.size(); ++i)
      img[i] = r[domain_.degree() + i] - static_cast<std::uint32_t>(domain_.degree());
    return Permutation(std::move(img)).inverse();
  }

  /// Order of the image subgroup.
  Integer image_order() const { return PermGroup(codomain_.degree(), images_).order(); }
  bool is_surjective() const { return image_order() == codomain_.order(); }

 private:
  PermHom() = default;
  static Permutation join(const Permutation& a, const Permutation& b) {
    std::vector<std::uint32_t> img(a.degree() + b.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) img[i] = a[i];
    for (std::size_t i = 0; i < b.degree(); ++i) img[a.degree() + i] = static_cast<std::uint32_t>(a.degree() + b[i]);
    return Permutation(std::move(img));
  }

  PermGroup domain_;
  PermGroup codomain_;
  std::vector<Permutation> images_;
  PermGroup graph_;
};

}  // namespace flatact
