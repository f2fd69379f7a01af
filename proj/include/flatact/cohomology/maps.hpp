#pragma once

#include "flatact/cohomology/bar.hpp"

namespace flatact {

inline bool is_surjective(const AbHom& f) {
  auto c = cokernel(f);
  return c.free_rank == 0 && c.torsion.is_trivial();
}

struct EquivarianceDefect {
  std::size_t generator;
  std::size_t basis_vector;
};

/// First (generator, basis vector) where f(g.x) != g.f(x). Both modules must be over the same group.
inline std::optional<EquivarianceDefect> equivariance_defect(const AbHom& f, const ZQModule& source, const ZQModule& target) {
  if (source.group().size() != target.group().size() ||
      source.group().generators().size() != target.group().generators().size())
    throw CohomologyError("equivariance: modules are over different groups");
  for (std::size_t s = 0; s < source.group().generators().size(); ++s) {
    const Element g = source.group().generators()[s];
    const IntMatrix lhs = f.matrix() * source.matrix(g);
    const IntMatrix rhs = target.matrix(g) * f.matrix();
    for (std::size_t j = 0; j < lhs.cols(); ++j)
      if (!is_zero(target.reduce(lhs.col(j) - rhs.col(j)))) return EquivarianceDefect{s, j};
  }
  return std::nullopt;
}

/// Homomorphism between two cohomology groups in their invariant-factor coordinates.
struct CohomologyMap {
  FinAbGroup source;
  FinAbGroup target;
  IntMatrix matrix;  // target.rank() x source.rank()

  IntVector apply(const IntVector& x) const { return target.reduce(matrix * x); }
};

/// The map H^2(Q; M) -> H^2(Q; N) induced by an equivariant surjection f: M -> N, computed by
/// pushing class representatives through f. Throws CohomologyError if f is not equivariant or
/// not surjective.
inline CohomologyMap induced_h2(const AbHom& f, const CohomologyGroup& source, const CohomologyGroup& target) {
  if (source.degree() != 2 || target.degree() != 2) throw CohomologyError("induced_h2: expects second cohomology");
  if (!is_surjective(f)) throw CohomologyError("induced_h2: coefficient map is not surjective");
  if (auto d = equivariance_defect(f, source.module(), target.module()))
    throw CohomologyError("induced_h2: coefficient map is not equivariant at generator " + std::to_string(d->generator));
  CohomologyMap m{source.group(), target.group(), IntMatrix(target.group().rank(), source.group().rank())};
  for (std::size_t j = 0; j < source.group().rank(); ++j) {
    auto image = target.coordinates(pushforward(source.generator_representative(j), f, target.module()));
    for (std::size_t i = 0; i < image.size(); ++i) m.matrix(i, j) = image[i];
  }
  return m;
}

/// A preimage of `target_class` under the map, or nullopt when the class is not in the image.
inline std::optional<IntVector> is_in_image(const IntVector& target_class, const CohomologyMap& map) {
  if (target_class.size() != map.target.rank()) throw CohomologyError("is_in_image: coordinate length mismatch");
  auto x = solve_congruence(map.matrix, target_class, map.target.invariant_factors());
  if (!x) return std::nullopt;
  return map.source.reduce(*x);
}

struct RestrictionMap {
  CohomologyGroup target;
  CohomologyMap map;
};

/// Restriction H^2(Q; M) -> H^2(H; M) along an injective homomorphism H -> Q.
inline RestrictionMap restriction_h2(const CohomologyGroup& source, const GroupHom& embedding,
                                     const CohomologyBounds& bounds = {}) {
  if (source.degree() != 2) throw CohomologyError("restriction_h2: expects second cohomology");
  const ZQModule restricted = source.module().restrict_to(embedding);
  CohomologyGroup target = h2(restricted, bounds);
  CohomologyMap m{source.group(), target.group(), IntMatrix(target.group().rank(), source.group().rank())};
  for (std::size_t j = 0; j < source.group().rank(); ++j) {
    auto image = target.coordinates(pullback(source.generator_representative(j), embedding, restricted));
    for (std::size_t i = 0; i < image.size(); ++i) m.matrix(i, j) = image[i];
  }
  return {std::move(target), std::move(m)};
}

/// The cyclic subgroup generated by x, as Z/ord(x) with its embedding 1 -> x.
inline GroupHom cyclic_embedding(const EnumeratedGroup& q, Element x) {
  auto c = EnumeratedGroup::cyclic(q.order_of(x));
  return *GroupHom::from_generator_images(c, q, c.generators().empty() ? std::vector<Element>{} : std::vector<Element>{x});
}

}  // namespace flatact
