#pragma once

#include "flatact/cohomology/maps.hpp"

namespace flatact {

/// An element (translation, point) of finite order `order` in the crystallographic extension.
struct TorsionWitness {
  IntVector translation;
  Element point;
  std::uint64_t order;
};

struct TorsionReport {
  bool torsion_free = true;
  std::optional<TorsionWitness> witness;
};

/// Decides whether the extension of Z^n by the point group defined by `c` is torsion-free. For a
/// prime-order point phi of order p, (x,phi)^p = (N x + w, 1) with N = sum_{i<p} phi^i and
/// w = sum_{0<i<p} c(phi^i, phi), so torsion above phi is the solvability of N x = -w.
inline TorsionReport torsion_free_check(const Cocycle2& c) {
  const ZQModule& m = c.module();
  if (!m.is_lattice()) throw CohomologyError("torsion check: coefficients must be a lattice");
  if (!m.is_faithful()) throw CohomologyError("torsion check: point group action is not faithful");
  const auto& q = m.group();
  for (const auto& rep : prime_order_class_reps(q)) {
    const Element phi = rep.element;
    IntMatrix n(m.rank(), m.rank());
    IntVector w(m.rank(), Integer(0));
    for (std::uint64_t i = 0; i < rep.prime; ++i) {
      const Element pi = q.pow(phi, static_cast<long long>(i));
      n = n + m.matrix(pi);
      if (i > 0) w = w + c(pi, phi);
    }
    if (auto x = solve_integer(n, -w)) return {false, TorsionWitness{*x, phi, rep.prime}};
  }
  return {true, std::nullopt};
}

/// Cohomological criterion: the class restricts nontrivially to every subgroup of prime order.
/// Independent of torsion_free_check (bar resolution on each cyclic subgroup).
inline bool torsion_free_by_restriction(const Cocycle2& c) {
  const ZQModule& m = c.module();
  const auto& q = m.group();
  for (const auto& rep : prime_order_class_reps(q)) {
    auto emb = cyclic_embedding(q, rep.element);
    ZQModule restricted = m.restrict_to(emb);
    auto h = h2(restricted);
    if (h.group().is_zero(h.coordinates(pullback(c, emb, restricted)))) return false;
  }
  return true;
}

}  // namespace flatact
