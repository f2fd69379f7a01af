#pragma once

#include "flatact/errors.hpp"
#include "flatact/groups/subgroups.hpp"

namespace flatact {

/// Is there an abelian normal subgroup of index at most `bound` (the configured f(n))?
struct JordanQuery {
  std::size_t n = 0;
  Integer bound = 1;
  FiniteGroup g;
};

struct JordanWitness {
  Subgroup subgroup;
  std::size_t index = 0;
};

/// An abelian normal subgroup of least index (largest order; ties broken by the enumeration order).
inline JordanWitness minimal_index_abelian_normal(const EnumeratedGroup& g, std::size_t max_order = 20000) {
  auto subs = abelian_normal_subgroups(g, max_order);
  Subgroup best = std::move(subs.back());
  const std::size_t index = g.size() / best.order();
  return {std::move(best), index};
}

/// The minimal-index abelian normal subgroup when its index is within the bound, else nullopt.
/// Throws BoundExceeded when |G| is beyond `max_order`.
inline std::optional<JordanWitness> jordan_witness(const JordanQuery& q, std::size_t max_order = 20000) {
  if (q.bound < 1) throw std::invalid_argument("jordan: bound must be at least 1");
  if (q.g.order() > static_cast<unsigned long>(max_order))
    throw BoundExceeded("jordan: group order " + q.g.order().get_str() + " exceeds bound " + std::to_string(max_order));
  auto w = minimal_index_abelian_normal(q.g.enumerate(max_order), max_order);
  if (Integer(static_cast<unsigned long>(w.index)) > q.bound) return std::nullopt;
  return w;
}

}  // namespace flatact
