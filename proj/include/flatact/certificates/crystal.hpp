#pragma once

#include "flatact/cohomology/module.hpp"

#include <memory>

namespace flatact {

/// Element (v, phi) of the extension of Z^n by a point group defined by a 2-cocycle.
struct CrystalElement {
  IntVector translation;
  Element point = 0;
  std::shared_ptr<const Cocycle2> ambient;

  friend bool operator==(const CrystalElement& a, const CrystalElement& b) {
    return a.translation == b.translation && a.point == b.point;
  }
};

inline CrystalElement crystal_identity(std::shared_ptr<const Cocycle2> ambient) {
  IntVector zero(ambient->module().rank(), Integer(0));
  return {std::move(zero), ambient->module().group().identity(), std::move(ambient)};
}

/// (v,phi)(w,psi) = (v + phi.w + c(phi,psi), phi psi).
inline CrystalElement crystal_multiply(const CrystalElement& a, const CrystalElement& b) {
  if (!a.ambient || !b.ambient || (a.ambient != b.ambient && !(*a.ambient == *b.ambient)))
    throw CohomologyError("crystal: elements live in different extensions");
  const Cocycle2& c = *a.ambient;
  const ZQModule& m = c.module();
  if (a.translation.size() != m.rank() || b.translation.size() != m.rank())
    throw CohomologyError("crystal: translation has wrong length");
  return {m.reduce(a.translation + m.act(a.point, b.translation) + c(a.point, b.point)),
          m.group().mul(a.point, b.point), a.ambient};
}

inline CrystalElement crystal_power(const CrystalElement& a, std::uint64_t k) {
  CrystalElement r = crystal_identity(a.ambient);
  for (std::uint64_t i = 0; i < k; ++i) r = crystal_multiply(r, a);
  return r;
}

}  // namespace flatact
