#pragma once

#include "flatact/certificates/torus.hpp"

namespace flatact {

/// A_4 acting on T^2: A = V_4 = <(0 3)(1 2), (0 2)(1 3)>, Q = Z/3 generated by the image of
/// (0 1 2) acting on Z^2 by [[0,-1],[1,-1]], alpha = reduction mod 2. The generator (0 1 2) acts
/// on A by [[0,1],[1,1]].
inline TorusCertificate build_a4_certificate() {
  const Permutation c = Permutation::from_cycles(4, {{0, 1, 2}});
  const Permutation e1 = Permutation::from_cycles(4, {{0, 3}, {1, 2}});
  const Permutation e2 = Permutation::from_cycles(4, {{0, 2}, {1, 3}});
  TorusCertificate cert;
  cert.n = 2;
  cert.g = FiniteGroup(PermGroup(4, {c, e1, e2}));
  const EnumeratedGroup g = cert.g.enumerate();
  cert.a_generators = {*g.index_of(e1), *g.index_of(e2)};
  cert.a = FinAbGroup({Integer(2), Integer(2)});
  cert.rho = {IntMatrix{{0, -1}, {1, -1}}, IntMatrix::identity(2), IntMatrix::identity(2)};
  cert.alpha = IntMatrix::identity(2);
  return cert;
}

}  // namespace flatact
