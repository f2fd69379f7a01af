#pragma once

#include "flatact/certificates.hpp"

namespace certs {

using namespace flatact;

/// c(g,h) = t(g) + g.t(h) - t(gh) for a section with translations t(g) in (1/2)Z^n, given doubled.
inline std::vector<IntVector> half_section_cocycle(const IntegralRep& rho, const std::vector<IntVector>& doubled) {
  const auto& q = rho.group();
  std::vector<IntVector> v(q.size() * q.size());
  for (Element g = 0; g < q.size(); ++g)
    for (Element h = 0; h < q.size(); ++h) {
      IntVector x = doubled[g] + rho(g) * doubled[h] - doubled[q.mul(g, h)];
      for (auto& e : x) {
        if (!mpz_divisible_ui_p(e.get_mpz_t(), 2)) throw std::logic_error("half_section_cocycle: odd entry");
        e /= 2;
      }
      v[g * q.size() + h] = x;
    }
  return v;
}

/// Phi = Phi* = C2 acting on Z^2 by diag(1,-1), G trivial; c(phi,phi) = (shift, 0).
inline FlatCertificate klein(long shift) {
  const IntMatrix flip{{1, 0}, {0, -1}};
  const EnumeratedGroup c2 = EnumeratedGroup::cyclic(2);
  FlatCertificate c;
  c.n = 2;
  c.phi = FiniteGroup(c2);
  c.phi_embedding = {1};
  c.phi_star = FiniteGroup(c2);
  c.quotient_lifts = {0};
  c.rho = {flip};
  c.g = FiniteGroup(EnumeratedGroup::trivial());
  c.alpha = IntMatrix(0, 2);
  const IntVector z{0, 0};
  c.cocycle = {z, z, z, IntVector{shift, 0}};
  c.coboundary_witness = {IntVector{}, IntVector{}};
  return c;
}

/// Z/2 acting freely on the Klein bottle by a half-turn of the fibre: G = A = Z/2, alpha(x,y) = y mod 2.
inline FlatCertificate klein_translation() {
  FlatCertificate c = klein(1);
  c.g = FiniteGroup(EnumeratedGroup::cyclic(2));
  c.a_generators = {1};
  c.a = FinAbGroup({2});
  c.alpha = IntMatrix{{0, 1}};
  c.coboundary_witness = {IntVector{0}, IntVector{0}};
  return c;
}

/// Z/2 acting on the Klein bottle through the holonomy: Phi* = <diag(1,-1), -I>, Phi = <diag(1,-1)>,
/// G = Q = Z/2, A trivial. The crystallographic group is generated by (x,y) -> (x+1/2,-y) and -I.
inline FlatCertificate klein_involution() {
  const IntMatrix flip{{1, 0}, {0, -1}}, neg{{-1, 0}, {0, -1}};
  const IntegralRep rho = matrix_group({flip, neg}, 2);
  const auto& star = rho.group();
  const Element f = star.generators()[0], t = star.generators()[1];
  std::vector<IntVector> doubled(star.size(), IntVector{0, 0});
  doubled[f] = IntVector{1, 0};
  doubled[star.mul(f, t)] = IntVector{1, 0};
  FlatCertificate c;
  c.n = 2;
  c.phi = FiniteGroup(EnumeratedGroup::cyclic(2));
  c.phi_embedding = {f};
  c.phi_star = FiniteGroup(star);
  c.g = FiniteGroup(EnumeratedGroup::cyclic(2));
  c.quotient_lifts = {0, 1};
  c.rho = {flip, neg};
  c.alpha = IntMatrix(0, 2);
  c.cocycle = half_section_cocycle(rho, doubled);
  c.coboundary_witness.assign(star.size(), IntVector{});
  return c;
}

/// G = Z/m rotating the circle: A = G, Q trivial, alpha = reduction mod m.
inline TorusCertificate circle_rotation(long m) {
  TorusCertificate c;
  c.n = 1;
  c.g = FiniteGroup(EnumeratedGroup::cyclic(static_cast<std::size_t>(m)));
  c.a_generators = {1};
  c.a = FinAbGroup::cyclic(m);
  c.rho = {IntMatrix{{1}}};
  c.alpha = IntMatrix{{1}};
  return c;
}

/// G = Z/4 with A = 2Z/4 and Q = Z/2 reflecting the circle: the class of G is not in the image
/// of H^2(Z/2; Z_sign) = 0.
inline TorusCertificate z4_reflection() {
  TorusCertificate c;
  c.n = 1;
  c.g = FiniteGroup(EnumeratedGroup::cyclic(4));
  c.a_generators = {2};
  c.a = FinAbGroup::cyclic(2);
  c.rho = {IntMatrix{{-1}}};
  c.alpha = IntMatrix{{1}};
  return c;
}

struct Mutation {
  std::string name;
  std::string expected_failure;
  TorusCertificate cert;
};

/// Single-field mutations of the A_4 certificate, each violating one checklist item.
inline std::vector<Mutation> a4_mutations() {
  const TorusCertificate base = build_a4_certificate();
  const EnumeratedGroup g = base.g.enumerate();
  auto idx = [&](std::vector<std::vector<std::uint32_t>> cycles) { return *g.index_of(Permutation::from_cycles(4, cycles)); };
  std::vector<Mutation> out;
  auto add = [&](std::string name, std::string check, auto edit) {
    TorusCertificate c = base;
    edit(c);
    out.push_back({std::move(name), std::move(check), std::move(c)});
  };
  add("alpha onto first coordinate only", "alpha_surjective", [](auto& c) { c.alpha = IntMatrix{{1, 0}, {0, 0}}; });
  add("alpha zero", "alpha_surjective", [](auto& c) { c.alpha = IntMatrix{{0, 0}, {0, 0}}; });
  add("alpha swapped", "alpha_equivariant", [](auto& c) { c.alpha = IntMatrix{{0, 1}, {1, 0}}; });
  add("alpha shear", "alpha_equivariant", [](auto& c) { c.alpha = IntMatrix{{1, 1}, {0, 1}}; });
  add("rho inverse rotation", "alpha_equivariant", [](auto& c) { c.rho[0] = IntMatrix{{-1, 1}, {-1, 0}}; });
  add("rho of order 2", "rho_homomorphism", [](auto& c) { c.rho[0] = IntMatrix{{0, 1}, {1, 0}}; });
  add("rho of infinite order", "rho_homomorphism", [](auto& c) { c.rho[0] = IntMatrix{{1, 1}, {0, 1}}; });
  add("rho nontrivial on A", "rho_homomorphism", [](auto& c) { c.rho[1] = IntMatrix{{-1, 0}, {0, -1}}; });
  add("rho trivial", "rho_faithful", [](auto& c) { c.rho[0] = IntMatrix::identity(2); });
  add("A a 3-cycle", "extension_exact", [&](auto& c) {
    c.a_generators = {idx({{0, 1, 2}})};
    c.a = FinAbGroup::cyclic(3);
  });
  add("A a single involution", "extension_exact", [&](auto& c) {
    c.a_generators = {idx({{0, 3}, {1, 2}})};
    c.a = FinAbGroup::cyclic(2);
  });
  add("Q too small", "extension_exact", [](auto& c) {
    c.q = SuppliedQuotient{FiniteGroup(EnumeratedGroup::trivial()), {0, 0, 0}};
    c.rho = {};
  });
  return out;
}

}  // namespace certs
