#pragma once

#include "flatact/certificates/crystal.hpp"
#include "flatact/certificates/torus.hpp"

namespace flatact {

/// Data for an effective action of G on a flat manifold with holonomy Phi: a faithful
/// rho: Phi* -> GL_n(Z) with Phi normal in Phi*, the crystallographic extension G* of Z^n by
/// Phi* given by the cocycle c*, a surjection p: Phi* -> Q = G/A given by lifts of Phi*'s
/// generators to G, and alpha: Z^n -> A. The witness b is a 1-cochain on Phi* with
/// alpha_* c* - p^* c_G = d1 b, which makes alpha extend to G* -> G.
///
/// Elements are indices into the respective group.enumerate(); cocycle values are indexed
/// x * |Phi*| + y.
struct FlatCertificate {
  std::size_t n = 0;
  FiniteGroup phi;
  std::vector<Element> phi_embedding;  // image in Phi* of each generator of Phi
  FiniteGroup phi_star;
  std::vector<Element> quotient_lifts;  // element of G over p(s) for each generator s of Phi*
  std::vector<IntMatrix> rho;           // one matrix per generator of Phi*
  FiniteGroup g;
  std::vector<Element> a_generators;
  FinAbGroup a;
  IntMatrix alpha;
  std::vector<IntVector> cocycle;             // values in Z^n
  std::vector<IntVector> coboundary_witness;  // values in A-coordinates, one per element of Phi*
  friend bool operator==(const FlatCertificate&, const FlatCertificate&) = default;
};

inline const std::vector<std::string>& flat_checks() {
  static const std::vector<std::string> names{
      "holonomy_embedding", "rho_homomorphism",  "rho_faithful",     "extension_exact",
      "quotient_isomorphism", "alpha_surjective", "alpha_equivariant", "cocycle_valid",
      "diagram_commutes",   "holonomy_effective_on_kernel", "kernel_torsion_free"};
  return names;
}

/// The kernel extension pi of Z^n-cosets over Phi: its lattice N = ker alpha (basis rows), the
/// cocycle on Phi in N-coordinates, and the translation offsets x_phi with alpha(x_phi) = -b(phi).
struct KernelExtension {
  IntMatrix basis;
  std::vector<IntVector> offsets;
  Cocycle2 cocycle;
};

/// Runs the flat checklist. Throws MalformedInput for data that cannot be interpreted and
/// BoundExceeded when a group exceeds the enumeration bound.
inline VerificationReport verify_flat_certificate(const FlatCertificate& cert) {
  VerificationReport report;
  report.kind = "flat";
  detail::Checklist list(report, flat_checks());

  const EnumeratedGroup phi = cert.phi.enumerate();
  const EnumeratedGroup star = cert.phi_star.enumerate();
  const EnumeratedGroup g = cert.g.enumerate();

  std::optional<GroupHom> iota;
  try {
    iota = GroupHom::from_generator_images(phi, star, cert.phi_embedding);
  } catch (const GroupError& e) {
    throw MalformedInput(e.what(), "phi.embedding");
  }
  if (!iota) {
    list.fail("holonomy_embedding", "the embedding images do not define a homomorphism");
    return report;
  }
  if (!iota->is_injective()) {
    list.fail("holonomy_embedding", "Phi -> Phi* is not injective");
    return report;
  }
  const auto phi_mask = iota->image_mask();
  if (!is_normal(star, star.generators_of(phi_mask))) {
    list.fail("holonomy_embedding", "Phi is not normal in Phi*");
    return report;
  }
  list.pass("holonomy_embedding", "|Phi| = " + std::to_string(phi.size()) + ", |Phi*| = " + std::to_string(star.size()));

  auto rho = detail::checked_rep(list, "rho_homomorphism", star, cert.n, cert.rho);
  if (!rho) return report;
  list.pass("rho_homomorphism");
  if (!rep_is_faithful(*rho)) {
    list.fail("rho_faithful", "kernel of rho has order " + std::to_string(rep_kernel(*rho).size()));
    return report;
  }
  list.pass("rho_faithful");

  auto ext = detail::checked_extension(list, "extension_exact", g, cert.a_generators, cert.a);
  if (!ext) return report;
  list.pass("extension_exact", "|G| = " + std::to_string(g.size()) + ", A = " + detail::group_string(cert.a));

  if (cert.quotient_lifts.size() != star.generators().size())
    throw MalformedInput("expected one lift per generator of Phi*", "phi_star.quotient_lifts");
  std::vector<Element> p_images;
  for (auto x : cert.quotient_lifts) {
    if (x >= g.size()) throw MalformedInput("lift outside G", "phi_star.quotient_lifts");
    p_images.push_back(ext->project(x));
  }
  auto p = GroupHom::from_generator_images(star, ext->q(), p_images);
  if (!p) {
    list.fail("quotient_isomorphism", "the lifts do not define a homomorphism Phi* -> Q");
    return report;
  }
  if (!p->is_surjective()) {
    list.fail("quotient_isomorphism", "Phi* -> Q is not surjective");
    return report;
  }
  if (p->kernel_mask() != phi_mask) {
    list.fail("quotient_isomorphism", "the kernel of Phi* -> Q is not Phi");
    return report;
  }
  list.pass("quotient_isomorphism", "Phi*/Phi = Q of order " + std::to_string(ext->q().size()));

  const AbHom alpha = detail::checked_alpha(cert.alpha, cert.n, cert.a);
  if (!is_surjective(alpha)) {
    list.fail("alpha_surjective", "cokernel of alpha is nonzero");
    return report;
  }
  list.pass("alpha_surjective");

  const ZQModule lattice = ZQModule::lattice(*rho);
  std::vector<IntMatrix> a_action;
  for (auto s : star.generators()) a_action.push_back(ext->module().matrix((*p)(s)));
  const ZQModule a_module(star, cert.a, std::move(a_action));
  if (auto d = equivariance_defect(alpha, lattice, a_module)) {
    list.fail("alpha_equivariant", "alpha(g x) != p(g) alpha(x) at generator " + std::to_string(d->generator) +
                                       ", basis vector " + std::to_string(d->basis_vector));
    return report;
  }
  list.pass("alpha_equivariant");

  std::optional<Cocycle2> c_star;
  try {
    c_star = Cocycle2(lattice, cert.cocycle);
  } catch (const CohomologyError& e) {
    const std::string what = e.what();
    if (what.find("normalized") == std::string::npos) throw MalformedInput(what, "cocycle");
    list.fail("cocycle_valid", what);
    return report;
  }
  if (auto bad = c_star->cocycle_defect()) {
    list.fail("cocycle_valid", "cocycle identity fails at (" + std::to_string((*bad)[0]) + ", " +
                                   std::to_string((*bad)[1]) + ", " + std::to_string((*bad)[2]) + ")");
    return report;
  }
  list.pass("cocycle_valid");

  if (cert.coboundary_witness.size() != star.size())
    throw MalformedInput("expected one value per element of Phi*", "coboundary_witness");
  for (std::size_t i = 0; i < cert.coboundary_witness.size(); ++i)
    if (cert.coboundary_witness[i].size() != cert.a.rank())
      throw MalformedInput("value " + std::to_string(i) + " has wrong length", "coboundary_witness");
  const Cochain1& b = cert.coboundary_witness;
  if (!cert.a.is_zero(b[star.identity()])) {
    list.fail("diagram_commutes", "coboundary witness is not normalized");
    return report;
  }
  const Cocycle2 lhs = pushforward(*c_star, alpha, a_module) - pullback(extension_class(*ext), *p, a_module);
  if (!(lhs == coboundary(a_module, b))) {
    list.fail("diagram_commutes", "alpha_* c* - p^* c_G differs from d1 b");
    return report;
  }
  list.pass("diagram_commutes");

  // N = ker alpha, with basis rows; Phi acts on it through rho.
  const IntMatrix basis = kernel_basis(alpha);
  const IntMatrix bt = basis.transpose();
  auto n_coords = [&](const IntVector& v) {
    auto y = solve_integer(bt, v);
    if (!y) throw std::logic_error("flat verification: vector outside ker alpha");
    return *y;
  };
  std::vector<IntMatrix> n_action;
  for (auto s : phi.generators()) {
    const IntMatrix& m = (*rho)((*iota)(s));
    IntMatrix r(cert.n, cert.n);
    for (std::size_t j = 0; j < cert.n; ++j) {
      auto y = n_coords(m * bt.col(j));
      for (std::size_t i = 0; i < cert.n; ++i) r(i, j) = y[i];
    }
    n_action.push_back(std::move(r));
  }
  const ZQModule n_module(phi, Lattice{cert.n}, std::move(n_action));
  if (!n_module.is_faithful()) {
    list.fail("holonomy_effective_on_kernel", "Phi does not act faithfully on ker alpha");
    return report;
  }
  list.pass("holonomy_effective_on_kernel", "[Z^n : N] = " + Integer(abs(basis.determinant())).get_str());

  // Over phi in Phi the translations x with alpha(x) = -b(phi) map to 1 in G; they form pi.
  std::vector<IntVector> offsets(phi.size());
  for (Element f = 0; f < phi.size(); ++f) {
    IntVector rhs = b[(*iota)(f)];
    for (auto& x : rhs) x = -x;
    auto x = solve_congruence(cert.alpha, rhs, cert.a.invariant_factors());
    if (!x) throw std::logic_error("flat verification: alpha is surjective but a lift is missing");
    offsets[f] = f == phi.identity() ? IntVector(cert.n, Integer(0)) : *x;
  }
  std::vector<IntVector> nv(phi.size() * phi.size());
  for (Element f = 0; f < phi.size(); ++f)
    for (Element h = 0; h < phi.size(); ++h) {
      const Element sf = (*iota)(f), sh = (*iota)(h);
      IntVector v = offsets[f] + lattice.act(sf, offsets[h]) + (*c_star)(sf, sh) - offsets[phi.mul(f, h)];
      nv[f * phi.size() + h] = n_coords(v);
    }
  const Cocycle2 pi(n_module, std::move(nv));
  const TorsionReport t = torsion_free_check(pi);
  if (!t.torsion_free) {
    const auto& w = *t.witness;
    const IntVector v = bt * w.translation + offsets[w.point];
    report.witnesses["torsion_element"] =
        "(" + detail::vector_string(v) + ", phi=" + std::to_string((*iota)(w.point)) + ") of order " + std::to_string(w.order);
    list.fail("kernel_torsion_free", "pi has an element of order " + std::to_string(w.order));
    return report;
  }
  list.pass("kernel_torsion_free");
  return report;
}

/// The flat certificate with trivial holonomy equivalent to an accepted torus certificate: Phi* = Q
/// with c* representing the preimage class and b witnessing the diagram.
inline FlatCertificate torus_to_flat(const TorusCertificate& cert, const CohomologyBounds& bounds = {}) {
  const EnumeratedGroup g = cert.g.enumerate();
  const Extension ext(g, cert.a_generators, cert.a);
  std::vector<IntMatrix> rho = cert.rho;
  if (cert.q) {
    const EnumeratedGroup supplied = cert.q->group.enumerate();
    const IntegralRep r(supplied, cert.n, cert.rho);
    rho.clear();
    for (auto y : cert.q->images) rho.push_back(r(y));
  }
  const IntegralRep rep(ext.q(), cert.n, rho);
  const ZQModule lattice = ZQModule::lattice(rep);
  const AbHom alpha(Lattice{cert.n}, cert.a, cert.alpha);
  const CohomologyGroup source = h2(lattice, bounds);
  const CohomologyGroup target = h2(ext.module(), bounds);
  const Cocycle2 c_g = extension_class(ext);
  auto pre = is_in_image(target.coordinates(c_g), induced_h2(alpha, source, target));
  if (!pre) throw CohomologyError("torus_to_flat: the extension class is not in the image");
  const Cocycle2 c_star = source.representative(*pre);
  auto b = target.coboundary_witness(pushforward(c_star, alpha, ext.module()) - c_g);
  if (!b) throw std::logic_error("torus_to_flat: classes agree but no coboundary witness");

  FlatCertificate f;
  f.n = cert.n;
  f.phi = FiniteGroup(EnumeratedGroup::trivial());
  f.phi_star = FiniteGroup(ext.q());
  f.quotient_lifts = g.generators();
  f.rho = std::move(rho);
  f.g = cert.g;
  f.a_generators = cert.a_generators;
  f.a = cert.a;
  f.alpha = cert.alpha;
  f.cocycle = c_star.values();
  f.coboundary_witness = *b;
  return f;
}

/// The torus certificate carried by a flat certificate with trivial holonomy (Phi* = Q).
inline TorusCertificate flat_to_torus(const FlatCertificate& cert) {
  if (cert.phi.order() != 1) throw std::invalid_argument("flat_to_torus: holonomy is not trivial");
  TorusCertificate t;
  t.n = cert.n;
  t.g = cert.g;
  t.a_generators = cert.a_generators;
  t.a = cert.a;
  const EnumeratedGroup g = cert.g.enumerate();
  const EnumeratedGroup star = cert.phi_star.enumerate();
  const Extension ext(g, cert.a_generators, cert.a);
  std::vector<Element> p_images;
  for (auto x : cert.quotient_lifts) p_images.push_back(ext.project(x));
  auto p = GroupHom::from_generator_images(star, ext.q(), p_images);
  if (!p) throw std::invalid_argument("flat_to_torus: lifts do not define a homomorphism");
  std::vector<Element> images;
  for (auto s : g.generators()) {
    // The element of Phi* over the coset of s.
    Element hit = static_cast<Element>(star.size());
    for (Element y = 0; y < star.size(); ++y)
      if ((*p)(y) == ext.project(s)) hit = y;
    if (hit == star.size()) throw std::invalid_argument("flat_to_torus: Phi* -> Q is not surjective");
    images.push_back(hit);
  }
  t.q = SuppliedQuotient{cert.phi_star, std::move(images)};
  t.rho = cert.rho;
  t.alpha = cert.alpha;
  return t;
}

}  // namespace flatact
