#pragma once

#include "flatact/certificates/report.hpp"
#include "flatact/cohomology/extension.hpp"
#include "flatact/cohomology/torsion.hpp"
#include "flatact/errors.hpp"

#include <sstream>

namespace flatact {

/// A quotient group supplied explicitly, with the image of each generator of G.
struct SuppliedQuotient {
  FiniteGroup group;
  std::vector<Element> images;
  friend bool operator==(const SuppliedQuotient&, const SuppliedQuotient&) = default;
};

/// Data for an effective action of G on T^n: A normal abelian in G with an explicit
/// identification, Q = G/A (computed, or supplied with the projection on generators), a faithful
/// rho: Q -> GL_n(Z) and a Q-equivariant surjection alpha: Z^n -> A.
///
/// Group elements are indices into group.enumerate(). rho has one matrix per generator of Q; the
/// computed quotient's generators are the images of G's generators.
struct TorusCertificate {
  std::size_t n = 0;
  FiniteGroup g;
  std::vector<Element> a_generators;
  FinAbGroup a;
  std::optional<SuppliedQuotient> q;
  std::vector<IntMatrix> rho;
  IntMatrix alpha;
  friend bool operator==(const TorusCertificate&, const TorusCertificate&) = default;
};

inline const std::vector<std::string>& torus_checks() {
  static const std::vector<std::string> names{"extension_exact", "rho_homomorphism", "rho_faithful",
                                              "alpha_surjective", "alpha_equivariant", "extension_class",
                                              "induced_h2", "class_in_image"};
  return names;
}

namespace detail {

inline std::string vector_string(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : " ") << v[i];
  os << (v.empty() ? "]" : " ]");
  return os.str();
}

inline std::string group_string(const FinAbGroup& a) {
  if (a.is_trivial()) return "0";
  std::string s;
  for (const auto& f : a.invariant_factors()) s += (s.empty() ? "Z/" : " + Z/") + f.get_str();
  return s;
}

// nullopt after recording a failure; structural problems become MalformedInput.
inline std::optional<Extension> checked_extension(Checklist& list, const std::string& check,
                                                  const EnumeratedGroup& g, const std::vector<Element>& a_gens,
                                                  const FinAbGroup& a) {
  try {
    return Extension(g, a_gens, a);
  } catch (const ExtensionError& e) {
    switch (e.reason()) {
      case ExtensionError::Reason::not_normal:
      case ExtensionError::Reason::not_abelian:
        list.fail(check, e.what());
        return std::nullopt;
      default:
        throw MalformedInput(e.what(), "A_generators");
    }
  }
}

// nullopt after recording a failure of `check`; shape and invertibility problems are malformed.
inline std::optional<IntegralRep> checked_rep(Checklist& list, const std::string& check, const EnumeratedGroup& q,
                                              std::size_t n, const std::vector<IntMatrix>& mats) {
  try {
    return IntegralRep(q, n, mats);
  } catch (const RepError& e) {
    if (e.reason() == RepError::Reason::not_homomorphism) {
      list.fail(check, e.what());
      return std::nullopt;
    }
    throw MalformedInput(e.what(), "rho[" + std::to_string(e.generator()) + "]");
  }
}

inline AbHom checked_alpha(const IntMatrix& alpha, std::size_t n, const FinAbGroup& a) {
  try {
    return AbHom(Lattice{n}, a, alpha);
  } catch (const std::invalid_argument& e) {
    throw MalformedInput(e.what(), "alpha");
  }
}

}  // namespace detail

/// Runs the torus checklist. Throws MalformedInput for data that cannot be interpreted and
/// BoundExceeded when Q or n exceed the cohomology bounds.
inline VerificationReport verify_torus_certificate(const TorusCertificate& cert,
                                                   const CohomologyBounds& bounds = {}) {
  VerificationReport report;
  report.kind = "torus";
  detail::Checklist list(report, torus_checks());

  const EnumeratedGroup g = cert.g.enumerate();
  auto ext = detail::checked_extension(list, "extension_exact", g, cert.a_generators, cert.a);
  if (!ext) return report;

  // rho as listed is a representation of the quotient it names; move it onto G/A.
  std::vector<IntMatrix> rho_gens = cert.rho;
  const EnumeratedGroup* rho_group = &ext->q();
  EnumeratedGroup supplied;
  std::optional<GroupHom> to_supplied;
  if (cert.q) {
    supplied = cert.q->group.enumerate();
    std::optional<GroupHom> p;
    try {
      p = GroupHom::from_generator_images(g, supplied, cert.q->images);
    } catch (const GroupError& e) {
      throw MalformedInput(e.what(), "Q.images");
    }
    if (!p) {
      list.fail("extension_exact", "the images in Q do not define a homomorphism G -> Q");
      return report;
    }
    if (!p->is_surjective()) {
      list.fail("extension_exact", "G -> Q is not surjective");
      return report;
    }
    if (p->kernel_mask() != ext->a_mask()) {
      list.fail("extension_exact", "the kernel of G -> Q is not A");
      return report;
    }
    to_supplied = std::move(p);
    rho_group = &supplied;
  }
  list.pass("extension_exact", "|G| = " + std::to_string(g.size()) + ", A = " + detail::group_string(cert.a) +
                                   ", |Q| = " + std::to_string(ext->q().size()));

  auto rho = detail::checked_rep(list, "rho_homomorphism", *rho_group, cert.n, rho_gens);
  if (!rho) return report;
  if (to_supplied) {
    // Pull back along G/A -> Q, which is an isomorphism by the exactness check.
    std::vector<IntMatrix> pulled;
    for (auto s : g.generators()) pulled.push_back((*rho)((*to_supplied)(s)));
    rho = IntegralRep(ext->q(), cert.n, std::move(pulled));
  }
  list.pass("rho_homomorphism");

  if (!rep_is_faithful(*rho)) {
    list.fail("rho_faithful", "kernel of rho has order " + std::to_string(rep_kernel(*rho).size()));
    return report;
  }
  list.pass("rho_faithful");

  const AbHom alpha = detail::checked_alpha(cert.alpha, cert.n, cert.a);
  if (!is_surjective(alpha)) {
    list.fail("alpha_surjective", "cokernel of alpha is nonzero");
    return report;
  }
  list.pass("alpha_surjective");

  const ZQModule lattice = ZQModule::lattice(*rho);
  if (auto d = equivariance_defect(alpha, lattice, ext->module())) {
    list.fail("alpha_equivariant", "alpha(g x) != g alpha(x) at generator " + std::to_string(d->generator) +
                                       ", basis vector " + std::to_string(d->basis_vector));
    return report;
  }
  list.pass("alpha_equivariant");

  const Cocycle2 c = extension_class(*ext);
  const CohomologyGroup target = h2(ext->module(), bounds);
  const IntVector cls = target.coordinates(c);
  report.witnesses["H2(Q;A)"] = detail::group_string(target.group());
  report.witnesses["extension_class"] = detail::vector_string(cls);
  list.pass("extension_class", "class " + detail::vector_string(cls) + " in " + detail::group_string(target.group()));

  const CohomologyGroup source = h2(lattice, bounds);
  const CohomologyMap map = induced_h2(alpha, source, target);
  report.witnesses["H2(Q;Z^n)"] = detail::group_string(source.group());
  list.pass("induced_h2", detail::group_string(source.group()) + " -> " + detail::group_string(target.group()));

  auto pre = is_in_image(cls, map);
  if (!pre) {
    list.fail("class_in_image", "extension class " + detail::vector_string(cls) + " is not in the image");
    return report;
  }
  report.witnesses["preimage"] = detail::vector_string(*pre);
  list.pass("class_in_image", "preimage " + detail::vector_string(*pre));
  return report;
}

}  // namespace flatact
