#include "../support/certs.hpp"
#include "../support/zoo.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace flatact;

namespace {

std::string failure(const VerificationReport& r) { return r.first_failure().value_or("none"); }

// Finite model of G* modulo k Z^n: checks that (v, phi) -> (alpha v + b(phi), p(phi)) is a
// surjective homomorphism onto G = A x_c Q, by exhaustive multiplication.
void expect_finite_model(const FlatCertificate& cert, long k) {
  const EnumeratedGroup star = cert.phi_star.enumerate();
  const EnumeratedGroup g = cert.g.enumerate();
  const Extension ext(g, cert.a_generators, cert.a);
  const IntegralRep rho(star, cert.n, cert.rho);
  const Cocycle2 cg = extension_class(ext);
  std::vector<Element> p_images;
  for (auto x : cert.quotient_lifts) p_images.push_back(ext.project(x));
  const GroupHom p = *GroupHom::from_generator_images(star, ext.q(), p_images);
  const auto section = ext.least_section();

  std::vector<IntVector> lattice_points{IntVector{}};
  for (std::size_t i = 0; i < cert.n; ++i) {
    std::vector<IntVector> next;
    for (const auto& v : lattice_points)
      for (long x = 0; x < k; ++x) {
        IntVector w = v;
        w.push_back(Integer(x));
        next.push_back(w);
      }
    lattice_points = next;
  }
  const std::vector<Integer> mod_k(cert.n, Integer(k));
  auto to_g = [&](const IntVector& v, Element f) {
    IntVector a = cert.a.reduce(cert.alpha * v + cert.coboundary_witness[f]);
    Element x = g.identity();
    for (std::size_t i = 0; i < a.size(); ++i) x = g.mul(x, g.pow(cert.a_generators[i], a[i].get_si()));
    return g.mul(x, section[p(f)]);
  };
  std::vector<char> hit(g.size(), 0);
  const std::size_t q = star.size();
  for (const auto& v : lattice_points)
    for (Element f = 0; f < q; ++f) {
      hit[to_g(v, f)] = 1;
      for (const auto& w : lattice_points)
        for (Element h = 0; h < q; h += 1) {
          IntVector prod = reduce_mod(v + rho(f) * w + cert.cocycle[f * q + h], mod_k);
          ASSERT_EQ(to_g(prod, star.mul(f, h)), g.mul(to_g(v, f), to_g(w, h)));
        }
    }
  EXPECT_EQ(std::count(hit.begin(), hit.end(), 1), static_cast<long>(g.size()));
}

// Brute-force torsion search in the kernel extension: elements over phi in Phi of prime order p
// with translation in a box, powered with crystal_multiply.
bool has_small_torsion(const FlatCertificate& cert, long box) {
  const EnumeratedGroup star = cert.phi_star.enumerate();
  const IntegralRep rho(star, cert.n, cert.rho);
  auto c = std::make_shared<const Cocycle2>(ZQModule::lattice(rho), cert.cocycle);
  const AbHom alpha(Lattice{cert.n}, cert.a, cert.alpha);
  const EnumeratedGroup phi = cert.phi.enumerate();
  std::vector<IntVector> pts{IntVector{}};
  for (std::size_t i = 0; i < cert.n; ++i) {
    std::vector<IntVector> next;
    for (const auto& v : pts)
      for (long x = -box; x <= box; ++x) {
        IntVector w = v;
        w.push_back(Integer(x));
        next.push_back(w);
      }
    pts = next;
  }
  const GroupHom iota = *GroupHom::from_generator_images(phi, star, cert.phi_embedding);
  for (Element f = 0; f < phi.size(); ++f) {
    if (f == phi.identity()) continue;
    const Element s = iota(f);
    for (const auto& v : pts) {
      // Only elements mapping to 1 in G lie in pi.
      if (!cert.a.is_zero(alpha.apply(v) + cert.coboundary_witness[s])) continue;
      CrystalElement e{v, s, c};
      if (crystal_power(e, star.order_of(s)) == crystal_identity(c)) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Crystal, IdentityAndTranslations) {
  const auto c = std::make_shared<const Cocycle2>(ZQModule::lattice(IntegralRep(EnumeratedGroup::cyclic(2), 2, {IntMatrix{{1, 0}, {0, -1}}})),
                                                  certs::klein(1).cocycle);
  const CrystalElement id = crystal_identity(c);
  const CrystalElement t{IntVector{2, -3}, 0, c}, u{IntVector{1, 1}, 0, c};
  EXPECT_EQ(crystal_multiply(t, u), (CrystalElement{IntVector{3, -2}, 0, c}));
  const CrystalElement glide{IntVector{0, 0}, 1, c};
  EXPECT_EQ(crystal_multiply(id, glide), glide);
  EXPECT_EQ(crystal_multiply(glide, id), glide);
  EXPECT_EQ(crystal_multiply(glide, glide), (CrystalElement{IntVector{1, 0}, 0, c}));
}

TEST(Crystal, RejectsMixedAmbients) {
  const ZQModule m = ZQModule::lattice(IntegralRep(EnumeratedGroup::cyclic(2), 1, {IntMatrix{{-1}}}));
  auto c1 = std::make_shared<const Cocycle2>(Cocycle2::zero(m));
  auto c2 = std::make_shared<const Cocycle2>(ZQModule::lattice(IntegralRep(EnumeratedGroup::cyclic(2), 2, {IntMatrix{{1, 0}, {0, -1}}})),
                                             certs::klein(1).cocycle);
  EXPECT_THROW(crystal_multiply(CrystalElement{IntVector{0}, 1, c1}, CrystalElement{IntVector{0, 0}, 1, c2}), CohomologyError);
}

TEST(Crystal, MultiplicationIsAssociative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const IntegralRep rho = zoo::random_point_group(rng);
    const ZQModule m = ZQModule::lattice(rho);
    auto c = std::make_shared<const Cocycle2>(zoo::random_cocycle(rng, h2(m)) + coboundary(m, zoo::random_cochain1(rng, m)));
    std::uniform_int_distribution<Element> pick(0, static_cast<Element>(rho.group().size() - 1));
    std::uniform_int_distribution<long> entry(-4, 4);
    auto random_element = [&] {
      IntVector v;
      for (std::size_t i = 0; i < m.rank(); ++i) v.push_back(Integer(entry(rng)));
      return CrystalElement{v, pick(rng), c};
    };
    for (int k = 0; k < 10; ++k) {
      auto a = random_element(), b = random_element(), d = random_element();
      EXPECT_EQ(crystal_multiply(crystal_multiply(a, b), d), crystal_multiply(a, crystal_multiply(b, d)));
    }
  }
}

TEST(Crystal, TorsionWitnessesHaveFiniteOrder) {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const IntegralRep rho = zoo::random_point_group(rng);
    const ZQModule m = ZQModule::lattice(rho);
    auto c = std::make_shared<const Cocycle2>(zoo::random_cocycle(rng, h2(m)) + coboundary(m, zoo::random_cochain1(rng, m)));
    auto t = torsion_free_check(*c);
    if (t.torsion_free) continue;
    ++found;
    const CrystalElement e{t.witness->translation, t.witness->point, c};
    EXPECT_EQ(crystal_power(e, t.witness->order), crystal_identity(c));
    EXPECT_FALSE(crystal_power(e, 1) == crystal_identity(c));
  }
  EXPECT_GT(found, 3);
}

TEST(A4, BuilderMatchesStatedData) {
  const TorusCertificate c = build_a4_certificate();
  const IntMatrix& r = c.rho[0];
  EXPECT_EQ(r * r * r, IntMatrix::identity(2));
  IntMatrix mod2 = r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) mod2(i, j) = reduce_mod(mod2(i, j), Integer(2));
  EXPECT_EQ(mod2, (IntMatrix{{0, 1}, {1, 1}}));
  const Extension ext(c.g.enumerate(), c.a_generators, c.a);
  EXPECT_EQ(ext.q().size(), 3u);
  EXPECT_EQ(ext.module().matrix(ext.q().generators()[0]), (IntMatrix{{0, 1}, {1, 1}}));
}

TEST(Torus, A4Accepted) {
  const auto r = verify_torus_certificate(build_a4_certificate());
  EXPECT_TRUE(r.accepted()) << format_report(r);
  ASSERT_EQ(r.checklist.size(), torus_checks().size());
  for (std::size_t i = 0; i < r.checklist.size(); ++i) EXPECT_EQ(r.checklist[i].name, torus_checks()[i]);
  // Orders 3 and 4 are coprime, so both second cohomology groups vanish.
  EXPECT_EQ(r.witnesses.at("H2(Q;A)"), "0");
  EXPECT_EQ(r.witnesses.at("extension_class"), "[]");
  EXPECT_EQ(r.witnesses.at("preimage"), "[]");
}

TEST(Torus, A4WithSuppliedQuotient) {
  TorusCertificate c = build_a4_certificate();
  c.q = SuppliedQuotient{FiniteGroup(EnumeratedGroup::cyclic(3)), {1, 0, 0}};
  c.rho = {IntMatrix{{0, -1}, {1, -1}}};
  EXPECT_TRUE(verify_torus_certificate(c).accepted());
  c.q->images = {1, 1, 0};
  EXPECT_EQ(failure(verify_torus_certificate(c)), "extension_exact");
}

TEST(Torus, MutationsPinpointTheBrokenCondition) {
  const auto muts = certs::a4_mutations();
  EXPECT_GE(muts.size(), 10u);
  for (const auto& m : muts) {
    const auto r = verify_torus_certificate(m.cert);
    EXPECT_FALSE(r.accepted()) << m.name;
    EXPECT_EQ(failure(r), m.expected_failure) << m.name << "\n" << format_report(r);
    bool after = false;
    for (const auto& c : r.checklist) {
      if (after) {
        EXPECT_EQ(c.status, CheckStatus::skipped) << m.name;
      }
      if (c.status == CheckStatus::fail) after = true;
    }
  }
}

TEST(Torus, NonSurjectiveAlphaFromExample) {
  TorusCertificate c = build_a4_certificate();
  c.alpha = IntMatrix{{1, 0}, {0, 0}};
  EXPECT_EQ(failure(verify_torus_certificate(c)), "alpha_surjective");
}

TEST(Torus, CircleRotationsAccepted) {
  for (long m = 2; m <= 8; ++m) EXPECT_TRUE(verify_torus_certificate(certs::circle_rotation(m)).accepted()) << m;
}

TEST(Torus, ClassOutsideImageRejected) {
  const auto r = verify_torus_certificate(certs::z4_reflection());
  EXPECT_EQ(failure(r), "class_in_image") << format_report(r);
  EXPECT_EQ(r.witnesses.at("extension_class"), "[ 1 ]");
  // The split extension Z/2 x Z/2 with the same data is fine.
  TorusCertificate split;
  split.n = 1;
  split.g = FiniteGroup(EnumeratedGroup::direct_product(EnumeratedGroup::cyclic(2), EnumeratedGroup::cyclic(2)));
  split.a_generators = {1};
  split.a = FinAbGroup::cyclic(2);
  split.rho = {IntMatrix{{-1}}, IntMatrix{{1}}};
  split.alpha = IntMatrix{{1}};
  EXPECT_TRUE(verify_torus_certificate(split).accepted());
}

TEST(Torus, MalformedIsDistinctFromRejected) {
  TorusCertificate c = build_a4_certificate();
  c.a = FinAbGroup({Integer(4)});
  c.a_generators = {c.a_generators[0]};
  EXPECT_THROW(verify_torus_certificate(c), MalformedInput);
  c = build_a4_certificate();
  c.rho[0] = IntMatrix{{2, 0}, {0, 1}};
  EXPECT_THROW(verify_torus_certificate(c), MalformedInput);
  c = build_a4_certificate();
  c.rho.pop_back();
  EXPECT_THROW(verify_torus_certificate(c), MalformedInput);
  c = build_a4_certificate();
  c.alpha = IntMatrix(2, 3);
  EXPECT_THROW(verify_torus_certificate(c), MalformedInput);
}

TEST(Flat, KleinBottleAcceptedOnlyForTheNonzeroClass) {
  const auto good = verify_flat_certificate(certs::klein(1));
  EXPECT_TRUE(good.accepted()) << format_report(good);
  const auto bad = verify_flat_certificate(certs::klein(0));
  EXPECT_EQ(failure(bad), "kernel_torsion_free");
  EXPECT_EQ(bad.witnesses.count("torsion_element"), 1u);
  // (0,1,0) + 2Z: shifting by a coboundary keeps the class.
  EXPECT_TRUE(verify_flat_certificate(certs::klein(3)).accepted());
  EXPECT_FALSE(verify_flat_certificate(certs::klein(2)).accepted());
}

TEST(Flat, FreeTranslationOfTheKleinBottle) {
  const auto c = certs::klein_translation();
  const auto r = verify_flat_certificate(c);
  EXPECT_TRUE(r.accepted()) << format_report(r);
  expect_finite_model(c, 4);
  FlatCertificate wrong = c;
  wrong.alpha = IntMatrix{{1, 0}};
  EXPECT_EQ(failure(verify_flat_certificate(wrong)), "diagram_commutes");
  wrong = c;
  wrong.alpha = IntMatrix{{1, 1}};
  EXPECT_EQ(failure(verify_flat_certificate(wrong)), "diagram_commutes");
}

TEST(Flat, InvolutionThroughHolonomy) {
  const auto c = certs::klein_involution();
  const auto r = verify_flat_certificate(c);
  EXPECT_TRUE(r.accepted()) << format_report(r);
  expect_finite_model(c, 2);
  EXPECT_FALSE(has_small_torsion(c, 3));
  FlatCertificate wrong = c;
  wrong.quotient_lifts = {1, 1};
  EXPECT_EQ(failure(verify_flat_certificate(wrong)), "quotient_isomorphism");
  wrong = c;
  wrong.cocycle[wrong.cocycle.size() - 1][0] += 1;
  EXPECT_EQ(failure(verify_flat_certificate(wrong)), "cocycle_valid");
}

TEST(Flat, MutationsPinpointTheBrokenCondition) {
  const FlatCertificate base = torus_to_flat(build_a4_certificate());
  ASSERT_TRUE(verify_flat_certificate(base).accepted());
  FlatCertificate c = base;
  c.alpha = IntMatrix{{0, 1}, {1, 0}};
  EXPECT_EQ(failure(verify_flat_certificate(c)), "alpha_equivariant");
  c = base;
  c.coboundary_witness[1][0] += 1;
  EXPECT_EQ(failure(verify_flat_certificate(c)), "diagram_commutes");
  c = base;
  c.rho[0] = IntMatrix::identity(2);
  EXPECT_EQ(failure(verify_flat_certificate(c)), "rho_faithful");
  c = base;
  c.phi = FiniteGroup(EnumeratedGroup::cyclic(3));
  c.phi_embedding = {1};
  EXPECT_EQ(failure(verify_flat_certificate(c)), "quotient_isomorphism");
  c = certs::klein(1);
  c.phi_embedding = {0};
  EXPECT_EQ(failure(verify_flat_certificate(c)), "holonomy_embedding");
}

TEST(Flat, TorusSpecializationAgrees) {
  std::vector<TorusCertificate> accepted{build_a4_certificate(), certs::circle_rotation(5)};
  for (const auto& m : certs::a4_mutations()) EXPECT_FALSE(verify_torus_certificate(m.cert).accepted());
  for (const auto& c : accepted) {
    ASSERT_TRUE(verify_torus_certificate(c).accepted());
    const FlatCertificate f = torus_to_flat(c);
    const auto r = verify_flat_certificate(f);
    EXPECT_TRUE(r.accepted()) << format_report(r);
    expect_finite_model(f, 2 * static_cast<long>(c.a.invariant_factors().back().get_si()));
    EXPECT_TRUE(verify_torus_certificate(flat_to_torus(f)).accepted());
  }
  // Random split extensions Z^n x| Q -> (Z/k)^n x| Q over the zoo: torus and flat verdicts agree.
  std::mt19937_64 rng(3);
  for (int trial = 0, done = 0; done < 8 && trial < 100; ++trial) {
    const IntegralRep rho = zoo::random_point_group(rng);
    const long k = 2 + trial % 3;
    const auto& q = rho.group();
    const std::size_t n = rho.dimension();
    if (std::pow(k, n) * q.size() > 200) continue;
    ++done;
    // G = (Z/k)^n x| Q as a table group, with A the first factor.
    const FinAbGroup a = FinAbGroup::from_moduli(std::vector<Integer>(n, Integer(k)));
    const auto elems = a.elements();
    std::map<IntVector, std::size_t> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = i;
    const std::size_t na = elems.size(), nq = q.size();
    std::vector<std::vector<Element>> table(na * nq, std::vector<Element>(na * nq));
    for (std::size_t x = 0; x < na * nq; ++x)
      for (std::size_t y = 0; y < na * nq; ++y) {
        const Element fx = static_cast<Element>(x % nq), fy = static_cast<Element>(y % nq);
        IntVector v = a.reduce(elems[x / nq] + rho(fx) * elems[y / nq]);
        table[x][y] = static_cast<Element>(index.at(v) * nq + q.mul(fx, fy));
      }
    TorusCertificate c;
    c.n = n;
    std::vector<Element> a_gens;
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, Integer(0));
      e[i] = 1;
      a_gens.push_back(static_cast<Element>(index.at(a.reduce(e)) * nq + q.identity()));
    }
    // Generators of Q embed as (0, s), followed by the basis of A.
    const std::size_t zero = index.at(IntVector(n, Integer(0)));
    std::vector<Element> gens;
    for (auto s : q.generators()) gens.push_back(static_cast<Element>(zero * nq + s));
    gens.insert(gens.end(), a_gens.begin(), a_gens.end());
    c.g = FiniteGroup(EnumeratedGroup::from_table(table, gens));
    c.a_generators = a_gens;
    c.a = FinAbGroup(std::vector<Integer>(n, Integer(k)));
    for (std::size_t i = 0; i < q.generators().size(); ++i) c.rho.push_back(rho.generator_matrices()[i]);
    for (std::size_t i = 0; i < n; ++i) c.rho.push_back(IntMatrix::identity(n));
    c.alpha = IntMatrix::identity(n);
    const auto r = verify_torus_certificate(c);
    ASSERT_TRUE(r.accepted()) << format_report(r);
    const FlatCertificate f = torus_to_flat(c);
    EXPECT_TRUE(verify_flat_certificate(f).accepted());
    EXPECT_TRUE(verify_torus_certificate(flat_to_torus(f)).accepted());
  }
}

TEST(Jordan, Examples) {
  const FiniteGroup a4(PermGroup::alternating(4));
  auto w = jordan_witness({2, 12, a4});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->index, 3u);
  EXPECT_EQ(w->subgroup.order(), 4u);
  EXPECT_FALSE(jordan_witness({2, 12, FiniteGroup(PermGroup::alternating(5))}));
  EXPECT_EQ(minimal_index_abelian_normal(EnumeratedGroup::from_permutations(PermGroup::alternating(5))).index, 60u);
  auto ab = jordan_witness({1, 1, FiniteGroup(EnumeratedGroup::cyclic(6))});
  ASSERT_TRUE(ab);
  EXPECT_EQ(ab->index, 1u);
  EXPECT_THROW(jordan_witness({2, 0, a4}), std::invalid_argument);
  EXPECT_THROW(jordan_witness({2, 12, FiniteGroup(PermGroup::symmetric(9))}), BoundExceeded);
}

TEST(Json, A4RoundTrip) {
  const TorusCertificate c = build_a4_certificate();
  const Json j = to_json(c);
  auto back = parse_certificate(j);
  ASSERT_TRUE(std::holds_alternative<TorusCertificate>(back));
  EXPECT_EQ(std::get<TorusCertificate>(back), c);
  for (const auto& m : certs::a4_mutations()) {
    if (m.cert.q || m.cert.alpha.rows() != m.cert.a.rank()) continue;
    EXPECT_EQ(std::get<TorusCertificate>(parse_certificate(to_json(m.cert))), m.cert) << m.name;
  }
}

TEST(Json, FlatRoundTrip) {
  for (const auto& c : {certs::klein(1), certs::klein_translation(), certs::klein_involution(),
                        torus_to_flat(build_a4_certificate())}) {
    auto back = parse_certificate(to_json(c));
    ASSERT_TRUE(std::holds_alternative<FlatCertificate>(back));
    EXPECT_EQ(std::get<FlatCertificate>(back), c);
  }
  TorusCertificate s = build_a4_certificate();
  s.q = SuppliedQuotient{FiniteGroup(EnumeratedGroup::cyclic(3)), {1, 0, 0}};
  s.rho = {IntMatrix{{0, -1}, {1, -1}}};
  EXPECT_EQ(std::get<TorusCertificate>(parse_certificate(to_json(s))), s);
}

TEST(Json, StructuralErrorsAreLocated) {
  auto location_of = [](const Json& j) {
    try {
      parse_certificate(j);
    } catch (const MalformedInput& e) {
      return e.location();
    }
    return std::string("parsed");
  };
  Json j = to_json(build_a4_certificate());
  Json k = j;
  k["extra"] = 1;
  EXPECT_EQ(location_of(k), "");
  k = j;
  k["rho"][1] = Json::parse("[[2,0],[0,1]]");
  EXPECT_EQ(location_of(k), "rho[1]");
  k = j;
  k["rho"].erase(2);
  EXPECT_EQ(location_of(k), "rho");
  k = j;
  k["A_generators"]["elements"][0] = Json::parse("[1,0,2,3]");
  EXPECT_EQ(location_of(k), "A_generators.elements[0]");
  k = j;
  k["kind"] = "sphere";
  EXPECT_EQ(location_of(k), "kind");
  k = j;
  k["group"]["perm"]["order"] = 12;
  EXPECT_EQ(location_of(k), "group.perm");
  Json f = to_json(certs::klein(1));
  f.erase("coboundary_witness");
  EXPECT_EQ(location_of(f), "");
  f = to_json(certs::klein(1));
  f["cocycle"]["values"].erase(0);
  EXPECT_EQ(location_of(f), "cocycle.values");
}

TEST(Json, ReportModesAgree) {
  for (const auto& m : certs::a4_mutations()) {
    const auto r = verify_torus_certificate(m.cert);
    const Json j = to_json(r);
    const std::string text = format_report(r);
    ASSERT_EQ(j["checklist"].size(), r.checklist.size());
    for (const auto& c : j["checklist"])
      EXPECT_NE(text.find("[" + c["status"].get<std::string>() + "] " + c["name"].get<std::string>()), std::string::npos);
    EXPECT_EQ(j["verdict"], "rejected");
  }
}
