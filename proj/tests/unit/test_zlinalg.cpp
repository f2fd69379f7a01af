#include "flatact/zlinalg/lattice.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace flatact;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && sgn(d(i, j)) != 0) return false;
  return true;
}

void expect_valid_smith(const IntMatrix& m) {
  auto s = smith_normal_form(m);
  ASSERT_EQ(s.u * m * s.v, s.d);
  EXPECT_TRUE(s.u.is_unimodular());
  EXPECT_TRUE(s.v.is_unimodular());
  EXPECT_TRUE(is_diagonal(s.d));
  auto diag = s.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    EXPECT_GE(diag[i], 0);
    if (i + 1 < diag.size()) {
      if (sgn(diag[i]) == 0) {
        EXPECT_EQ(diag[i + 1], 0);
      } else {
        EXPECT_TRUE(mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()));
      }
    }
  }
  if (m.is_square() && m.rows() > 0) {
    EXPECT_EQ(abs(s.d.determinant()), abs(m.determinant()));
  }
}

// Cramer's rule: x = adj(a) b / det(a), checked entry by entry for integrality.
std::optional<IntVector> cramer(const IntMatrix& a, const IntVector& b) {
  const Integer det = a.determinant();
  IntVector x(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    IntMatrix aj = a;
    for (std::size_t i = 0; i < a.rows(); ++i) aj(i, j) = b[i];
    Integer num = aj.determinant();
    if (!mpz_divisible_p(num.get_mpz_t(), det.get_mpz_t())) return std::nullopt;
    x[j] = num / det;
  }
  return x;
}

}  // namespace

TEST(Smith, SpecExamples) {
  auto s = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.d, (IntMatrix{{1, 0}, {0, 6}}));
  auto id = smith_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.d, IntMatrix::identity(3));
  EXPECT_EQ(id.u, IntMatrix::identity(3));
  EXPECT_EQ(id.v, IntMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntMatrix{{0}}).d, IntMatrix{{0}});
}

TEST(Smith, EmptyAndDegenerateShapes) {
  auto e = smith_normal_form(IntMatrix(0, 0));
  EXPECT_EQ(e.d.rows(), 0u);
  auto r = smith_normal_form(IntMatrix(0, 3));
  EXPECT_EQ(r.v, IntMatrix::identity(3));
  auto c = smith_normal_form(IntMatrix(2, 0));
  EXPECT_EQ(c.u, IntMatrix::identity(2));
  expect_valid_smith(IntMatrix(3, 2));
}

TEST(Smith, Deterministic) {
  std::mt19937_64 rng(7);
  auto m = random_matrix(rng, 5, 4, 20);
  auto a = smith_normal_form(m), b = smith_normal_form(m);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.v, b.v);
}

TEST(Smith, RandomProperty) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(0, 8);
  for (int t = 0; t < 400; ++t) expect_valid_smith(random_matrix(rng, dim(rng), dim(rng), 20));
}

TEST(Smith, RankDeficientProperty) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 100; ++t) {
    auto a = random_matrix(rng, 6, 2, 9), b = random_matrix(rng, 2, 6, 9);
    auto m = a * b;
    auto s = smith_normal_form(m);
    EXPECT_LE(s.rank(), 2u);
    expect_valid_smith(m);
  }
}

TEST(Hermite, SpecExamples) {
  auto a = hermite_normal_form(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(a.h, (IntMatrix{{2, 0}, {0, 3}}));
  auto b = hermite_normal_form(IntMatrix{{0, 1}, {1, 0}});
  EXPECT_EQ(b.h, IntMatrix::identity(2));
  IntMatrix m{{2, 4}, {2, 1}};
  auto c = hermite_normal_form(m);
  EXPECT_EQ(c.u * m, c.h);
  EXPECT_EQ(abs(c.h.determinant()), 6);
  // Row-reduction oracle: the row lattice of m has basis rows (2,1), (0,3).
  EXPECT_EQ(c.h, (IntMatrix{{2, 1}, {0, 3}}));
}

TEST(Hermite, RandomShapeProperty) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> dim(1, 7);
  for (int t = 0; t < 200; ++t) {
    auto m = random_matrix(rng, dim(rng), dim(rng), 15);
    auto hd = hermite_normal_form(m);
    ASSERT_EQ(hd.u * m, hd.h);
    EXPECT_TRUE(hd.u.is_unimodular());
    std::size_t last_pivot = 0;
    bool seen_zero_row = false;
    for (std::size_t i = 0; i < hd.h.rows(); ++i) {
      std::size_t p = hd.h.cols();
      for (std::size_t j = 0; j < hd.h.cols(); ++j)
        if (sgn(hd.h(i, j)) != 0) { p = j; break; }
      if (p == hd.h.cols()) { seen_zero_row = true; continue; }
      EXPECT_FALSE(seen_zero_row);
      if (i > 0) {
        EXPECT_GT(p, last_pivot);
      }
      last_pivot = p;
      EXPECT_GT(hd.h(i, p), 0);
      for (std::size_t k = 0; k < i; ++k) {
        EXPECT_GE(hd.h(k, p), 0);
        EXPECT_LT(hd.h(k, p), hd.h(i, p));
      }
    }
  }
}

TEST(FinAb, CanonicalForm) {
  EXPECT_EQ(FinAbGroup::from_moduli({2, 3}).invariant_factors(), std::vector<Integer>{6});
  EXPECT_EQ(FinAbGroup::from_moduli({4, 6}).invariant_factors(), (std::vector<Integer>{2, 12}));
  EXPECT_EQ(FinAbGroup::from_moduli({1, 1}).order(), 1);
  EXPECT_THROW(FinAbGroup({Integer(4), Integer(6)}), std::invalid_argument);
  EXPECT_THROW(FinAbGroup({Integer(1)}), std::invalid_argument);
  EXPECT_EQ(FinAbGroup({2, 4}).elements().size(), 8u);
}

TEST(AbHomTest, RejectsIllDefinedMatrix) {
  EXPECT_THROW(AbHom(FinAbGroup({2}), FinAbGroup({3}), IntMatrix{{1}}), std::invalid_argument);
  EXPECT_NO_THROW(AbHom(FinAbGroup({2}), FinAbGroup({4}), IntMatrix{{2}}));
}

TEST(Kernel, SpecExamples) {
  AbHom sum(Lattice{2}, FinAbGroup({2}), IntMatrix{{1, 1}});
  auto k = kernel_basis(sum);
  EXPECT_EQ(*sublattice_index(k), 2);
  // Membership oracle on a box: x in ker iff x + y even iff x in the row span.
  for (long x = -4; x <= 4; ++x)
    for (long y = -4; y <= 4; ++y) {
      const bool in_kernel = (x + y) % 2 == 0;
      const bool in_span = solve_integer(k.transpose(), int_vector({x, y})).has_value();
      EXPECT_EQ(in_kernel, in_span);
    }
  AbHom zero(Lattice{2}, FinAbGroup(), IntMatrix(0, 2));
  EXPECT_EQ(kernel_basis(zero), IntMatrix::identity(2));
  AbHom mod2(Lattice{2}, FinAbGroup({2, 2}), IntMatrix::identity(2));
  EXPECT_EQ(kernel_basis(mod2), (IntMatrix{{2, 0}, {0, 2}}));
}

TEST(Kernel, IndexEqualsImageOrder) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> f(2, 12);
  for (int t = 0; t < 60; ++t) {
    auto a = FinAbGroup::from_moduli({f(rng), f(rng)});
    if (a.is_trivial()) continue;
    const std::size_t n = 3;
    auto m = random_matrix(rng, a.rank(), n, 20);
    AbHom h(Lattice{n}, a, m);
    auto idx = sublattice_index(kernel_basis(h));
    ASSERT_TRUE(idx);
    // Oracle: the image is the subgroup generated by the columns, enumerated by closure.
    std::set<IntVector> image{IntVector(a.rank(), Integer(0))};
    std::vector<IntVector> frontier(image.begin(), image.end());
    while (!frontier.empty()) {
      auto v = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        auto w = a.reduce(v + h.matrix().col(j));
        if (image.insert(w).second) frontier.push_back(w);
      }
    }
    EXPECT_EQ(*idx, Integer(static_cast<unsigned long>(image.size())));
  }
}

TEST(Cokernel, SpecExamples) {
  auto six = cokernel(AbHom(Lattice{1}, Lattice{1}, IntMatrix{{6}}));
  EXPECT_EQ(six.torsion.invariant_factors(), std::vector<Integer>{6});
  EXPECT_EQ(six.free_rank, 0u);
  auto id = cokernel(AbHom(Lattice{3}, Lattice{3}, IntMatrix::identity(3)));
  EXPECT_TRUE(id.torsion.is_trivial());
  EXPECT_EQ(id.free_rank, 0u);
  auto d23 = cokernel(AbHom(Lattice{2}, Lattice{2}, IntMatrix{{2, 0}, {0, 3}}));
  EXPECT_EQ(d23.torsion.invariant_factors(), std::vector<Integer>{6});
  auto inf = cokernel(AbHom(Lattice{1}, Lattice{2}, IntMatrix{{2}, {0}}));
  EXPECT_EQ(inf.free_rank, 1u);
  EXPECT_EQ(inf.torsion.invariant_factors(), std::vector<Integer>{2});
}

TEST(Cokernel, ProjectionKillsRelationsAndIsOnto) {
  IntMatrix rel{{2, 4}, {6, 8}, {0, 0}};
  auto c = cokernel_of_relations(rel);
  ASSERT_EQ(c.free_rank, 1u);
  auto moduli = c.torsion.invariant_factors();
  moduli.push_back(0);
  for (std::size_t j = 0; j < rel.cols(); ++j) EXPECT_TRUE(is_zero(reduce_mod(c.projection * rel.col(j), moduli)));
  // Onto: the projection matrix together with the moduli has full row lattice.
  auto s = smith_normal_form(with_modulus_columns(c.projection, moduli));
  for (auto d : s.diagonal()) EXPECT_EQ(d, 1);
}

TEST(Solve, SpecExamples) {
  EXPECT_EQ(*solve_integer(IntMatrix{{2}}, int_vector({4})), int_vector({2}));
  EXPECT_FALSE(solve_integer(IntMatrix{{2}}, int_vector({3})));
  IntMatrix a{{1, 2}, {3, 4}};
  auto x = solve_integer(a, int_vector({1, 1}));
  auto oracle = cramer(a, int_vector({1, 1}));
  ASSERT_EQ(x.has_value(), oracle.has_value());
  if (x) {
    EXPECT_EQ(a * *x, int_vector({1, 1}));
  }
}

TEST(Solve, AgreesWithCramerOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<long> e(-5, 5);
  int checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = dim(rng);
    auto a = random_matrix(rng, n, n, 5);
    if (sgn(a.determinant()) == 0) continue;
    IntVector b(n);
    for (auto& v : b) v = e(rng);
    auto x = solve_integer(a, b);
    auto o = cramer(a, b);
    ASSERT_EQ(x.has_value(), o.has_value());
    if (x) {
      EXPECT_EQ(a * *x, b);
    }
    ++checked;
  }
  EXPECT_GT(checked, 200);
}

TEST(Solve, ConstructedSolvableNonSquare) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> dim(1, 3);
  std::uniform_int_distribution<long> e(-5, 5);
  for (int t = 0; t < 200; ++t) {
    auto a = random_matrix(rng, dim(rng), dim(rng), 5);
    IntVector x0(a.cols());
    for (auto& v : x0) v = e(rng);
    auto b = a * x0;
    auto x = solve_integer(a, b);
    ASSERT_TRUE(x);
    EXPECT_EQ(a * *x, b);
  }
}

TEST(Solve, CongruenceSystem) {
  // 2x = 1 mod 3 -> x = 2 mod 3.
  auto x = solve_congruence(IntMatrix{{2}}, int_vector({1}), {Integer(3)});
  ASSERT_TRUE(x);
  EXPECT_EQ(reduce_mod(Integer(2) * (*x)[0] - 1, Integer(3)), 0);
  EXPECT_FALSE(solve_congruence(IntMatrix{{2}}, int_vector({1}), {Integer(4)}));
}

TEST(MatrixText, RoundTrip) {
  IntMatrix m{{1, -2, 3}, {0, 5, -7}};
  EXPECT_EQ(IntMatrix::parse(m.to_string()), m);
  EXPECT_THROW(IntMatrix::parse("2 2\n1 2 3"), MatrixError);
  EXPECT_EQ(IntMatrix::parse("0 0\n").rows(), 0u);
}

TEST(CongruenceKernelTest, StreamingMatchesBatch) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(rng, 5, 4, 6);
    std::vector<Integer> mod{0, 2, 3, 0, 4};
    auto k = congruence_kernel(m, mod);
    for (std::size_t r = 0; r < k.rows(); ++r) {
      auto v = m * k.row(r);
      EXPECT_TRUE(is_zero(reduce_mod(v, mod)));
    }
  }
}

TEST(Hermite, ModularBasisMatchesPlainForm) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  std::uniform_int_distribution<long> dd(1, 30);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = dim(rng);
    auto m = random_matrix(rng, dim(rng), n, 40);
    const Integer d = dd(rng);
    IntMatrix stacked(m.rows() + n, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) stacked(i, j) = m(i, j);
    for (std::size_t j = 0; j < n; ++j) stacked(m.rows() + j, j) = d;
    EXPECT_EQ(hermite_basis_modular(m, d), row_lattice_basis(stacked));
  }
}
