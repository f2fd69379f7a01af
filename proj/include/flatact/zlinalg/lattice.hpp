#pragma once

#include "flatact/zlinalg/int_matrix.hpp"
#include "flatact/zlinalg/normal_form.hpp"

#include <numeric>
#include <optional>
#include <variant>

namespace flatact {

/// Finite abelian group in invariant-factor form Z/d1 + ... + Z/dk with d_i | d_{i+1}, d_i >= 2.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  /// Validates an invariant-factor list.
  explicit FinAbGroup(std::vector<Integer> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw std::invalid_argument("FinAbGroup: invariant factors must be >= 2");
      if (i + 1 < factors_.size() &&
          !mpz_divisible_p(factors_[i + 1].get_mpz_t(), factors_[i].get_mpz_t()))
        throw std::invalid_argument("FinAbGroup: invariant factors must form a divisibility chain");
    }
  }

  /// The group Z/m1 + ... + Z/mk for arbitrary positive moduli, normalized to invariant factors.
  static FinAbGroup from_moduli(const std::vector<Integer>& moduli) {
    std::vector<Integer> fs;
    auto snf = smith_normal_form(IntMatrix::diagonal(moduli), {false, false});
    for (const auto& x : snf.diagonal()) {
      if (sgn(x) == 0) throw std::invalid_argument("FinAbGroup: modulus 0 is not finite");
      if (x > 1) fs.push_back(x);
    }
    return FinAbGroup(std::move(fs));
  }

  static FinAbGroup cyclic(long m) { return m <= 1 ? FinAbGroup() : FinAbGroup({Integer(m)}); }

  const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }
  std::size_t rank() const noexcept { return factors_.size(); }
  bool is_trivial() const noexcept { return factors_.empty(); }

  Integer order() const {
    Integer o = 1;
    for (const auto& f : factors_) o *= f;
    return o;
  }

  IntVector reduce(const IntVector& v) const {
    if (v.size() != factors_.size()) throw MatrixError("FinAbGroup: coordinate length mismatch");
    return reduce_mod(v, factors_);
  }
  bool is_zero(const IntVector& v) const { return flatact::is_zero(reduce(v)); }

  /// All elements in lexicographic coordinate order (intended for small groups).
  std::vector<IntVector> elements() const {
    std::vector<IntVector> out;
    IntVector cur(factors_.size(), Integer(0));
    for (;;) {
      out.push_back(cur);
      std::size_t i = factors_.size();
      while (i > 0) {
        --i;
        cur[i] += 1;
        if (cur[i] < factors_[i]) break;
        cur[i] = 0;
        if (i == 0) return out;
      }
      if (factors_.empty()) return out;
    }
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.factors_ == b.factors_; }

  std::string to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += " + ";
      s += "Z/" + factors_[i].get_str();
    }
    return s;
  }

 private:
  std::vector<Integer> factors_;
};

/// Free abelian group Z^rank.
struct Lattice {
  std::size_t rank = 0;
  friend bool operator==(const Lattice&, const Lattice&) = default;
};

using AbelianGroup = std::variant<Lattice, FinAbGroup>;

inline std::size_t coordinate_count(const AbelianGroup& g) {
  return std::visit([](const auto& x) -> std::size_t {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Lattice>) return x.rank;
    else return x.rank();
  }, g);
}

/// Coordinate moduli of an abelian group (0 marks a free coordinate).
inline std::vector<Integer> coordinate_moduli(const AbelianGroup& g) {
  if (const auto* l = std::get_if<Lattice>(&g)) return std::vector<Integer>(l->rank, Integer(0));
  return std::get<FinAbGroup>(g).invariant_factors();
}

inline bool is_lattice(const AbelianGroup& g) { return std::holds_alternative<Lattice>(g); }

/// Homomorphism between lattices and finite abelian groups, acting on coordinate column vectors.
class AbHom {
 public:
  AbHom(AbelianGroup domain, AbelianGroup codomain, IntMatrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != coordinate_count(codomain_) || matrix_.cols() != coordinate_count(domain_))
      throw MatrixError("AbHom: matrix shape does not match domain/codomain");
    const auto dm = coordinate_moduli(domain_);
    const auto cm = coordinate_moduli(codomain_);
    // d_i * e_i must map to zero in the codomain.
    for (std::size_t j = 0; j < dm.size(); ++j) {
      if (sgn(dm[j]) == 0) continue;
      for (std::size_t i = 0; i < cm.size(); ++i) {
        Integer x = dm[j] * matrix_(i, j);
        if (sgn(reduce_mod(x, cm[i])) != 0)
          throw std::invalid_argument("AbHom: matrix does not respect domain relations");
      }
    }
    for (std::size_t i = 0; i < cm.size(); ++i)
      for (std::size_t j = 0; j < dm.size(); ++j) matrix_(i, j) = reduce_mod(matrix_(i, j), cm[i]);
  }

  const AbelianGroup& domain() const noexcept { return domain_; }
  const AbelianGroup& codomain() const noexcept { return codomain_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const {
    return reduce_mod(matrix_ * x, coordinate_moduli(codomain_));
  }

 private:
  AbelianGroup domain_;
  AbelianGroup codomain_;
  IntMatrix matrix_;
};

namespace detail {

// Reduce the generator vector v (one value per basis row) to (g, 0, ..., 0) by unimodular row
// operations applied simultaneously to basis; returns g (possibly 0 when v vanishes).
inline Integer gather_gcd(IntVector& v, IntMatrix& basis) {
  const std::size_t k = v.size();
  std::size_t first = k;
  for (std::size_t i = 0; i < k; ++i)
    if (sgn(v[i]) != 0) { first = i; break; }
  if (first == k) return 0;
  if (first != 0) {
    std::swap(v[0], v[first]);
    basis.swap_rows(0, first);
  }
  Integer g, s, t;
  for (std::size_t i = 1; i < k; ++i) {
    if (sgn(v[i]) == 0) continue;
    const Integer a = v[0], b = v[i];
    if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
      Integer q = b / a;
      v[i] = 0;
      basis.add_row_multiple(i, 0, -q);
      continue;
    }
    extended_gcd(a, b, g, s, t);
    const Integer bg = -(b / g), ag = a / g;
    basis.combine_rows(0, i, s, t, bg, ag);
    v[0] = g;
    v[i] = 0;
  }
  return v[0];
}

inline Integer max_abs_entry(const IntMatrix& m) {
  Integer best = 0;
  for (const auto& x : m.entries())
    if (cmpabs(x, best) > 0) best = abs(x);
  return best;
}

}  // namespace detail

/// Basis (as rows) of { x in Z^n : (m x)_i = 0 mod moduli_i for all i }; modulus 0 means exact
/// equality. Processes one equation at a time, so rows can be streamed by the caller.
class CongruenceKernel {
 public:
  explicit CongruenceKernel(std::size_t n) : basis_(IntMatrix::identity(n)), n_(n) {}

  void add_equation(const IntVector& row, const Integer& modulus) {
    if (row.size() != n_) throw MatrixError("CongruenceKernel: equation length mismatch");
    const std::size_t k = basis_.rows();
    if (k == 0) return;
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < n_; ++j)
      if (sgn(row[j]) != 0) support.push_back(j);
    IntVector v(k, Integer(0));
    for (std::size_t i = 0; i < k; ++i)
      for (auto j : support)
        if (sgn(basis_(i, j)) != 0) v[i] += row[j] * basis_(i, j);
    if (sgn(modulus) != 0)
      for (auto& x : v) x = reduce_mod(x, modulus);
    Integer g = detail::gather_gcd(v, basis_);
    if (sgn(g) == 0) return;
    if (sgn(modulus) == 0) {
      exact_ = true;
      basis_ = basis_.submatrix_rows(1, k);
    } else {
      Integer gg;
      mpz_gcd(gg.get_mpz_t(), g.get_mpz_t(), modulus.get_mpz_t());
      mpz_lcm(lcm_.get_mpz_t(), lcm_.get_mpz_t(), modulus.get_mpz_t());
      Integer factor = modulus / gg;
      if (factor != 1)
        for (std::size_t j = 0; j < n_; ++j) basis_(0, j) *= factor;
    }
    if (++since_reduce_ >= kReduceInterval &&
        detail::max_abs_entry(basis_) > (exact_ ? kReduceThreshold : Integer(lcm_ << 20)))
      reduce();
  }

  /// Canonical (Hermite) basis of the kernel.
  IntMatrix basis() const {
    if (!exact_ && n_ > 0) return hermite_basis_modular(basis_, lcm_);
    return row_lattice_basis(basis_);
  }

 private:
  void reduce() {
    basis_ = basis();
    since_reduce_ = 0;
  }

  static constexpr int kReduceInterval = 16;
  inline static const Integer kReduceThreshold = Integer(1) << 40;
  IntMatrix basis_;
  std::size_t n_;
  int since_reduce_ = 0;
  bool exact_ = false;
  // Every processed modulus divides lcm_, so lcm_ * Z^n lies in the kernel while exact_ is false.
  Integer lcm_ = 1;
};

inline IntMatrix congruence_kernel(const IntMatrix& m, const std::vector<Integer>& moduli) {
  CongruenceKernel k(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) k.add_equation(m.row(i), moduli[i]);
  return k.basis();
}

/// Kernel of f restricted to a lattice domain; rows form a basis.
inline IntMatrix kernel_basis(const AbHom& f) {
  if (!is_lattice(f.domain())) throw std::invalid_argument("kernel_basis: domain must be a lattice");
  return congruence_kernel(f.matrix(), coordinate_moduli(f.codomain()));
}

/// Index of a full-rank sublattice given by basis rows; nullopt when the rank is deficient.
inline std::optional<Integer> sublattice_index(const IntMatrix& basis_rows) {
  if (basis_rows.rows() != basis_rows.cols()) return std::nullopt;
  Integer d = abs(basis_rows.determinant());
  if (sgn(d) == 0) return std::nullopt;
  return d;
}

struct Cokernel {
  FinAbGroup torsion;
  std::size_t free_rank = 0;
  /// Maps codomain coordinates to (torsion coordinates, free coordinates).
  IntMatrix projection;

  bool is_finite() const noexcept { return free_rank == 0; }
};

/// Cokernel of a presentation: Z^m modulo the column span of `relations`.
inline Cokernel cokernel_of_relations(const IntMatrix& relations) {
  const std::size_t m = relations.rows();
  auto snf = smith_normal_form(relations, {true, false});
  std::vector<Integer> torsion;
  std::vector<std::size_t> torsion_rows, free_rows;
  const std::size_t k = std::min(relations.rows(), relations.cols());
  for (std::size_t i = 0; i < m; ++i) {
    Integer di = i < k ? Integer(snf.d(i, i)) : Integer(0);
    if (di == 1) continue;
    if (sgn(di) == 0) free_rows.push_back(i);
    else {
      torsion.push_back(di);
      torsion_rows.push_back(i);
    }
  }
  Cokernel c;
  c.torsion = FinAbGroup(torsion);
  c.free_rank = free_rows.size();
  c.projection = IntMatrix(torsion_rows.size() + free_rows.size(), m);
  std::size_t r = 0;
  for (auto rows : {torsion_rows, free_rows})
    for (std::size_t i : rows) {
      for (std::size_t j = 0; j < m; ++j) c.projection(r, j) = snf.u(i, j);
      ++r;
    }
  for (std::size_t i = 0; i < torsion_rows.size(); ++i)
    for (std::size_t j = 0; j < m; ++j)
      c.projection(i, j) = reduce_mod(c.projection(i, j), torsion[i]);
  return c;
}

/// Relation matrix [matrix | diag(nonzero codomain moduli)].
inline IntMatrix with_modulus_columns(const IntMatrix& matrix, const std::vector<Integer>& moduli) {
  std::size_t extra = 0;
  for (const auto& d : moduli)
    if (sgn(d) != 0) ++extra;
  IntMatrix r(matrix.rows(), matrix.cols() + extra);
  for (std::size_t i = 0; i < matrix.rows(); ++i)
    for (std::size_t j = 0; j < matrix.cols(); ++j) r(i, j) = matrix(i, j);
  std::size_t c = matrix.cols();
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (sgn(moduli[i]) != 0) r(i, c++) = moduli[i];
  return r;
}

inline Cokernel cokernel(const AbHom& f) {
  return cokernel_of_relations(with_modulus_columns(f.matrix(), coordinate_moduli(f.codomain())));
}

/// One integral solution of a x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  if (a.rows() != b.size()) throw MatrixError("solve_integer: dimension mismatch");
  auto snf = smith_normal_form(a);
  IntVector y = snf.u * b;
  IntVector z(a.cols(), Integer(0));
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer di = i < k ? Integer(snf.d(i, i)) : Integer(0);
    if (sgn(di) == 0) {
      if (sgn(y[i]) != 0) return std::nullopt;
    } else {
      if (!mpz_divisible_p(y[i].get_mpz_t(), di.get_mpz_t())) return std::nullopt;
      z[i] = y[i] / di;
    }
  }
  return snf.v * z;
}

/// One solution of a x = b modulo per-row moduli (0 = exact).
inline std::optional<IntVector> solve_congruence(const IntMatrix& a, const IntVector& b,
                                                 const std::vector<Integer>& moduli) {
  auto sol = solve_integer(with_modulus_columns(a, moduli), b);
  if (!sol) return std::nullopt;
  sol->resize(a.cols());
  return sol;
}

}  // namespace flatact
