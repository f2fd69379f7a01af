#pragma once

#include "flatact/zlinalg/int_matrix.hpp"

#include <optional>

namespace flatact {

/// u * source * v = d, with d diagonal, non-negative, and d(i,i) | d(i+1,i+1).
struct SmithDecomposition {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
  IntMatrix source;

  std::size_t rank() const {
    std::size_t r = 0;
    const std::size_t n = std::min(d.rows(), d.cols());
    while (r < n && sgn(d(r, r)) != 0) ++r;
    return r;
  }

  /// Diagonal entries d(0,0), ..., d(k-1,k-1) for k = min(rows, cols).
  std::vector<Integer> diagonal() const {
    std::vector<Integer> out;
    const std::size_t n = std::min(d.rows(), d.cols());
    for (std::size_t i = 0; i < n; ++i) out.push_back(d(i, i));
    return out;
  }
};

struct SmithOptions {
  bool left = true;   // accumulate u
  bool right = true;  // accumulate v
};

namespace detail {

inline void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Locate the nonzero entry of least absolute value in the trailing block starting at (t, t);
// ties resolve to the lowest row, then lowest column.
inline bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pr, std::size_t& pc) {
  bool found = false;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& x = d(i, j);
      if (sgn(x) == 0) continue;
      if (!found || cmpabs(x, d(pr, pc)) < 0) {
        pr = i;
        pc = j;
        found = true;
        if (x == 1 || x == -1) return true;
      }
    }
  return found;
}

}  // namespace detail

/// Smith normal form with minimal-absolute-value pivoting. Deterministic for a given input.
inline SmithDecomposition smith_normal_form(const IntMatrix& m, SmithOptions opts = {}) {
  SmithDecomposition out;
  out.source = m;
  IntMatrix d = m;
  IntMatrix u = opts.left ? IntMatrix::identity(m.rows()) : IntMatrix();
  IntMatrix v = opts.right ? IntMatrix::identity(m.cols()) : IntMatrix();
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);

  Integer q;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t pr = t, pc = t;
    if (!detail::find_min_pivot(d, t, pr, pc)) break;
    for (;;) {
      d.swap_rows(t, pr);
      if (opts.left) u.swap_rows(t, pr);
      d.swap_cols(t, pc);
      if (opts.right) v.swap_cols(t, pc);

      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        q = round_div(d(i, t), d(t, t));
        d.add_row_multiple(i, t, -q);
        if (opts.left) u.add_row_multiple(i, t, -q);
        if (sgn(d(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        q = round_div(d(t, j), d(t, t));
        d.add_col_multiple(j, t, -q);
        if (opts.right) v.add_col_multiple(j, t, -q);
        if (sgn(d(t, j)) != 0) dirty = true;
      }
      if (dirty) {
        // A smaller remainder now exists in row t or column t.
        pr = t;
        pc = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (sgn(d(i, t)) != 0 && cmpabs(d(i, t), d(pr, pc)) < 0) { pr = i; pc = t; }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (sgn(d(t, j)) != 0 && cmpabs(d(t, j), d(pr, pc)) < 0) { pr = t; pc = j; }
        continue;
      }
      // Row and column are clear; enforce divisibility of the trailing block.
      std::size_t bad_row = rows;
      for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row == rows) break;
      d.add_row_multiple(t, bad_row, Integer(1));
      if (opts.left) u.add_row_multiple(t, bad_row, Integer(1));
      pr = t;
      pc = t;
    }
    if (sgn(d(t, t)) < 0) {
      d.negate_row(t);
      if (opts.left) u.negate_row(t);
    }
  }
  out.d = std::move(d);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

struct HermiteDecomposition {
  IntMatrix h;
  IntMatrix u;
};

/// Row-style Hermite normal form: u * m = h, u unimodular, h echelon with positive pivots and
/// entries above each pivot reduced into [0, pivot).
inline HermiteDecomposition hermite_normal_form(const IntMatrix& m, bool track_u = true) {
  IntMatrix h = m;
  IntMatrix u = track_u ? IntMatrix::identity(m.rows()) : IntMatrix();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer g, s, t, q;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(h(i, j)) == 0) continue;
      if (sgn(h(r, j)) == 0) {
        h.swap_rows(r, i);
        if (track_u) u.swap_rows(r, i);
        continue;
      }
      const Integer a = h(r, j), b = h(i, j);
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        q = b / a;
        h.add_row_multiple(i, r, -q);
        if (track_u) u.add_row_multiple(i, r, -q);
        continue;
      }
      detail::extended_gcd(a, b, g, s, t);
      const Integer bg = -(b / g), ag = a / g;
      h.combine_rows(r, i, s, t, bg, ag);
      if (track_u) u.combine_rows(r, i, s, t, bg, ag);
    }
    if (sgn(h(r, j)) == 0) continue;
    if (sgn(h(r, j)) < 0) {
      h.negate_row(r);
      if (track_u) u.negate_row(r);
    }
    for (std::size_t k = 0; k < r; ++k) {
      if (sgn(h(k, j)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), h(k, j).get_mpz_t(), h(r, j).get_mpz_t());
      h.add_row_multiple(k, r, -q);
      if (track_u) u.add_row_multiple(k, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u)};
}

/// Nonzero rows of the Hermite form: a canonical basis of the row lattice.
inline IntMatrix row_lattice_basis(const IntMatrix& generators) {
  IntMatrix h = hermite_normal_form(generators, false).h;
  std::size_t r = 0;
  while (r < h.rows()) {
    bool zero = true;
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (sgn(h(r, j)) != 0) { zero = false; break; }
    if (zero) break;
    ++r;
  }
  return h.submatrix_rows(0, r);
}

/// Hermite basis (square, upper triangular, positive pivots, entries above each pivot reduced)
/// of the lattice spanned by the rows of `generators` together with d * Z^n, for d > 0. All
/// intermediate entries stay below d, so this avoids the coefficient growth of the plain form.
inline IntMatrix hermite_basis_modular(const IntMatrix& generators, const Integer& d) {
  const std::size_t n = generators.cols();
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < generators.rows(); ++i) {
    IntVector r = generators.row(i);
    for (auto& x : r) x = reduce_mod(x, d);
    if (!is_zero(r)) rows.push_back(std::move(r));
  }
  IntMatrix h(n, n);
  Integer g, s, t, q;
  for (std::size_t j = 0; j < n; ++j) {
    // Pivot row starts as d * e_j; fold every remaining row into it.
    IntVector p(n, Integer(0));
    p[j] = d;
    for (auto& r : rows) {
      if (sgn(r[j]) == 0) continue;
      detail::extended_gcd(p[j], r[j], g, s, t);
      const Integer a = p[j] / g, b = r[j] / g;
      for (std::size_t k = j; k < n; ++k) {
        Integer x = s * p[k] + t * r[k];
        Integer y = a * r[k] - b * p[k];
        p[k] = reduce_mod(x, d);
        r[k] = reduce_mod(y, d);
      }
      p[j] = g;
      r[j] = 0;
    }
    // (d / p_j) * p has j-entry d: keep its tail so that d * e_j stays in the span.
    IntVector tail(n, Integer(0));
    const Integer m = d / p[j];
    for (std::size_t k = j + 1; k < n; ++k) tail[k] = reduce_mod(m * p[k], d);
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IntVector& r) { return is_zero(r); }), rows.end());
    if (!is_zero(tail)) rows.push_back(std::move(tail));
    for (std::size_t k = 0; k < n; ++k) h(j, k) = p[k];
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (sgn(h(i, j)) == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(j, j).get_mpz_t());
      if (sgn(q) != 0) h.add_row_multiple(i, j, -q);
    }
  return h;
}

}  // namespace flatact
