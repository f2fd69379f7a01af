#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace flatact {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

inline int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

/// Error raised for dimension mismatches and malformed matrix text.
class MatrixError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over the integers with exact arithmetic.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
      throw MatrixError("IntMatrix: entry count does not match shape");
    }
  }
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw MatrixError("IntMatrix: ragged initializer");
      for (long v : r) entries_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Integer>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static IntMatrix column(const IntVector& v) { return IntMatrix(v.size(), 1, v); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return entries_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  const std::vector<Integer>& entries() const noexcept { return entries_; }

  IntVector row(std::size_t i) const {
    return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  IntVector col(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Integer& x) { return sgn(x) == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(target, j) += factor * (*this)(source, j);
  }
  void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor) {
    if (sgn(factor) == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, target) += factor * (*this)(i, source);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }
  /// Replace rows a, b by (p*a + q*b, r*a + s*b).
  void combine_rows(std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                    const Integer& r, const Integer& s) {
    Integer x, y;
    for (std::size_t j = 0; j < cols_; ++j) {
      x = p * (*this)(a, j) + q * (*this)(b, j);
      y = r * (*this)(a, j) + s * (*this)(b, j);
      (*this)(a, j).swap(x);
      (*this)(b, j).swap(y);
    }
  }
  void combine_cols(std::size_t a, std::size_t b, const Integer& p, const Integer& q,
                    const Integer& r, const Integer& s) {
    Integer x, y;
    for (std::size_t i = 0; i < rows_; ++i) {
      x = p * (*this)(i, a) + q * (*this)(i, b);
      y = r * (*this)(i, a) + s * (*this)(i, b);
      (*this)(i, a).swap(x);
      (*this)(i, b).swap(y);
    }
  }

  IntMatrix submatrix_rows(std::size_t begin, std::size_t end) const {
    IntMatrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
  }
  IntMatrix submatrix_cols(std::size_t begin, std::size_t end) const {
    IntMatrix m(rows_, end - begin);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
    return m;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw MatrixError("IntMatrix: product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) throw MatrixError("IntMatrix: vector shape mismatch");
    IntVector r(a.rows_, Integer(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        if (sgn(a(i, k)) != 0) r[i] += a(i, k) * v[k];
    return r;
  }
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MatrixError("IntMatrix: sum shape mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.entries_.size(); ++i) c.entries_[i] += b.entries_[i];
    return c;
  }
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw MatrixError("IntMatrix: difference shape mismatch");
    IntMatrix c = a;
    for (std::size_t i = 0; i < c.entries_.size(); ++i) c.entries_[i] -= b.entries_[i];
    return c;
  }
  IntMatrix operator-() const {
    IntMatrix c = *this;
    for (auto& x : c.entries_) x = -x;
    return c;
  }

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Integer determinant() const {
    if (!is_square()) throw MatrixError("IntMatrix: determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (sgn(m(k, k)) == 0) {
        std::size_t p = k + 1;
        while (p < n && sgn(m(p, k)) == 0) ++p;
        if (p == n) return 0;
        m.swap_rows(k, p);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
          mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
        }
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  bool is_unimodular() const {
    if (!is_square()) return false;
    Integer d = determinant();
    return d == 1 || d == -1;
  }

  std::string to_string() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }

  /// Text format: "rows cols" then row-major whitespace-separated integers.
  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << m.rows_ << ' ' << m.cols_ << '\n';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      for (std::size_t j = 0; j < m.cols_; ++j) {
        if (j) os << ' ';
        os << m(i, j);
      }
      os << '\n';
    }
    return os;
  }

  static IntMatrix parse(std::istream& is) {
    long long r = -1, c = -1;
    if (!(is >> r >> c) || r < 0 || c < 0) throw MatrixError("matrix: expected header 'rows cols'");
    IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    std::string tok;
    for (auto& x : m.entries_) {
      if (!(is >> tok)) throw MatrixError("matrix: too few entries");
      if (x.set_str(tok, 10) != 0) throw MatrixError("matrix: bad integer '" + tok + "'");
    }
    return m;
  }
  static IntMatrix parse(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

inline IntVector operator+(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw MatrixError("vector sum shape mismatch");
  IntVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline IntVector operator-(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw MatrixError("vector difference shape mismatch");
  IntVector r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}
inline IntVector operator-(const IntVector& a) {
  IntVector r = a;
  for (auto& x : r) x = -x;
  return r;
}

inline bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

inline IntVector int_vector(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

/// Least non-negative residue; modulus 0 leaves the value untouched.
inline Integer reduce_mod(const Integer& x, const Integer& m) {
  if (sgn(m) == 0) return x;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Componentwise reduction against a list of moduli (0 = free coordinate).
inline IntVector reduce_mod(const IntVector& v, const std::vector<Integer>& moduli) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = reduce_mod(v[i], moduli[i]);
  return r;
}

/// Quotient rounded to nearest (ties toward -inf); keeps remainders in [-|b|/2, |b|/2].
inline Integer round_div(const Integer& a, const Integer& b) {
  Integer twice = 2 * a + abs(b);
  Integer q;
  Integer denom = 2 * b;
  if (sgn(b) < 0) {
    twice = -2 * a + abs(b);
    denom = -denom;
  }
  mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), denom.get_mpz_t());
  return q;
}

}  // namespace flatact
