#pragma once

#include "flatact/cohomology/module.hpp"
#include "flatact/errors.hpp"

namespace flatact {

struct CohomologyBounds {
  std::size_t max_group_order = 16;
  std::size_t max_rank = 8;
};

namespace detail {

// Positions of the non-identity elements in normalized cochain coordinates.
struct BarIndex {
  std::vector<long> pos;
  std::vector<Element> elements;
  std::size_t r = 0;

  explicit BarIndex(const ZQModule& m) : pos(m.group().size(), -1), r(m.rank()) {
    for (Element g = 0; g < m.group().size(); ++g)
      if (g != m.group().identity()) {
        pos[g] = static_cast<long>(elements.size());
        elements.push_back(g);
      }
  }
  std::size_t q1() const { return elements.size(); }
  std::size_t c1(Element g, std::size_t i) const { return static_cast<std::size_t>(pos[g]) * r + i; }
  std::size_t c2(Element g, Element h, std::size_t i) const {
    return (static_cast<std::size_t>(pos[g]) * q1() + static_cast<std::size_t>(pos[h])) * r + i;
  }
};

// Solves x = sum y_i K_i for K in row Hermite form; nullopt when x is outside the row lattice.
inline std::optional<IntVector> hermite_coordinates(const IntMatrix& k, IntVector x) {
  IntVector y(k.rows(), Integer(0));
  std::size_t col = 0;
  for (std::size_t i = 0; i < k.rows(); ++i) {
    while (col < k.cols() && sgn(k(i, col)) == 0) ++col;
    if (col == k.cols()) break;
    if (!mpz_divisible_p(x[col].get_mpz_t(), k(i, col).get_mpz_t())) return std::nullopt;
    y[i] = x[col] / k(i, col);
    if (sgn(y[i]) != 0)
      for (std::size_t j = col; j < k.cols(); ++j)
        if (sgn(k(i, j)) != 0) x[j] -= y[i] * k(i, j);
  }
  if (!is_zero(x)) return std::nullopt;
  return y;
}

inline void check_bounds(const ZQModule& m, const CohomologyBounds& b) {
  if (m.group().size() > b.max_group_order)
    throw BoundExceeded("cohomology: group order " + std::to_string(m.group().size()) + " exceeds bar-resolution bound " +
                        std::to_string(b.max_group_order) + "; for cyclic groups use the periodic resolution");
  if (m.rank() > b.max_rank)
    throw BoundExceeded("cohomology: module rank " + std::to_string(m.rank()) + " exceeds bound " +
                        std::to_string(b.max_rank));
}

}  // namespace detail

/// H^k(Q; M) for k = 1, 2 on normalized bar cochains, presented as a finite abelian group with
/// a coordinate map on cocycles, class representatives and coboundary witnesses.
class CohomologyGroup {
 public:
  int degree() const noexcept { return degree_; }
  const ZQModule& module() const noexcept { return module_; }
  const FinAbGroup& group() const noexcept { return group_; }
  /// Always zero for a finite group; kept to make the presentation explicit.
  std::size_t free_rank() const noexcept { return 0; }

  // --- cochain coordinates ---
  IntVector flatten(const Cocycle2& c) const {
    require_degree(2);
    IntVector x(index_.q1() * index_.q1() * index_.r, Integer(0));
    for (auto g : index_.elements)
      for (auto h : index_.elements)
        for (std::size_t i = 0; i < index_.r; ++i) x[index_.c2(g, h, i)] = c(g, h)[i];
    return x;
  }
  Cocycle2 unflatten2(const IntVector& x) const {
    require_degree(2);
    const auto& q = module_.group();
    std::vector<IntVector> v(q.size() * q.size(), IntVector(index_.r, Integer(0)));
    for (auto g : index_.elements)
      for (auto h : index_.elements)
        for (std::size_t i = 0; i < index_.r; ++i) v[g * q.size() + h][i] = x[index_.c2(g, h, i)];
    return Cocycle2(module_, std::move(v));
  }
  IntVector flatten(const Cochain1& b) const {
    IntVector x(index_.q1() * index_.r, Integer(0));
    for (auto g : index_.elements)
      for (std::size_t i = 0; i < index_.r; ++i) x[index_.c1(g, i)] = b.at(g)[i];
    return x;
  }
  Cochain1 unflatten1(const IntVector& x) const {
    Cochain1 b(module_.group().size(), IntVector(index_.r, Integer(0)));
    for (auto g : index_.elements)
      for (std::size_t i = 0; i < index_.r; ++i) b[g][i] = x[index_.c1(g, i)];
    for (auto& v : b) v = module_.reduce(v);
    return b;
  }

  // --- class coordinates ---
  /// Coordinates of the class of a flat cocycle; throws if it is not a cocycle.
  IntVector coordinates_of_flat(const IntVector& x) const {
    auto y = detail::hermite_coordinates(cocycles_, module_reduce_flat(x));
    if (!y) throw CohomologyError("cohomology: cochain is not a cocycle");
    return group_.reduce(projection_ * *y);
  }
  IntVector coordinates(const Cocycle2& c) const { return coordinates_of_flat(flatten(c)); }
  IntVector coordinates(const Cochain1& b) const {
    require_degree(1);
    return coordinates_of_flat(flatten(b));
  }

  /// A flat cocycle in the class with the given coordinates.
  IntVector representative_flat(const IntVector& coords) const {
    if (coords.size() != group_.rank()) throw CohomologyError("cohomology: coordinate length mismatch");
    auto y = solve_congruence(projection_, coords, group_.invariant_factors());
    if (!y) throw std::logic_error("cohomology: projection is not onto");
    return module_reduce_flat(cocycles_.transpose() * *y);
  }
  Cocycle2 representative(const IntVector& coords) const { return unflatten2(representative_flat(coords)); }
  Cocycle2 generator_representative(std::size_t i) const {
    IntVector e(group_.rank(), Integer(0));
    e.at(i) = 1;
    return representative(e);
  }

  /// For degree 2: b with d1 b = c. For degree 1: the coboundary witness is a module element a
  /// with b(g) = g.a - a, returned as a one-entry cochain.
  std::optional<IntVector> coboundary_witness_flat(const IntVector& x) const {
    std::vector<Integer> mods;
    for (std::size_t p = 0; p < x.size(); ++p) mods.push_back(module_.moduli()[p % index_.r]);
    auto sol = solve_congruence(previous_, x, mods);
    if (!sol) return std::nullopt;
    return sol;
  }
  std::optional<Cochain1> coboundary_witness(const Cocycle2& c) const {
    auto w = coboundary_witness_flat(flatten(c));
    if (!w) return std::nullopt;
    return unflatten1(*w);
  }

  const IntMatrix& cocycle_basis() const noexcept { return cocycles_; }
  const IntMatrix& differential_in() const noexcept { return previous_; }

 private:
  friend CohomologyGroup h1(const ZQModule&, const CohomologyBounds&);
  friend CohomologyGroup h2(const ZQModule&, const CohomologyBounds&);

  CohomologyGroup(int degree, ZQModule m) : degree_(degree), module_(std::move(m)), index_(module_) {}

  void require_degree(int d) const {
    if (degree_ != d) throw CohomologyError("cohomology: wrong cochain degree");
  }

  IntVector module_reduce_flat(IntVector x) const {
    for (std::size_t p = 0; p < x.size(); ++p) x[p] = reduce_mod(x[p], module_.moduli()[p % index_.r]);
    return x;
  }

  // Quotients the cocycle lattice (containing the coefficient relations) by coboundaries.
  void finish(const IntMatrix& cocycles, IntMatrix previous) {
    cocycles_ = cocycles;
    previous_ = std::move(previous);
    std::vector<IntVector> rel;
    for (std::size_t j = 0; j < previous_.cols(); ++j) rel.push_back(previous_.col(j));
    const std::size_t n = previous_.rows();
    for (std::size_t p = 0; p < n; ++p) {
      const Integer& d = module_.moduli()[p % index_.r];
      if (sgn(d) == 0) continue;
      IntVector e(n, Integer(0));
      e[p] = d;
      rel.push_back(std::move(e));
    }
    IntMatrix r(cocycles_.rows(), rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j) {
      auto y = detail::hermite_coordinates(cocycles_, rel[j]);
      if (!y) throw std::logic_error("cohomology: coboundary outside the cocycle lattice");
      for (std::size_t i = 0; i < y->size(); ++i) r(i, j) = (*y)[i];
    }
    auto cok = cokernel_of_relations(r);
    if (cok.free_rank != 0) throw std::logic_error("cohomology: infinite cohomology of a finite group");
    group_ = cok.torsion;
    projection_ = cok.projection;
  }

  int degree_ = 0;
  ZQModule module_;
  detail::BarIndex index_;
  FinAbGroup group_;
  IntMatrix cocycles_;
  IntMatrix projection_;
  IntMatrix previous_;
};

/// Matrix of d1 on normalized cochains.
inline IntMatrix bar_d1(const ZQModule& m) {
  detail::BarIndex ix(m);
  const auto& q = m.group();
  const std::size_t r = ix.r;
  IntMatrix d(ix.q1() * ix.q1() * r, ix.q1() * r);
  for (auto g : ix.elements)
    for (auto h : ix.elements) {
      const Element gh = q.mul(g, h);
      for (std::size_t i = 0; i < r; ++i) {
        const std::size_t row = ix.c2(g, h, i);
        for (std::size_t j = 0; j < r; ++j) d(row, ix.c1(h, j)) += m.matrix(g)(i, j);
        if (gh != q.identity()) d(row, ix.c1(gh, i)) -= 1;
        d(row, ix.c1(g, i)) += 1;
      }
    }
  return d;
}

/// Matrix of d0: a -> (g -> g.a - a).
inline IntMatrix bar_d0(const ZQModule& m) {
  detail::BarIndex ix(m);
  IntMatrix d(ix.q1() * ix.r, ix.r);
  for (auto g : ix.elements)
    for (std::size_t i = 0; i < ix.r; ++i)
      for (std::size_t j = 0; j < ix.r; ++j) d(ix.c1(g, i), j) = m.matrix(g)(i, j) - (i == j ? 1 : 0);
  return d;
}

/// Row of d2 for the triple (g,h,k) and coordinate i, on normalized 2-cochains.
inline IntVector bar_d2_row(const ZQModule& m, const detail::BarIndex& ix, Element g, Element h, Element k, std::size_t i) {
  const auto& q = m.group();
  IntVector row(ix.q1() * ix.q1() * ix.r, Integer(0));
  for (std::size_t j = 0; j < ix.r; ++j) row[ix.c2(h, k, j)] += m.matrix(g)(i, j);
  const Element gh = q.mul(g, h), hk = q.mul(h, k);
  if (gh != q.identity()) row[ix.c2(gh, k, i)] -= 1;
  if (hk != q.identity()) row[ix.c2(g, hk, i)] += 1;
  row[ix.c2(g, h, i)] -= 1;
  return row;
}

/// Full d2 matrix (for tests; h2 streams the rows instead).
inline IntMatrix bar_d2(const ZQModule& m) {
  detail::BarIndex ix(m);
  const std::size_t n = ix.q1() * ix.q1() * ix.r;
  IntMatrix d(ix.q1() * ix.q1() * ix.q1() * ix.r, n);
  std::size_t row = 0;
  for (auto g : ix.elements)
    for (auto h : ix.elements)
      for (auto k : ix.elements)
        for (std::size_t i = 0; i < ix.r; ++i, ++row) {
          auto v = bar_d2_row(m, ix, g, h, k, i);
          for (std::size_t j = 0; j < n; ++j) d(row, j) = v[j];
        }
  return d;
}

inline CohomologyGroup h2(const ZQModule& m, const CohomologyBounds& bounds = {}) {
  detail::check_bounds(m, bounds);
  CohomologyGroup out(2, m);
  const auto& ix = out.index_;
  CongruenceKernel ker(ix.q1() * ix.q1() * ix.r);
  for (auto g : ix.elements)
    for (auto h : ix.elements)
      for (auto k : ix.elements)
        for (std::size_t i = 0; i < ix.r; ++i) ker.add_equation(bar_d2_row(m, ix, g, h, k, i), m.moduli()[i]);
  out.finish(ker.basis(), bar_d1(m));
  return out;
}

inline CohomologyGroup h1(const ZQModule& m, const CohomologyBounds& bounds = {}) {
  detail::check_bounds(m, bounds);
  CohomologyGroup out(1, m);
  const auto& ix = out.index_;
  const IntMatrix d1 = bar_d1(m);
  std::vector<Integer> mods;
  for (std::size_t p = 0; p < d1.rows(); ++p) mods.push_back(m.moduli()[p % ix.r]);
  out.finish(congruence_kernel(d1, mods), bar_d0(m));
  return out;
}

}  // namespace flatact
