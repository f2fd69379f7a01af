#pragma once

#include "flatact/groups/homomorphism.hpp"
#include "flatact/groups/integral_rep.hpp"

#include <array>

namespace flatact {

class CohomologyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite group Q acting on a lattice Z^n or a finite abelian group A. Coordinates follow the
/// coefficient group; for finite A, coordinate i lives modulo the i-th invariant factor.
class ZQModule {
 public:
  ZQModule() = default;

  /// Throws RepError if a matrix is not an endomorphism of the coefficients or the assignment is
  /// not a homomorphism.
  ZQModule(EnumeratedGroup group, AbelianGroup coefficients, std::vector<IntMatrix> generator_matrices)
      : group_(std::move(group)), coeff_(std::move(coefficients)), gens_(std::move(generator_matrices)) {
    moduli_ = coordinate_moduli(coeff_);
    const std::size_t n = moduli_.size();
    for (std::size_t s = 0; s < gens_.size(); ++s) {
      if (gens_[s].rows() != n || gens_[s].cols() != n) continue;  // reported by extend_action
      if (flatact::is_lattice(coeff_)) {
        if (!gens_[s].is_unimodular())
          throw RepError(RepError::Reason::not_invertible, s,
                         "module: matrix for generator " + std::to_string(s) + " is not unimodular");
      } else {
        try {
          AbHom(coeff_, coeff_, gens_[s]);
        } catch (const std::invalid_argument&) {
          throw RepError(RepError::Reason::ill_defined, s,
                         "module: matrix for generator " + std::to_string(s) + " does not respect the invariant factors");
        }
      }
    }
    mats_ = detail::extend_action(group_, gens_, moduli_);
  }

  static ZQModule lattice(const IntegralRep& rho) {
    return ZQModule(rho.group(), Lattice{rho.dimension()}, rho.generator_matrices());
  }

  static ZQModule trivial(const EnumeratedGroup& group, AbelianGroup coefficients) {
    const std::size_t n = coordinate_count(coefficients);
    return ZQModule(group, std::move(coefficients),
                    std::vector<IntMatrix>(group.generators().size(), IntMatrix::identity(n)));
  }

  const EnumeratedGroup& group() const noexcept { return group_; }
  const AbelianGroup& coefficients() const noexcept { return coeff_; }
  bool is_lattice() const { return flatact::is_lattice(coeff_); }
  std::size_t rank() const noexcept { return moduli_.size(); }
  const std::vector<Integer>& moduli() const noexcept { return moduli_; }
  const std::vector<IntMatrix>& generator_matrices() const noexcept { return gens_; }
  const IntMatrix& matrix(Element g) const { return mats_.at(g); }

  IntVector reduce(const IntVector& v) const { return reduce_mod(v, moduli_); }
  IntVector act(Element g, const IntVector& v) const { return reduce(mats_.at(g) * v); }

  /// The module restricted along an injective homomorphism H -> Q.
  ZQModule restrict_to(const GroupHom& embedding) const {
    if (embedding.codomain().size() != group_.size())
      throw CohomologyError("restriction: embedding codomain is not the acting group");
    if (!embedding.is_injective()) throw CohomologyError("restriction: embedding is not injective");
    std::vector<IntMatrix> gm;
    for (auto h : embedding.domain().generators()) gm.push_back(mats_.at(embedding(h)));
    return ZQModule(embedding.domain(), coeff_, std::move(gm));
  }

  bool is_faithful() const {
    const IntMatrix id = reduce_rows_identity();
    std::size_t fixed = 0;
    for (const auto& m : mats_) fixed += m == id;
    return fixed == 1;
  }

 private:
  IntMatrix reduce_rows_identity() const { return detail::reduce_rows(IntMatrix::identity(rank()), moduli_); }

  EnumeratedGroup group_;
  AbelianGroup coeff_;
  std::vector<IntMatrix> gens_;
  std::vector<IntMatrix> mats_;
  std::vector<Integer> moduli_;
};

/// Normalized 1-cochain: one value per group element, b(1) = 0.
using Cochain1 = std::vector<IntVector>;

/// Normalized 2-cochain c(g,h), stored for every ordered pair (index g*|Q| + h), with
/// c(1,h) = c(g,1) = 0. Construction checks shape and normalization; the cocycle identity is a
/// separate query so invalid data can be reported rather than refused.
class Cocycle2 {
 public:
  Cocycle2() = default;
  Cocycle2(ZQModule module, std::vector<IntVector> values) : module_(std::move(module)), values_(std::move(values)) {
    const std::size_t q = module_.group().size();
    if (values_.size() != q * q)
      throw CohomologyError("cocycle: expected " + std::to_string(q * q) + " values, got " + std::to_string(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i].size() != module_.rank())
        throw CohomologyError("cocycle: value " + std::to_string(i) + " has wrong length");
      values_[i] = module_.reduce(values_[i]);
    }
    const Element e = module_.group().identity();
    for (Element g = 0; g < q; ++g)
      if (!is_zero(values_[e * q + g]) || !is_zero(values_[g * q + e]))
        throw CohomologyError("cocycle: not normalized at element " + std::to_string(g));
  }

  static Cocycle2 zero(const ZQModule& m) {
    const std::size_t q = m.group().size();
    return Cocycle2(m, std::vector<IntVector>(q * q, IntVector(m.rank(), Integer(0))));
  }

  const ZQModule& module() const noexcept { return module_; }
  const IntVector& operator()(Element g, Element h) const { return values_.at(g * module_.group().size() + h); }
  const std::vector<IntVector>& values() const noexcept { return values_; }

  /// First triple (g,h,k) violating g.c(h,k) - c(gh,k) + c(g,hk) - c(g,h) = 0.
  std::optional<std::array<Element, 3>> cocycle_defect() const {
    const auto& q = module_.group();
    for (Element g = 0; g < q.size(); ++g)
      for (Element h = 0; h < q.size(); ++h)
        for (Element k = 0; k < q.size(); ++k) {
          IntVector d = module_.act(g, (*this)(h, k)) - (*this)(q.mul(g, h), k) + (*this)(g, q.mul(h, k)) - (*this)(g, h);
          if (!is_zero(module_.reduce(d))) return std::array<Element, 3>{g, h, k};
        }
    return std::nullopt;
  }
  bool is_cocycle() const { return !cocycle_defect(); }

  friend Cocycle2 operator+(const Cocycle2& a, const Cocycle2& b) {
    Cocycle2 r = a;
    for (std::size_t i = 0; i < r.values_.size(); ++i) r.values_[i] = a.module_.reduce(a.values_[i] + b.values_.at(i));
    return r;
  }
  friend Cocycle2 operator-(const Cocycle2& a, const Cocycle2& b) {
    Cocycle2 r = a;
    for (std::size_t i = 0; i < r.values_.size(); ++i) r.values_[i] = a.module_.reduce(a.values_[i] - b.values_.at(i));
    return r;
  }
  friend bool operator==(const Cocycle2& a, const Cocycle2& b) { return a.values_ == b.values_; }

 private:
  ZQModule module_;
  std::vector<IntVector> values_;
};

/// d1 b (g,h) = g.b(h) - b(gh) + b(g).
inline Cocycle2 coboundary(const ZQModule& m, const Cochain1& b) {
  const auto& q = m.group();
  if (b.size() != q.size()) throw CohomologyError("coboundary: 1-cochain has wrong length");
  if (!is_zero(m.reduce(b[q.identity()]))) throw CohomologyError("coboundary: 1-cochain is not normalized");
  std::vector<IntVector> v(q.size() * q.size());
  for (Element g = 0; g < q.size(); ++g)
    for (Element h = 0; h < q.size(); ++h) v[g * q.size() + h] = m.act(g, b[h]) - b[q.mul(g, h)] + b[g];
  return Cocycle2(m, std::move(v));
}

/// Applies an equivariant coefficient map value-wise; `target` must share the acting group.
inline Cocycle2 pushforward(const Cocycle2& c, const AbHom& f, const ZQModule& target) {
  std::vector<IntVector> v;
  v.reserve(c.values().size());
  for (const auto& x : c.values()) v.push_back(target.reduce(f.matrix() * x));
  return Cocycle2(target, std::move(v));
}

/// Pullback along a group homomorphism H -> Q, with the module restricted accordingly.
inline Cocycle2 pullback(const Cocycle2& c, const GroupHom& f, const ZQModule& restricted) {
  const auto& h = f.domain();
  std::vector<IntVector> v(h.size() * h.size());
  for (Element a = 0; a < h.size(); ++a)
    for (Element b = 0; b < h.size(); ++b) v[a * h.size() + b] = c(f(a), f(b));
  return Cocycle2(restricted, std::move(v));
}

}  // namespace flatact
