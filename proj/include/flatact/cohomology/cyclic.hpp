#pragma once

#include "flatact/cohomology/bar.hpp"

namespace flatact {

/// A subquotient ker(a mod moduli) / (column span of `image` + coefficient relations), presented
/// through a Hermite basis of the kernel.
class Subquotient {
 public:
  Subquotient(const IntMatrix& a, const IntMatrix& image, const std::vector<Integer>& moduli) : moduli_(moduli) {
    std::vector<Integer> row_moduli(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) row_moduli[i] = moduli.at(i % moduli.size());
    kernel_ = congruence_kernel(a, row_moduli);
    std::vector<IntVector> rel;
    for (std::size_t j = 0; j < image.cols(); ++j) rel.push_back(image.col(j));
    for (std::size_t p = 0; p < moduli.size(); ++p) {
      if (sgn(moduli[p]) == 0) continue;
      IntVector e(moduli.size(), Integer(0));
      e[p] = moduli[p];
      rel.push_back(std::move(e));
    }
    IntMatrix r(kernel_.rows(), rel.size());
    for (std::size_t j = 0; j < rel.size(); ++j) {
      auto y = detail::hermite_coordinates(kernel_, rel[j]);
      if (!y) throw std::logic_error("subquotient: image not contained in kernel");
      for (std::size_t i = 0; i < y->size(); ++i) r(i, j) = (*y)[i];
    }
    auto cok = cokernel_of_relations(r);
    group_ = cok.torsion;
    free_rank_ = cok.free_rank;
    projection_ = cok.projection;
  }

  const FinAbGroup& group() const noexcept { return group_; }
  std::size_t free_rank() const noexcept { return free_rank_; }

  /// Coordinates of a kernel element (torsion part, then free part).
  IntVector coordinates(const IntVector& x) const {
    auto y = detail::hermite_coordinates(kernel_, reduce_mod(x, moduli_));
    if (!y) throw CohomologyError("subquotient: vector is not in the kernel");
    IntVector c = projection_ * *y;
    for (std::size_t i = 0; i < group_.rank(); ++i) c[i] = reduce_mod(c[i], group_.invariant_factors()[i]);
    return c;
  }

 private:
  std::vector<Integer> moduli_;
  IntMatrix kernel_;
  FinAbGroup group_;
  std::size_t free_rank_ = 0;
  IntMatrix projection_;
};

/// Cohomology of a cyclic group <t> of order m through its periodic resolution:
/// H^1 = ker N / (t - 1)M and H^2 = M^t / N M, where N = 1 + t + ... + t^(m-1).
class CyclicCohomology {
 public:
  CyclicCohomology(const IntMatrix& t, std::size_t order, std::vector<Integer> moduli)
      : t_(t), order_(order), moduli_(std::move(moduli)),
        h1_(norm(), t - IntMatrix::identity(t.rows()), moduli_),
        h2_(t - IntMatrix::identity(t.rows()), norm(), moduli_) {}

  /// Uses the element `generator`, which must generate the acting group.
  static CyclicCohomology of(const ZQModule& m, Element generator) {
    const auto& q = m.group();
    if (q.order_of(generator) != q.size()) throw CohomologyError("cyclic cohomology: element does not generate the group");
    return CyclicCohomology(m.matrix(generator), q.size(), m.moduli());
  }

  /// First element of maximal order, if the group is cyclic.
  static std::optional<Element> find_generator(const EnumeratedGroup& q) {
    for (Element g = 0; g < q.size(); ++g)
      if (q.order_of(g) == q.size()) return g;
    return std::nullopt;
  }

  const FinAbGroup& h1() const noexcept { return h1_.group(); }
  const FinAbGroup& h2() const noexcept { return h2_.group(); }

  /// Class of a 2-cocycle of <t>: the element w = sum_{i=1}^{m-1} c(t^i, t) of M^t modulo N M.
  IntVector h2_coordinates(const Cocycle2& c, Element generator) const {
    const auto& q = c.module().group();
    IntVector w(moduli_.size(), Integer(0));
    for (std::size_t i = 1; i < order_; ++i) w = w + c(q.pow(generator, static_cast<long long>(i)), generator);
    auto coords = h2_.coordinates(w);
    coords.resize(h2_.group().rank());
    return coords;
  }

  IntMatrix norm() const {
    IntMatrix n(t_.rows(), t_.cols()), p = IntMatrix::identity(t_.rows());
    for (std::size_t i = 0; i < order_; ++i) {
      n = n + p;
      p = p * t_;
    }
    return n;
  }

 private:
  IntMatrix t_;
  std::size_t order_;
  std::vector<Integer> moduli_;
  Subquotient h1_;
  Subquotient h2_;
};

}  // namespace flatact
