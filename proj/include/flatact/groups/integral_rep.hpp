#pragma once

#include "flatact/groups/subgroups.hpp"
#include "flatact/errors.hpp"
#include "flatact/zlinalg/lattice.hpp"

#include <map>

namespace flatact {

class RepError : public std::invalid_argument {
 public:
  enum class Reason { shape, not_invertible, ill_defined, not_homomorphism };
  RepError(Reason reason, std::size_t generator, const std::string& what)
      : std::invalid_argument(what), reason_(reason), generator_(generator) {}
  Reason reason() const noexcept { return reason_; }
  /// Generator at fault (for not_homomorphism, the generator whose edge closed the failing cycle).
  std::size_t generator() const noexcept { return generator_; }

 private:
  Reason reason_;
  std::size_t generator_;
};

namespace detail {

inline IntMatrix reduce_rows(IntMatrix m, const std::vector<Integer>& moduli) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (sgn(moduli[i]) != 0)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = reduce_mod(m(i, j), moduli[i]);
  return m;
}

// Extends generator matrices to every element along the Cayley graph, with row i read modulo
// moduli[i] (0 = exact), and checks every edge so the result is a homomorphism.
inline std::vector<IntMatrix> extend_action(const EnumeratedGroup& g, const std::vector<IntMatrix>& gens,
                                            const std::vector<Integer>& moduli) {
  const std::size_t n = moduli.size();
  if (gens.size() != g.generators().size())
    throw RepError(RepError::Reason::shape, gens.size(),
                   "representation: expected " + std::to_string(g.generators().size()) + " generator matrices, got " +
                       std::to_string(gens.size()));
  std::vector<IntMatrix> red;
  for (std::size_t s = 0; s < gens.size(); ++s) {
    if (gens[s].rows() != n || gens[s].cols() != n)
      throw RepError(RepError::Reason::shape, s, "representation: matrix for generator " + std::to_string(s) +
                                                     " is not " + std::to_string(n) + "x" + std::to_string(n));
    red.push_back(reduce_rows(gens[s], moduli));
  }
  std::vector<IntMatrix> mats(g.size());
  std::vector<char> have(g.size(), 0);
  mats[g.identity()] = reduce_rows(IntMatrix::identity(n), moduli);
  have[g.identity()] = 1;
  std::vector<Element> queue{g.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const Element x = queue[q];
    for (std::size_t s = 0; s < red.size(); ++s) {
      const Element y = g.mul(x, g.generators()[s]);
      IntMatrix m = reduce_rows(mats[x] * red[s], moduli);
      if (!have[y]) {
        mats[y] = std::move(m);
        have[y] = 1;
        queue.push_back(y);
      } else if (mats[y] != m) {
        throw RepError(RepError::Reason::not_homomorphism, s,
                       "representation: generator images violate a group relation (detected at generator " +
                           std::to_string(s) + ")");
      }
    }
  }
  return mats;
}

}  // namespace detail

/// Integral representation rho: Q -> GL_n(Z) of an enumerated group, given on generators and
/// cached for every element.
class IntegralRep {
 public:
  IntegralRep() = default;

  /// Throws RepError when a matrix is not unimodular or the assignment is not a homomorphism.
  IntegralRep(EnumeratedGroup group, std::size_t dimension, std::vector<IntMatrix> generator_matrices)
      : group_(std::move(group)), n_(dimension), gens_(std::move(generator_matrices)) {
    for (std::size_t s = 0; s < gens_.size(); ++s)
      if (gens_[s].rows() == n_ && gens_[s].cols() == n_ && !gens_[s].is_unimodular())
        throw RepError(RepError::Reason::not_invertible, s,
                       "representation: matrix for generator " + std::to_string(s) + " is not unimodular");
    mats_ = detail::extend_action(group_, gens_, std::vector<Integer>(n_, Integer(0)));
  }

  const EnumeratedGroup& group() const noexcept { return group_; }
  std::size_t dimension() const noexcept { return n_; }
  const std::vector<IntMatrix>& generator_matrices() const noexcept { return gens_; }
  const IntMatrix& operator()(Element x) const { return mats_.at(x); }
  const std::vector<IntMatrix>& matrices() const noexcept { return mats_; }

 private:
  EnumeratedGroup group_;
  std::size_t n_ = 0;
  std::vector<IntMatrix> gens_;
  std::vector<IntMatrix> mats_;
};

/// The finite group generated by unimodular matrices, as a table group (elements sorted by entry
/// list, generators in the given order) with its defining representation.
inline IntegralRep matrix_group(const std::vector<IntMatrix>& generators, std::size_t dimension,
                                std::size_t max_order = 20000) {
  const IntMatrix id = IntMatrix::identity(dimension);
  auto key = [](const IntMatrix& m) { return m.entries(); };
  std::map<std::vector<Integer>, IntMatrix> seen{{key(id), id}};
  std::vector<IntMatrix> queue{id};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (const auto& s : generators) {
      IntMatrix y = queue[q] * s;
      if (seen.emplace(key(y), y).second) {
        if (seen.size() > max_order)
          throw BoundExceeded("matrix group: order exceeds bound " + std::to_string(max_order));
        queue.push_back(std::move(y));
      }
    }
  std::vector<IntMatrix> elems;
  std::map<std::vector<Integer>, Element> index;
  for (auto& [k, m] : seen) {
    index.emplace(k, static_cast<Element>(elems.size()));
    elems.push_back(m);
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(key(elems[a] * elems[b]));
  std::vector<Element> gens;
  for (const auto& s : generators) gens.push_back(index.at(key(s)));
  return IntegralRep(EnumeratedGroup::from_table(table, gens), dimension, generators);
}

/// Elements acting as the identity matrix.
inline std::vector<Element> rep_kernel(const IntegralRep& rho) {
  const IntMatrix id = IntMatrix::identity(rho.dimension());
  std::vector<Element> out;
  for (std::size_t x = 0; x < rho.group().size(); ++x)
    if (rho(static_cast<Element>(x)) == id) out.push_back(static_cast<Element>(x));
  return out;
}

inline bool rep_is_faithful(const IntegralRep& rho) { return rep_kernel(rho).size() == 1; }

}  // namespace flatact
