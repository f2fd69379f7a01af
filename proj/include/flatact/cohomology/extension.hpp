#pragma once

#include "flatact/cohomology/module.hpp"

#include <map>

namespace flatact {

class ExtensionError : public std::invalid_argument {
 public:
  enum class Reason { not_in_group, not_normal, not_abelian, identification };
  ExtensionError(Reason reason, const std::string& what) : std::invalid_argument(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// 1 -> A -> G -> Q -> 1 with A given by generators a_i identified with the standard basis of a
/// finite abelian group, and Q = G/A acting on A by conjugation.
class Extension {
 public:
  Extension(EnumeratedGroup g, std::vector<Element> a_generators, FinAbGroup a)
      : g_(std::move(g)), a_gens_(std::move(a_generators)), a_(std::move(a)) {
    for (auto x : a_gens_)
      if (x >= g_.size()) throw ExtensionError(ExtensionError::Reason::not_in_group, "extension: generator outside G");
    if (a_gens_.size() != a_.rank())
      throw ExtensionError(ExtensionError::Reason::identification,
                           "extension: " + std::to_string(a_gens_.size()) + " generators for " +
                               std::to_string(a_.rank()) + " invariant factors");
    if (!g_.is_abelian_subset(a_gens_)) throw ExtensionError(ExtensionError::Reason::not_abelian, "extension: A is not abelian");
    if (a_.order() > static_cast<unsigned long>(g_.size()))
      throw ExtensionError(ExtensionError::Reason::identification, "extension: A is larger than G");
    mask_ = g_.closure_mask(a_gens_);
    coords_.assign(g_.size(), {});
    std::size_t count = 0;
    for (const auto& x : a_.elements()) {
      Element e = g_.identity();
      for (std::size_t i = 0; i < x.size(); ++i) e = g_.mul(e, g_.pow(a_gens_[i], x[i].get_si()));
      if (!coords_[e].empty() || (e == g_.identity() && count > 0))
        throw ExtensionError(ExtensionError::Reason::identification,
                             "extension: generators do not match the invariant factors (coordinates collide)");
      coords_[e] = x;
      ++count;
    }
    for (std::size_t i = 0; i < a_gens_.size(); ++i)
      if (g_.pow(a_gens_[i], a_.invariant_factors()[i].get_si()) != g_.identity())
        throw ExtensionError(ExtensionError::Reason::identification,
                             "extension: generator " + std::to_string(i) + " order does not divide its invariant factor");
    std::size_t members = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
    if (members != count)
      throw ExtensionError(ExtensionError::Reason::identification, "extension: identification is not bijective");
    // Checked after the identification so that an inconsistent identification is reported as such.
    if (!is_normal(g_, a_gens_)) throw ExtensionError(ExtensionError::Reason::not_normal, "extension: A is not normal in G");
    quotient_ = quotient(g_, mask_);
    std::vector<IntMatrix> act;
    for (auto s : g_.generators()) {
      IntMatrix m(a_.rank(), a_.rank());
      for (std::size_t j = 0; j < a_gens_.size(); ++j) {
        const auto& c = coords_[g_.conjugate(a_gens_[j], s)];
        for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
      }
      act.push_back(std::move(m));
    }
    module_ = ZQModule(quotient_.group, a_, std::move(act));
  }

  const EnumeratedGroup& group() const noexcept { return g_; }
  const std::vector<Element>& a_generators() const noexcept { return a_gens_; }
  const FinAbGroup& a() const noexcept { return a_; }
  const std::vector<char>& a_mask() const noexcept { return mask_; }
  const EnumeratedGroup& q() const noexcept { return quotient_.group; }
  /// G -> Q.
  Element project(Element x) const { return quotient_.projection.at(x); }
  const std::vector<Element>& projection() const noexcept { return quotient_.projection; }
  /// Q acting on A by conjugation.
  const ZQModule& module() const noexcept { return module_; }
  /// A-coordinates of an element of A.
  const IntVector& coordinates(Element a) const {
    if (!mask_.at(a)) throw ExtensionError(ExtensionError::Reason::not_in_group, "extension: element not in A");
    return coords_[a];
  }

  /// Least element of each coset, except s(1) = 1.
  std::vector<Element> least_section() const {
    const Element unset = static_cast<Element>(g_.size());
    std::vector<Element> s(q().size(), unset);
    for (Element x = 0; x < g_.size(); ++x)
      if (s[project(x)] == unset) s[project(x)] = x;
    s[project(g_.identity())] = g_.identity();
    return s;
  }

 private:
  EnumeratedGroup g_;
  std::vector<Element> a_gens_;
  FinAbGroup a_;
  std::vector<char> mask_;
  std::vector<IntVector> coords_;
  Quotient quotient_;
  ZQModule module_;
};

/// c(x,y) = s(x) s(y) s(xy)^-1 in A-coordinates for the section s (least coset elements by default).
inline Cocycle2 extension_class(const Extension& e, std::optional<std::vector<Element>> section = std::nullopt) {
  const auto& g = e.group();
  const auto& q = e.q();
  std::vector<Element> s = section ? *section : e.least_section();
  if (s.size() != q.size()) throw ExtensionError(ExtensionError::Reason::identification, "extension: section has wrong length");
  for (Element x = 0; x < q.size(); ++x)
    if (s[x] >= g.size() || e.project(s[x]) != x)
      throw ExtensionError(ExtensionError::Reason::identification, "extension: section does not hit its coset");
  if (s[q.identity()] != g.identity())
    throw ExtensionError(ExtensionError::Reason::identification, "extension: section is not normalized");
  std::vector<IntVector> v(q.size() * q.size());
  for (Element x = 0; x < q.size(); ++x)
    for (Element y = 0; y < q.size(); ++y)
      v[x * q.size() + y] = e.coordinates(g.mul(g.mul(s[x], s[y]), g.inv(s[q.mul(x, y)])));
  return Cocycle2(e.module(), std::move(v));
}

}  // namespace flatact
