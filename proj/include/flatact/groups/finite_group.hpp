#pragma once

#include "flatact/groups/enumerated_group.hpp"

#include <istream>
#include <sstream>
#include <variant>

namespace flatact {

/// A finite group backed either by permutations with a stabilizer chain or by an explicit
/// multiplication table. The backing is fixed at construction.
class FiniteGroup {
 public:
  FiniteGroup() : backing_(EnumeratedGroup()) {}
  FiniteGroup(PermGroup p) : backing_(std::move(p)) {}           // NOLINT(google-explicit-constructor)
  FiniteGroup(EnumeratedGroup t) : backing_(std::move(t)) {}     // NOLINT(google-explicit-constructor)

  bool is_permutation_group() const noexcept { return std::holds_alternative<PermGroup>(backing_); }
  bool is_table_group() const noexcept { return !is_permutation_group(); }
  const PermGroup& permutations() const { return std::get<PermGroup>(backing_); }
  const EnumeratedGroup& table() const { return std::get<EnumeratedGroup>(backing_); }

  Integer order() const {
    if (is_permutation_group()) return permutations().order();
    return static_cast<unsigned long>(table().size());
  }

  std::size_t generator_count() const {
    return is_permutation_group() ? permutations().generators().size() : table().generators().size();
  }

  bool contains(const Permutation& x) const {
    if (!is_permutation_group()) throw GroupError("contains: group is not a permutation group");
    return permutations().contains(x);
  }

  /// Element-indexed view; table groups are returned as-is, permutation groups are enumerated
  /// when their order is within `max_order`.
  EnumeratedGroup enumerate(std::size_t max_order = 20000) const {
    if (is_table_group()) return table();
    return EnumeratedGroup::from_permutations(permutations(), max_order);
  }

  /// Same backing and same presentation: generators in order, and the table for table groups.
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.is_permutation_group() != b.is_permutation_group()) return false;
    if (a.is_permutation_group())
      return a.permutations().degree() == b.permutations().degree() &&
             a.permutations().generators() == b.permutations().generators();
    return a.table().generators() == b.table().generators() && a.table().table() == b.table().table();
  }

 private:
  std::variant<PermGroup, EnumeratedGroup> backing_;
};

/// Group text format: "perm <degree> <k>" followed by k lines of images, or "table <m>" followed
/// by an m x m multiplication table.
inline FiniteGroup parse_group(std::istream& is) {
  std::string kind;
  if (!(is >> kind)) throw GroupError("group: missing header");
  if (kind == "perm") {
    long long deg = -1, k = -1;
    if (!(is >> deg >> k) || deg < 0 || k < 0) throw GroupError("group: expected 'perm <degree> <k>'");
    std::vector<Permutation> gens;
    for (long long i = 0; i < k; ++i) {
      std::vector<std::uint32_t> img(static_cast<std::size_t>(deg));
      for (auto& x : img) {
        long long v;
        if (!(is >> v) || v < 0) throw GroupError("group: generator " + std::to_string(i) + " truncated");
        x = static_cast<std::uint32_t>(v);
      }
      try {
        gens.emplace_back(std::move(img));
      } catch (const std::invalid_argument&) {
        throw GroupError("group: generator " + std::to_string(i) + " is not a permutation");
      }
    }
    return FiniteGroup(PermGroup(static_cast<std::size_t>(deg), std::move(gens)));
  }
  if (kind == "table") {
    long long m = -1;
    if (!(is >> m) || m <= 0) throw GroupError("group: expected 'table <m>'");
    std::vector<std::vector<EnumeratedGroup::Element>> t(static_cast<std::size_t>(m),
                                                         std::vector<EnumeratedGroup::Element>(static_cast<std::size_t>(m)));
    for (auto& row : t)
      for (auto& x : row) {
        long long v;
        if (!(is >> v) || v < 0) throw GroupError("group: table truncated");
        x = static_cast<EnumeratedGroup::Element>(v);
      }
    return FiniteGroup(EnumeratedGroup::from_table(t));
  }
  throw GroupError("group: unknown kind '" + kind + "'");
}

inline FiniteGroup parse_group(const std::string& text) {
  std::istringstream is(text);
  return parse_group(is);
}

inline std::string format_group(const FiniteGroup& g) {
  std::ostringstream os;
  if (g.is_permutation_group()) {
    const auto& p = g.permutations();
    os << "perm " << p.degree() << ' ' << p.generators().size() << '\n';
    for (const auto& s : p.generators()) {
      for (std::size_t i = 0; i < s.degree(); ++i) os << (i ? " " : "") << s[i];
      os << '\n';
    }
  } else {
    const auto& t = g.table();
    os << "table " << t.size() << '\n';
    for (const auto& row : t.table()) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? " " : "") << row[i];
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace flatact
