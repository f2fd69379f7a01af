#pragma once

#include "flatact/errors.hpp"
#include "flatact/screening/partitions.hpp"
#include "flatact/zlinalg/int_matrix.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace flatact {

/// Orders of the irreducible maximal finite subgroups of GL_k(Q), per dimension k, in catalogue
/// order, with optional names.
class ImfCatalog {
 public:
  struct Entry {
    Integer order;
    std::string name;
  };

  /// Line format "k: o1 o2 ... | name1, name2, ..."; '#' starts a comment line.
  static ImfCatalog parse(std::istream& is, const std::string& source = "catalogue") {
    ImfCatalog c;
    std::string line;
    for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
      const std::string where = source + ":" + std::to_string(lineno);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      const auto colon = line.find(':');
      if (colon == std::string::npos) throw MalformedInput("expected 'k: orders'", where);
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(line.substr(0, colon), &used);
      } catch (const std::exception&) {
        throw MalformedInput("bad dimension", where);
      }
      if (k < 1) throw MalformedInput("dimension must be positive", where);
      if (c.dims_.count(k)) throw MalformedInput("dimension " + std::to_string(k) + " listed twice", where);
      std::string rest = line.substr(colon + 1), names;
      if (auto bar = rest.find('|'); bar != std::string::npos) {
        names = rest.substr(bar + 1);
        rest = rest.substr(0, bar);
      }
      std::vector<Entry> entries;
      std::istringstream os(rest);
      for (std::string tok; os >> tok;) {
        Integer v;
        if (tok.find_first_not_of("0123456789") != std::string::npos || v.set_str(tok, 10) != 0 || v <= 0)
          throw MalformedInput("bad order '" + tok + "'", where);
        entries.push_back({v, {}});
      }
      if (entries.empty()) throw MalformedInput("no orders for dimension " + std::to_string(k), where);
      if (!names.empty()) {
        std::vector<std::string> parts;
        std::stringstream ns(names);
        for (std::string item; std::getline(ns, item, ',');) {
          const auto b = item.find_first_not_of(" \t\r"), e = item.find_last_not_of(" \t\r");
          parts.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
        }
        if (parts.size() != entries.size()) throw MalformedInput("name count differs from order count", where);
        for (std::size_t i = 0; i < parts.size(); ++i) entries[i].name = parts[i];
      }
      c.dims_.emplace(k, std::move(entries));
    }
    c.check_consistency(source);
    return c;
  }

  static ImfCatalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open catalogue", path);
    return parse(in, path);
  }

  bool covers(int k) const { return dims_.count(k) != 0; }
  const std::vector<Entry>& entries(int k) const {
    auto it = dims_.find(k);
    if (it == dims_.end()) throw MalformedInput("catalogue has no entry for dimension " + std::to_string(k));
    return it->second;
  }
  std::vector<Integer> orders(int k) const {
    std::vector<Integer> out;
    for (const auto& e : entries(k)) out.push_back(e.order);
    return out;
  }
  std::vector<int> dimensions() const {
    std::vector<int> out;
    for (const auto& [k, v] : dims_) out.push_back(k);
    return out;
  }

  /// Without the entry (dimension k, position i); for monotonicity tests.
  ImfCatalog without(int k, std::size_t i) const {
    ImfCatalog c = *this;
    auto& v = c.dims_.at(k);
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    if (v.empty()) c.dims_.erase(k);
    return c;
  }

 private:
  // Known invariants of dimensions 7 and 8, as orders mod |W(E7)| and |W(E8)|.
  void check_consistency(const std::string& source) const {
    const std::vector<std::pair<int, std::vector<long>>> expected{
        {7, {645120, 0}}, {8, {10321920, 2654208, 0, 6912, 497664, 115200, 28800, 1440, 672}}};
    const std::map<int, Integer> modulus{{7, Integer(2903040)}, {8, Integer(696729600)}};
    for (const auto& [k, residues] : expected) {
      if (!covers(k)) continue;
      const auto& e = dims_.at(k);
      bool ok = e.size() == residues.size();
      for (std::size_t i = 0; ok && i < e.size(); ++i) ok = reduce_mod(e[i].order, modulus.at(k)) == residues[i];
      if (!ok) throw MalformedInput("dimension " + std::to_string(k) + " fails the consistency check", source);
    }
  }

  std::map<int, std::vector<Entry>> dims_;
};

struct ScreeningHit {
  int dimension = 0;
  Partition partition;
  std::vector<Integer> orders;
  Integer product;
  Integer target;  // |A_{k+2}|
};

inline Integer alternating_order(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return n >= 2 ? Integer(f / 2) : Integer(1);
}

namespace detail {

inline void screen_partition(int k, const Partition& p, const std::vector<std::vector<Integer>>& choices,
                             const Integer& target, std::size_t i, std::vector<Integer>& picked, Integer residue,
                             std::vector<ScreeningHit>& out) {
  if (i == p.size()) {
    if (sgn(residue) != 0) return;
    Integer prod = 1;
    for (const auto& o : picked) prod *= o;
    out.push_back({k, p, picked, prod, target});
    return;
  }
  for (const auto& o : choices[i]) {
    picked.push_back(o);
    screen_partition(k, p, choices, target, i + 1, picked, reduce_mod(residue * o, target), out);
    picked.pop_back();
  }
}

}  // namespace detail

/// For each k in [lo, hi], each partition of k and each choice of one catalogue order per part,
/// a hit when the product is divisible by |A_{k+2}|. Ordered by k, partition, then choice.
inline std::vector<ScreeningHit> screen_dimensions(int lo, int hi, const ImfCatalog& catalog) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("screen: bad range");
  for (int d = 1; d <= hi; ++d)
    if (!catalog.covers(d)) throw MalformedInput("catalogue gap: no entry for dimension " + std::to_string(d));
  std::vector<ScreeningHit> out;
  for (int k = lo; k <= hi; ++k) {
    const Integer target = alternating_order(k + 2);
    for (const auto& p : partitions(k)) {
      std::vector<std::vector<Integer>> choices;
      for (int part : p) choices.push_back(catalog.orders(part));
      std::vector<Integer> picked;
      detail::screen_partition(k, p, choices, target, 0, picked, reduce_mod(Integer(1), target), out);
    }
  }
  return out;
}

/// Catalogue orders of dimension k reduced modulo m.
inline std::vector<Integer> residues(const ImfCatalog& catalog, int k, const Integer& m) {
  std::vector<Integer> out;
  for (const auto& o : catalog.orders(k)) out.push_back(reduce_mod(o, m));
  return out;
}

/// "[ a, b, c ]", or "[ ]" when empty.
inline std::string format_integer_list(const std::vector<Integer>& xs) {
  if (xs.empty()) return "[ ]";
  std::string s = "[ ";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].get_str();
  return s + " ]";
}

}  // namespace flatact
