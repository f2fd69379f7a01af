#pragma once

#include "flatact/screening/catalog.hpp"
#include "flatact/screening/epimorphism.hpp"
#include "flatact/screening/low_index.hpp"
#include "flatact/screening/rewriting.hpp"

namespace flatact {

/// Sub-presentation on the generators in `keep` (1-based), keeping the relators that only
/// involve them. For a Coxeter presentation this presents the standard parabolic subgroup.
inline FpGroup restrict_presentation(const FpGroup& g, const std::vector<int>& keep) {
  std::vector<int> renum(g.generator_count() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) renum.at(static_cast<std::size_t>(keep[i])) = static_cast<int>(i + 1);
  std::vector<Word> rels;
  for (const auto& r : g.relators()) {
    Word w;
    bool inside = true;
    for (int x : r) {
      const int y = renum[static_cast<std::size_t>(std::abs(x))];
      if (y == 0) {
        inside = false;
        break;
      }
      w.push_back(x > 0 ? y : -y);
    }
    if (inside) rels.push_back(std::move(w));
  }
  return FpGroup(keep.size(), rels);
}

/// Indices [W_J : W_J'] along a chain of standard parabolic subgroups, dropping the generators
/// in `removal_order` one at a time. Their product is the group order.
inline std::vector<std::size_t> parabolic_indices(const FpGroup& coxeter, const std::vector<int>& removal_order,
                                                  CosetEnumerationOptions options = {}) {
  std::vector<int> current;
  for (std::size_t i = 1; i <= coxeter.generator_count(); ++i) current.push_back(static_cast<int>(i));
  std::vector<std::size_t> out;
  for (int drop : removal_order) {
    const FpGroup sub = restrict_presentation(coxeter, current);
    std::vector<Word> parabolic;
    for (std::size_t i = 0; i < current.size(); ++i)
      if (current[i] != drop) parabolic.push_back({static_cast<int>(i + 1)});
    if (parabolic.size() == current.size()) throw std::invalid_argument("parabolic chain: generator not present");
    out.push_back(todd_coxeter(sub, parabolic, options).index());
    current.erase(std::find(current.begin(), current.end(), drop));
  }
  return out;
}

struct A9ChainOptions {
  int range_lo = 3;
  int range_hi = 24;
  std::size_t max_index = 16;
  std::vector<std::size_t> index_filter{1, 2, 4, 8, 16};
  LowIndexOptions low_index;
  EpimorphismOptions epimorphism;
  CosetEnumerationOptions cosets;
};

struct FilteredClass {
  std::size_t index = 0;
  Integer order;
  std::size_t generators = 0;
  std::size_t relators = 0;
  std::size_t epimorphisms = 0;
  std::size_t search_nodes = 0;
};

struct A9ChainReport {
  std::vector<ScreeningHit> hits;
  std::vector<Integer> residues7, residues8;
  Integer survivor;
  std::vector<std::size_t> parabolic;
  Integer weyl_order;
  std::size_t classes_total = 0;
  std::vector<FilteredClass> filtered;
  bool no_a9_action = false;
};

/// Screening, then the dimension-7 survivor against the E7 Weyl group: its low-index subgroups
/// whose order |A9| can divide, and a search for surjections from each onto A9.
inline A9ChainReport a9_chain(const ImfCatalog& catalog, const FpGroup& e7, A9ChainOptions options = {}) {
  A9ChainReport rep;
  rep.hits = screen_dimensions(options.range_lo, options.range_hi, catalog);
  rep.residues7 = residues(catalog, 7, Integer(2903040));
  rep.residues8 = residues(catalog, 8, Integer(696729600));
  std::vector<const ScreeningHit*> seven;
  for (const auto& h : rep.hits)
    if (h.dimension == 7) seven.push_back(&h);
  if (seven.size() != 1 || seven[0]->orders.size() != 1)
    throw std::runtime_error("a9 chain: expected a single one-part survivor in dimension 7");
  rep.survivor = seven[0]->orders[0];
  rep.parabolic = parabolic_indices(e7, {7, 6, 2, 5, 4, 3, 1}, options.cosets);
  rep.weyl_order = 1;
  for (auto i : rep.parabolic) rep.weyl_order *= static_cast<unsigned long>(i);
  if (rep.weyl_order != rep.survivor)
    throw std::runtime_error("a9 chain: survivor order " + rep.survivor.get_str() + " is not |W(E7)| = " +
                             rep.weyl_order.get_str());

  const auto classes = low_index_subgroups(e7, options.max_index, options.low_index);
  rep.classes_total = classes.size();
  EpimorphismOptions epi = options.epimorphism;
  if (!epi.automorphisms) epi.automorphisms = PermGroup::symmetric(9);
  const PermGroup a9 = PermGroup::alternating(9);
  rep.no_a9_action = true;
  for (const auto& c : classes) {
    if (std::find(options.index_filter.begin(), options.index_filter.end(), c.index()) == options.index_filter.end())
      continue;
    FilteredClass f;
    f.index = c.index();
    f.order = rep.weyl_order / static_cast<unsigned long>(c.index());
    const auto p = reidemeister_schreier(c.table);
    f.generators = p.presentation.generator_count();
    f.relators = p.presentation.relators().size();
    EpimorphismSearchStats stats;
    f.epimorphisms = epimorphism_search(p.presentation, a9, epi, &stats).size();
    f.search_nodes = stats.nodes;
    if (f.epimorphisms) rep.no_a9_action = false;
    rep.filtered.push_back(f);
  }
  return rep;
}

namespace detail {

inline std::string partition_list(const std::vector<ScreeningHit>& hits) {
  if (hits.empty()) return "[ ]";
  std::string s = "[ ";
  for (std::size_t i = 0; i < hits.size(); ++i) {
    std::vector<Integer> p;
    for (int x : hits[i].partition) p.emplace_back(x);
    s += (i ? ", " : "") + format_integer_list(p);
  }
  return s + " ]";
}

inline std::string order_list(const std::vector<ScreeningHit>& hits) {
  if (hits.empty()) return "[ ]";
  std::string s = "[ ";
  for (std::size_t i = 0; i < hits.size(); ++i) s += (i ? ", " : "") + format_integer_list(hits[i].orders);
  return s + " ]";
}

}  // namespace detail

/// Screening lines: hit partitions, hit orders, then the residue lines for k = 7 and 8 when in
/// range.
inline std::string format_screening(const std::vector<ScreeningHit>& hits, const ImfCatalog& catalog, int lo, int hi) {
  std::string s = detail::partition_list(hits) + "\n" + detail::order_list(hits) + "\n";
  if (lo <= 7 && 7 <= hi) s += format_integer_list(residues(catalog, 7, Integer(2903040))) + "\n";
  if (lo <= 8 && 8 <= hi) s += format_integer_list(residues(catalog, 8, Integer(696729600))) + "\n";
  return s;
}

inline std::string format_a9_chain(const A9ChainReport& r, const ImfCatalog& catalog, const A9ChainOptions& o = {}) {
  std::string s = "screen " + std::to_string(o.range_lo) + ".." + std::to_string(o.range_hi) + ":\n";
  s += format_screening(r.hits, catalog, o.range_lo, o.range_hi);
  s += "survivor k=7: " + r.survivor.get_str() + "\n";
  s += "|W(E7)| from parabolic cosets:";
  for (std::size_t i = 0; i < r.parabolic.size(); ++i) s += (i ? " * " : " ") + std::to_string(r.parabolic[i]);
  s += " = " + r.weyl_order.get_str() + "\n";
  s += "subgroup classes of index <= " + std::to_string(o.max_index) + ": " + std::to_string(r.classes_total) + "\n";
  s += "index filter {";
  for (std::size_t i = 0; i < o.index_filter.size(); ++i) s += (i ? ", " : "") + std::to_string(o.index_filter[i]);
  s += "}: " + std::to_string(r.filtered.size()) + " classes\n";
  std::string verdicts;
  for (const auto& f : r.filtered) {
    s += "  index " + std::to_string(f.index) + ", order " + f.order.get_str() + ": " + std::to_string(f.generators) +
         " generators, " + std::to_string(f.relators) + " relators, " + std::to_string(f.epimorphisms) +
         " surjections onto A9\n";
    verdicts += (verdicts.empty() ? "" : " ") + std::string(f.epimorphisms ? "[ ... ]" : "[ ]");
  }
  s += verdicts + "\n";
  s += r.no_a9_action ? "verdict: no A9 action in dimension 7\n" : "verdict: a surjection onto A9 exists\n";
  return s;
}

}  // namespace flatact
