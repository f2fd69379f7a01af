#pragma once

#include "flatact/screening/coset_table.hpp"

#include <map>
#include <set>

namespace flatact {

/// Presentation of the coset-0 subgroup of a coset table. generator_words[i] expresses
/// generator i + 1 in the parent generators.
struct SubgroupPresentation {
  FpGroup presentation;
  std::vector<Word> generator_words;
};

namespace detail {

inline std::vector<Word> tidy_relators(const std::vector<Word>& rels) {
  std::set<Word> seen;
  std::vector<Word> out;
  for (const auto& r : rels) {
    Word c = canonical_relator(r);
    if (!c.empty() && seen.insert(c).second) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

inline Word substitute(const Word& w, int gen, const Word& value) {
  Word out;
  const Word inv = inverse(value);
  for (int x : w) {
    if (x == gen)
      out.insert(out.end(), value.begin(), value.end());
    else if (x == -gen)
      out.insert(out.end(), inv.begin(), inv.end());
    else
      out.push_back(x);
  }
  return free_reduce(out);
}

}  // namespace detail

/// Removes generators that occur exactly once in some relator of length at most max_length,
/// substituting their value elsewhere; duplicate and trivial relators are dropped throughout.
inline SubgroupPresentation tietze_simplify(SubgroupPresentation p, std::size_t max_length = 4) {
  std::size_t n = p.presentation.generator_count();
  std::vector<Word> rels = detail::tidy_relators(p.presentation.relators());
  std::vector<char> alive(n + 1, 1);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rels) {
      if (r.size() > max_length) break;
      std::map<int, int> count;
      for (int x : r) ++count[std::abs(x)];
      int gen = 0;
      for (const auto& [g, k] : count)
        if (k == 1) {
          gen = g;
          break;
        }
      if (gen == 0) continue;
      // Rotate so that gen^e leads: gen^e v = 1, hence gen = v^-1 (e = 1) or v (e = -1).
      const auto pos = static_cast<std::size_t>(
          std::find_if(r.begin(), r.end(), [&](int x) { return std::abs(x) == gen; }) - r.begin());
      Word rot(r.begin() + static_cast<std::ptrdiff_t>(pos), r.end());
      rot.insert(rot.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(pos));
      const Word v(rot.begin() + 1, rot.end());
      const Word value = rot[0] > 0 ? inverse(v) : v;
      std::vector<Word> next;
      for (const auto& s : rels)
        if (&s != &r) next.push_back(detail::substitute(s, gen, value));
      rels = detail::tidy_relators(next);
      alive[static_cast<std::size_t>(gen)] = 0;
      changed = true;
      break;
    }
  }
  std::vector<int> renum(n + 1, 0);
  std::vector<Word> words;
  int k = 0;
  for (std::size_t g = 1; g <= n; ++g)
    if (alive[g]) {
      renum[g] = ++k;
      words.push_back(p.generator_words[g - 1]);
    }
  for (auto& r : rels)
    for (int& x : r) x = x > 0 ? renum[static_cast<std::size_t>(x)] : -renum[static_cast<std::size_t>(-x)];
  return {FpGroup(static_cast<std::size_t>(k), detail::tidy_relators(rels)), std::move(words)};
}

/// Reidemeister-Schreier: one generator per non-tree edge (coset, generator) of the table, and
/// every relator rewritten at every coset; then Tietze-simplified.
inline SubgroupPresentation reidemeister_schreier(const CosetTable& t, std::size_t tietze_max_length = 4) {
  const auto rep = t.transversal();
  const std::size_t n = t.index(), k = t.group().generator_count();
  std::vector<int> label(n * k, 0);
  std::vector<Word> words;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::size_t g = 0; g < k; ++g) {
      const int x = static_cast<int>(g + 1);
      Word w = rep[a];
      w.push_back(x);
      const Word back = inverse(rep[t.act(a, x)]);
      w.insert(w.end(), back.begin(), back.end());
      w = free_reduce(w);
      if (w.empty()) continue;
      words.push_back(std::move(w));
      label[a * k + g] = static_cast<int>(words.size());
    }
  std::vector<Word> rels;
  for (const auto& r : t.group().relators())
    for (std::uint32_t a = 0; a < n; ++a) {
      Word out;
      std::uint32_t c = a;
      for (int x : r) {
        if (x > 0) {
          if (int s = label[c * k + static_cast<std::size_t>(x - 1)]) out.push_back(s);
          c = t.act(c, x);
        } else {
          c = t.act(c, x);
          if (int s = label[c * k + static_cast<std::size_t>(-x - 1)]) out.push_back(-s);
        }
      }
      rels.push_back(std::move(out));
    }
  return tietze_simplify({FpGroup(words.size(), rels), std::move(words)}, tietze_max_length);
}

}  // namespace flatact
