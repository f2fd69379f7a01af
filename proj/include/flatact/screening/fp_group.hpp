#pragma once

#include "flatact/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace flatact {

/// Letters are +i / -i for generator i (1-based) and its inverse.
using Word = std::vector<int>;

inline Word free_reduce(const Word& w) {
  Word out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

inline Word cyclic_reduce(const Word& w) {
  Word r = free_reduce(w);
  std::size_t b = 0, e = r.size();
  while (e - b >= 2 && r[b] == -r[e - 1]) ++b, --e;
  return Word(r.begin() + static_cast<std::ptrdiff_t>(b), r.begin() + static_cast<std::ptrdiff_t>(e));
}

inline Word inverse(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& x : r) x = -x;
  return r;
}

inline Word power(const Word& w, int k) {
  Word r;
  for (int i = 0; i < k; ++i) r.insert(r.end(), w.begin(), w.end());
  return r;
}

/// Least word among the cyclic rotations of w and of its inverse, so that equivalent relators
/// compare equal. Letters order as 1 < -1 < 2 < -2 < ...
inline Word canonical_relator(const Word& w) {
  const Word c = cyclic_reduce(w);
  if (c.empty()) return c;
  auto key = [](const Word& v) {
    std::vector<int> k;
    for (int x : v) k.push_back(2 * std::abs(x) + (x < 0 ? 1 : 0));
    return k;
  };
  Word best = c;
  for (const Word& v : {c, inverse(c)})
    for (std::size_t s = 0; s < v.size(); ++s) {
      Word rot(v.begin() + static_cast<std::ptrdiff_t>(s), v.end());
      rot.insert(rot.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(s));
      if (key(rot) < key(best)) best = rot;
    }
  return best;
}

inline std::string format_word(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

/// Finitely presented group: generator count and cyclically reduced relators.
class FpGroup {
 public:
  FpGroup() = default;
  FpGroup(std::size_t generators, const std::vector<Word>& relators) : n_(generators) {
    for (std::size_t r = 0; r < relators.size(); ++r) {
      for (int x : relators[r])
        if (x == 0 || static_cast<std::size_t>(std::abs(x)) > n_)
          throw MalformedInput("letter " + std::to_string(x) + " out of range", "relator " + std::to_string(r));
      Word c = cyclic_reduce(relators[r]);
      if (!c.empty()) rels_.push_back(std::move(c));
    }
  }

  std::size_t generator_count() const noexcept { return n_; }
  const std::vector<Word>& relators() const noexcept { return rels_; }

  /// Coxeter group of a symmetric Coxeter matrix (m_ii = 1, 0 for infinity): relators s_i^2 and
  /// (s_i s_j)^m_ij.
  static FpGroup coxeter(const std::vector<std::vector<int>>& m) {
    const std::size_t n = m.size();
    std::vector<Word> rels;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i].size() != n || m[i][i] != 1) throw MalformedInput("not a Coxeter matrix");
      rels.push_back({static_cast<int>(i + 1), static_cast<int>(i + 1)});
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (m[i][j] != m[j][i] || m[i][j] == 1 || m[i][j] < 0) throw MalformedInput("not a Coxeter matrix");
        if (m[i][j] > 0) rels.push_back(power({static_cast<int>(i + 1), static_cast<int>(j + 1)}, m[i][j]));
      }
    return FpGroup(n, rels);
  }

  /// Generator orders implied by single-generator power relators (0 when none).
  std::vector<long> generator_order_bounds() const {
    std::vector<long> ord(n_, 0);
    for (const auto& r : rels_) {
      const int x = std::abs(r[0]);
      if (std::all_of(r.begin(), r.end(), [&](int y) { return y == r[0]; })) {
        const long k = static_cast<long>(r.size());
        long& o = ord[static_cast<std::size_t>(x - 1)];
        o = o == 0 ? k : std::gcd(o, k);
      }
    }
    return ord;
  }

  /// "gens g" then one relator per line; '#' starts a comment.
  static FpGroup parse(std::istream& is, const std::string& source = "presentation") {
    std::string line;
    long gens = -1;
    std::vector<Word> rels;
    for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
      const std::string where = source + ":" + std::to_string(lineno);
      if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
      std::istringstream ls(line);
      std::string tok;
      if (!(ls >> tok)) continue;
      if (gens < 0) {
        if (tok != "gens" || !(ls >> gens) || gens < 0) throw MalformedInput("expected 'gens <count>'", where);
        if (ls >> tok) throw MalformedInput("trailing text after generator count", where);
        continue;
      }
      Word w;
      do {
        try {
          std::size_t used = 0;
          const int x = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument(tok);
          if (x == 0 || std::abs(x) > gens) throw MalformedInput("letter " + tok + " out of range", where);
          w.push_back(x);
        } catch (const MalformedInput&) {
          throw;
        } catch (const std::exception&) {
          throw MalformedInput("bad letter '" + tok + "'", where);
        }
      } while (ls >> tok);
      rels.push_back(std::move(w));
    }
    if (gens < 0) throw MalformedInput("missing 'gens' header", source);
    return FpGroup(static_cast<std::size_t>(gens), rels);
  }

  static FpGroup load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open presentation", path);
    return parse(in, path);
  }

  std::string format() const {
    std::string s = "gens " + std::to_string(n_) + "\n";
    for (const auto& r : rels_) s += format_word(r) + "\n";
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Word> rels_;
};

/// Coxeter matrix of E_n (n = 6, 7, 8), Bourbaki labelling: 1-3-4-5-...-n with 2 attached to 4.
inline std::vector<std::vector<int>> coxeter_matrix_e(int n) {
  if (n < 6 || n > 8) throw std::invalid_argument("coxeter_matrix_e: n must be 6, 7 or 8");
  std::vector<std::vector<int>> m(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 2));
  auto edge = [&](int a, int b) { m[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] = m[static_cast<std::size_t>(b - 1)][static_cast<std::size_t>(a - 1)] = 3; };
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
  edge(1, 3);
  edge(2, 4);
  for (int i = 3; i < n; ++i) edge(i, i + 1);
  return m;
}

}  // namespace flatact
