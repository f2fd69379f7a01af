#pragma once

#include "flatact/screening/coset_table.hpp"

namespace flatact {

struct LowIndexOptions {
  std::size_t max_index_bound = 64;
  std::size_t node_limit = 100000000;
};

struct SubgroupClass {
  CosetTable table;
  std::vector<Word> generators;  // Schreier generators, words in the parent generators
  std::size_t index() const { return table.index(); }
};

/// Schreier generators u_a x u_{a x}^-1 of the coset-0 subgroup, trivial and inverse-duplicate
/// words dropped.
inline std::vector<Word> schreier_generators(const CosetTable& t) {
  const auto rep = t.transversal();
  std::vector<Word> out;
  for (std::uint32_t a = 0; a < t.index(); ++a)
    for (std::size_t g = 0; g < t.group().generator_count(); ++g) {
      const int x = static_cast<int>(g + 1);
      Word w = rep[a];
      w.push_back(x);
      const Word back = inverse(rep[t.act(a, x)]);
      w.insert(w.end(), back.begin(), back.end());
      w = free_reduce(w);
      if (w.empty()) continue;
      if (std::find(out.begin(), out.end(), w) != out.end()) continue;
      if (std::find(out.begin(), out.end(), inverse(w)) != out.end()) continue;
      out.push_back(std::move(w));
    }
  return out;
}

namespace detail {

class LowIndexSearch {
 public:
  LowIndexSearch(const FpGroup& g, std::size_t max_index, std::size_t node_limit)
      : group_(g), layout_(g), n_max_(max_index), node_limit_(node_limit) {
    rel_rot_ = layout_.rotations(layout_.relator_columns(g));
    cols_ = layout_.cols;
  }

  std::vector<std::vector<std::vector<std::uint32_t>>> run() {
    State s;
    s.t.assign(n_max_ * cols_, -1);
    s.n = 1;
    search(s);
    return found_;
  }

 private:
  struct State {
    std::vector<int> t;
    std::size_t n = 0;
  };

  int& at(State& s, std::size_t a, std::size_t c) const { return s.t[a * cols_ + c]; }
  int at(const State& s, std::size_t a, std::size_t c) const { return s.t[a * cols_ + c]; }

  bool set(State& s, std::size_t a, int c, std::size_t b, std::vector<std::pair<std::size_t, int>>& stack) const {
    const auto ic = static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)]);
    int& fwd = at(s, a, static_cast<std::size_t>(c));
    int& bwd = at(s, b, ic);
    if ((fwd >= 0 && fwd != static_cast<int>(b)) || (bwd >= 0 && bwd != static_cast<int>(a))) return false;
    fwd = static_cast<int>(b);
    bwd = static_cast<int>(a);
    stack.push_back({a, c});
    return true;
  }

  // Scan of w at a without coincidences: false on a contradiction.
  bool scan(State& s, std::size_t a, const std::vector<int>& w, std::vector<std::pair<std::size_t, int>>& stack) const {
    std::size_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i <= j) {
      const int v = at(s, f, static_cast<std::size_t>(w[static_cast<std::size_t>(i)]));
      if (v < 0) break;
      f = static_cast<std::size_t>(v);
      ++i;
    }
    if (i > j) return f == a;
    while (j >= i) {
      const int v = at(s, b, static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(w[static_cast<std::size_t>(j)])]));
      if (v < 0) break;
      b = static_cast<std::size_t>(v);
      --j;
    }
    if (j < i) return f == b;
    if (i == j) return set(s, f, w[static_cast<std::size_t>(i)], b, stack);
    return true;
  }

  bool deduce(State& s, std::vector<std::pair<std::size_t, int>>& stack) const {
    while (!stack.empty()) {
      const auto [a, c] = stack.back();
      stack.pop_back();
      for (const auto& w : rel_rot_[static_cast<std::size_t>(c)])
        if (!scan(s, a, w, stack)) return false;
      const auto b = static_cast<std::size_t>(at(s, a, static_cast<std::size_t>(c)));
      for (const auto& w : rel_rot_[static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)])])
        if (!scan(s, b, w, stack)) return false;
    }
    return true;
  }

  // False when some other base coset renumbers the (partial) table to a smaller one.
  bool canonical(const State& s) const {
    std::vector<int> new_of(s.n);
    std::vector<std::size_t> old_of;
    for (std::size_t gamma = 1; gamma < s.n; ++gamma) {
      std::fill(new_of.begin(), new_of.end(), -1);
      old_of.assign(1, gamma);
      new_of[gamma] = 0;
      bool decided = false;
      for (std::size_t nu = 0; nu < old_of.size() && !decided; ++nu)
        for (std::size_t c = 0; c < cols_; ++c) {
          const int o = at(s, old_of[nu], c);
          const int orig = at(s, nu, c);
          if (o < 0 || orig < 0) {
            decided = true;
            break;
          }
          if (new_of[static_cast<std::size_t>(o)] < 0) {
            new_of[static_cast<std::size_t>(o)] = static_cast<int>(old_of.size());
            old_of.push_back(static_cast<std::size_t>(o));
          }
          const int v = new_of[static_cast<std::size_t>(o)];
          if (v < orig) return false;
          if (v > orig) {
            decided = true;
            break;
          }
        }
    }
    return true;
  }

  void search(const State& s) {
    if (++nodes_ > node_limit_)
      throw BoundExceeded("low-index search: node limit " + std::to_string(node_limit_) + " exceeded");
    if (!canonical(s)) return;
    std::size_t a = 0, c = 0;
    bool open = false;
    for (a = 0; a < s.n && !open; ++a)
      for (c = 0; c < cols_; ++c)
        if (at(s, a, c) < 0) {
          open = true;
          break;
        }
    if (!open) {
      record(s);
      return;
    }
    --a;
    const auto ic = static_cast<std::size_t>(layout_.inv_col[c]);
    std::vector<std::pair<std::size_t, int>> stack;
    for (std::size_t b = 0; b <= s.n && b < n_max_; ++b) {
      if (b < s.n && at(s, b, ic) >= 0) continue;
      State next = s;
      if (b == s.n) ++next.n;
      stack.clear();
      if (set(next, a, static_cast<int>(c), b, stack) && deduce(next, stack)) search(next);
    }
  }

  void record(const State& s) {
    std::vector<std::vector<std::uint32_t>> images(layout_.gens, std::vector<std::uint32_t>(s.n));
    for (std::size_t g = 0; g < layout_.gens; ++g) {
      const auto c = static_cast<std::size_t>(layout_.col(static_cast<int>(g + 1)));
      for (std::size_t a = 0; a < s.n; ++a) images[g][a] = static_cast<std::uint32_t>(at(s, a, c));
    }
    found_.push_back(std::move(images));
  }

  const FpGroup& group_;
  ColumnLayout layout_;
  std::size_t n_max_;
  std::size_t node_limit_;
  std::size_t cols_ = 0;
  std::size_t nodes_ = 0;
  std::vector<std::vector<std::vector<int>>> rel_rot_;
  std::vector<std::vector<std::vector<std::uint32_t>>> found_;
};

}  // namespace detail

/// One coset table per conjugacy class of subgroups of index at most max_index, each with
/// Schreier generators. Ordered by index, then by table.
inline std::vector<SubgroupClass> low_index_subgroups(const FpGroup& g, std::size_t max_index,
                                                      LowIndexOptions options = {}) {
  if (max_index == 0) throw std::invalid_argument("low-index search: max_index must be positive");
  if (max_index > options.max_index_bound)
    throw BoundExceeded("low-index search: index " + std::to_string(max_index) + " exceeds bound " +
                        std::to_string(options.max_index_bound));
  detail::LowIndexSearch search(g, max_index, options.node_limit);
  auto tables = search.run();
  std::stable_sort(tables.begin(), tables.end(), [](const auto& x, const auto& y) {
    if (x[0].size() != y[0].size()) return x[0].size() < y[0].size();
    return x < y;
  });
  std::vector<SubgroupClass> out;
  for (auto& images : tables) {
    CosetTable provisional(g, {}, std::move(images));
    auto gens = schreier_generators(provisional);
    CosetTable t(g, gens, [&] {
      std::vector<std::vector<std::uint32_t>> im;
      for (std::size_t k = 0; k < g.generator_count(); ++k) im.push_back(provisional.generator_action(k));
      return im;
    }());
    if (!t.is_valid()) throw std::logic_error("low-index search: produced an invalid table");
    out.push_back({std::move(t), std::move(gens)});
  }
  return out;
}

/// True when the two tables describe conjugate subgroups: some relabelling of cosets carries one
/// action onto the other.
inline bool conjugate_tables(const CosetTable& x, const CosetTable& y) {
  if (x.index() != y.index() || x.group().generator_count() != y.group().generator_count()) return false;
  const std::size_t n = x.index(), k = x.group().generator_count();
  for (std::uint32_t base = 0; base < n; ++base) {
    std::vector<std::int64_t> map(n, -1);
    std::vector<std::uint32_t> queue{0};
    map[0] = base;
    bool ok = true;
    for (std::size_t q = 0; q < queue.size() && ok; ++q)
      for (std::size_t g = 0; g < k && ok; ++g) {
        const auto a = x.generator_action(g)[queue[q]];
        const auto b = y.generator_action(g)[static_cast<std::size_t>(map[queue[q]])];
        if (map[a] < 0) {
          map[a] = b;
          queue.push_back(a);
        } else {
          ok = map[a] == b;
        }
      }
    if (ok && queue.size() == n) {
      std::vector<char> hit(n, 0);
      for (auto v : map) hit[static_cast<std::size_t>(v)] = 1;
      if (std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; })) return true;
    }
  }
  return false;
}

}  // namespace flatact
