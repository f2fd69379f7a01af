#pragma once

#include "flatact/groups/permutation.hpp"
#include "flatact/screening/fp_group.hpp"

#include <cstdint>

namespace flatact {

namespace detail {

/// Column layout shared by the enumerators: one column per generator and one per inverse,
/// except that an involutory generator (relator x^2) uses a single self-inverse column.
struct ColumnLayout {
  std::size_t gens = 0;
  std::size_t cols = 0;
  std::vector<int> col_of;   // indexed by letter + gens
  std::vector<int> inv_col;  // column of the inverse letter
  std::vector<int> letter_of;  // a letter realising each column

  explicit ColumnLayout(const FpGroup& g) : gens(g.generator_count()) {
    std::vector<char> involutory(gens + 1, 0);
    for (const auto& r : g.relators())
      if (r.size() == 2 && r[0] == r[1]) involutory[static_cast<std::size_t>(std::abs(r[0]))] = 1;
    col_of.assign(2 * gens + 1, -1);
    for (std::size_t i = 1; i <= gens; ++i) {
      const int x = static_cast<int>(i);
      col_of[gens + i] = static_cast<int>(cols);
      letter_of.push_back(x);
      if (involutory[i]) {
        col_of[gens - i] = static_cast<int>(cols);
        inv_col.push_back(static_cast<int>(cols));
        ++cols;
      } else {
        col_of[gens - i] = static_cast<int>(cols + 1);
        letter_of.push_back(-x);
        inv_col.push_back(static_cast<int>(cols + 1));
        inv_col.push_back(static_cast<int>(cols));
        cols += 2;
      }
    }
  }

  int col(int letter) const { return col_of[static_cast<std::size_t>(letter + static_cast<int>(gens))]; }
  bool involutory(std::size_t gen) const { return col(static_cast<int>(gen + 1)) == col(-static_cast<int>(gen + 1)); }

  std::vector<int> columns(const Word& w) const {
    std::vector<int> c;
    for (int x : w) c.push_back(col(x));
    return c;
  }

  /// Relators as column words, dropping x^2 for self-inverse columns (built into the table).
  std::vector<std::vector<int>> relator_columns(const FpGroup& g) const {
    std::vector<std::vector<int>> out;
    for (const auto& r : g.relators()) {
      auto c = columns(r);
      if (c.size() == 2 && c[0] == c[1] && inv_col[static_cast<std::size_t>(c[0])] == c[0]) continue;
      out.push_back(std::move(c));
    }
    return out;
  }

  /// All cyclic rotations of relators and their inverses, grouped by first column.
  std::vector<std::vector<std::vector<int>>> rotations(const std::vector<std::vector<int>>& rels) const {
    std::vector<std::vector<std::vector<int>>> by_first(cols);
    for (const auto& r : rels) {
      const std::vector<int>* self = &r;
      std::vector<int> inv(r.rbegin(), r.rend());
      for (int& c : inv) c = inv_col[static_cast<std::size_t>(c)];
      for (const std::vector<int>* v : {self, static_cast<const std::vector<int>*>(&inv)})
        for (std::size_t s = 0; s < v->size(); ++s) {
          std::vector<int> rot(v->begin() + static_cast<std::ptrdiff_t>(s), v->end());
          rot.insert(rot.end(), v->begin(), v->begin() + static_cast<std::ptrdiff_t>(s));
          auto& bucket = by_first[static_cast<std::size_t>(rot[0])];
          if (std::find(bucket.begin(), bucket.end(), rot) == bucket.end()) bucket.push_back(std::move(rot));
        }
    }
    return by_first;
  }
};

}  // namespace detail

/// Complete coset table of a subgroup: the action of the generators on the right cosets, coset 0
/// being the subgroup itself. Cosets are in standard order.
class CosetTable {
 public:
  CosetTable() = default;
  CosetTable(FpGroup group, std::vector<Word> subgroup, std::vector<std::vector<std::uint32_t>> generator_images)
      : group_(std::move(group)), subgroup_(std::move(subgroup)), images_(std::move(generator_images)) {
    inverse_images_.resize(images_.size());
    for (std::size_t g = 0; g < images_.size(); ++g) {
      inverse_images_[g].assign(images_[g].size(), 0);
      for (std::size_t c = 0; c < images_[g].size(); ++c) inverse_images_[g][images_[g][c]] = static_cast<std::uint32_t>(c);
    }
  }

  const FpGroup& group() const noexcept { return group_; }
  const std::vector<Word>& subgroup_generators() const noexcept { return subgroup_; }
  std::size_t index() const { return images_.empty() ? 1 : images_[0].size(); }

  std::uint32_t act(std::uint32_t coset, int letter) const {
    const auto g = static_cast<std::size_t>(std::abs(letter) - 1);
    return letter > 0 ? images_[g][coset] : inverse_images_[g][coset];
  }
  std::uint32_t apply(std::uint32_t coset, const Word& w) const {
    for (int x : w) coset = act(coset, x);
    return coset;
  }

  /// Image list of generator g (0-based) acting on cosets.
  const std::vector<std::uint32_t>& generator_action(std::size_t g) const { return images_.at(g); }
  std::vector<Permutation> permutations() const {
    std::vector<Permutation> out;
    for (const auto& im : images_) out.emplace_back(im);
    return out;
  }

  /// Every relator closes at every coset and every subgroup generator fixes coset 0.
  bool is_valid() const {
    for (const auto& im : images_)
      if (im.size() != index()) return false;
    for (std::size_t c = 0; c < index(); ++c)
      for (const auto& r : group_.relators())
        if (apply(static_cast<std::uint32_t>(c), r) != c) return false;
    for (const auto& w : subgroup_)
      if (apply(0, w) != 0) return false;
    return true;
  }

  /// A word for each coset (from a breadth-first spanning tree over generators then inverses).
  std::vector<Word> transversal() const {
    std::vector<Word> rep(index());
    std::vector<char> seen(index(), 0);
    std::vector<std::uint32_t> queue{0};
    seen[0] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t g = 0; g < images_.size(); ++g)
        for (int sign : {1, -1}) {
          const int x = sign * static_cast<int>(g + 1);
          const auto y = act(queue[q], x);
          if (!seen[y]) {
            seen[y] = 1;
            rep[y] = rep[queue[q]];
            rep[y].push_back(x);
            queue.push_back(y);
          }
        }
    return rep;
  }

 private:
  FpGroup group_;
  std::vector<Word> subgroup_;
  std::vector<std::vector<std::uint32_t>> images_;
  std::vector<std::vector<std::uint32_t>> inverse_images_;
};

struct CosetEnumerationOptions {
  std::size_t coset_limit = 1000000;
};

namespace detail {

/// Felsch-style enumeration: the first undefined entry is always defined next and every
/// consequence is traced through the relator rotations, with coincidences resolved by
/// union-find forwarding.
class FelschEnumerator {
 public:
  FelschEnumerator(const FpGroup& g, const std::vector<Word>& subgroup, std::size_t limit)
      : layout_(g), limit_(limit) {
    rel_rot_ = layout_.rotations(layout_.relator_columns(g));
    for (const auto& w : subgroup) sub_.push_back(layout_.columns(free_reduce(w)));
    cols_ = layout_.cols;
  }

  std::vector<std::vector<std::uint32_t>> run() {
    new_coset();
    for (const auto& w : sub_) scan_and_fill(0, w);
    process_deductions();
    std::size_t row = 0;
    for (;;) {
      bool changed = false;
      for (; row < used_; ++row) {
        if (!live(row)) continue;
        for (std::size_t c = 0; c < cols_ && live(row); ++c)
          if (entry(row, c) < 0) {
            if (live_count_ >= limit_) throw BoundExceeded("coset enumeration: coset limit " + std::to_string(limit_) + " exceeded");
            if (used_ >= capacity_slots()) row = compact(row);
            define(static_cast<std::int32_t>(row), static_cast<int>(c));
            process_deductions();
            changed = true;
          }
      }
      // Defensive closing pass: every relator at every live coset, subgroup words at 0.
      for (std::size_t a = 0; a < used_; ++a)
        if (live(a))
          for (const auto& bucket : rel_rot_)
            for (const auto& w : bucket) {
              if (!live(a)) break;
              if (!closes(static_cast<std::int32_t>(a), w)) {
                scan_and_fill(static_cast<std::int32_t>(a), w);
                changed = true;
              }
            }
      for (const auto& w : sub_)
        if (!closes(0, w)) {
          scan_and_fill(0, w);
          changed = true;
        }
      process_deductions();
      if (!changed) break;
      row = 0;
    }
    return standardize();
  }

 private:
  std::int32_t& entry(std::size_t a, std::size_t c) { return table_[a * cols_ + c]; }
  std::int32_t entry(std::size_t a, std::size_t c) const { return table_[a * cols_ + c]; }
  bool live(std::size_t a) const { return forward_[a] == static_cast<std::int32_t>(a); }
  std::size_t capacity_slots() const { return limit_ + limit_ / 4 + 16; }

  std::int32_t new_coset() {
    if (live_count_ >= limit_ || used_ >= capacity_slots())
      throw BoundExceeded("coset enumeration: coset limit " + std::to_string(limit_) + " exceeded");
    table_.insert(table_.end(), cols_, -1);
    forward_.push_back(static_cast<std::int32_t>(used_));
    ++live_count_;
    return static_cast<std::int32_t>(used_++);
  }

  void define(std::int32_t a, int c) {
    const std::int32_t b = new_coset();
    entry(static_cast<std::size_t>(a), static_cast<std::size_t>(c)) = b;
    entry(static_cast<std::size_t>(b), static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)])) = a;
    deductions_.push_back({a, c});
  }

  bool closes(std::int32_t a, const std::vector<int>& w) const {
    std::int32_t f = a;
    for (int c : w) {
      f = entry(static_cast<std::size_t>(f), static_cast<std::size_t>(c));
      if (f < 0) return false;
    }
    return f == a;
  }

  std::int32_t rep(std::int32_t k) {
    std::int32_t r = k;
    while (forward_[static_cast<std::size_t>(r)] != r) r = forward_[static_cast<std::size_t>(r)];
    while (forward_[static_cast<std::size_t>(k)] != r) {
      const std::int32_t next = forward_[static_cast<std::size_t>(k)];
      forward_[static_cast<std::size_t>(k)] = r;
      k = next;
    }
    return r;
  }

  void merge(std::int32_t k, std::int32_t l, std::vector<std::int32_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    forward_[static_cast<std::size_t>(l)] = k;
    --live_count_;
    queue.push_back(l);
  }

  void coincidence(std::int32_t a, std::int32_t b) {
    std::vector<std::int32_t> queue;
    merge(a, b, queue);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::int32_t e = queue[q];
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t d = entry(static_cast<std::size_t>(e), c);
        if (d < 0) continue;
        const auto ic = static_cast<std::size_t>(layout_.inv_col[c]);
        entry(static_cast<std::size_t>(d), ic) = -1;
        const std::int32_t mu = rep(e), nu = rep(d);
        if (entry(static_cast<std::size_t>(mu), c) >= 0) {
          merge(nu, entry(static_cast<std::size_t>(mu), c), queue);
        } else if (entry(static_cast<std::size_t>(nu), ic) >= 0) {
          merge(mu, entry(static_cast<std::size_t>(nu), ic), queue);
        } else {
          entry(static_cast<std::size_t>(mu), c) = nu;
          entry(static_cast<std::size_t>(nu), ic) = mu;
          deductions_.push_back({mu, static_cast<int>(c)});
        }
      }
    }
  }

  // Traces w from both ends at a; deduces a single missing entry or records a coincidence.
  void scan(std::int32_t a, const std::vector<int>& w) {
    std::int32_t f = a, b = a;
    std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
    while (i <= j) {
      const std::int32_t n = entry(static_cast<std::size_t>(f), static_cast<std::size_t>(w[static_cast<std::size_t>(i)]));
      if (n < 0) break;
      f = n;
      ++i;
    }
    if (i > j) {
      if (f != a) coincidence(f, a);
      return;
    }
    while (j >= i) {
      const std::int32_t n = entry(static_cast<std::size_t>(b), static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(w[static_cast<std::size_t>(j)])]));
      if (n < 0) break;
      b = n;
      --j;
    }
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      const int c = w[static_cast<std::size_t>(i)];
      entry(static_cast<std::size_t>(f), static_cast<std::size_t>(c)) = b;
      entry(static_cast<std::size_t>(b), static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)])) = f;
      deductions_.push_back({f, c});
    }
  }

  void scan_and_fill(std::int32_t a, const std::vector<int>& w) {
    for (;;) {
      if (!live(static_cast<std::size_t>(a))) a = rep(a);
      std::int32_t f = a, b = a;
      std::ptrdiff_t i = 0, j = static_cast<std::ptrdiff_t>(w.size()) - 1;
      while (i <= j) {
        const std::int32_t n = entry(static_cast<std::size_t>(f), static_cast<std::size_t>(w[static_cast<std::size_t>(i)]));
        if (n < 0) break;
        f = n;
        ++i;
      }
      if (i > j) {
        if (f != a) coincidence(f, a);
        return;
      }
      while (j >= i) {
        const std::int32_t n = entry(static_cast<std::size_t>(b), static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(w[static_cast<std::size_t>(j)])]));
        if (n < 0) break;
        b = n;
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        const int c = w[static_cast<std::size_t>(i)];
        entry(static_cast<std::size_t>(f), static_cast<std::size_t>(c)) = b;
        entry(static_cast<std::size_t>(b), static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)])) = f;
        deductions_.push_back({f, c});
        return;
      }
      define(f, w[static_cast<std::size_t>(i)]);
    }
  }

  void process_deductions() {
    while (!deductions_.empty()) {
      const auto [a, c] = deductions_.back();
      deductions_.pop_back();
      if (!live(static_cast<std::size_t>(a))) continue;
      for (const auto& w : rel_rot_[static_cast<std::size_t>(c)]) {
        if (!live(static_cast<std::size_t>(a))) break;
        scan(a, w);
      }
      if (!live(static_cast<std::size_t>(a))) continue;
      const std::int32_t b = entry(static_cast<std::size_t>(a), static_cast<std::size_t>(c));
      if (b < 0) continue;
      for (const auto& w : rel_rot_[static_cast<std::size_t>(layout_.inv_col[static_cast<std::size_t>(c)])]) {
        if (!live(static_cast<std::size_t>(b))) break;
        scan(b, w);
      }
    }
  }

  // Drops dead cosets; only called with an empty deduction stack. Returns the new row pointer.
  std::size_t compact(std::size_t row) {
    if (live_count_ == used_) throw BoundExceeded("coset enumeration: coset limit " + std::to_string(limit_) + " exceeded");
    std::vector<std::int32_t> renum(used_, -1);
    std::size_t n = 0, new_row = 0;
    for (std::size_t a = 0; a < used_; ++a) {
      if (a == row) new_row = n;
      if (live(a)) renum[a] = static_cast<std::int32_t>(n++);
    }
    for (std::size_t a = 0; a < used_; ++a) {
      if (!live(a)) continue;
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t v = entry(a, c);
        table_[static_cast<std::size_t>(renum[a]) * cols_ + c] = v < 0 ? -1 : renum[static_cast<std::size_t>(v)];
      }
    }
    table_.resize(n * cols_);
    forward_.resize(n);
    for (std::size_t a = 0; a < n; ++a) forward_[a] = static_cast<std::int32_t>(a);
    used_ = n;
    return new_row;
  }

  std::vector<std::vector<std::uint32_t>> standardize() {
    std::vector<std::int32_t> renum(used_, -1);
    std::vector<std::int32_t> order{0};
    renum[0] = 0;
    for (std::size_t q = 0; q < order.size(); ++q)
      for (std::size_t c = 0; c < cols_; ++c) {
        const std::int32_t v = entry(static_cast<std::size_t>(order[q]), c);
        if (v < 0) throw std::logic_error("coset enumeration: incomplete table");
        if (renum[static_cast<std::size_t>(v)] < 0) {
          renum[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(order.size());
          order.push_back(v);
        }
      }
    std::vector<std::vector<std::uint32_t>> images(layout_.gens, std::vector<std::uint32_t>(order.size()));
    for (std::size_t g = 0; g < layout_.gens; ++g) {
      const auto c = static_cast<std::size_t>(layout_.col(static_cast<int>(g + 1)));
      for (std::size_t k = 0; k < order.size(); ++k)
        images[g][k] = static_cast<std::uint32_t>(renum[static_cast<std::size_t>(entry(static_cast<std::size_t>(order[k]), c))]);
    }
    return images;
  }

  ColumnLayout layout_;
  std::size_t limit_;
  std::size_t cols_ = 0;
  std::vector<std::vector<std::vector<int>>> rel_rot_;
  std::vector<std::vector<int>> sub_;
  std::vector<std::int32_t> table_;
  std::vector<std::int32_t> forward_;
  std::vector<std::pair<std::int32_t, int>> deductions_;
  std::size_t used_ = 0;
  std::size_t live_count_ = 0;
};

}  // namespace detail

/// Enumerates the cosets of <subgroup> in g. Throws BoundExceeded when more than
/// options.coset_limit cosets would be live at once; never returns an incomplete table.
inline CosetTable todd_coxeter(const FpGroup& g, const std::vector<Word>& subgroup = {},
                               CosetEnumerationOptions options = {}) {
  for (const auto& w : subgroup)
    for (int x : w)
      if (x == 0 || static_cast<std::size_t>(std::abs(x)) > g.generator_count())
        throw MalformedInput("subgroup generator letter " + std::to_string(x) + " out of range");
  if (options.coset_limit == 0) throw std::invalid_argument("coset limit must be positive");
  detail::FelschEnumerator e(g, subgroup, options.coset_limit);
  CosetTable t(g, subgroup, e.run());
  if (!t.is_valid()) throw std::logic_error("coset enumeration: table fails relator scan");
  return t;
}

}  // namespace flatact
