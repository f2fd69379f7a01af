#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatact {

/// Permutation of {0, ..., degree-1} in image notation: point i maps to images()[i].
/// Products compose as functions: (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
  }
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) throw std::invalid_argument("Permutation: images are not a bijection");
      seen[x] = 1;
    }
  }

  /// Builds from disjoint cycles, e.g. {{0,1,2},{3,4}}.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    for (const auto& c : cycles)
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= degree) throw std::invalid_argument("Permutation: cycle point out of range");
        img[c[i]] = c[(i + 1) % c.size()];
      }
    return Permutation(std::move(img));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  std::uint32_t image(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return r;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree() != b.degree()) throw std::invalid_argument("Permutation: degree mismatch");
    Permutation r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.images_[i] = a.images_[b.images_[i]];
    return r;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation r(degree());
    while (k) {
      if (k & 1) r = r * base;
      base = base * base;
      k >>= 1;
    }
    return r;
  }

  /// g x g^-1
  Permutation conjugate_by(const Permutation& g) const { return g * *this * g.inverse(); }

  std::uint64_t order() const {
    std::vector<char> seen(images_.size(), 0);
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      o = std::lcm(o, len);
    }
    return o;
  }

  /// Sorted cycle lengths (including fixed points), the S_n conjugacy invariant.
  std::vector<std::uint32_t> cycle_type() const {
    std::vector<char> seen(images_.size(), 0);
    std::vector<std::uint32_t> out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint32_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        ++len;
      }
      out.push_back(len);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_even() const {
    std::size_t transpositions = 0;
    for (auto len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.images_ < b.images_; }

  std::string to_cycle_string() const {
    std::ostringstream os;
    std::vector<char> seen(images_.size(), 0);
    bool any = false;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      os << '(';
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = 1;
        if (j != i) os << ' ';
        os << j;
      }
      os << ')';
      any = true;
    }
    if (!any) os << "()";
    return os.str();
  }

 private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace flatact
