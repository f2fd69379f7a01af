#pragma once

#include <stdexcept>
#include <vector>

namespace flatact {

using Partition = std::vector<int>;

namespace detail {

inline void partitions_into(int n, int max_part, Partition& prefix, std::vector<Partition>& out) {
  if (n == 0) {
    out.push_back(prefix);
    return;
  }
  // Smallest leading part first gives the lexicographic order on descending sequences.
  for (int k = 1; k <= std::min(n, max_part); ++k) {
    prefix.push_back(k);
    partitions_into(n - k, k, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Partitions of n as descending sequences, in increasing lexicographic order:
/// [1,1,1,1], [2,1,1], [2,2], [3,1], [4].
inline std::vector<Partition> partitions(int n) {
  if (n < 1) throw std::invalid_argument("partitions: n must be positive");
  std::vector<Partition> out;
  Partition prefix;
  detail::partitions_into(n, n, prefix, out);
  return out;
}

}  // namespace flatact
