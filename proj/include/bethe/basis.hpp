#pragma once

#include <cstdint>
#include <utility>

#include "bethe/types.hpp"

namespace bethe {

// Two-particle Fock basis c^+_{m1} c^+_{m2} |0>, 1 <= m1 < m2 <= N, ordered
// lexicographically in (m1, m2). This ordering is shared by every module; the
// oracle, the wavefunction bridge and the CLI all index states through it.

inline std::int64_t pair_count(int N) {
  return static_cast<std::int64_t>(N) * (N - 1) / 2;
}

/// 0-based index of the pair (m1, m2), 1-based sites, m1 < m2.
inline std::int64_t pair_index(int N, int m1, int m2) {
  return static_cast<std::int64_t>(m1 - 1) * N - static_cast<std::int64_t>(m1) * (m1 - 1) / 2 +
         (m2 - m1 - 1);
}

/// Inverse of pair_index.
inline std::pair<int, int> pair_sites(int N, std::int64_t idx) {
  int m1 = 1;
  std::int64_t off = 0;
  while (idx >= off + (N - m1)) {
    off += N - m1;
    ++m1;
  }
  const int m2 = m1 + 1 + static_cast<int>(idx - off);
  return {m1, m2};
}

}  // namespace bethe
