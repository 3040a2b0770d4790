#pragma once

#include <cstdlib>
#include <vector>

namespace schmidt {

template <typename Visit>
bool enumerate_integer_vectors(std::size_t len, unsigned max_radius, bool include_zero, Visit&& visit) {
  if (include_zero) {
    const std::vector<long> zero(len, 0);
    if (visit(zero)) return true;
  }
  if (len == 0) return false;
  for (long r = 1; r <= static_cast<long>(max_radius); ++r) {
    std::vector<long> c(len, -r);
    while (true) {
      bool on_shell = false;
      for (long x : c) on_shell = on_shell || std::labs(x) == r;
      if (on_shell && visit(c)) return true;
      // odometer increment, last component fastest
      std::size_t k = len;
      while (k > 0 && c[k - 1] == r) {
        c[k - 1] = -r;
        --k;
      }
      if (k == 0) break;
      ++c[k - 1];
    }
  }
  return false;
}

}  // namespace schmidt
