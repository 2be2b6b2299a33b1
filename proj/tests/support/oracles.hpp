#pragma once

// Reference implementations used to check the library. They favour exactness
// over speed and share no code with it.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace refgame::testing {

// Twice the 1-based average rank of each entry, so ties stay integral.
inline std::vector<std::int64_t> doubled_ranks(const std::vector<double>& v) {
  std::vector<std::int64_t> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::int64_t below = 0;
    std::int64_t equal = 0;
    for (double w : v) {
      below += w < v[i];
      equal += w == v[i];
    }
    // ranks below+1 .. below+equal averaged, doubled
    out[i] = 2 * below + equal + 1;
  }
  return out;
}

// Spearman's coefficient from integer rank sums; only the final ratio is
// rounded. Constant inputs give 0.
inline double exact_spearman(const std::vector<double>& x, const std::vector<double>& y) {
  const auto rx = doubled_ranks(x);
  const auto ry = doubled_ranks(y);
  const auto n = static_cast<std::int64_t>(x.size());
  const std::int64_t sx = std::accumulate(rx.begin(), rx.end(), std::int64_t{0});
  const std::int64_t sy = std::accumulate(ry.begin(), ry.end(), std::int64_t{0});
  // n * sum(dx dy) with dx = r - mean, scaled to stay in integers
  std::int64_t sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const std::int64_t dx = n * rx[i] - sx;
    const std::int64_t dy = n * ry[i] - sy;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) return 0.0;
  const long double r = static_cast<long double>(sxy) /
                        std::sqrt(static_cast<long double>(sxx) * static_cast<long double>(syy));
  return static_cast<double>(r);
}

}  // namespace refgame::testing
