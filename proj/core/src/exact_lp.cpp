#include "internal/exact_lp.hpp"

namespace torfac::detail {

std::optional<RatVec> find_nonnegative_solution(const std::vector<RatVec>& a, const RatVec& b) {
  const std::size_t m = a.size();
  const std::size_t n = m ? a[0].size() : 0;
  if (m == 0) return RatVec(n, 0);
  const std::size_t width = n + m + 1;  // originals, artificials, rhs

  std::vector<RatVec> t(m, RatVec(width, 0));
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
    t[i][n + i] = 1;
    t[i][width - 1] = flip ? Rat(-b[i]) : b[i];
    basic[i] = n + i;
  }
  // reduced costs of the phase-one objective (sum of artificials)
  RatVec cost(width, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
    cost[width - 1] -= t[i][width - 1];
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rat ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded cannot happen for phase one; be safe
    const Rat p = t[leave][enter];
    for (auto& x : t[leave]) x /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
    }
    if (cost[enter] != 0) {
      const Rat f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
    }
    basic[leave] = enter;
  }

  if (cost[width - 1] != 0) return std::nullopt;
  RatVec x(n, 0);
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] < n) x[basic[i]] = t[i][width - 1];
  return x;
}

}  // namespace torfac::detail
