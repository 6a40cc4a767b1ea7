#ifndef FK_TESTS_ORACLES_HPP
#define FK_TESTS_ORACLES_HPP

// Independent reference implementations used only by tests. Deliberately
// dumb: exhaustive enumeration and dense sweeps, no shared code with the
// library's algorithms beyond the base metric.

#include <algorithm>
#include <cmath>
#include <vector>

#include "fk/metrics.hpp"
#include "fk/system.hpp"

namespace fk::testing {

// Max order-preserving match size by enumerating every pair of equal-size
// increasing index subsets. Exponential; fine for n <= 6.
inline int exhaustive_max_match(const SystemSpec& sys, const OrbitSegment& a,
                                const OrbitSegment& b, double delta) {
  const int n = a.length, m = b.length;
  std::vector<std::vector<int>> subs_a, subs_b;
  for (int k = std::min(n, m); k >= 1; --k) {
    auto gen = [k](int total) {
      std::vector<std::vector<int>> out;
      std::vector<int> cur(k);
      for (int i = 0; i < k; ++i) cur[i] = i;
      while (true) {
        out.push_back(cur);
        int pos = k - 1;
        while (pos >= 0 && cur[pos] == total - k + pos) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int i = pos + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
      }
      return out;
    };
    for (const auto& ia : gen(n))
      for (const auto& ib : gen(m)) {
        bool ok = true;
        for (int t = 0; t < k && ok; ++t)
          ok = sys.base_distance(a.points[ia[t]], b.points[ib[t]]) < delta;
        if (ok) return k;
      }
  }
  return 0;
}

// FK value by sweeping a dense delta grid from below and returning the first
// grid point where the defining predicate f_bar(delta) < delta holds.
inline double sweep_fk_value(const SystemSpec& sys, const OrbitSegment& a,
                             const OrbitSegment& b, double step = 1e-4) {
  for (double delta = step;; delta += step)
    if (f_bar(sys, a, b, delta) < delta) return delta;
}

// Exact minimum ball cover by subset enumeration (m <= 20 in practice small).
inline int brute_min_cover(const std::vector<std::vector<double>>& dist,
                           double eps) {
  const int m = static_cast<int>(dist.size());
  int best = m;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    int size = 0;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) ++size;
    if (size >= best) continue;
    bool covered = true;
    for (int p = 0; p < m && covered; ++p) {
      bool hit = false;
      for (int c = 0; c < m && !hit; ++c)
        hit = (mask & (1u << c)) && dist[c][p] < eps;
      covered = hit;
    }
    if (covered) best = size;
  }
  return best;
}

}  // namespace fk::testing

#endif
