#include "fk/covering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fk {

namespace {

// Membership predicate shared by every covering routine: strict open-ball
// comparison on the exact-breakpoint FK value. Ties at the radius are
// resolved by the raw comparison; the band only guards downstream lemma
// checks, not set membership, so verification is always consistent with
// construction.
bool covers(double dist, double epsilon) { return dist < epsilon; }

std::vector<int> greedy_cover_indices(
    const std::vector<std::vector<double>>& dist, double epsilon) {
  const int m = static_cast<int>(dist.size());
  std::vector<bool> covered(m, false);
  std::vector<int> centers;
  int remaining = m;
  while (remaining > 0) {
    int best = -1, best_gain = -1;
    for (int i = 0; i < m; ++i) {
      if (covered[i]) continue;  // centers restricted to uncovered points
      int gain = 0;
      for (int j = 0; j < m; ++j)
        if (!covered[j] && covers(dist[i][j], epsilon)) ++gain;
      if (gain > best_gain) {  // ties break to the lowest index
        best_gain = gain;
        best = i;
      }
    }
    centers.push_back(best);
    for (int j = 0; j < m; ++j)
      if (!covered[j] && covers(dist[best][j], epsilon)) {
        covered[j] = true;
        --remaining;
      }
  }
  return centers;
}

}  // namespace

std::vector<std::vector<double>> fk_distance_matrix(
    const SystemSpec& system, const std::vector<OrbitSegment>& sample) {
  const std::size_t m = sample.size();
  std::vector<std::vector<double>> d(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      d[i][j] = d[j][i] = fk_value(system, sample[i], sample[j]);
  return d;
}

std::vector<std::vector<std::vector<double>>> fk_distance_matrices(
    const SystemSpec& system, const std::vector<OrbitSegment>& sample,
    int n_min, int n_max) {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("bad n range");
  const std::size_t m = sample.size();
  const int k = n_max - n_min + 1;
  std::vector<std::vector<std::vector<double>>> out(
      k, std::vector<std::vector<double>>(m, std::vector<double>(m, 0.0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (sample[i].origin.coords == sample[j].origin.coords) continue;
      DistanceTable table(system, orbit_prefix(sample[i], n_max),
                          orbit_prefix(sample[j], n_max));
      for (int n = n_min; n <= n_max; ++n) {
        double v = fk_value_from_table(table, n);
        out[n - n_min][i][j] = out[n - n_min][j][i] = v;
      }
    }
  }
  return out;
}

CoverEstimate greedy_fk_cover(const SystemSpec& system,
                              const std::vector<OrbitSegment>& sample,
                              double epsilon) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  const int m = static_cast<int>(sample.size());
  auto dist = fk_distance_matrix(system, sample);

  CoverEstimate est;
  est.n = sample[0].length;
  est.epsilon = epsilon;
  est.center_indices = greedy_cover_indices(dist, epsilon);
  est.count = static_cast<int>(est.center_indices.size());
  for (int i : est.center_indices) est.centers.push_back(sample[i].origin);

  // post-hoc cover verification
  for (int j = 0; j < m; ++j) {
    bool ok = false;
    for (int i : est.center_indices) ok = ok || covers(dist[i][j], epsilon);
    if (!ok) throw std::logic_error("greedy cover failed verification");
  }
  return est;
}

CoverEstimate exact_min_cover(const SystemSpec& system,
                              const std::vector<OrbitSegment>& sample,
                              double epsilon, int limit) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  const int m = static_cast<int>(sample.size());
  if (m > limit) throw std::invalid_argument("instance too large for exact cover");
  auto dist = fk_distance_matrix(system, sample);

  std::vector<std::uint32_t> ball(m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (covers(dist[i][j], epsilon)) ball[i] |= 1u << j;

  const std::uint32_t full = (m == 32) ? ~0u : ((1u << m) - 1);
  int best = m + 1;
  std::vector<int> best_set, chosen;

  auto recurse = [&](auto&& self, std::uint32_t covered) -> void {
    if (static_cast<int>(chosen.size()) >= best) return;
    if (covered == full) {
      best = static_cast<int>(chosen.size());
      best_set = chosen;
      return;
    }
    // branch on the lowest uncovered point
    int p = std::countr_zero(~covered & full);
    for (int i = 0; i < m; ++i) {
      if (!(ball[i] & (1u << p))) continue;
      chosen.push_back(i);
      self(self, covered | ball[i]);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);

  CoverEstimate est;
  est.n = sample[0].length;
  est.epsilon = epsilon;
  est.exact = true;
  est.count = best;
  est.center_indices = best_set;
  for (int i : best_set) est.centers.push_back(sample[i].origin);
  return est;
}

std::vector<int> max_separated_set(const SystemSpec& system,
                                   const std::vector<OrbitSegment>& sample,
                                   double epsilon) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  const int m = static_cast<int>(sample.size());
  auto dist = fk_distance_matrix(system, sample);
  std::vector<int> chosen;
  for (int i = 0; i < m; ++i) {
    bool ok = true;
    for (int c : chosen) ok = ok && dist[c][i] >= epsilon;
    if (ok) chosen.push_back(i);
  }
  // maximality: every excluded point sits within epsilon of a chosen one
  for (int i = 0; i < m; ++i) {
    bool in = std::find(chosen.begin(), chosen.end(), i) != chosen.end();
    if (in) continue;
    bool near = false;
    for (int c : chosen) near = near || dist[c][i] < epsilon;
    if (!near) throw std::logic_error("separated set not maximal");
  }
  return chosen;
}

std::vector<int> five_r_cover(
    const SystemSpec& system,
    const std::vector<std::pair<OrbitSegment, double>>& balls) {
  if (balls.empty()) throw std::invalid_argument("empty ball family");
  const int m = static_cast<int>(balls.size());
  std::vector<OrbitSegment> centers;
  centers.reserve(m);
  for (const auto& [seg, r] : balls) {
    if (r <= 0.0) throw std::invalid_argument("ball radius must be positive");
    centers.push_back(seg);
  }
  auto dist = fk_distance_matrix(system, centers);

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return balls[a].second > balls[b].second;
  });

  std::vector<int> kept;
  for (int i : order) {
    bool disjoint = true;
    for (int k : kept)
      disjoint = disjoint &&
                 dist[i][k] > balls[i].second + balls[k].second;
    if (disjoint) kept.push_back(i);
  }

  // Every input center must lie within 5 r_j of a kept center whose radius
  // is at least its own.
  for (int i = 0; i < m; ++i) {
    bool ok = false;
    for (int k : kept)
      ok = ok || (balls[k].second >= balls[i].second &&
                  dist[i][k] <= 5.0 * balls[k].second);
    if (!ok) throw std::logic_error("5r cover property failed");
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

double caratheodory_value_small(const SystemSpec& system,
                                const std::vector<StatePoint>& sample,
                                double epsilon, double s, int min_len,
                                int max_len) {
  const int m = static_cast<int>(sample.size());
  if (m < 1 || m > 15)
    throw std::invalid_argument("instance too large (needs 1..15 points)");
  if (min_len < 1 || min_len > max_len || max_len > 10)
    throw std::invalid_argument("length window must satisfy 1 <= N <= n_max <= 10");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");

  std::vector<OrbitSegment> orbits;
  orbits.reserve(m);
  for (const auto& p : sample) orbits.push_back(orbit(system, p, max_len));

  // candidate balls: (center, n) with coverage bitmask over the sample
  struct Ball {
    std::uint32_t mask;
    double weight;
  };
  std::vector<Ball> balls;
  for (int n = min_len; n <= max_len; ++n) {
    auto pref = prefix_segments(orbits, n);
    auto dist = fk_distance_matrix(system, pref);
    for (int i = 0; i < m; ++i) {
      std::uint32_t mask = 0;
      for (int j = 0; j < m; ++j)
        if (covers(dist[i][j], epsilon)) mask |= 1u << j;
      balls.push_back({mask, std::exp(-s * n)});
    }
  }

  // exact weighted set cover over subsets of the sample
  const std::uint32_t full = (1u << m) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(full + 1, inf);
  best[full] = 0.0;
  // iterate masks descending: f(mask) depends on supersets
  for (std::int64_t mask = full - 1; mask >= 0; --mask) {
    int p = std::countr_zero(~static_cast<std::uint32_t>(mask) & full);
    for (const auto& ball : balls) {
      if (!(ball.mask & (1u << p))) continue;
      double v = ball.weight + best[mask | ball.mask];
      if (v < best[mask]) best[mask] = v;
    }
  }
  if (!std::isfinite(best[0]))
    throw std::invalid_argument("some sample point lies in no candidate ball");
  return best[0];
}

CriticalExponentEstimate growth_rate_from_counts(
    double epsilon, const std::vector<std::pair<int, int>>& per_n_counts) {
  CriticalExponentEstimate est;
  est.epsilon = epsilon;
  est.per_n_counts = per_n_counts;
  est.n_min = per_n_counts.front().first;
  est.n_max = per_n_counts.back().first;

  const int k = static_cast<int>(per_n_counts.size());
  auto window_fit = [&](int start) -> std::pair<double, double> {
    const int len = k - start;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = start; i < k; ++i) {
      double x = per_n_counts[i].first;
      double y = std::log(static_cast<double>(per_n_counts[i].second));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      syy += y * y;
    }
    double denom = len * sxx - sx * sx;
    double slope = denom == 0.0 ? 0.0 : (len * sxy - sx * sy) / denom;
    double sst = syy - sy * sy / len;
    double r2;
    if (sst <= 0.0) {
      r2 = 1.0;  // constant counts: the fit is exact
    } else {
      double ssr = slope * (sxy - sx * sy / len);
      r2 = std::clamp(ssr / sst, 0.0, 1.0);
    }
    return {slope, r2};
  };

  // limsup proxy: max slope over suffix windows of at least 3 points
  double best_slope = -std::numeric_limits<double>::infinity();
  double best_r2 = 1.0;
  int max_start = std::max(0, k - 3);
  if (k < 3) max_start = 0;
  for (int start = 0; start <= max_start; ++start) {
    auto [slope, r2] = window_fit(start);
    if (slope > best_slope) {
      best_slope = slope;
      best_r2 = r2;
    }
  }
  est.s_value = std::max(0.0, best_slope);
  est.regression_r2 = best_r2;
  return est;
}

namespace detail {

std::vector<OrbitSegment> growth_sample(const SystemSpec& system,
                                        int sample_size, int n_max,
                                        std::uint64_t seed) {
  if (sample_size < 100)
    throw std::invalid_argument("growth-rate estimates need sample_size >= 100");
  if (n_max > system.max_orbit_length())
    throw TruncationError("n range exceeds truncation budget");
  Rng rng = Rng::stream(seed, "growth-sample");
  std::vector<OrbitSegment> sample;
  sample.reserve(sample_size);
  for (int i = 0; i < sample_size; ++i)
    sample.push_back(orbit(system, system.sample(rng), n_max));
  return sample;
}

}  // namespace detail

CriticalExponentEstimate span_growth_rate(const SystemSpec& system,
                                          int sample_size, double epsilon,
                                          int n_min, int n_max,
                                          std::uint64_t seed) {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("bad n range");
  auto sample = detail::growth_sample(system, sample_size, n_max, seed);
  auto matrices = fk_distance_matrices(system, sample, n_min, n_max);
  std::vector<std::pair<int, int>> counts;
  for (int n = n_min; n <= n_max; ++n) {
    auto centers = greedy_cover_indices(matrices[n - n_min], epsilon);
    counts.emplace_back(n, static_cast<int>(centers.size()));
  }
  return growth_rate_from_counts(epsilon, counts);
}

std::vector<MdimPoint> mdim_bowen_estimate(
    const SystemSpec& system, const std::vector<double>& epsilon_list,
    int sample_size, int n_min, int n_max, std::uint64_t seed) {
  for (double eps : epsilon_list)
    if (eps <= 0.0 || eps >= 1.0)
      throw std::invalid_argument("epsilon must lie in (0,1)");
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("bad n range");
  // the FK distance matrices do not depend on epsilon; compute them once
  auto sample = detail::growth_sample(system, sample_size, n_max, seed);
  auto matrices = fk_distance_matrices(system, sample, n_min, n_max);
  std::vector<MdimPoint> out;
  for (double eps : epsilon_list) {
    std::vector<std::pair<int, int>> counts;
    for (int n = n_min; n <= n_max; ++n) {
      auto centers = greedy_cover_indices(matrices[n - n_min], eps);
      counts.emplace_back(n, static_cast<int>(centers.size()));
    }
    MdimPoint p;
    p.epsilon = eps;
    p.detail = growth_rate_from_counts(eps, counts);
    p.s_value = p.detail.s_value;
    p.ratio = p.s_value / std::log(1.0 / eps);
    out.push_back(std::move(p));
  }
  return out;
}

double mdim_proxy(const std::vector<MdimPoint>& points) {
  if (points.empty()) return 0.0;
  std::vector<MdimPoint> sorted = points;
  std::sort(sorted.begin(), sorted.end(),
            [](const MdimPoint& a, const MdimPoint& b) {
              return a.epsilon < b.epsilon;
            });
  double proxy = sorted[0].ratio;
  if (sorted.size() > 1) proxy = std::max(proxy, sorted[1].ratio);
  return proxy;
}

}  // namespace fk
