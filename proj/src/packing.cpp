#include "fk/packing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fk {

namespace {

// Separation certificate for closed-ball disjointness: pairwise FK distance
// beyond 2*epsilon plus the band, checked at both ball lengths when they
// differ. One-sided and sound for a metric; documented as the certificate,
// not as emptiness of the intersection.
bool separated(const std::vector<std::vector<std::vector<double>>>& dist,
               int min_len, int i, int ni, int j, int nj, double epsilon,
               double band) {
  double need = 2.0 * epsilon + band;
  return dist[ni - min_len][i][j] > need && dist[nj - min_len][i][j] > need;
}

// greedy maximal 2eps-separated index set under one distance matrix
std::vector<int> greedy_packing_indices(
    const std::vector<std::vector<double>>& dist, double epsilon,
    double band) {
  const int m = static_cast<int>(dist.size());
  const double need = 2.0 * epsilon + band;
  std::vector<int> chosen;
  for (int i = 0; i < m; ++i) {
    bool ok = true;
    for (int c : chosen) ok = ok && dist[c][i] > need;
    if (ok) chosen.push_back(i);
  }
  return chosen;
}

bool family_separated(const std::vector<std::vector<std::vector<double>>>& dist,
                      int min_len, const std::vector<std::pair<int, int>>& fam,
                      double epsilon, double band) {
  for (std::size_t a = 0; a < fam.size(); ++a)
    for (std::size_t b = a + 1; b < fam.size(); ++b)
      if (!separated(dist, min_len, fam[a].first, fam[a].second, fam[b].first,
                     fam[b].second, epsilon, band))
        return false;
  return true;
}

double family_sum(const std::vector<std::pair<int, int>>& fam, double s) {
  double sum = 0.0;
  for (auto [i, n] : fam) sum += std::exp(-s * n);
  return sum;
}

PackingFamily best_family(const SystemSpec& system,
                          const std::vector<OrbitSegment>& orbits,
                          const std::vector<std::vector<std::vector<double>>>& dist,
                          double epsilon, double s, int min_len, int max_len) {
  const int m = static_cast<int>(orbits.size());
  const double band = system.band();

  // greedy maximal family at each fixed length
  PackingFamily best;
  for (int n = min_len; n <= max_len; ++n) {
    std::vector<std::pair<int, int>> fam;
    for (int i = 0; i < m; ++i) {
      bool ok = true;
      for (auto [j, nj] : fam)
        ok = ok && separated(dist, min_len, i, n, j, nj, epsilon, band);
      if (ok) fam.emplace_back(i, n);
    }
    double sum = family_sum(fam, s);
    if (sum > best.sum_value) {
      best.sum_value = sum;
      best.balls = std::move(fam);
    }
  }

  // mixed-length hill climbing: shorten lengths and add leftover points
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t idx = 0; idx < best.balls.size(); ++idx) {
      for (int n = min_len; n < best.balls[idx].second; ++n) {
        auto trial = best.balls;
        trial[idx].second = n;
        if (family_separated(dist, min_len, trial, epsilon, band)) {
          best.balls = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    for (int i = 0; i < m; ++i) {
      bool used = false;
      for (auto [j, nj] : best.balls) used = used || j == i;
      if (used) continue;
      for (int n = min_len; n <= max_len; ++n) {
        bool ok = true;
        for (auto [j, nj] : best.balls)
          ok = ok && separated(dist, min_len, i, n, j, nj, epsilon, band);
        if (ok) {
          best.balls.emplace_back(i, n);
          improved = true;
          break;
        }
      }
    }
  }
  best.sum_value = family_sum(best.balls, s);
  return best;
}

}  // namespace

PackingEstimate greedy_fk_packing(const SystemSpec& system,
                                  const std::vector<OrbitSegment>& sample,
                                  double epsilon) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  const int m = static_cast<int>(sample.size());
  const double need = 2.0 * epsilon + system.band();
  auto dist = fk_distance_matrix(system, sample);

  PackingEstimate est;
  est.n = sample[0].length;
  est.epsilon = epsilon;
  for (int i = 0; i < m; ++i) {
    bool ok = true;
    for (int c : est.center_indices) ok = ok && dist[c][i] > need;
    if (ok) est.center_indices.push_back(i);
  }
  est.count = static_cast<int>(est.center_indices.size());
  for (int i : est.center_indices) est.centers.push_back(sample[i].origin);

  // maximality and separation certificates
  for (std::size_t a = 0; a < est.center_indices.size(); ++a)
    for (std::size_t b = a + 1; b < est.center_indices.size(); ++b)
      if (!(dist[est.center_indices[a]][est.center_indices[b]] >
            2.0 * epsilon))
        throw std::logic_error("packing separation certificate failed");
  for (int i = 0; i < m; ++i) {
    bool in = std::find(est.center_indices.begin(), est.center_indices.end(),
                        i) != est.center_indices.end();
    if (in) continue;
    bool blocked = false;
    for (int c : est.center_indices) blocked = blocked || dist[c][i] <= need;
    if (!blocked) throw std::logic_error("packing not maximal");
  }
  return est;
}

PackingFamily packing_value(const SystemSpec& system,
                            const std::vector<StatePoint>& sample,
                            double epsilon, double s, int min_len,
                            int max_len) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  if (min_len < 1 || min_len > max_len)
    throw std::invalid_argument("invalid length range");
  if (max_len > system.max_orbit_length())
    throw TruncationError("length range exceeds truncation budget");
  std::vector<OrbitSegment> orbits;
  orbits.reserve(sample.size());
  for (const auto& p : sample) orbits.push_back(orbit(system, p, max_len));
  auto dist = fk_distance_matrices(system, orbits, min_len, max_len);
  return best_family(system, orbits, dist, epsilon, s, min_len, max_len);
}

std::optional<PackingFamily> packing_sum_in_interval(
    const SystemSpec& system, const std::vector<StatePoint>& sample,
    double epsilon, double s, int min_len, int max_len, double a, double b) {
  if (!(a >= 0.0 && a < b)) throw std::invalid_argument("need 0 <= a < b");
  if (sample.empty()) throw std::invalid_argument("empty sample");

  // smallest N1 >= min_len with exp(-s N1) < b - a
  int n1 = -1;
  for (int n = min_len; n <= max_len; ++n)
    if (std::exp(-s * n) < b - a) {
      n1 = n;
      break;
    }
  if (n1 < 0) return std::nullopt;  // every single ball overshoots the gap

  PackingFamily fam = packing_value(system, sample, epsilon, s, n1, max_len);
  fam.sum_value = family_sum(fam.balls, s);
  if (fam.sum_value <= a) return std::nullopt;
  // discard one ball at a time; each weight is below b - a, so the sum
  // cannot jump past a while it still sits at or beyond b
  while (fam.sum_value >= b && !fam.balls.empty()) {
    fam.balls.pop_back();
    fam.sum_value = family_sum(fam.balls, s);
  }
  if (!(fam.sum_value > a && fam.sum_value < b)) return std::nullopt;
  return fam;
}

double decomposition_infimum_small(const SystemSpec& system,
                                   const std::vector<StatePoint>& sample,
                                   double epsilon, double s, int min_len,
                                   int max_len) {
  const int m = static_cast<int>(sample.size());
  if (m < 1 || m > 12)
    throw std::invalid_argument("instance too large (needs 1..12 points)");
  if (min_len < 1 || min_len > max_len)
    throw std::invalid_argument("invalid length range");
  std::vector<OrbitSegment> orbits;
  orbits.reserve(sample.size());
  for (const auto& p : sample) orbits.push_back(orbit(system, p, max_len));
  auto dist = fk_distance_matrices(system, orbits, min_len, max_len);

  const std::uint32_t full = (1u << m) - 1;
  std::vector<double> part_value(full + 1, 0.0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::vector<OrbitSegment> sub;
    std::vector<int> map;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) {
        sub.push_back(orbits[i]);
        map.push_back(i);
      }
    // slice the precomputed matrices instead of recomputing FK distances
    std::vector<std::vector<std::vector<double>>> subdist(dist.size());
    const int k = static_cast<int>(map.size());
    for (std::size_t ln = 0; ln < dist.size(); ++ln) {
      subdist[ln].assign(k, std::vector<double>(k, 0.0));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          subdist[ln][i][j] = dist[ln][map[i]][map[j]];
    }
    part_value[mask] =
        best_family(system, sub, subdist, epsilon, s, min_len, max_len)
            .sum_value;
  }

  // minimum over set partitions via subset DP
  std::vector<double> best(full + 1,
                           std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    std::uint32_t low = 1u << std::countr_zero(mask);
    for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;  // part containing the lowest element
      double v = part_value[sub] + best[mask & ~sub];
      if (v < best[mask]) best[mask] = v;
    }
  }
  return best[full];
}

CriticalExponentEstimate packing_growth_rate(const SystemSpec& system,
                                             int sample_size, double epsilon,
                                             int n_min, int n_max,
                                             std::uint64_t seed) {
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("bad n range");
  auto sample = detail::growth_sample(system, sample_size, n_max, seed);
  auto matrices = fk_distance_matrices(system, sample, n_min, n_max);
  std::vector<std::pair<int, int>> counts;
  for (int n = n_min; n <= n_max; ++n) {
    auto chosen =
        greedy_packing_indices(matrices[n - n_min], epsilon, system.band());
    counts.emplace_back(n, static_cast<int>(chosen.size()));
  }
  return growth_rate_from_counts(epsilon, counts);
}

std::vector<MdimPoint> mdim_packing_estimate(
    const SystemSpec& system, const std::vector<double>& epsilon_list,
    int sample_size, int n_min, int n_max, std::uint64_t seed) {
  for (double eps : epsilon_list)
    if (eps <= 0.0 || eps >= 1.0)
      throw std::invalid_argument("epsilon must lie in (0,1)");
  if (n_min < 1 || n_min > n_max) throw std::invalid_argument("bad n range");
  auto sample = detail::growth_sample(system, sample_size, n_max, seed);
  auto matrices = fk_distance_matrices(system, sample, n_min, n_max);
  std::vector<MdimPoint> out;
  for (double eps : epsilon_list) {
    std::vector<std::pair<int, int>> counts;
    for (int n = n_min; n <= n_max; ++n) {
      auto chosen =
          greedy_packing_indices(matrices[n - n_min], eps, system.band());
      counts.emplace_back(n, static_cast<int>(chosen.size()));
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

}  // namespace fk
