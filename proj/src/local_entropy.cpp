#include "fk/local_entropy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fk/metrics.hpp"

namespace fk {

namespace {

void check_measure(const EmpiricalMeasure& mu) {
  if (mu.atoms.empty()) throw std::invalid_argument("measure has no atoms");
  double sum = 0.0;
  for (const auto& [pt, w] : mu.atoms) {
    if (!(w > 0.0)) throw std::invalid_argument("atom weights must be positive");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("atom weights must sum to 1");
}

}  // namespace

EmpiricalMeasure empirical_from_sampler(const SystemSpec& system, int m,
                                        std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Rng rng = Rng::stream(seed, "empirical-sampler");
  EmpiricalMeasure mu;
  mu.source = "iid-sampler";
  const double w = 1.0 / m;
  for (int i = 0; i < m; ++i) mu.atoms.emplace_back(system.sample(rng), w);
  return mu;
}

EmpiricalMeasure empirical_bernoulli(const SystemSpec& system, int m, double p,
                                     std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Rng rng = Rng::stream(seed, "empirical-bernoulli");
  EmpiricalMeasure mu;
  mu.source = "iid-sampler";
  const double w = 1.0 / m;
  for (int i = 0; i < m; ++i)
    mu.atoms.emplace_back(system.sample_bernoulli(rng, p), w);
  return mu;
}

EmpiricalMeasure empirical_orbit(const SystemSpec& system, const StatePoint& x0,
                                 int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  EmpiricalMeasure mu;
  mu.source = "orbit-of-x0";
  const double w = 1.0 / m;
  StatePoint x = x0;
  for (int i = 0; i < m; ++i) {
    mu.atoms.emplace_back(x, w);
    if (i + 1 < m) x = system.apply_map(x);
  }
  return mu;
}

double ball_mass(const SystemSpec& system, const EmpiricalMeasure& mu,
                 const OrbitSegment& x, double epsilon, int n) {
  check_measure(mu);
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (n > x.length) throw std::invalid_argument("segment shorter than n");
  OrbitSegment xp = orbit_prefix(x, n);
  double mass = 0.0;
  for (const auto& [pt, w] : mu.atoms) {
    OrbitSegment y = orbit(system, pt, n);
    if (xp.origin.coords == y.origin.coords ||
        fk_open_ball_from_table(DistanceTable(system, xp, y), n, epsilon))
      mass += w;
  }
  return mass;
}

LocalEntropyEstimate local_entropy(const SystemSpec& system,
                                   const EmpiricalMeasure& mu,
                                   const StatePoint& x, double epsilon,
                                   int n_min, int n_max) {
  check_measure(mu);
  if (n_max - n_min + 1 < 4)
    throw std::invalid_argument("window too short (needs >= 4 lengths)");
  const double floor_mass = 1.0 / (2.0 * static_cast<double>(mu.atoms.size()));

  LocalEntropyEstimate est;
  est.point = x;
  est.epsilon = epsilon;
  est.n_min = n_min;
  est.n_max = n_max;

  OrbitSegment xo = orbit(system, x, n_max);
  // atom orbits computed once at the full window length
  std::vector<OrbitSegment> atom_orbits;
  atom_orbits.reserve(mu.atoms.size());
  for (const auto& [pt, w] : mu.atoms)
    atom_orbits.push_back(orbit(system, pt, n_max));

  // one base-distance table per atom serves the whole length window
  std::vector<double> masses(n_max - n_min + 1, 0.0);
  for (std::size_t j = 0; j < atom_orbits.size(); ++j) {
    if (xo.origin.coords == atom_orbits[j].origin.coords) {
      for (double& mss : masses) mss += mu.atoms[j].second;
      continue;
    }
    DistanceTable table(system, xo, atom_orbits[j]);
    for (int n = n_min; n <= n_max; ++n)
      if (fk_open_ball_from_table(table, n, epsilon))
        masses[n - n_min] += mu.atoms[j].second;
  }

  for (int n = n_min; n <= n_max; ++n) {
    double mass = masses[n - n_min];
    PerLengthMass row;
    row.n = n;
    if (mass <= 0.0) {
      row.mass = floor_mass;
      row.floored = true;
      est.any_floored = true;
    } else {
      row.mass = mass;
    }
    row.rate = -std::log(row.mass) / n;
    est.per_n.push_back(row);
  }

  // liminf/limsup proxied over the top half of the window
  const std::size_t start = est.per_n.size() / 2;
  est.lower = est.per_n[start].rate;
  est.upper = est.per_n[start].rate;
  for (std::size_t i = start; i < est.per_n.size(); ++i) {
    est.lower = std::min(est.lower, est.per_n[i].rate);
    est.upper = std::max(est.upper, est.per_n[i].rate);
  }
  return est;
}

IntegratedEntropy integrated_local_entropy(const SystemSpec& system,
                                           const EmpiricalMeasure& mu,
                                           double epsilon, int n_min,
                                           int n_max, int eval_points,
                                           std::uint64_t seed) {
  check_measure(mu);
  if (eval_points < 1 ||
      eval_points > static_cast<int>(mu.atoms.size()))
    throw std::invalid_argument("eval_points must lie in [1, atom count]");

  // weighted resampling of evaluation atoms
  Rng rng = Rng::stream(seed, "entropy-integration");
  std::vector<double> cdf;
  cdf.reserve(mu.atoms.size());
  double acc = 0.0;
  for (const auto& [pt, w] : mu.atoms) {
    acc += w;
    cdf.push_back(acc);
  }

  IntegratedEntropy out;
  out.eval_points = eval_points;
  double sl = 0.0, su = 0.0, sl2 = 0.0, su2 = 0.0;
  int floored = 0;
  for (int k = 0; k < eval_points; ++k) {
    double u = rng.next_double() * acc;
    std::size_t idx =
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    if (idx >= mu.atoms.size()) idx = mu.atoms.size() - 1;
    auto est = local_entropy(system, mu, mu.atoms[idx].first, epsilon, n_min,
                             n_max);
    sl += est.lower;
    su += est.upper;
    sl2 += est.lower * est.lower;
    su2 += est.upper * est.upper;
    if (est.any_floored) ++floored;
  }
  const double k = eval_points;
  out.lower_integral = sl / k;
  out.upper_integral = su / k;
  if (eval_points > 1) {
    out.lower_stderr =
        std::sqrt(std::max(0.0, sl2 / k - out.lower_integral * out.lower_integral) /
                  (k - 1));
    out.upper_stderr =
        std::sqrt(std::max(0.0, su2 / k - out.upper_integral * out.upper_integral) /
                  (k - 1));
  }
  out.floored_fraction = floored / k;
  return out;
}

}  // namespace fk
