#include "fk/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fk/metrics.hpp"

namespace fk {

namespace {

constexpr double kPivotTol = 1e-11;

// Dense tableau simplex for: maximize c.x subject to A x <= b, x >= 0,
// with b >= 0 (slack basis is feasible). Bland's rule, so it terminates.
// Returns the optimum; fills x and, when asked, the objective-row
// coefficients of the slack columns (the dual solution).
double simplex_max(const std::vector<std::vector<double>>& A,
                   const std::vector<double>& b, const std::vector<double>& c,
                   std::vector<double>* x_out,
                   std::vector<double>* duals_out) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = A[i][j];
    t[i][n + i] = 1.0;
    t[i][n + m] = b[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -c[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    int col = -1;
    for (int j = 0; j < n + m; ++j)
      if (t[m][j] < -kPivotTol) {
        col = j;
        break;
      }
    if (col < 0) break;
    int row = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (t[i][col] <= kPivotTol) continue;
      double ratio = t[i][n + m] / t[i][col];
      if (row < 0 || ratio < best_ratio - kPivotTol ||
          (std::fabs(ratio - best_ratio) <= kPivotTol &&
           basis[i] < basis[row])) {
        row = i;
        best_ratio = ratio;
      }
    }
    if (row < 0) throw std::runtime_error("LP unbounded");
    double piv = t[row][col];
    for (double& v : t[row]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == row) continue;
      double f = t[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  if (x_out) {
    x_out->assign(n, 0.0);
    for (int i = 0; i < m; ++i)
      if (basis[i] < n) (*x_out)[basis[i]] = t[i][n + m];
  }
  if (duals_out) {
    duals_out->assign(m, 0.0);
    for (int i = 0; i < m; ++i) (*duals_out)[i] = t[m][n + i];
  }
  return t[m][n + m];
}

struct BallFamily {
  // per ball: center index, length, weight exp(-s n), coverage mask over
  // the target points
  std::vector<int> center;
  std::vector<int> length;
  std::vector<double> weight;
  std::vector<std::uint32_t> mask;
};

BallFamily build_balls(const SystemSpec& system,
                       const std::vector<StatePoint>& target,
                       const std::vector<StatePoint>& centers, double epsilon,
                       double s, int min_len, int max_len) {
  if (target.empty() || target.size() > 15)
    throw std::invalid_argument("target must hold 1..15 points");
  if (centers.empty()) throw std::invalid_argument("no candidate centers");
  if (min_len < 1 || min_len > max_len)
    throw std::invalid_argument("invalid length window");
  if (max_len > system.max_orbit_length())
    throw TruncationError("length window exceeds truncation budget");
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");

  std::vector<OrbitSegment> t_orbits, c_orbits;
  for (const auto& p : target) t_orbits.push_back(orbit(system, p, max_len));
  for (const auto& p : centers) c_orbits.push_back(orbit(system, p, max_len));

  BallFamily fam;
  for (int n = min_len; n <= max_len; ++n) {
    auto tp = prefix_segments(t_orbits, n);
    auto cp = prefix_segments(c_orbits, n);
    for (std::size_t i = 0; i < cp.size(); ++i) {
      std::uint32_t mask = 0;
      for (std::size_t j = 0; j < tp.size(); ++j)
        if (fk_value(system, cp[i], tp[j]) < epsilon) mask |= 1u << j;
      fam.center.push_back(static_cast<int>(i));
      fam.length.push_back(n);
      fam.weight.push_back(std::exp(-s * n));
      fam.mask.push_back(mask);
    }
  }
  return fam;
}

// Exact integer cover minimum of sum exp(-n_i s) over the ball family.
double integer_cover_value(const BallFamily& fam, int target_size) {
  const std::uint32_t full = (1u << target_size) - 1;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(full + 1, inf);
  best[full] = 0.0;
  for (std::int64_t mask = full - 1; mask >= 0; --mask) {
    int p = std::countr_zero(~static_cast<std::uint32_t>(mask) & full);
    for (std::size_t bi = 0; bi < fam.mask.size(); ++bi) {
      if (!(fam.mask[bi] & (1u << p))) continue;
      double v = fam.weight[bi] + best[mask | fam.mask[bi]];
      if (v < best[mask]) best[mask] = v;
    }
  }
  return best[0];
}

void check_coverage(const BallFamily& fam, int target_size) {
  std::uint32_t reach = 0;
  for (auto m : fam.mask) reach |= m;
  for (int j = 0; j < target_size; ++j)
    if (!(reach & (1u << j)))
      throw std::invalid_argument("target point " + std::to_string(j) +
                                  " lies in no candidate ball");
}

}  // namespace

WeightedCoverSolution weighted_cover_value_small(
    const SystemSpec& system, const std::vector<StatePoint>& target,
    const std::vector<StatePoint>& candidate_centers, double epsilon,
    double s, int min_len, int max_len) {
  auto fam = build_balls(system, target, candidate_centers, epsilon, s,
                         min_len, max_len);
  const int nt = static_cast<int>(target.size());
  check_coverage(fam, nt);

  // Solve the dual (max sum y_z over A^T y <= w, y >= 0); its slack duals
  // are the optimal fractional cover weights.
  const int nb = static_cast<int>(fam.mask.size());
  std::vector<std::vector<double>> A(nb, std::vector<double>(nt, 0.0));
  for (int bi = 0; bi < nb; ++bi)
    for (int j = 0; j < nt; ++j)
      if (fam.mask[bi] & (1u << j)) A[bi][j] = 1.0;
  std::vector<double> ones(nt, 1.0);
  std::vector<double> cover_weights;
  double value = simplex_max(A, fam.weight, ones, nullptr, &cover_weights);

  WeightedCoverSolution sol;
  sol.value = value;
  for (int bi = 0; bi < nb; ++bi)
    if (cover_weights[bi] > 1e-12)
      sol.items.emplace_back(fam.center[bi], fam.length[bi],
                             cover_weights[bi]);
  return sol;
}

SandwichReport lemma32_sandwich_check(const SystemSpec& system,
                                      const std::vector<StatePoint>& target,
                                      const std::vector<StatePoint>& centers,
                                      double epsilon, double s, double delta,
                                      int min_len, int max_len) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (min_len <= 2)
    throw std::invalid_argument("hypothesis requires N > 2");
  // n^2 exp(-n delta) < 1 must hold for all n >= N; past the peak at
  // n = 2/delta the function decreases, so a finite check suffices.
  int check_to = std::max(max_len, static_cast<int>(std::ceil(2.0 / delta)) + 1);
  for (int n = min_len; n <= check_to; ++n)
    if (!(n * static_cast<double>(n) * std::exp(-delta * n) < 1.0))
      throw std::invalid_argument(
          "hypothesis n^2 exp(-n delta) < 1 fails at n = " + std::to_string(n));

  const int nt = static_cast<int>(target.size());
  auto fam_eps = build_balls(system, target, centers, epsilon, s, min_len,
                             max_len);
  check_coverage(fam_eps, nt);
  auto fam_six = build_balls(system, target, centers, 6.0 * epsilon, s + delta,
                             min_len, max_len);

  SandwichReport rep;
  rep.m_eps = integer_cover_value(fam_eps, nt);
  rep.m_six_eps = integer_cover_value(fam_six, nt);
  rep.w_value = weighted_cover_value_small(system, target, centers, epsilon,
                                           s, min_len, max_len)
                    .value;
  const double tol = 1e-9;
  rep.left_holds = rep.m_six_eps <= rep.w_value + tol;
  rep.right_holds = rep.w_value <= rep.m_eps + tol;
  return rep;
}

std::optional<EmpiricalMeasure> frostman_measure_small(
    const SystemSpec& system, const std::vector<StatePoint>& target,
    double epsilon, double s, int min_len, int max_len) {
  auto fam = build_balls(system, target, target, epsilon, s, min_len, max_len);
  const int nt = static_cast<int>(target.size());
  check_coverage(fam, nt);

  double c = weighted_cover_value_small(system, target, target, epsilon, s,
                                        min_len, max_len)
                 .value;
  if (!(c > 0.0)) throw std::invalid_argument("weighted cover value is zero");

  // max sum p_j subject to: for each ball, mass inside <= (1/c) exp(-s n)
  const int nb = static_cast<int>(fam.mask.size());
  std::vector<std::vector<double>> A(nb, std::vector<double>(nt, 0.0));
  std::vector<double> bounds(nb, 0.0);
  for (int bi = 0; bi < nb; ++bi) {
    for (int j = 0; j < nt; ++j)
      if (fam.mask[bi] & (1u << j)) A[bi][j] = 1.0;
    bounds[bi] = fam.weight[bi] / c;
  }
  std::vector<double> ones(nt, 1.0);
  std::vector<double> p;
  double total = simplex_max(A, bounds, ones, &p, nullptr);
  if (total < 1.0 - 1e-9) return std::nullopt;

  for (double& v : p) v /= total;  // scaling down preserves the bounds

  // independent re-verification of every ball-mass constraint
  for (int bi = 0; bi < nb; ++bi) {
    double mass = 0.0;
    for (int j = 0; j < nt; ++j)
      if (fam.mask[bi] & (1u << j)) mass += p[j];
    if (!(mass <= bounds[bi] + 1e-9)) return std::nullopt;
  }

  EmpiricalMeasure mu;
  mu.source = "explicit";
  double sum = 0.0;
  for (int j = 0; j < nt; ++j)
    if (p[j] > 0.0) {
      mu.atoms.emplace_back(target[j], p[j]);
      sum += p[j];
    }
  // renormalize away simplex round-off
  for (auto& [pt, w] : mu.atoms) w /= sum;
  return mu;
}

}  // namespace fk
