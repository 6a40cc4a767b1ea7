#ifndef FK_WEIGHTED_HPP
#define FK_WEIGHTED_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fk/system.hpp"

namespace fk {

// Probability measure with finitely many atoms.
struct EmpiricalMeasure {
  std::vector<std::pair<StatePoint, double>> atoms;
  std::string source;
};

struct WeightedCoverSolution {
  double value = 0.0;
  // per candidate ball (center index, length, weight c_i > 0)
  std::vector<std::tuple<int, int, double>> items;
};

// Exact fractional covering optimum: min sum c_i exp(-n_i s) subject to
// pointwise domination of the target by the weighted candidate balls.
// Candidate balls are (center, n) for every candidate center and
// n in [min_len, max_len]. Throws when some target point lies in no ball.
WeightedCoverSolution weighted_cover_value_small(
    const SystemSpec& system, const std::vector<StatePoint>& target,
    const std::vector<StatePoint>& candidate_centers, double epsilon,
    double s, int min_len, int max_len);

struct SandwichReport {
  double m_six_eps = 0.0;   // M at radius 6*eps, exponent s+delta
  double w_value = 0.0;     // W at radius eps, exponent s
  double m_eps = 0.0;       // M at radius eps, exponent s
  bool left_holds = false;  // m_six_eps <= w_value
  bool right_holds = false; // w_value <= m_eps
};

// Both halves of the covering/weighted-covering sandwich, computed with the
// small-instance oracles. Requires N > 2 with n^2 exp(-n delta) < 1 for all
// n >= N.
SandwichReport lemma32_sandwich_check(const SystemSpec& system,
                                      const std::vector<StatePoint>& target,
                                      const std::vector<StatePoint>& centers,
                                      double epsilon, double s, double delta,
                                      int min_len, int max_len);

// Searches for probability weights on the target set satisfying the
// Frostman-type ball-mass bounds mu(B_FK_n(x,eps)) <= (1/c) exp(-s n) for
// every candidate center x and n in the window, where c is the weighted
// cover value. nullopt when the discretized constraints conflict.
std::optional<EmpiricalMeasure> frostman_measure_small(
    const SystemSpec& system, const std::vector<StatePoint>& target,
    double epsilon, double s, int min_len, int max_len);

}  // namespace fk

#endif
