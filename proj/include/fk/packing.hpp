#ifndef FK_PACKING_HPP
#define FK_PACKING_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fk/covering.hpp"
#include "fk/system.hpp"

namespace fk {

struct PackingEstimate {
  int n = 0;
  double epsilon = 0.0;
  int count = 0;
  std::vector<int> center_indices;
  std::vector<StatePoint> centers;
  double sum_value = 0.0;  // sum of exp(-n_i s) when s was supplied
};

// A disjoint family of closed FK balls: (sample index, length) per ball.
struct PackingFamily {
  std::vector<std::pair<int, int>> balls;
  double sum_value = 0.0;
};

// Greedy maximal 2-epsilon-separated subset of the sample in d_FK_n.
PackingEstimate greedy_fk_packing(const SystemSpec& system,
                                  const std::vector<OrbitSegment>& sample,
                                  double epsilon);

// Best found value of sup sum(exp(-n_i s)) over disjoint closed-ball
// families with centers in the sample and lengths in [min_len, max_len]:
// greedy at each single length plus a mixed-length local search. A lower
// bound on the true supremum.
PackingFamily packing_value(const SystemSpec& system,
                            const std::vector<StatePoint>& sample,
                            double epsilon, double s, int min_len,
                            int max_len);

// Constructive recipe behind the interval lemma: pick N1 >= min_len with
// exp(-s N1) < b - a, build a family with sum beyond b, then discard balls
// until the sum lands in (a, b). nullopt when infeasible.
std::optional<PackingFamily> packing_sum_in_interval(
    const SystemSpec& system, const std::vector<StatePoint>& sample,
    double epsilon, double s, int min_len, int max_len, double a, double b);

// Exhaustive minimization over set partitions of the sample of the summed
// packing values of the parts. Toy-scale oracle (<= 12 points).
double decomposition_infimum_small(const SystemSpec& system,
                                   const std::vector<StatePoint>& sample,
                                   double epsilon, double s, int min_len,
                                   int max_len);

CriticalExponentEstimate packing_growth_rate(const SystemSpec& system,
                                             int sample_size, double epsilon,
                                             int n_min, int n_max,
                                             std::uint64_t seed);

std::vector<MdimPoint> mdim_packing_estimate(
    const SystemSpec& system, const std::vector<double>& epsilon_list,
    int sample_size, int n_min, int n_max, std::uint64_t seed);

}  // namespace fk

#endif
