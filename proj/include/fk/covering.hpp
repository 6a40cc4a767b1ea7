#ifndef FK_COVERING_HPP
#define FK_COVERING_HPP

#include <utility>
#include <vector>

#include "fk/metrics.hpp"
#include "fk/system.hpp"

namespace fk {

struct CoverEstimate {
  int n = 0;
  double epsilon = 0.0;
  int count = 0;
  bool exact = false;
  std::vector<int> center_indices;
  std::vector<StatePoint> centers;
};

struct CriticalExponentEstimate {
  double epsilon = 0.0;
  double s_value = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<std::pair<int, int>> per_n_counts;  // (n, count)
  double regression_r2 = 0.0;
};

struct MdimPoint {
  double epsilon = 0.0;
  double s_value = 0.0;
  double ratio = 0.0;  // s_value / log(1/epsilon)
  CriticalExponentEstimate detail;
};

// Symmetric matrix of pairwise FK distances between sample segments at their
// common length (exact-breakpoint mode).
std::vector<std::vector<double>> fk_distance_matrix(
    const SystemSpec& system, const std::vector<OrbitSegment>& sample);

// Matrices for every prefix length in [n_min, n_max], sharing one base
// distance table per pair. Index [n - n_min][i][j].
std::vector<std::vector<std::vector<double>>> fk_distance_matrices(
    const SystemSpec& system, const std::vector<OrbitSegment>& sample,
    int n_min, int n_max);

// Greedy set cover by sample-centered FK epsilon-balls; ties broken by
// lowest sample index. Cover property is verified before returning.
CoverEstimate greedy_fk_cover(const SystemSpec& system,
                              const std::vector<OrbitSegment>& sample,
                              double epsilon);

// Optimal set cover over sample-centered balls, branch and bound.
CoverEstimate exact_min_cover(const SystemSpec& system,
                              const std::vector<OrbitSegment>& sample,
                              double epsilon, int limit = 20);

// Greedy maximal subset with pairwise FK distance >= epsilon; maximality is
// verified (every excluded point is within epsilon of a chosen one).
std::vector<int> max_separated_set(const SystemSpec& system,
                                   const std::vector<OrbitSegment>& sample,
                                   double epsilon);

// Vitali-style subfamily selection: greedily keeps, in descending radius
// order, balls whose centers are farther than r_i + r_j from every kept
// center. Every input center then lies within 5 r_j of a kept center with
// r_j at least its own radius.
std::vector<int> five_r_cover(
    const SystemSpec& system,
    const std::vector<std::pair<OrbitSegment, double>>& balls);

// Exact minimization of sum(exp(-n_i s)) over mixed-length covers with
// centers in the sample and n_i in [min_len, max_len]. Toy-scale oracle.
double caratheodory_value_small(const SystemSpec& system,
                                const std::vector<StatePoint>& sample,
                                double epsilon, double s, int min_len,
                                int max_len);

// Growth rate of greedy cover counts across n; slope of log(count) against
// n, taking the max over suffix windows as a limsup proxy.
CriticalExponentEstimate span_growth_rate(const SystemSpec& system,
                                          int sample_size, double epsilon,
                                          int n_min, int n_max,
                                          std::uint64_t seed);

std::vector<MdimPoint> mdim_bowen_estimate(
    const SystemSpec& system, const std::vector<double>& epsilon_list,
    int sample_size, int n_min, int n_max, std::uint64_t seed);

// Shared regression helper: max suffix-window least-squares slope of
// log(count) vs n, slope floored at 0.
CriticalExponentEstimate growth_rate_from_counts(
    double epsilon, const std::vector<std::pair<int, int>>& per_n_counts);

// Proxy for the limsup over epsilon: max ratio over the two smallest
// epsilon values.
double mdim_proxy(const std::vector<MdimPoint>& points);

namespace detail {
// Seeded sample of orbit segments for the growth-rate estimators.
std::vector<OrbitSegment> growth_sample(const SystemSpec& system,
                                        int sample_size, int n_max,
                                        std::uint64_t seed);
}  // namespace detail

}  // namespace fk

#endif
