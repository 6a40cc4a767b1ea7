#ifndef FK_LOCAL_ENTROPY_HPP
#define FK_LOCAL_ENTROPY_HPP

#include <string>
#include <vector>

#include "fk/system.hpp"
#include "fk/weighted.hpp"

namespace fk {

struct PerLengthMass {
  int n = 0;
  double mass = 0.0;
  double rate = 0.0;  // -log(mass)/n
  bool floored = false;
};

struct LocalEntropyEstimate {
  StatePoint point;
  double epsilon = 0.0;
  int n_min = 0;
  int n_max = 0;
  std::vector<PerLengthMass> per_n;
  double lower = 0.0;  // min over the top half of the window (liminf proxy)
  double upper = 0.0;  // max over the top half (limsup proxy)
  bool any_floored = false;
};

struct IntegratedEntropy {
  double lower_integral = 0.0;
  double upper_integral = 0.0;
  double lower_stderr = 0.0;
  double upper_stderr = 0.0;
  int eval_points = 0;
  double floored_fraction = 0.0;
};

EmpiricalMeasure empirical_from_sampler(const SystemSpec& system, int m,
                                        std::uint64_t seed);
EmpiricalMeasure empirical_bernoulli(const SystemSpec& system, int m, double p,
                                     std::uint64_t seed);
// Uniform weights on the first m orbit points of x0.
EmpiricalMeasure empirical_orbit(const SystemSpec& system, const StatePoint& x0,
                                 int m);

// Total weight of atoms y with d_FK_n(x, y) < epsilon.
double ball_mass(const SystemSpec& system, const EmpiricalMeasure& mu,
                 const OrbitSegment& x, double epsilon, int n);

LocalEntropyEstimate local_entropy(const SystemSpec& system,
                                   const EmpiricalMeasure& mu,
                                   const StatePoint& x, double epsilon,
                                   int n_min, int n_max);

// Monte-Carlo average of the local estimates over atoms drawn by weight.
IntegratedEntropy integrated_local_entropy(const SystemSpec& system,
                                           const EmpiricalMeasure& mu,
                                           double epsilon, int n_min,
                                           int n_max, int eval_points,
                                           std::uint64_t seed);

}  // namespace fk

#endif
