#ifndef FK_SYSTEM_HPP
#define FK_SYSTEM_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fk/rng.hpp"

namespace fk {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point of the state space. For shift systems coords holds a truncated
// symbol (or real) sequence; for circle maps a single real in [0,1).
struct StatePoint {
  std::vector<double> coords;
};

enum class SystemKind { FullShift, UnitCubeShift, Rotation, Doubling };

// Orbit iteration on a shift consumes truncation budget (each step drops one
// coordinate). kPrecisionHorizon is the minimum tail that must survive the
// last iterate so every base distance is computable within the error bound.
inline constexpr int kPrecisionHorizon = 32;

// A built-in dynamical system: the map T, the base metric d and a seeded
// sampler. Immutable after construction; all member functions are pure.
class SystemSpec {
 public:
  static SystemSpec make(const std::string& name,
                         const std::map<std::string, double>& params);

  const std::string& name() const { return name_; }
  SystemKind kind() const { return kind_; }
  int truncation_length() const { return truncation_; }
  int alphabet_size() const { return alphabet_; }
  double rotation_angle() const { return alpha_; }

  // Truncation-induced absolute error on base_distance.
  double distance_error_bound() const { return error_bound_; }

  // Symmetric tolerance band applied to strict-inequality comparisons
  // downstream. Never below one float ulp of the unit diameter.
  double band() const;

  StatePoint apply_map(const StatePoint& x) const;
  double base_distance(const StatePoint& x, const StatePoint& y) const;

  // Uniform sampler (Lebesgue for maps, uniform product for shifts).
  StatePoint sample(Rng& rng) const;

  // Bernoulli(p) product sampler; full-shift-2 only.
  StatePoint sample_bernoulli(Rng& rng, double p) const;

  // Largest orbit length supported at the declared error bound.
  int max_orbit_length() const;

 private:
  std::string name_;
  SystemKind kind_ = SystemKind::FullShift;
  int truncation_ = 0;  // L; 0 for the circle maps
  int alphabet_ = 2;
  double alpha_ = 0.0;
  double error_bound_ = 0.0;
};

// Cached finite orbit (x, Tx, ..., T^{n-1}x).
struct OrbitSegment {
  StatePoint origin;
  int length = 0;
  std::vector<StatePoint> points;
};

SystemSpec make_system(const std::string& name,
                       const std::map<std::string, double>& params);

OrbitSegment orbit(const SystemSpec& system, const StatePoint& x, int n);

// First n points of a cached segment as a segment of its own.
OrbitSegment orbit_prefix(const OrbitSegment& seg, int n);
std::vector<OrbitSegment> prefix_segments(const std::vector<OrbitSegment>& sample,
                                          int n);

// Parses a point literal: for shifts a symbol string like "0101" (repeated
// cyclically to the truncation length) or comma-separated reals; for circle
// maps a single real.
StatePoint parse_point(const SystemSpec& system, const std::string& text);

double arc_distance(double x, double y);

}  // namespace fk

#endif
