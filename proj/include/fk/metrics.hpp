#ifndef FK_METRICS_HPP
#define FK_METRICS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "fk/system.hpp"

namespace fk {

// Order-preserving partial bijection pi witnessing a match value: pairs
// (i, pi(i)) strictly increasing in both coordinates, all matched iterate
// distances below delta (+ tolerance band).
struct MatchCertificate {
  std::vector<std::pair<int, int>> pairs;
  double delta = 0.0;
  int n = 0;
};

enum class FkMode { ExactBreakpoint, Bisection };

struct FkDistance {
  double value = 0.0;
  int n = 0;
  FkMode mode = FkMode::ExactBreakpoint;
  std::optional<MatchCertificate> certificate;
  double tolerance = 0.0;
};

// Pairwise iterate distances d(T^i x, T^j y), row-major n x n. The leading
// k x k block is exactly the table of the length-k orbit prefixes, so one
// table serves a whole window of lengths.
class DistanceTable {
 public:
  DistanceTable(const SystemSpec& system, const OrbitSegment& a,
                const OrbitSegment& b);
  int size() const { return n_; }
  double at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

 private:
  int n_;
  std::vector<double> d_;
};

double bowen_distance(const SystemSpec& system, const OrbitSegment& a,
                      const OrbitSegment& b);
double average_distance(const SystemSpec& system, const OrbitSegment& a,
                        const OrbitSegment& b);

// Maximum cardinality over all order-preserving matchings whose matched
// pairs satisfy d(T^i x, T^j y) < delta. LCS-style O(n^2) dynamic program.
int max_match_size(const SystemSpec& system, const OrbitSegment& a,
                   const OrbitSegment& b, double delta);
// Restricted to the leading n x n block of the table (n = 0: full table).
int max_match_size(const DistanceTable& table, double delta, int n = 0);

double f_bar(const SystemSpec& system, const OrbitSegment& a,
             const OrbitSegment& b, double delta);
double f_bar(const DistanceTable& table, double delta, int n = 0);

// Exact-breakpoint FK value of the length-n prefixes straight from a table.
double fk_value_from_table(const DistanceTable& table, int n);

// Open-ball membership d_FK_n < epsilon in a single dynamic program:
// the predicate f_bar(eps) < eps holds exactly when the FK value is below
// eps (the crossing point itself never satisfies it).
bool fk_open_ball_from_table(const DistanceTable& table, int n, double epsilon);

FkDistance fk_distance(const SystemSpec& system, const OrbitSegment& a,
                       const OrbitSegment& b,
                       FkMode mode = FkMode::ExactBreakpoint,
                       double tol = 1e-9, bool want_certificate = false);

// Convenience: exact-breakpoint value only.
double fk_value(const SystemSpec& system, const OrbitSegment& a,
                const OrbitSegment& b);

// Open/closed FK ball membership with the system tolerance band; when the
// distance falls inside the band around epsilon the caller-declared
// conservative side wins (conservative_inside = true counts boundary as in).
bool fk_ball_contains(const SystemSpec& system, const OrbitSegment& center,
                      const OrbitSegment& y, double epsilon, bool closed,
                      bool conservative_inside = false);

// Extracts a maximum matching at threshold delta with full-table backtracking.
MatchCertificate match_certificate(const SystemSpec& system,
                                   const OrbitSegment& a,
                                   const OrbitSegment& b, double delta);

// Validates certificate invariants against the orbit pair.
bool verify_certificate(const SystemSpec& system, const MatchCertificate& cert,
                        const OrbitSegment& a, const OrbitSegment& b);

}  // namespace fk

#endif
