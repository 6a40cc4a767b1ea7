#include "fk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fk {

namespace {

void check_lengths(const OrbitSegment& a, const OrbitSegment& b) {
  if (a.length < 1 || b.length < 1)
    throw std::invalid_argument("orbit segments must be nonempty");
  if (a.length != b.length)
    throw std::invalid_argument("orbit length mismatch");
}

bool same_encoding(const OrbitSegment& a, const OrbitSegment& b) {
  return a.origin.coords == b.origin.coords;
}

}  // namespace

DistanceTable::DistanceTable(const SystemSpec& system, const OrbitSegment& a,
                             const OrbitSegment& b)
    : n_(a.length) {
  check_lengths(a, b);
  d_.resize(static_cast<std::size_t>(n_) * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      d_[static_cast<std::size_t>(i) * n_ + j] =
          system.base_distance(a.points[i], b.points[j]);
}

double bowen_distance(const SystemSpec& system, const OrbitSegment& a,
                      const OrbitSegment& b) {
  check_lengths(a, b);
  double m = 0.0;
  for (int i = 0; i < a.length; ++i)
    m = std::max(m, system.base_distance(a.points[i], b.points[i]));
  return m;
}

double average_distance(const SystemSpec& system, const OrbitSegment& a,
                        const OrbitSegment& b) {
  check_lengths(a, b);
  double s = 0.0;
  for (int i = 0; i < a.length; ++i)
    s += system.base_distance(a.points[i], b.points[i]);
  return s / a.length;
}

int max_match_size(const DistanceTable& table, double delta, int n) {
  if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
  if (n <= 0) n = table.size();
  if (n > table.size()) throw std::invalid_argument("prefix exceeds table");
  // One rolling row; this quadratic kernel is the hot path of the library.
  std::vector<int> prev(n + 1, 0), cur(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    cur[0] = 0;
    for (int j = 1; j <= n; ++j) {
      int best = std::max(prev[j], cur[j - 1]);
      int diag = prev[j - 1] + (table.at(i - 1, j - 1) < delta ? 1 : 0);
      cur[j] = std::max(best, diag);
    }
    std::swap(prev, cur);
  }
  return prev[n];
}

int max_match_size(const SystemSpec& system, const OrbitSegment& a,
                   const OrbitSegment& b, double delta) {
  check_lengths(a, b);
  return max_match_size(DistanceTable(system, a, b), delta);
}

double f_bar(const DistanceTable& table, double delta, int n) {
  if (n <= 0) n = table.size();
  return 1.0 - static_cast<double>(max_match_size(table, delta, n)) /
                   static_cast<double>(n);
}

double f_bar(const SystemSpec& system, const OrbitSegment& a,
             const OrbitSegment& b, double delta) {
  check_lengths(a, b);
  return f_bar(DistanceTable(system, a, b), delta);
}

double fk_value_from_table(const DistanceTable& table, int n) {
  if (n <= 0 || n > table.size())
    throw std::invalid_argument("bad prefix length");
  // The distinct iterate distances cut (0, inf) into intervals on which
  // f_bar is constant; f_bar(delta) - delta is strictly decreasing, so the
  // crossing of f_bar(delta) < delta is either the rational (n - m)/n inside
  // an interval or the interval's left endpoint. Comparisons keep n - m as
  // an integer: rounding 1 - m/n would misorder exact ties like 1/10.
  std::vector<double> cuts;
  cuts.reserve(static_cast<std::size_t>(n) * n + 2);
  cuts.push_back(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cuts.push_back(table.at(i, j));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(2.0 * cuts.back() + 1.0);  // sentinel: everything matches

  // intervals (cuts[i], cuts[i+1]]; thresholds just above cuts[i] admit
  // exactly the pairs with d <= cuts[i], i.e. d < cuts[i+1]
  const int r = static_cast<int>(cuts.size()) - 1;
  auto unmatched = [&](int i) {
    return n - max_match_size(table, cuts[i + 1], n);
  };
  // first interval whose f_bar value reaches its right endpoint
  int lo = 0, hi = r - 1;
  while (lo < hi) {
    int mid = (lo + hi) / 2;
    if (static_cast<double>(unmatched(mid)) <= n * cuts[mid + 1])
      hi = mid;
    else
      lo = mid + 1;
  }
  const int k = unmatched(lo);
  return static_cast<double>(k) > n * cuts[lo]
             ? static_cast<double>(k) / static_cast<double>(n)
             : cuts[lo];
}

bool fk_open_ball_from_table(const DistanceTable& table, int n,
                             double epsilon) {
  if (epsilon <= 0.0) return false;
  if (n <= 0) n = table.size();
  const int m = max_match_size(table, epsilon, n);
  // integer unmatched count versus n*epsilon; see fk_value_from_table
  return static_cast<double>(n - m) <
         static_cast<double>(n) * epsilon;
}

MatchCertificate match_certificate(const SystemSpec& system,
                                   const OrbitSegment& a,
                                   const OrbitSegment& b, double delta) {
  check_lengths(a, b);
  const int n = a.length;
  DistanceTable table(system, a, b);
  // Full table with backtracking; only used when a certificate is requested.
  std::vector<std::vector<int>> L(n + 1, std::vector<int>(n + 1, 0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      int best = std::max(L[i - 1][j], L[i][j - 1]);
      int diag = L[i - 1][j - 1] + (table.at(i - 1, j - 1) < delta ? 1 : 0);
      L[i][j] = std::max(best, diag);
    }
  MatchCertificate cert;
  cert.delta = delta;
  cert.n = n;
  int i = n, j = n;
  while (i > 0 && j > 0) {
    if (table.at(i - 1, j - 1) < delta && L[i][j] == L[i - 1][j - 1] + 1) {
      cert.pairs.emplace_back(i - 1, j - 1);
      --i;
      --j;
    } else if (L[i][j] == L[i - 1][j]) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(cert.pairs.begin(), cert.pairs.end());
  return cert;
}

bool verify_certificate(const SystemSpec& system, const MatchCertificate& cert,
                        const OrbitSegment& a, const OrbitSegment& b) {
  if (a.length != cert.n || b.length != cert.n) return false;
  int last_i = -1, last_j = -1;
  for (auto [i, j] : cert.pairs) {
    if (i <= last_i || j <= last_j) return false;
    if (i < 0 || j < 0 || i >= cert.n || j >= cert.n) return false;
    if (!(system.base_distance(a.points[i], b.points[j]) <
          cert.delta + system.band()))
      return false;
    last_i = i;
    last_j = j;
  }
  return true;
}

FkDistance fk_distance(const SystemSpec& system, const OrbitSegment& a,
                       const OrbitSegment& b, FkMode mode, double tol,
                       bool want_certificate) {
  check_lengths(a, b);
  const int n = a.length;
  FkDistance out;
  out.n = n;
  out.mode = mode;
  out.tolerance = (mode == FkMode::Bisection) ? tol : 0.0;

  if (same_encoding(a, b)) {
    // Defined as exactly 0 for identical encodings; avoids tolerance
    // artifacts from running the dynamic program.
    if (want_certificate) {
      MatchCertificate cert;
      cert.delta = tol > 0 ? tol : 1e-12;
      cert.n = n;
      for (int i = 0; i < n; ++i) cert.pairs.emplace_back(i, i);
      out.certificate = std::move(cert);
    }
    return out;
  }

  DistanceTable table(system, a, b);
  double value;
  if (mode == FkMode::ExactBreakpoint) {
    value = fk_value_from_table(table, n);
  } else {
    if (tol <= 0.0)
      throw std::invalid_argument("bisection tolerance must be positive");
    double lo = 0.0;
    double hi = 1.0 + tol;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) hi = std::max(hi, table.at(i, j) + tol);
    while (hi - lo > tol) {
      double mid = 0.5 * (lo + hi);
      if (f_bar(table, mid, n) < mid)
        hi = mid;
      else
        lo = mid;
    }
    value = hi;
  }
  out.value = value;
  if (want_certificate) {
    double cert_delta = value + std::max(tol, system.band());
    out.certificate = match_certificate(system, a, b, cert_delta);
  }
  return out;
}

double fk_value(const SystemSpec& system, const OrbitSegment& a,
                const OrbitSegment& b) {
  return fk_distance(system, a, b).value;
}

bool fk_ball_contains(const SystemSpec& system, const OrbitSegment& center,
                      const OrbitSegment& y, double epsilon, bool closed,
                      bool conservative_inside) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  double d = fk_value(system, center, y);
  if (std::fabs(d - epsilon) <= system.band()) return conservative_inside;
  return closed ? d <= epsilon : d < epsilon;
}

}  // namespace fk
