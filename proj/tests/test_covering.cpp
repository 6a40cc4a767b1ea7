#include "doctest.h"

#include <cmath>
#include <vector>

#include "fk/covering.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {

std::vector<OrbitSegment> random_segments(const SystemSpec& sys, Rng& rng,
                                          int m, int n) {
  std::vector<OrbitSegment> out;
  for (int i = 0; i < m; ++i) out.push_back(orbit(sys, sys.sample(rng), n));
  return out;
}

}  // namespace

TEST_CASE("greedy cover covers and exact cover is no larger") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(71);
  auto sample = random_segments(sys, rng, 12, 6);
  for (double eps : {0.1, 0.3, 0.6}) {
    auto greedy = greedy_fk_cover(sys, sample, eps);
    auto exact = exact_min_cover(sys, sample, eps);
    CHECK(exact.exact);
    CHECK_FALSE(greedy.exact);
    CHECK(exact.count <= greedy.count);
    auto dist = fk_distance_matrix(sys, sample);
    CHECK(exact.count == fk::testing::brute_min_cover(dist, eps));
  }
}

TEST_CASE("cover counts shrink as the radius grows") {
  auto sys = make_system("unit-cube-shift", {});
  Rng rng(73);
  auto sample = random_segments(sys, rng, 18, 5);
  int prev = 1 << 30;
  for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8}) {
    int c = exact_min_cover(sys, sample, eps).count;
    CHECK(c <= prev);
    prev = c;
  }
}

TEST_CASE("separated sets are separated, maximal, and dominate covers") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(79);
  auto sample = random_segments(sys, rng, 20, 6);
  auto dist = fk_distance_matrix(sys, sample);
  for (double eps : {0.1, 0.25, 0.5}) {
    auto sep = max_separated_set(sys, sample, eps);
    for (std::size_t i = 0; i < sep.size(); ++i)
      for (std::size_t j = i + 1; j < sep.size(); ++j)
        CHECK(dist[sep[i]][sep[j]] >= eps);
    // weak duality: an eps-separated set has at most one member per eps-ball
    CHECK(static_cast<int>(sep.size()) >=
          exact_min_cover(sys, sample, eps).count);
  }
}

TEST_CASE("5r selection is disjoint and 5r-covers every input center") {
  auto sys = make_system("unit-cube-shift", {});
  Rng rng(83);
  for (int t = 0; t < 20; ++t) {
    int m = 4 + static_cast<int>(rng.next_below(8));
    std::vector<std::pair<OrbitSegment, double>> balls;
    for (int i = 0; i < m; ++i)
      balls.emplace_back(orbit(sys, sys.sample(rng), 5),
                         0.02 + 0.3 * rng.next_double());
    auto kept = five_r_cover(sys, balls);
    REQUIRE_FALSE(kept.empty());
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b) {
        double d = fk_value(sys, balls[kept[a]].first, balls[kept[b]].first);
        CHECK(d > balls[kept[a]].second + balls[kept[b]].second);
      }
    for (int i = 0; i < m; ++i) {
      bool covered = false;
      for (int j : kept)
        covered = covered ||
                  (balls[j].second >= balls[i].second &&
                   fk_value(sys, balls[j].first, balls[i].first) <=
                       5.0 * balls[j].second + sys.band());
      CHECK(covered);
    }
  }
}

TEST_CASE("caratheodory oracle: singleton and domination") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(89);
  std::vector<StatePoint> one = {sys.sample(rng)};
  // a single point is covered by its own ball; the infimum picks the
  // longest (cheapest) length
  double v = caratheodory_value_small(sys, one, 0.2, 0.7, 2, 6);
  CHECK(v == doctest::Approx(std::exp(-6 * 0.7)));

  std::vector<StatePoint> pts;
  for (int i = 0; i < 6; ++i) pts.push_back(sys.sample(rng));
  double prev = 1e100;
  for (double s : {0.2, 0.5, 0.9, 1.4}) {
    double val = caratheodory_value_small(sys, pts, 0.15, s, 2, 5);
    CHECK(val <= prev + 1e-12);  // pointwise smaller weights, smaller inf
    CHECK(val <= 6.0 * std::exp(-2 * s) + 1e-12);
    CHECK(val > 0.0);
    prev = val;
  }
}

TEST_CASE("growth regression conventions") {
  // constant counts: flat fit, slope 0, perfect r2
  auto flat = growth_rate_from_counts(0.1, {{3, 5}, {4, 5}, {5, 5}, {6, 5}});
  CHECK(flat.s_value == 0.0);
  CHECK(flat.regression_r2 == 1.0);

  // exact exponential counts recover the rate
  std::vector<std::pair<int, int>> expo;
  for (int n = 3; n <= 9; ++n)
    expo.emplace_back(n, static_cast<int>(std::lround(std::exp(0.5 * n))));
  auto est = growth_rate_from_counts(0.1, expo);
  CHECK(est.s_value == doctest::Approx(0.5).epsilon(0.02));
  CHECK(est.regression_r2 > 0.99);

  // decreasing counts floor at zero
  auto dec = growth_rate_from_counts(0.1, {{3, 9}, {4, 7}, {5, 4}, {6, 2}});
  CHECK(dec.s_value == 0.0);
}

TEST_CASE("distance matrices share tables across the window") {
  auto sys = make_system("doubling-map", {});
  Rng rng(97);
  auto sample = random_segments(sys, rng, 8, 9);
  auto mats = fk_distance_matrices(sys, sample, 4, 9);
  REQUIRE(mats.size() == 6);
  for (int n : {4, 7, 9}) {
    auto direct = fk_distance_matrix(sys, prefix_segments(sample, n));
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j)
        CHECK(mats[n - 4][i][j] == direct[i][j]);
  }
}

TEST_CASE("rotation has no span growth") {
  auto sys = make_system("rotation-alpha", {{"alpha", 0.6180339887}});
  auto est = span_growth_rate(sys, 150, 0.1, 4, 16, 7);
  CHECK(est.s_value <= 0.05);
}

TEST_CASE("mdim proxy takes the two smallest radii") {
  auto sys = make_system("full-shift-2", {});
  auto pts = mdim_bowen_estimate(sys, {0.3, 0.15}, 120, 3, 8, 11);
  REQUIRE(pts.size() == 2);
  double expect = std::max(pts[0].ratio, pts[1].ratio);
  CHECK(mdim_proxy(pts) == doctest::Approx(expect));
  for (const auto& p : pts) {
    CHECK(p.s_value >= 0.0);
    CHECK(p.ratio == doctest::Approx(p.s_value / std::log(1.0 / p.epsilon)));
  }
}

TEST_CASE("covering argument validation") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(101);
  auto sample = random_segments(sys, rng, 4, 5);
  CHECK_THROWS(greedy_fk_cover(sys, {}, 0.1));
  CHECK_THROWS(greedy_fk_cover(sys, sample, -0.5));
  CHECK_THROWS(mdim_bowen_estimate(sys, {1.5}, 120, 3, 8, 1));
  CHECK_THROWS(span_growth_rate(sys, 120, 0.1, 6, 3, 1));
}
