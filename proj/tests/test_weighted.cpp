#include "doctest.h"

#include <cmath>
#include <vector>

#include "fk/covering.hpp"
#include "fk/harness.hpp"
#include "fk/local_entropy.hpp"
#include "fk/weighted.hpp"

using namespace fk;

namespace {

std::vector<StatePoint> random_points(const SystemSpec& sys, Rng& rng,
                                      int m) {
  std::vector<StatePoint> out;
  for (int i = 0; i < m; ++i) out.push_back(sys.sample(rng));
  return out;
}

}  // namespace

TEST_CASE("fractional cover never beats the integer cover") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(137);
  for (int t = 0; t < 6; ++t) {
    auto pts = random_points(sys, rng, 3 + static_cast<int>(rng.next_below(3)));
    double eps = 0.05 + 0.1 * rng.next_double();
    double s = 0.3 + 0.5 * rng.next_double();
    auto w = weighted_cover_value_small(sys, pts, pts, eps, s, 3, 5);
    double m = caratheodory_value_small(sys, pts, eps, s, 3, 5);
    CHECK(w.value > 0.0);
    CHECK(w.value <= m + 1e-9);
    for (const auto& [center, len, weight] : w.items) CHECK(weight > 0.0);
  }
}

TEST_CASE("fractional cover value shrinks with the radius") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(139);
  auto pts = random_points(sys, rng, 4);
  double prev = 1e100;
  for (double eps : {0.05, 0.1, 0.2, 0.4}) {
    double v = weighted_cover_value_small(sys, pts, pts, eps, 0.6, 3, 5).value;
    CHECK(v <= prev + 1e-9);
    prev = v;
  }
}

TEST_CASE("separated uniform example satisfies the Frostman bound directly") {
  // points pairwise far apart: each ball holds exactly one of them
  auto sys = make_system("full-shift-2", {});
  std::vector<StatePoint> pts = {parse_point(sys, "0"), parse_point(sys, "1"),
                                 parse_point(sys, "01"),
                                 parse_point(sys, "10")};
  const double eps = 0.05, s = 0.4;
  const int n0 = 3, n1 = 5;
  double c = weighted_cover_value_small(sys, pts, pts, eps, s, n0, n1).value;
  EmpiricalMeasure uniform;
  for (const auto& p : pts) uniform.atoms.emplace_back(p, 0.25);
  for (const auto& p : pts)
    for (int n = n0; n <= n1; ++n) {
      double mass = ball_mass(sys, uniform, orbit(sys, p, n), eps, n);
      CHECK(mass == doctest::Approx(0.25));
      CHECK(mass <= std::exp(-s * n) / c + 1e-9);
    }
}

TEST_CASE("sandwich inequality on seeded instances") {
  auto trials = verify_lemma("3.2", 8, 2026);
  for (const auto& t : trials) {
    INFO(t.detail);
    CHECK(t.pass);
  }
}

TEST_CASE("sandwich checker rejects a bad window") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(149);
  auto pts = random_points(sys, rng, 3);
  // delta so small the N-hypothesis fails at these lengths
  CHECK_THROWS(lemma32_sandwich_check(sys, pts, pts, 0.05, 0.5, 0.01, 3, 5));
  CHECK_THROWS(lemma32_sandwich_check(sys, pts, pts, 0.05, 0.5, 1.0, 2, 5));
}

TEST_CASE("frostman measures verify their own constraints") {
  auto trials = verify_lemma("3.3", 8, 2027);
  for (const auto& t : trials) {
    INFO(t.detail);
    CHECK(t.pass);
  }
}

TEST_CASE("frostman measure is a probability measure on the target") {
  auto sys = make_system("full-shift-2", {});
  Rng rng(151);
  auto pts = random_points(sys, rng, 3);
  auto mu = frostman_measure_small(sys, pts, 0.08, 0.5, 3, 5);
  REQUIRE(mu.has_value());
  double total = 0.0;
  for (const auto& [pt, w] : mu->atoms) {
    CHECK(w > 0.0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uncoverable target points are an error") {
  auto sys = make_system("full-shift-2", {});
  std::vector<StatePoint> target = {parse_point(sys, "0"),
                                    parse_point(sys, "1")};
  std::vector<StatePoint> centers = {parse_point(sys, "0")};
  // the all-ones point is far from the only candidate center
  CHECK_THROWS(
      weighted_cover_value_small(sys, target, centers, 0.05, 0.5, 3, 5));
}
