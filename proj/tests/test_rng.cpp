#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fk/rng.hpp"

using fk::Rng;

TEST_CASE("same seed and stream reproduce the sequence") {
  Rng a = Rng::stream(42, "alpha");
  Rng b = Rng::stream(42, "alpha");
  for (int i = 0; i < 100; ++i) CHECK(a.next_raw() == b.next_raw());
}

TEST_CASE("distinct streams decouple") {
  Rng a = Rng::stream(42, "alpha");
  Rng b = Rng::stream(42, "beta");
  int same = 0;
  for (int i = 0; i < 64; ++i)
    if (a.next_raw() == b.next_raw()) ++same;
  CHECK(same == 0);
}

TEST_CASE("derive is stable across calls") {
  CHECK(Rng::derive(7, "x") == Rng::derive(7, "x"));
  CHECK(Rng::derive(7, "x") != Rng::derive(8, "x"));
  CHECK(Rng::derive(7, "x") != Rng::derive(7, "y"));
}

TEST_CASE("next_double stays in the unit interval") {
  Rng r(123);
  for (int i = 0; i < 10000; ++i) {
    double u = r.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("next_below respects the bound") {
  Rng r(5);
  for (int i = 0; i < 10000; ++i) CHECK(r.next_below(7) < 7);
}

TEST_CASE("bernoulli hit rate is sane") {
  Rng r(9);
  int hits = 0;
  for (int i = 0; i < 20000; ++i)
    if (r.next_bernoulli(0.25)) ++hits;
  CHECK(hits > 4500);
  CHECK(hits < 5500);
}
