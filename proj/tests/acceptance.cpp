// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is self-contained and seeded.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fk/covering.hpp"
#include "fk/harness.hpp"
#include "fk/local_entropy.hpp"
#include "fk/metrics.hpp"
#include "fk/packing.hpp"
#include "fk/weighted.hpp"
#include "oracles.hpp"

using namespace fk;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

std::vector<SystemSpec> all_systems() {
  return {make_system("full-shift-2", {}),
          make_system("unit-cube-shift", {}),
          make_system("rotation-alpha", {{"alpha", 0.6180339887}}),
          make_system("doubling-map", {})};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 1. matching DP vs exhaustive enumeration, binary orbits, n <= 6
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  auto sys = make_system("full-shift-2", {});
  Rng rng = Rng::stream(1001, "acceptance-dp");
  int instances = 0, mismatches = 0;
  while (instances < 520) {
    int n = 1 + static_cast<int>(rng.next_below(6));
    auto a = orbit(sys, sys.sample(rng), n);
    auto b = orbit(sys, sys.sample(rng), n);
    // half the deltas hit table entries exactly to probe boundaries
    double delta;
    if (rng.next_bernoulli(0.5)) {
      delta = rng.next_double() * 1.1;
    } else {
      DistanceTable table(sys, a, b);
      delta = table.at(static_cast<int>(rng.next_below(n)),
                       static_cast<int>(rng.next_below(n)));
    }
    if (max_match_size(sys, a, b, delta) !=
        fk::testing::exhaustive_max_match(sys, a, b, delta))
      ++mismatches;
    ++instances;
  }
  double el = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%d instances, %d mismatches, %.1fs",
                instances, mismatches, el);
  report(1, mismatches == 0 && el < 30.0, "matching DP vs exhaustive oracle",
         buf);
}

// 2. exact-breakpoint FK vs dense delta sweep + the worked example
void criterion2() {
  auto sys2 = make_system("full-shift-2", {});
  auto a = orbit(sys2, parse_point(sys2, "01"), 2);
  auto b = orbit(sys2, parse_point(sys2, "10"), 2);
  bool worked = fk_distance(sys2, a, b).value == 0.5;

  int bad = 0;
  double worst = 0.0;
  for (const auto& sys : all_systems()) {
    Rng rng = Rng::stream(1002, "acceptance-sweep-" + sys.name());
    for (int t = 0; t < 200; ++t) {
      int n = 2 + static_cast<int>(rng.next_below(11));
      auto x = orbit(sys, sys.sample(rng), n);
      auto y = orbit(sys, sys.sample(rng), n);
      double exact = fk_distance(sys, x, y).value;
      double swept = fk::testing::sweep_fk_value(sys, x, y, 1e-4);
      double diff = std::fabs(exact - swept);
      worst = std::max(worst, diff);
      if (diff > 1e-4) ++bad;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "worked example %s, 800 pairs, worst sweep gap %.2e",
                worked ? "exact" : "WRONG", worst);
  report(2, worked && bad == 0, "FK exact mode vs dense sweep", buf);
}

// 3. d_FK <= sqrt(average) and average <= max, across systems and lengths
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  int violations = 0;
  for (const auto& sys : all_systems()) {
    Rng rng = Rng::stream(1003, "acceptance-chain-" + sys.name());
    const double tol = 1e-9 + sys.band();
    for (int t = 0; t < 1000; ++t) {
      StatePoint px = sys.sample(rng), py = sys.sample(rng);
      for (int n : {2, 4, 8, 16}) {
        auto x = orbit(sys, px, n);
        auto y = orbit(sys, py, n);
        double fkv = fk_value(sys, x, y);
        double dbar = average_distance(sys, x, y);
        double dn = bowen_distance(sys, x, y);
        if (fkv > std::sqrt(dbar) + tol || dbar > dn + tol ||
            fkv > dn + tol)
          ++violations;
      }
    }
  }
  double el = seconds_since(t0);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "4000 pairs x 4 lengths, %d violations, %.1fs", violations,
                el);
  report(3, violations == 0 && el < 120.0,
         "distance comparison chain", buf);
}

// 4. 5r selection: disjoint by the certified criterion, every center covered
void criterion4() {
  int bad = 0;
  auto sys_list = all_systems();
  for (int t = 0; t < 200; ++t) {
    const auto& sys = sys_list[t % sys_list.size()];
    Rng rng = Rng::stream(1004, "acceptance-5r-" + std::to_string(t));
    int m = 3 + static_cast<int>(rng.next_below(9));
    std::vector<std::pair<OrbitSegment, double>> balls;
    for (int i = 0; i < m; ++i)
      balls.emplace_back(orbit(sys, sys.sample(rng), 6),
                         0.02 + 0.3 * rng.next_double());
    auto kept = five_r_cover(sys, balls);
    bool ok = !kept.empty();
    for (std::size_t i = 0; i < kept.size() && ok; ++i)
      for (std::size_t j = i + 1; j < kept.size() && ok; ++j)
        ok = fk_value(sys, balls[kept[i]].first, balls[kept[j]].first) >
             balls[kept[i]].second + balls[kept[j]].second;
    for (int i = 0; i < m && ok; ++i) {
      bool covered = false;
      for (int j : kept)
        covered = covered ||
                  (balls[j].second >= balls[i].second &&
                   fk_value(sys, balls[j].first, balls[i].first) <=
                       5.0 * balls[j].second + sys.band());
      ok = covered;
    }
    if (!ok) ++bad;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "200 families, %d bad", bad);
  report(4, bad == 0, "5r-covering selection", buf);
}

void lemma_criterion(int id, const std::string& what,
                     const std::vector<std::pair<std::string, int>>& runs) {
  int failed = 0, total = 0;
  std::string first_fail;
  for (const auto& [which, trials] : runs)
    for (const auto& t : verify_lemma(which, trials, 1000 + id)) {
      ++total;
      if (!t.pass) {
        ++failed;
        if (first_fail.empty()) first_fail = which + ": " + t.detail;
      }
    }
  char buf[192];
  if (failed == 0)
    std::snprintf(buf, sizeof(buf), "%d trials, all hold", total);
  else
    std::snprintf(buf, sizeof(buf), "%d/%d failed; first: %s", failed, total,
                  first_fail.c_str());
  report(id, failed == 0, what, buf);
}

// 8. entropy sanity on the fair coin and the rotation
void criterion8() {
  auto t0 = std::chrono::steady_clock::now();
  auto shift = make_system("full-shift-2", {});
  auto mu = empirical_bernoulli(shift, 2000, 0.5,
                                Rng::derive(1008, "acceptance-coin"));
  auto integ = integrated_local_entropy(shift, mu, 0.1, 4, 12, 30,
                                        Rng::derive(1008, "acceptance-int"));
  bool coin_ok =
      integ.upper_integral >= 0.4 && integ.upper_integral <= 0.9;

  auto rot = make_system("rotation-alpha", {{"alpha", 0.6180339887}});
  double worst_ratio = 0.0;
  auto rmu = empirical_from_sampler(rot, 300, Rng::derive(1008, "rot-mu"));
  for (double eps : {0.2, 0.1}) {
    auto e = integrated_local_entropy(rot, rmu, eps, 8, 32, 12,
                                      Rng::derive(1008, "rot-int"));
    worst_ratio =
        std::max(worst_ratio, e.upper_integral / std::log(1.0 / eps));
  }
  auto mb = mdim_bowen_estimate(rot, {0.2, 0.1}, 150, 4, 16,
                                Rng::derive(1008, "rot-mb"));
  auto mp = mdim_packing_estimate(rot, {0.2, 0.1}, 150, 4, 16,
                                  Rng::derive(1008, "rot-mp"));
  for (const auto& p : mb) worst_ratio = std::max(worst_ratio, p.ratio);
  for (const auto& p : mp) worst_ratio = std::max(worst_ratio, p.ratio);

  double el = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "coin upper %.3f in [0.4,0.9]: %s; rotation worst ratio "
                "%.4f; %.1fs",
                integ.upper_integral, coin_ok ? "yes" : "NO", worst_ratio,
                el);
  report(8, coin_ok && worst_ratio < 0.05 && el < 300.0,
         "local entropy sanity", buf);
}

// 9. variational-principle direction on both shift systems
void criterion9() {
  ExperimentConfig cfg;
  cfg.mode = "vp-check";
  cfg.epsilon_list = {0.2, 0.1, 0.05};
  cfg.n_min = 3;
  cfg.n_max = 9;
  cfg.seed = 42;
  cfg.seed_set = true;
  cfg.slack = 0.15;

  cfg.system_name = "full-shift-2";
  cfg.sample_size = 700;
  cfg.atoms = 700;
  cfg.eval_points = 15;
  cfg.measures = {"bernoulli:0.15"};
  auto shift_rep = run_vp_check(cfg);

  cfg.system_name = "unit-cube-shift";
  cfg.sample_size = 500;
  cfg.atoms = 20;
  cfg.eval_points = 12;
  cfg.measures = {"orbit:0.2;0.7"};
  auto cube_rep = run_vp_check(cfg);

  double worst_gap = 0.0;
  for (const auto& rep : {shift_rep, cube_rep})
    for (const auto& row : rep.rows) worst_gap = std::min(worst_gap, row.gap);
  bool ok = shift_rep.all_hold && cube_rep.all_hold;
  char buf[96];
  std::snprintf(buf, sizeof(buf), "12 rows, worst gap %.3f vs slack -0.15",
                worst_gap);
  report(9, ok, "variational principle direction", buf);
}

// 10. byte-for-byte reproducibility of every artifact file
void criterion10() {
  bool ok = true;
  std::string detail = "all artifacts identical";

  auto run_twice = [&](ExperimentConfig cfg,
                       const std::vector<std::string>& files) {
    if (run_experiment(cfg) != 0) {
      ok = false;
      detail = "run failed: " + cfg.mode;
      return;
    }
    std::vector<std::string> first;
    for (const auto& f : files) first.push_back(slurp(f));
    if (run_experiment(cfg) != 0) {
      ok = false;
      detail = "rerun failed: " + cfg.mode;
      return;
    }
    for (std::size_t i = 0; i < files.size(); ++i) {
      if (slurp(files[i]) != first[i]) {
        ok = false;
        detail = "byte mismatch in " + files[i];
      }
      std::remove(files[i].c_str());
    }
  };

  ExperimentConfig cfg;
  cfg.seed = 20240817;
  cfg.seed_set = true;
  cfg.system_name = "full-shift-2";
  cfg.epsilon_list = {0.2, 0.1};
  cfg.n_min = 3;
  cfg.n_max = 7;
  cfg.sample_size = 120;
  cfg.mode = "mdim-b";
  cfg.out_path = "acc_repro_m";
  run_twice(cfg, {"acc_repro_m.csv", "acc_repro_m.json", "acc_repro_m.plot"});

  cfg.mode = "local-entropy";
  cfg.atoms = 60;
  cfg.eval_points = 6;
  cfg.measures = {"bernoulli:0.5"};
  cfg.out_path = "acc_repro_le";
  run_twice(cfg, {"acc_repro_le.csv", "acc_repro_le.json"});

  cfg.mode = "verify-lemmas";
  cfg.which = "4.1";
  cfg.trials = 3;
  cfg.out_path = "acc_repro_vl.json";
  run_twice(cfg, {"acc_repro_vl.json"});

  report(10, ok, "seeded byte-for-byte reproducibility", detail);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  lemma_criterion(5, "covering/weighted sandwich", {{"3.2", 20}});
  lemma_criterion(6, "packing interval recipe + closure monotonicity",
                  {{"4.1", 20}, {"4.2", 50}});
  lemma_criterion(7, "Frostman ball-mass constraints", {{"3.3", 20}});
  criterion8();
  criterion9();
  criterion10();
  if (g_failures) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
