#include "fk/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "fk/covering.hpp"
#include "fk/local_entropy.hpp"
#include "fk/metrics.hpp"
#include "fk/packing.hpp"
#include "fk/weighted.hpp"

namespace fk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as number");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': trailing junk in '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  int i = static_cast<int>(x);
  if (static_cast<double>(i) != x)
    throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
  return i;
}

std::uint64_t to_seed(const std::string& key, const std::string& v) {
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(v, &pos, 0);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse '" + v + "' as seed");
  }
  if (pos != v.size())
    throw ConfigError("key '" + key + "': trailing junk in '" + v + "'");
  return x;
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

const std::vector<std::string> kModes = {
    "dist",   "cover",         "pack",     "mdim-b",
    "mdim-p", "local-entropy", "vp-check", "verify-lemmas"};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["mode"] = c.mode;
  j["system"] = c.system_name;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : c.system_params) params[k] = v;
  j["system_params"] = params;
  j["epsilon_list"] = c.epsilon_list;
  j["n_min"] = c.n_min;
  j["n_max"] = c.n_max;
  j["sample_size"] = c.sample_size;
  j["atoms"] = c.atoms;
  j["eval_points"] = c.eval_points;
  j["measures"] = c.measures;
  j["seed"] = c.seed;
  j["slack"] = c.slack;
  if (!c.which.empty()) j["which"] = c.which;
  j["trials"] = c.trials;
  if (c.mode == "dist") {
    j["x"] = c.x_literal;
    j["y"] = c.y_literal;
    j["n"] = c.dist_n;
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << body;
}

std::string measure_label(const std::string& descriptor) { return descriptor; }

// ---- verify-lemmas trial generators ---------------------------------------

SystemSpec lemma_system() {
  return make_system("full-shift-2", {{"L", 64.0}});
}

std::vector<StatePoint> sample_points(const SystemSpec& sys, Rng& rng, int k) {
  std::vector<StatePoint> pts;
  pts.reserve(k);
  for (int i = 0; i < k; ++i) pts.push_back(sys.sample(rng));
  return pts;
}

LemmaTrial trial_sandwich(const SystemSpec& sys, int t, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "lemma-3.2-trial-" + std::to_string(t));
  const int k = 3 + static_cast<int>(rng.next_below(4));
  auto target = sample_points(sys, rng, k);
  const double eps = 0.02 + 0.05 * rng.next_double();
  const double delta = 0.9 + 0.3 * rng.next_double();
  const double s = 0.3 + 0.5 * rng.next_double();
  // smallest N > 2 past the peak of n^2 exp(-n delta) with value below 1
  int n0 = 3;
  while (n0 < 2.0 / delta ||
         !(n0 * n0 * std::exp(-n0 * delta) < 1.0))
    ++n0;
  const int n1 = n0 + 2;

  auto rep = lemma32_sandwich_check(sys, target, target, eps, s, delta, n0, n1);
  LemmaTrial out;
  out.trial = t;
  out.pass = rep.left_holds && rep.right_holds;
  out.detail = "k=" + std::to_string(k) + " eps=" + fmt(eps) +
               " s=" + fmt(s) + " delta=" + fmt(delta) +
               " N=" + std::to_string(n0) + " M6=" + fmt(rep.m_six_eps) +
               " W=" + fmt(rep.w_value) + " M=" + fmt(rep.m_eps);
  return out;
}

LemmaTrial trial_frostman(const SystemSpec& sys, int t, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "lemma-3.3-trial-" + std::to_string(t));
  const int k = 2 + static_cast<int>(rng.next_below(4));
  auto target = sample_points(sys, rng, k);
  const double eps = 0.05 + 0.05 * rng.next_double();
  const double s = 0.3 + 0.5 * rng.next_double();
  const int n0 = 3, n1 = 5;

  LemmaTrial out;
  out.trial = t;
  auto mu = frostman_measure_small(sys, target, eps, s, n0, n1);
  if (!mu) {
    out.pass = false;
    out.detail = "no feasible measure (k=" + std::to_string(k) +
                 " eps=" + fmt(eps) + " s=" + fmt(s) + ")";
    return out;
  }
  const double c =
      weighted_cover_value_small(sys, target, target, eps, s, n0, n1).value;
  double total = 0.0;
  double worst = 0.0;
  for (const auto& [pt, w] : mu->atoms) total += w;
  for (const auto& x : target)
    for (int n = n0; n <= n1; ++n) {
      double mass = ball_mass(sys, *mu, orbit(sys, x, n), eps, n);
      worst = std::max(worst, mass - std::exp(-s * n) / c);
    }
  out.pass = std::fabs(total - 1.0) <= 1e-9 && worst <= 1e-9;
  out.detail = "k=" + std::to_string(k) + " eps=" + fmt(eps) + " s=" + fmt(s) +
               " c=" + fmt(c) + " total=" + fmt(total) +
               " worst_excess=" + fmt(worst);
  return out;
}

LemmaTrial trial_interval(const SystemSpec& sys, int t, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "lemma-4.1-trial-" + std::to_string(t));
  const int k = 6 + static_cast<int>(rng.next_below(4));
  auto pts = sample_points(sys, rng, k);
  const double eps = 0.02 + 0.02 * rng.next_double();
  const double s = 0.3 + 0.3 * rng.next_double();
  const int n0 = 2, n1 = 6;

  LemmaTrial out;
  out.trial = t;
  auto full = packing_value(sys, pts, eps, s, n0, n1);
  const double a = 0.25 * full.sum_value;
  const double b = 0.55 * full.sum_value;
  auto fam = packing_sum_in_interval(sys, pts, eps, s, n0, n1, a, b);
  if (!fam) {
    out.pass = false;
    out.detail = "no family found (max_sum=" + fmt(full.sum_value) +
                 " a=" + fmt(a) + " b=" + fmt(b) + ")";
    return out;
  }
  // independent checks: sum recomputed and inside (a,b); pairwise disjoint
  double sum = 0.0;
  for (auto [i, n] : fam->balls) sum += std::exp(-s * n);
  bool sep = true;
  std::vector<OrbitSegment> orbits;
  for (const auto& p : pts) orbits.push_back(orbit(sys, p, n1));
  for (std::size_t u = 0; u < fam->balls.size() && sep; ++u)
    for (std::size_t v = u + 1; v < fam->balls.size() && sep; ++v) {
      auto [iu, nu] = fam->balls[u];
      auto [iv, nv] = fam->balls[v];
      for (int n : {nu, nv})
        sep = sep && fk_value(sys, orbit_prefix(orbits[iu], n),
                              orbit_prefix(orbits[iv], n)) > 2.0 * eps;
    }
  out.pass = sep && sum > a && sum < b && std::fabs(sum - fam->sum_value) <= 1e-12;
  out.detail = "k=" + std::to_string(k) + " eps=" + fmt(eps) + " s=" + fmt(s) +
               " a=" + fmt(a) + " b=" + fmt(b) + " sum=" + fmt(sum) +
               " balls=" + std::to_string(fam->balls.size());
  return out;
}

LemmaTrial trial_monotone(const SystemSpec& sys, int t, std::uint64_t seed) {
  Rng rng = Rng::stream(seed, "lemma-4.2-trial-" + std::to_string(t));
  const int k = 5 + static_cast<int>(rng.next_below(3));
  auto base = sample_points(sys, rng, k);
  const double e1 = 0.05 + 0.05 * rng.next_double();
  const double e2 = e1 + 0.05 + 0.05 * rng.next_double();
  const double s = 0.3 + 0.4 * rng.next_double();
  const int n0 = 2, n1 = 4;

  // enlarged set: each point plus a copy perturbed only beyond position
  // K + n1, so the FK distance between a point and its copy stays below
  // (e2 - e1) / 2 at every length in the window
  const int K =
      static_cast<int>(std::ceil(std::log2(2.0 / (e2 - e1))));
  std::vector<StatePoint> enlarged = base;
  const int L = sys.truncation_length();
  for (const auto& p : base) {
    StatePoint q = p;
    for (int idx = std::min(L - 1, K + n1); idx < L; ++idx)
      q.coords[idx] = static_cast<double>(rng.next_below(2));
    enlarged.push_back(q);
  }

  auto big = packing_value(sys, enlarged, e2, s, n0, n1);
  auto small = packing_value(sys, base, e1, s, n0, n1);
  LemmaTrial out;
  out.trial = t;
  out.pass = big.sum_value <= small.sum_value + 1e-9 + sys.band();
  out.detail = "k=" + std::to_string(k) + " eps1=" + fmt(e1) +
               " eps2=" + fmt(e2) + " s=" + fmt(s) +
               " enlarged_sum=" + fmt(big.sum_value) +
               " base_sum=" + fmt(small.sum_value);
  return out;
}

// ---- mode runners ----------------------------------------------------------

std::string points_csv(const std::vector<MdimPoint>& points) {
  std::string csv = "epsilon,n,count,s_value,ratio,r2\n";
  for (const auto& p : points)
    for (auto [n, count] : p.detail.per_n_counts)
      csv += fmt(p.epsilon) + "," + std::to_string(n) + "," +
             std::to_string(count) + "," + fmt(p.s_value) + "," +
             fmt(p.ratio) + "," + fmt(p.detail.regression_r2) + "\n";
  return csv;
}

ordered_json points_json(const std::vector<MdimPoint>& points) {
  ordered_json arr = ordered_json::array();
  for (const auto& p : points) {
    ordered_json j;
    j["epsilon"] = p.epsilon;
    j["s_value"] = p.s_value;
    j["ratio"] = p.ratio;
    j["r2"] = p.detail.regression_r2;
    ordered_json counts = ordered_json::array();
    for (auto [n, count] : p.detail.per_n_counts)
      counts.push_back({{"n", n}, {"count", count}});
    j["per_n"] = counts;
    arr.push_back(j);
  }
  return arr;
}

int run_growth_mode(const ExperimentConfig& cfg, bool packing) {
  SystemSpec sys = make_system(cfg.system_name, cfg.system_params);
  auto points = packing
                    ? mdim_packing_estimate(sys, cfg.epsilon_list,
                                            cfg.sample_size, cfg.n_min,
                                            cfg.n_max, cfg.seed)
                    : mdim_bowen_estimate(sys, cfg.epsilon_list,
                                          cfg.sample_size, cfg.n_min,
                                          cfg.n_max, cfg.seed);
  const std::string base = cfg.out_path.empty() ? "fk-out" : cfg.out_path;
  write_text_file(base + ".csv", points_csv(points));

  ordered_json j;
  j["config"] = config_json(cfg);
  j["points"] = points_json(points);
  const bool mdim = cfg.mode == "mdim-b" || cfg.mode == "mdim-p";
  if (mdim) {
    j["mdim_proxy"] = mdim_proxy(points);
    std::string plot;
    for (const auto& p : points)
      plot += fmt(p.epsilon) + " " + fmt(p.ratio) + "\n";
    write_text_file(base + ".plot", plot);
  }
  write_text_file(base + ".json", j.dump(2) + "\n");

  for (const auto& p : points)
    std::cout << "epsilon=" << fmt(p.epsilon) << " s=" << fmt(p.s_value)
              << " ratio=" << fmt(p.ratio)
              << " r2=" << fmt(p.detail.regression_r2) << "\n";
  if (mdim) std::cout << "mdim_proxy=" << fmt(mdim_proxy(points)) << "\n";
  return 0;
}

int run_dist(const ExperimentConfig& cfg) {
  SystemSpec sys = make_system(cfg.system_name, cfg.system_params);
  if (cfg.x_literal.empty() || cfg.y_literal.empty())
    throw ConfigError("dist mode needs both x and y point literals");
  OrbitSegment a = orbit(sys, parse_point(sys, cfg.x_literal), cfg.dist_n);
  OrbitSegment b = orbit(sys, parse_point(sys, cfg.y_literal), cfg.dist_n);

  auto exact = fk_distance(sys, a, b, FkMode::ExactBreakpoint, 1e-9, true);
  auto bis = fk_distance(sys, a, b, FkMode::Bisection, 1e-9, false);
  double dn = bowen_distance(sys, a, b);
  double dbar = average_distance(sys, a, b);
  bool cert_ok =
      exact.certificate && verify_certificate(sys, *exact.certificate, a, b);
  const double band = sys.band();
  bool chain = exact.value <= std::sqrt(dbar) + 1e-9 + band &&
               exact.value <= dn + 1e-9 + band && dbar <= dn + 1e-9 + band;

  ordered_json j;
  j["config"] = config_json(cfg);
  j["n"] = cfg.dist_n;
  j["fk_exact"] = exact.value;
  j["fk_bisection"] = bis.value;
  j["bisection_tolerance"] = bis.tolerance;
  j["bowen"] = dn;
  j["average"] = dbar;
  j["certificate_verified"] = cert_ok;
  j["chain_holds"] = chain;
  if (exact.certificate) {
    ordered_json pairs = ordered_json::array();
    for (auto [i, k] : exact.certificate->pairs) pairs.push_back({i, k});
    j["certificate"] = {{"delta", exact.certificate->delta},
                        {"pairs", pairs}};
  }
  if (!cfg.out_path.empty()) write_text_file(cfg.out_path, j.dump(2) + "\n");

  std::cout << "fk_exact=" << fmt(exact.value)
            << " fk_bisection=" << fmt(bis.value) << " bowen=" << fmt(dn)
            << " average=" << fmt(dbar)
            << " certificate=" << (cert_ok ? "ok" : "FAILED")
            << " chain=" << (chain ? "ok" : "FAILED") << "\n";
  if (!cert_ok || !chain)
    throw VerificationError("distance invariants failed");
  return 0;
}

int run_local_entropy(const ExperimentConfig& cfg) {
  SystemSpec sys = make_system(cfg.system_name, cfg.system_params);
  if (cfg.measures.empty())
    throw ConfigError("local-entropy mode needs at least one measure");

  std::string csv =
      "measure,epsilon,lower,upper,lower_stderr,upper_stderr,"
      "floored_fraction\n";
  ordered_json rows = ordered_json::array();
  for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
    const std::string& desc = cfg.measures[mi];
    std::uint64_t mseed =
        Rng::derive(cfg.seed, "measure-" + std::to_string(mi));
    EmpiricalMeasure mu = make_measure(sys, desc, cfg.atoms, mseed);
    for (double eps : cfg.epsilon_list) {
      auto est = integrated_local_entropy(sys, mu, eps, cfg.n_min, cfg.n_max,
                                          cfg.eval_points, mseed);
      csv += measure_label(desc) + "," + fmt(eps) + "," +
             fmt(est.lower_integral) + "," + fmt(est.upper_integral) + "," +
             fmt(est.lower_stderr) + "," + fmt(est.upper_stderr) + "," +
             fmt(est.floored_fraction) + "\n";
      ordered_json r;
      r["measure"] = desc;
      r["epsilon"] = eps;
      r["lower_integral"] = est.lower_integral;
      r["upper_integral"] = est.upper_integral;
      r["lower_stderr"] = est.lower_stderr;
      r["upper_stderr"] = est.upper_stderr;
      r["floored_fraction"] = est.floored_fraction;
      r["lower_ratio"] = est.lower_integral / std::log(1.0 / eps);
      r["upper_ratio"] = est.upper_integral / std::log(1.0 / eps);
      rows.push_back(r);
      std::cout << desc << " epsilon=" << fmt(eps)
                << " lower=" << fmt(est.lower_integral)
                << " upper=" << fmt(est.upper_integral)
                << " floored=" << fmt(est.floored_fraction) << "\n";
    }
  }
  const std::string base = cfg.out_path.empty() ? "fk-out" : cfg.out_path;
  write_text_file(base + ".csv", csv);
  ordered_json j;
  j["config"] = config_json(cfg);
  j["estimates"] = rows;
  write_text_file(base + ".json", j.dump(2) + "\n");
  return 0;
}

int run_verify_lemmas(const ExperimentConfig& cfg) {
  std::vector<std::string> which =
      cfg.which.empty() ? std::vector<std::string>{"3.2", "3.3", "4.1", "4.2"}
                        : std::vector<std::string>{cfg.which};
  ordered_json j;
  j["config"] = config_json(cfg);
  ordered_json all = ordered_json::object();
  bool ok = true;
  for (const auto& w : which) {
    auto trials = verify_lemma(w, cfg.trials, cfg.seed);
    ordered_json arr = ordered_json::array();
    int passed = 0;
    for (const auto& t : trials) {
      if (t.pass) ++passed;
      ok = ok && t.pass;
      arr.push_back({{"trial", t.trial}, {"pass", t.pass},
                     {"detail", t.detail}});
    }
    all[w] = arr;
    std::cout << "lemma " << w << ": " << passed << "/" << trials.size()
              << " trials passed\n";
  }
  j["trials"] = all;
  j["all_pass"] = ok;
  if (!cfg.out_path.empty())
    write_text_file(cfg.out_path, j.dump(2) + "\n");
  if (!ok) throw VerificationError("lemma verification failed");
  return 0;
}

int run_vp(const ExperimentConfig& cfg) {
  VpReport rep = run_vp_check(cfg);
  ordered_json j;
  j["config"] = config_json(cfg);
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows) {
    ordered_json row;
    row["theorem"] = r.theorem;
    row["epsilon"] = r.epsilon;
    row["cover_side"] = r.cover_side;
    ordered_json ms = ordered_json::array();
    for (const auto& [id, v] : r.measure_side)
      ms.push_back({{"measure", id}, {"ratio", v}});
    row["measure_side"] = ms;
    row["gap"] = r.gap;
    row["direction_holds"] = r.direction_holds;
    rows.push_back(row);
    std::cout << r.theorem << " epsilon=" << fmt(r.epsilon)
              << " cover_side=" << fmt(r.cover_side) << " gap=" << fmt(r.gap)
              << " holds=" << (r.direction_holds ? "yes" : "NO") << "\n";
  }
  j["rows"] = rows;
  j["all_hold"] = rep.all_hold;
  if (!cfg.out_path.empty())
    write_text_file(cfg.out_path, j.dump(2) + "\n");
  if (!rep.all_hold)
    throw VerificationError("variational inequality violated beyond slack");
  return 0;
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path,
                                   const std::string& mode_hint) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  struct Entry {
    std::string section, key, value;
    int line;
  };
  std::vector<Entry> entries;
  std::string section, line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value");
    Entry e{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)),
            lineno};
    if (e.key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    entries.push_back(std::move(e));
  }

  ExperimentConfig cfg;
  if (!mode_hint.empty()) cfg.mode = mode_hint;
  auto apply_pass = [&](const std::string& sect) {
    for (const auto& e : entries) {
      if (e.section != sect) continue;
      try {
        apply_override(cfg, e.key, e.value);
      } catch (const ConfigError& err) {
        throw ConfigError(path + ":" + std::to_string(e.line) + ": " +
                          err.what());
      }
    }
  };
  apply_pass("");
  if (!mode_hint.empty()) cfg.mode = mode_hint;  // subcommand wins
  if (!cfg.mode.empty()) apply_pass(cfg.mode);
  for (const auto& e : entries)
    if (!e.section.empty() && e.section != cfg.mode &&
        std::find(kModes.begin(), kModes.end(), e.section) == kModes.end())
      throw ConfigError(path + ":" + std::to_string(e.line) +
                        ": unknown section [" + e.section + "]");
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "mode") {
    cfg.mode = value;
  } else if (key == "system") {
    cfg.system_name = value;
  } else if (key == "k" || key == "L" || key == "alpha") {
    cfg.system_params[key] = to_double(key, value);
  } else if (key == "eps") {
    cfg.epsilon_list.clear();
    for (const auto& item : split_list(value))
      cfg.epsilon_list.push_back(to_double(key, item));
    if (cfg.epsilon_list.empty())
      throw ConfigError("key 'eps': empty epsilon list");
  } else if (key == "n_min") {
    cfg.n_min = to_int(key, value);
  } else if (key == "n_max") {
    cfg.n_max = to_int(key, value);
  } else if (key == "samples") {
    cfg.sample_size = to_int(key, value);
  } else if (key == "atoms") {
    cfg.atoms = to_int(key, value);
  } else if (key == "eval_points") {
    cfg.eval_points = to_int(key, value);
  } else if (key == "measures") {
    cfg.measures = split_list(value);
  } else if (key == "seed") {
    cfg.seed = to_seed(key, value);
    cfg.seed_set = true;
  } else if (key == "out") {
    cfg.out_path = value;
  } else if (key == "slack") {
    cfg.slack = to_double(key, value);
  } else if (key == "which") {
    cfg.which = value;
  } else if (key == "trials") {
    cfg.trials = to_int(key, value);
  } else if (key == "x") {
    cfg.x_literal = value;
  } else if (key == "y") {
    cfg.y_literal = value;
  } else if (key == "n") {
    cfg.dist_n = to_int(key, value);
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

void validate_config(const ExperimentConfig& cfg) {
  if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
    throw ConfigError("unknown mode '" + cfg.mode + "'");
  if (!cfg.seed_set)
    throw ConfigError("seed is required; every run states its seed");
  if (cfg.mode != "verify-lemmas" && cfg.system_name.empty())
    throw ConfigError("mode '" + cfg.mode + "' needs a system");
  const bool needs_eps = cfg.mode == "cover" || cfg.mode == "pack" ||
                         cfg.mode == "mdim-b" || cfg.mode == "mdim-p" ||
                         cfg.mode == "local-entropy" || cfg.mode == "vp-check";
  if (needs_eps) {
    if (cfg.epsilon_list.empty())
      throw ConfigError("mode '" + cfg.mode + "' needs an eps list");
    for (double e : cfg.epsilon_list)
      if (!(e > 0.0 && e < 1.0))
        throw ConfigError("eps values must lie in (0,1)");
    if (cfg.n_min < 1 || cfg.n_min > cfg.n_max)
      throw ConfigError("need 1 <= n_min <= n_max");
    if (cfg.sample_size < 1) throw ConfigError("samples must be >= 1");
    const bool growth = cfg.mode == "mdim-b" || cfg.mode == "mdim-p" ||
                        cfg.mode == "cover" || cfg.mode == "pack" ||
                        cfg.mode == "vp-check";
    if (growth && cfg.sample_size < 100)
      throw ConfigError("growth-rate modes need samples >= 100");
  }
  if (cfg.mode == "local-entropy" || cfg.mode == "vp-check") {
    if (cfg.atoms < 2) throw ConfigError("atoms must be >= 2");
    if (cfg.eval_points < 1 || cfg.eval_points > cfg.atoms)
      throw ConfigError("eval_points must lie in [1, atoms]");
    if (cfg.n_max - cfg.n_min + 1 < 4)
      throw ConfigError("entropy window needs at least 4 lengths");
  }
  if (cfg.mode == "vp-check" && cfg.measures.empty())
    throw ConfigError("vp-check needs at least one measure");
  if (cfg.mode == "vp-check" && !(cfg.slack >= 0.0))
    throw ConfigError("slack must be nonnegative");
  if (cfg.mode == "verify-lemmas") {
    if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
    if (!cfg.which.empty() && cfg.which != "3.2" && cfg.which != "3.3" &&
        cfg.which != "4.1" && cfg.which != "4.2")
      throw ConfigError("which must be one of 3.2, 3.3, 4.1, 4.2");
  }
  if (cfg.mode == "dist" && cfg.dist_n < 1)
    throw ConfigError("n must be >= 1");
}

EmpiricalMeasure make_measure(const SystemSpec& system,
                              const std::string& descriptor, int atoms,
                              std::uint64_t seed) {
  if (descriptor == "uniform")
    return empirical_from_sampler(system, atoms, seed);
  const std::string bern = "bernoulli:";
  const std::string orb = "orbit:";
  if (descriptor.rfind(bern, 0) == 0) {
    double p = to_double("measures", descriptor.substr(bern.size()));
    if (!(p > 0.0 && p < 1.0))
      throw ConfigError("bernoulli parameter must lie in (0,1)");
    return empirical_bernoulli(system, atoms, p, seed);
  }
  if (descriptor.rfind(orb, 0) == 0)
    return empirical_orbit(
        system, parse_point(system, descriptor.substr(orb.size())), atoms);
  throw ConfigError("unknown measure descriptor '" + descriptor + "'");
}

VpReport run_vp_check(const ExperimentConfig& cfg) {
  SystemSpec sys = make_system(cfg.system_name, cfg.system_params);
  auto bowen = mdim_bowen_estimate(sys, cfg.epsilon_list, cfg.sample_size,
                                   cfg.n_min, cfg.n_max, cfg.seed);
  auto packing = mdim_packing_estimate(sys, cfg.epsilon_list, cfg.sample_size,
                                       cfg.n_min, cfg.n_max, cfg.seed);

  // one integrated estimate per (measure, epsilon), reused by both rows
  struct Cell {
    double lower_ratio, upper_ratio;
  };
  std::vector<std::vector<Cell>> cells(cfg.measures.size());
  for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
    std::uint64_t mseed =
        Rng::derive(cfg.seed, "measure-" + std::to_string(mi));
    EmpiricalMeasure mu = make_measure(sys, cfg.measures[mi], cfg.atoms, mseed);
    for (double eps : cfg.epsilon_list) {
      auto est = integrated_local_entropy(sys, mu, eps, cfg.n_min, cfg.n_max,
                                          cfg.eval_points, mseed);
      const double denom = std::log(1.0 / eps);
      cells[mi].push_back({est.lower_integral / denom,
                           est.upper_integral / denom});
    }
  }

  VpReport rep;
  rep.all_hold = true;
  for (std::size_t ei = 0; ei < cfg.epsilon_list.size(); ++ei) {
    for (int which = 0; which < 2; ++which) {
      VpRow row;
      row.theorem = which == 0 ? "bowen" : "packing";
      row.epsilon = cfg.epsilon_list[ei];
      row.cover_side = which == 0 ? bowen[ei].ratio : packing[ei].ratio;
      double worst = 0.0;
      for (std::size_t mi = 0; mi < cfg.measures.size(); ++mi) {
        double v = which == 0 ? cells[mi][ei].lower_ratio
                              : cells[mi][ei].upper_ratio;
        row.measure_side.emplace_back(cfg.measures[mi], v);
        worst = std::max(worst, v);
      }
      row.gap = row.cover_side - worst;
      row.direction_holds = row.gap >= -cfg.slack;
      rep.all_hold = rep.all_hold && row.direction_holds;
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

std::vector<LemmaTrial> verify_lemma(const std::string& which, int trials,
                                     std::uint64_t seed) {
  SystemSpec sys = lemma_system();
  std::vector<LemmaTrial> out;
  out.reserve(trials);
  for (int t = 0; t < trials; ++t) {
    if (which == "3.2")
      out.push_back(trial_sandwich(sys, t, seed));
    else if (which == "3.3")
      out.push_back(trial_frostman(sys, t, seed));
    else if (which == "4.1")
      out.push_back(trial_interval(sys, t, seed));
    else if (which == "4.2")
      out.push_back(trial_monotone(sys, t, seed));
    else
      throw ConfigError("unknown lemma selector '" + which + "'");
  }
  return out;
}

int run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  if (cfg.mode == "dist") return run_dist(cfg);
  if (cfg.mode == "cover" || cfg.mode == "mdim-b")
    return run_growth_mode(cfg, false);
  if (cfg.mode == "pack" || cfg.mode == "mdim-p")
    return run_growth_mode(cfg, true);
  if (cfg.mode == "local-entropy") return run_local_entropy(cfg);
  if (cfg.mode == "vp-check") return run_vp(cfg);
  if (cfg.mode == "verify-lemmas") return run_verify_lemmas(cfg);
  throw ConfigError("unknown mode '" + cfg.mode + "'");
}

}  // namespace fk
