#ifndef FK_HARNESS_HPP
#define FK_HARNESS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fk/system.hpp"
#include "fk/weighted.hpp"

namespace fk {

struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resolved experiment description. Flat key=value config file with one
// optional [section] per mode; CLI flags override file values.
struct ExperimentConfig {
  std::string mode;
  std::string system_name;
  std::map<std::string, double> system_params;
  std::vector<double> epsilon_list;
  int n_min = 4;
  int n_max = 12;
  int sample_size = 150;
  int atoms = 500;        // empirical-measure atom count
  int eval_points = 20;   // Monte-Carlo evaluation atoms
  std::vector<std::string> measures;
  std::uint64_t seed = 0;
  bool seed_set = false;  // every run must state its seed
  std::string out_path;
  double slack = 0.15;
  std::string which;  // verify-lemmas selector: 3.2 | 3.3 | 4.1 | 4.2
  int trials = 20;
  std::string x_literal, y_literal;
  int dist_n = 8;
};

// mode_hint (the CLI subcommand) selects the [section] and wins over a mode
// key in the file.
ExperimentConfig parse_config_file(const std::string& path,
                                   const std::string& mode_hint = "");
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);
void validate_config(const ExperimentConfig& cfg);

struct VpRow {
  std::string theorem;  // "bowen" or "packing"
  double epsilon = 0.0;
  double cover_side = 0.0;  // s_value / log(1/eps)
  std::vector<std::pair<std::string, double>> measure_side;  // id -> ratio
  double gap = 0.0;  // cover_side - max(measure_side)
  bool direction_holds = false;
};

struct VpReport {
  std::vector<VpRow> rows;
  bool all_hold = false;
};

VpReport run_vp_check(const ExperimentConfig& cfg);

struct LemmaTrial {
  int trial = 0;
  bool pass = false;
  std::string detail;
};

std::vector<LemmaTrial> verify_lemma(const std::string& which, int trials,
                                     std::uint64_t seed);

// Builds a measure from a descriptor: "uniform", "bernoulli:p", "orbit:x0".
EmpiricalMeasure make_measure(const SystemSpec& system,
                              const std::string& descriptor, int atoms,
                              std::uint64_t seed);

// Dispatches on cfg.mode, writes the artifact files, returns the process
// exit code (0 ok, 2 config, 3 verification, 4 truncation/resource).
int run_experiment(const ExperimentConfig& cfg);

}  // namespace fk

#endif
