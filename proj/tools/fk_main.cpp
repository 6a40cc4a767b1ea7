#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fk/harness.hpp"

namespace {

struct RawArgs {
  std::string config;
  std::vector<std::pair<std::string, std::string>> overrides;
};

// every experiment key is exposed as a flag; flags override the config file
void add_common_flags(CLI::App* sub, RawArgs& raw) {
  sub->add_option("--config", raw.config, "key=value config file");
  auto capture = [&raw](const std::string& key) {
    return [&raw, key](const std::string& v) {
      raw.overrides.emplace_back(key, v);
      return true;
    };
  };
  for (const char* key :
       {"system", "k", "L", "alpha", "eps", "n_min", "n_max", "samples",
        "atoms", "eval_points", "measures", "seed", "out", "slack", "which",
        "trials", "x", "y", "n"})
    sub->add_option_function<std::string>("--" + std::string(key),
                                          capture(key));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Feldman-Katok orbit metrics, covering/packing growth rates "
               "and local entropy estimators"};
  app.require_subcommand(1);

  const std::vector<std::string> modes = {
      "dist",   "cover",         "pack",     "mdim-b",
      "mdim-p", "local-entropy", "vp-check", "verify-lemmas"};
  std::map<std::string, RawArgs> raw;
  for (const auto& m : modes) {
    CLI::App* sub = app.add_subcommand(m);
    add_common_flags(sub, raw[m]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  const RawArgs& args = raw[mode];
  try {
    fk::ExperimentConfig cfg;
    if (!args.config.empty())
      cfg = fk::parse_config_file(args.config, mode);
    else
      cfg.mode = mode;
    for (const auto& [key, value] : args.overrides)
      fk::apply_override(cfg, key, value);
    return fk::run_experiment(cfg);
  } catch (const fk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fk::VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const fk::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 4;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource exhausted\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant failed: " << e.what() << "\n";
    return 3;
  }
}
