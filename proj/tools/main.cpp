// curveflow command line:
//   curveflow run <config-path>
//   curveflow evolve|steady|analyze|render [--config path] [--key value ...]
// Flags mirror the config keys and override file values. CURVEFLOW_OUT
// overrides out_dir.

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "curveflow/errors.hpp"
#include "curveflow/io.hpp"

namespace {

struct FlagSet {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
};

void add_key_flags(CLI::App* cmd, FlagSet& flags) {
  cmd->add_option("--config", flags.config_path, "config file providing base values");
  static const char* const keys[] = {"n",       "dt",           "t_end",        "scheme",
                                     "record_every", "convexity_policy", "forcing",  "initial",
                                     "xi",      "grad_weight",  "pinning",      "residual_tol",
                                     "max_iters", "out_dir",    "formats",      "seed"};
  for (const char* key : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + key,
        [&flags, key](const std::string& value) { flags.overrides.emplace_back(key, value); },
        std::string("config key ") + key);
  }
}

int run_subcommand(const std::string& mode, const FlagSet& flags) {
  std::vector<std::pair<std::string, std::string>> entries;
  if (!flags.config_path.empty()) entries = curveflow::read_config_entries(flags.config_path);
  entries.emplace_back("mode", mode);
  for (const auto& kv : flags.overrides) entries.push_back(kv);
  return curveflow::run(curveflow::build_config(entries));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-harmonic flow of convex planar curves on the support function"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* cmd_run = app.add_subcommand("run", "execute a scenario from a config file");
  cmd_run->add_option("config", config_path, "path to key=value config file")->required();

  FlagSet evolve_flags, steady_flags, analyze_flags, render_flags;
  CLI::App* cmd_evolve = app.add_subcommand("evolve", "time-integrate the flow");
  add_key_flags(cmd_evolve, evolve_flags);
  CLI::App* cmd_steady = app.add_subcommand("steady", "solve the steady equation");
  add_key_flags(cmd_steady, steady_flags);
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "diagnostics of one state");
  add_key_flags(cmd_analyze, analyze_flags);
  CLI::App* cmd_render = app.add_subcommand("render", "write the curve as SVG");
  add_key_flags(cmd_render, render_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) return curveflow::run(curveflow::load_config(config_path));
    if (cmd_evolve->parsed()) return run_subcommand("evolve", evolve_flags);
    if (cmd_steady->parsed()) return run_subcommand("steady", steady_flags);
    if (cmd_analyze->parsed()) return run_subcommand("analyze", analyze_flags);
    if (cmd_render->parsed()) return run_subcommand("render", render_flags);
  } catch (const curveflow::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
