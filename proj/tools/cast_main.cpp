#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cast/config.hpp"
#include "cast/experiments.hpp"

namespace {

// Exit codes: 0 success, 2 config error, 3 runtime error.
constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

struct SubcommandArgs {
  std::string config_path;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAST: collective annealing by switching temperatures"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  cast::CliOptions options;
  options.progress = true;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Master seed override");
  app.add_option("--jobs", options.jobs, "Worker threads for run batches")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", options.out_dir, "Output directory");
  app.add_option("--set", options.overrides,
                 "Override a config key (key=value or section.key=value)");
  app.add_flag("!--no-progress", options.progress, "Suppress progress output");

  SubcommandArgs run_args, compare_args, sweep_args, decay_args;
  auto* run_cmd = app.add_subcommand("run", "Single optimization run");
  run_cmd->add_option("config", run_args.config_path, "Config file")->required();
  auto* compare_cmd =
      app.add_subcommand("compare", "CAST vs baseline SA convergence curves");
  compare_cmd->add_option("config", compare_args.config_path, "Config file")
      ->required();
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Full-factorial hyperparameter sweep");
  sweep_cmd->add_option("plan", sweep_args.config_path, "Plan file")->required();
  auto* decay_cmd =
      app.add_subcommand("decay-study", "Temperature decay vs reference curves");
  decay_cmd->add_option("config", decay_args.config_path, "Config file")
      ->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) options.seed_override = seed_value;

  try {
    std::string path;
    void (*body)(const cast::ConfigDoc&, const cast::CliOptions&) = nullptr;
    if (run_cmd->parsed()) {
      path = run_args.config_path;
      body = cast::cmd_run;
    } else if (compare_cmd->parsed()) {
      path = compare_args.config_path;
      body = cast::cmd_compare;
    } else if (sweep_cmd->parsed()) {
      path = sweep_args.config_path;
      body = cast::cmd_sweep;
    } else {
      path = decay_args.config_path;
      body = cast::cmd_decay_study;
    }
    cast::ConfigDoc doc = cast::parse_config_file(path);
    doc = cast::apply_overrides(std::move(doc), options.overrides);
    body(doc, options);
  } catch (const cast::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return 0;
}
