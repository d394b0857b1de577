#include <cstdio>
#include <deque>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mmi/config.hpp"
#include "mmi/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::optional<std::string> output;
  bool oracle = false;
  std::optional<std::size_t> max_modes;
  std::uint64_t seed = 12345;
  bool quiet = false;
};

mmi::RunOptions to_options(const CommonArgs& args) {
  mmi::RunOptions options;
  if (args.output) {
    options.output = *args.output;
  }
  options.force_oracle = args.oracle;
  options.max_modes = args.max_modes;
  options.seed = args.seed;
  options.quiet = args.quiet;
  return options;
}

int finish_run(const mmi::RunReport& report, bool quiet) {
  if (!quiet) {
    std::printf("wrote %s (%zu rows)\n", report.output_path.string().c_str(),
                report.rows.size());
  }
  if (report.oracle_used && report.max_abs_deviation > mmi::kOracleDeviationLimit) {
    std::fprintf(stderr, "error: oracle deviation %.3e exceeds limit %.1e\n",
                 report.max_abs_deviation, mmi::kOracleDeviationLimit);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-detection interference of two independent multimode sources"};
  app.require_subcommand(1);

  std::deque<CommonArgs> storage;
  auto add_common = [&storage](CLI::App* cmd) -> CommonArgs* {
    CommonArgs* args = &storage.emplace_back();
    cmd->add_option("config", args->config_path, "Experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--output", args->output,
                    "Write CSV here instead of the config's output path");
    cmd->add_flag("--oracle", args->oracle, "Also evaluate the brute-force oracle on every row");
    cmd->add_option("--max-modes", args->max_modes, "Override the oracle mode cap")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args->seed, "Seed for randomized oracle-check points");
    cmd->add_flag("--quiet", args->quiet, "Suppress informational output and warnings");
    return args;
  };

  int exit_code = 0;
  auto dispatch = [&exit_code](const CommonArgs& args, auto runner_fn) {
    try {
      const mmi::ExperimentConfig config = mmi::load_config(args.config_path);
      exit_code = runner_fn(config, to_options(args));
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      exit_code = 1;
    }
  };

  auto* run_cmd = app.add_subcommand("run", "Evaluate the config's evaluation spec");
  auto* run_args = add_common(run_cmd);
  run_cmd->callback([&dispatch, run_args] {
    dispatch(*run_args, [run_args](const auto& config, const auto& options) {
      return finish_run(mmi::run_config(config, options), run_args->quiet);
    });
  });

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a position sweep");
  auto* sweep_args = add_common(sweep_cmd);
  sweep_cmd->callback([&dispatch, sweep_args] {
    dispatch(*sweep_args, [sweep_args](const auto& config, const auto& options) {
      return finish_run(mmi::run_sweep(config, options), sweep_args->quiet);
    });
  });

  auto* scan_cmd =
      app.add_subcommand("overlap-scan", "Scan momentum separation of two Gaussian sources");
  auto* scan_args = add_common(scan_cmd);
  scan_cmd->callback([&dispatch, scan_args] {
    dispatch(*scan_args, [scan_args](const auto& config, const auto& options) {
      const mmi::OverlapScanReport report = mmi::overlap_scan(config, options);
      if (!scan_args->quiet) {
        std::printf("wrote %s (%zu rows)\n", report.output_path.string().c_str(),
                    report.rows.size());
      }
      return 0;
    });
  });

  auto* check_cmd =
      app.add_subcommand("oracle-check", "Compare analytic and oracle densities at random points");
  auto* check_args = add_common(check_cmd);
  check_cmd->callback([&dispatch, check_args] {
    dispatch(*check_args, [check_args](const auto& config, const auto& options) {
      const mmi::RunReport report = mmi::oracle_check(config, options);
      if (!check_args->quiet) {
        std::printf("max |deviation| = %.3e over %zu points\n", report.max_abs_deviation,
                    report.rows.size());
      }
      return finish_run(report, check_args->quiet);
    });
  });

  CLI11_PARSE(app, argc, argv);
  return exit_code;
}
