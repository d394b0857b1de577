#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mmi/config.hpp"
#include "mmi/interference.hpp"

namespace mmi {

/// Command-line overrides layered on top of the config file.
struct RunOptions {
  std::optional<std::filesystem::path> output;
  bool force_oracle = false;
  std::optional<std::size_t> max_modes;
  std::uint64_t seed = 12345;
  bool quiet = false;
};

/// One emitted CSV row. total is the exact floating-point sum
/// term_mu_mu + term_eta_eta + interference (left to right), and the CSV
/// round-trips doubles, so the identity survives into the file.
struct ResultRow {
  Vec position{};
  double time = 0.0;
  double total = 0.0;
  double term_mu_mu = 0.0;
  double term_eta_eta = 0.0;
  double interference = 0.0;
  std::optional<double> oracle_total;
  std::optional<double> abs_deviation;
};

struct RunReport {
  std::filesystem::path output_path;
  std::vector<ResultRow> rows;
  bool oracle_used = false;
  double max_abs_deviation = 0.0;
  double max_phase_step = 0.0;
};

struct OverlapScanRow {
  double separation = 0.0;
  double abs_overlap = 0.0;
  double state_norm = 1.0;
  double max_abs_interference = 0.0;
};

struct OverlapScanReport {
  std::filesystem::path output_path;
  std::vector<OverlapScanRow> rows;
};

/// Any oracle-vs-analytic deviation above this fails the run (exit code 2).
inline constexpr double kOracleDeviationLimit = 1e-8;

/// Evaluate the config's evaluation spec and write the CSV. Row order: for
/// sweeps, times outermost, then positions in row-major lattice order.
/// Deterministic: identical config and options give byte-identical files.
/// Nothing is written on failure (temp file + rename). If the momentum grid
/// under-resolves the requested phases, a one-line warning goes to stderr
/// unless options.quiet.
RunReport run_config(const ExperimentConfig& config, const RunOptions& options);

/// run_config restricted to position-sweep configs; anything else is a
/// ValidationError.
RunReport run_sweep(const ExperimentConfig& config, const RunOptions& options);

/// For each entry of scan.separations: rebuild source_mu with its momentum
/// center displaced by the separation along the first axis, then record the
/// overlap magnitude, the state norm, and the largest |interference| over a
/// fixed position lattice at t = 0. Requires 1D Gaussian sources with equal
/// widths and equal positions; the lattice (201 points over the t = 0
/// enclosing box) is symmetric about the origin and independent of the
/// separation, so rows are directly comparable.
OverlapScanReport overlap_scan(const ExperimentConfig& config, const RunOptions& options);

/// Compare the analytic density against the brute-force oracle at
/// options-seeded random spacetime points: positions uniform over the sweep
/// box, times uniform over [min(times), max(times)]. Requires a sweep
/// evaluation spec and a grid no larger than the mode cap. The report's rows
/// carry oracle_total and abs_deviation; callers map
/// max_abs_deviation > kOracleDeviationLimit to a nonzero exit.
RunReport oracle_check(const ExperimentConfig& config, const RunOptions& options);

}  // namespace mmi
