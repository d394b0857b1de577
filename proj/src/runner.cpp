#include "mmi/runner.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <random>
#include <variant>

#include "mmi/dynamics.hpp"
#include "mmi/errors.hpp"
#include "mmi/fock.hpp"

namespace mmi {

namespace {

/// Full round-trip precision; parsing the text recovers the exact double.
std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_hash(std::uint64_t hash) {
  char buffer[24];
  std::snprintf(buffer, sizeof(buffer), "%016" PRIx64, hash);
  return buffer;
}

/// n evenly spaced values, endpoints included; a single point sits at lo.
std::vector<double> lattice(double lo, double hi, std::size_t n) {
  std::vector<double> values;
  values.reserve(n);
  if (n == 1) {
    values.push_back(lo);
    return values;
  }
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    values.push_back(lo + static_cast<double>(i) * step);
  }
  return values;
}

/// Row-major position lattice (last axis fastest), matching row order.
std::vector<Vec> sweep_positions(const SweepEval& spec, int dimension) {
  std::vector<std::vector<double>> axes;
  for (int a = 0; a < dimension; ++a) {
    axes.push_back(lattice(spec.lower[a], spec.upper[a], spec.points[a]));
  }
  std::size_t total = 1;
  for (const auto& axis : axes) {
    total *= axis.size();
  }
  std::vector<Vec> positions;
  positions.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Vec r{};
    std::size_t rest = flat;
    for (int a = dimension - 1; a >= 0; --a) {
      r[a] = axes[a][rest % axes[a].size()];
      rest /= axes[a].size();
    }
    positions.push_back(r);
  }
  return positions;
}

std::vector<SpacetimePoint> eval_points(const ExperimentConfig& config) {
  std::vector<SpacetimePoint> points;
  if (const auto* p = std::get_if<PointEval>(&config.eval)) {
    points.push_back({p->position, p->time});
  } else if (const auto* s = std::get_if<SweepEval>(&config.eval)) {
    const auto positions = sweep_positions(*s, config.dimension);
    points.reserve(positions.size() * s->times.size());
    for (double t : s->times) {
      for (const Vec& r : positions) {
        points.push_back({r, t});
      }
    }
  } else {
    const auto& ts = std::get<TimeSweepEval>(config.eval);
    for (double t : lattice(ts.start, ts.stop, ts.points)) {
      points.push_back({ts.position, t});
    }
  }
  return points;
}

void write_file_atomically(const std::filesystem::path& target, const std::string& body) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out << body;
    out.flush();
    if (!out.good()) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move results into place at '" + target.string() +
                  "': " + ec.message());
  }
}

std::string metadata_lines(const ExperimentConfig& config, const char* command) {
  std::string out;
  out += "# mmi results\n";
  out += "# command = ";
  out += command;
  out += "\n# config_hash = ";
  out += format_hash(config.config_hash);
  out += "\n";
  return out;
}

std::string result_header(int dimension, bool oracle) {
  static const char* axis_names[] = {"x", "y", "z"};
  std::string line;
  for (int a = 0; a < dimension; ++a) {
    line += axis_names[a];
    line += ',';
  }
  line += "time,total,term_mu_mu,term_eta_eta,interference";
  if (oracle) {
    line += ",oracle_total,abs_deviation";
  }
  line += '\n';
  return line;
}

std::string result_line(const ResultRow& row, int dimension) {
  std::string line;
  for (int a = 0; a < dimension; ++a) {
    line += format_number(row.position[a]);
    line += ',';
  }
  line += format_number(row.time);
  line += ',';
  line += format_number(row.total);
  line += ',';
  line += format_number(row.term_mu_mu);
  line += ',';
  line += format_number(row.term_eta_eta);
  line += ',';
  line += format_number(row.interference);
  if (row.oracle_total) {
    line += ',';
    line += format_number(*row.oracle_total);
    line += ',';
    line += format_number(*row.abs_deviation);
  }
  line += '\n';
  return line;
}

/// Relative outputs resolve against the working directory, per convention.
std::filesystem::path resolve_output(const ExperimentConfig& config, const RunOptions& options) {
  return options.output.value_or(config.output_path);
}

void warn_phase_step(double max_step, bool quiet) {
  if (!quiet && max_step > kPhaseStepLimit) {
    std::fprintf(stderr,
                 "warning: momentum grid under-resolves the requested phases "
                 "(max phase step %.3g rad per cell, limit %.3g); refine the grid "
                 "or shrink the evaluation window\n",
                 max_step, kPhaseStepLimit);
  }
}

RunReport evaluate_points(const ExperimentConfig& config, const RunOptions& options,
                          const std::vector<SpacetimePoint>& points, bool use_oracle,
                          const char* command) {
  const MomentumGrid grid = config.make_grid();
  const ModeDistribution eta =
      build_source(config.source_eta, grid, config.constants, "source_eta", config.base_dir);
  const ModeDistribution mu =
      build_source(config.source_mu, grid, config.constants, "source_mu", config.base_dir);
  const std::size_t max_modes = options.max_modes.value_or(config.oracle.max_modes);

  RunReport report;
  report.output_path = resolve_output(config, options);
  report.oracle_used = use_oracle;
  report.rows.reserve(points.size());

  for (const SpacetimePoint& at : points) {
    const DetectionResult det = detection_probability(eta, mu, at, config.constants);
    ResultRow row;
    row.position = at.position;
    row.time = at.time;
    row.total = det.total;
    row.term_mu_mu = det.term_mu_mu;
    row.term_eta_eta = det.term_eta_eta;
    row.interference = det.interference;
    if (use_oracle) {
      const double oracle_total =
          fock::oracle_detection_density(eta, mu, at, config.constants, max_modes);
      row.oracle_total = oracle_total;
      row.abs_deviation = std::abs(det.total - oracle_total);
      report.max_abs_deviation = std::max(report.max_abs_deviation, *row.abs_deviation);
    }
    report.max_phase_step =
        std::max(report.max_phase_step, sampling_phase_step(grid, at, config.constants));
    report.rows.push_back(std::move(row));
  }

  std::string body = metadata_lines(config, command);
  body += result_header(config.dimension, use_oracle);
  for (const ResultRow& row : report.rows) {
    body += result_line(row, config.dimension);
  }
  write_file_atomically(report.output_path, body);
  warn_phase_step(report.max_phase_step, options.quiet);
  return report;
}

}  // namespace

RunReport run_config(const ExperimentConfig& config, const RunOptions& options) {
  const bool use_oracle = config.oracle.enabled || options.force_oracle;
  return evaluate_points(config, options, eval_points(config), use_oracle, "run");
}

RunReport run_sweep(const ExperimentConfig& config, const RunOptions& options) {
  if (!std::holds_alternative<SweepEval>(config.eval)) {
    throw ValidationError("sweep requires eval.kind = sweep");
  }
  const bool use_oracle = config.oracle.enabled || options.force_oracle;
  return evaluate_points(config, options, eval_points(config), use_oracle, "sweep");
}

OverlapScanReport overlap_scan(const ExperimentConfig& config, const RunOptions& options) {
  if (config.scan_separations.empty()) {
    throw ValidationError("overlap-scan requires key 'scan.separations'");
  }
  if (config.dimension != 1) {
    throw ValidationError("overlap-scan requires dimension = 1");
  }
  const auto* eta_spec = std::get_if<GaussianSourceSpec>(&config.source_eta);
  const auto* mu_spec = std::get_if<GaussianSourceSpec>(&config.source_mu);
  if (eta_spec == nullptr || mu_spec == nullptr) {
    throw ValidationError("overlap-scan requires gaussian sources");
  }
  if (eta_spec->width != mu_spec->width) {
    throw ValidationError("overlap-scan requires equal source widths");
  }
  if (eta_spec->position != mu_spec->position) {
    throw ValidationError("overlap-scan requires equal source positions");
  }

  const MomentumGrid grid = config.make_grid();
  const ModeDistribution eta =
      build_source(config.source_eta, grid, config.constants, "source_eta", config.base_dir);

  // Shared position lattice: the t = 0 enclosing box does not depend on the
  // momentum centers, so every separation is scanned over identical points.
  const GaussianShape eta_shape{eta_spec->center, eta_spec->width, eta_spec->position};
  const PositionBox box =
      enclosing_box(std::span(&eta_shape, 1), 0.0, config.constants, config.dimension);
  const auto xs = lattice(box.lower[0], box.upper[0], 201);
  std::vector<Vec> positions;
  positions.reserve(xs.size());
  for (double x : xs) {
    positions.push_back(Vec{x, 0.0, 0.0});
  }

  OverlapScanReport report;
  report.output_path = resolve_output(config, options);
  report.rows.reserve(config.scan_separations.size());

  for (double separation : config.scan_separations) {
    Vec center = eta_spec->center;
    center[0] += separation;
    const ModeDistribution mu =
        make_gaussian(grid, center, mu_spec->width, mu_spec->position, config.constants);
    const OverlapSet set = overlap_set(eta, mu);
    OverlapScanRow row;
    row.separation = separation;
    row.abs_overlap = std::abs(set.overlap);
    row.state_norm = set.state_norm;
    for (const DetectionResult& det :
         position_sweep(eta, mu, positions, 0.0, config.constants)) {
      row.max_abs_interference = std::max(row.max_abs_interference, std::abs(det.interference));
    }
    report.rows.push_back(row);
  }

  std::string body = metadata_lines(config, "overlap-scan");
  body += "separation,abs_overlap,state_norm,max_abs_interference\n";
  for (const OverlapScanRow& row : report.rows) {
    body += format_number(row.separation);
    body += ',';
    body += format_number(row.abs_overlap);
    body += ',';
    body += format_number(row.state_norm);
    body += ',';
    body += format_number(row.max_abs_interference);
    body += '\n';
  }
  write_file_atomically(report.output_path, body);
  return report;
}

RunReport oracle_check(const ExperimentConfig& config, const RunOptions& options) {
  const auto* sweep = std::get_if<SweepEval>(&config.eval);
  if (sweep == nullptr) {
    throw ValidationError("oracle-check requires eval.kind = sweep (its box bounds the sampled "
                          "positions)");
  }
  double t_min = sweep->times.front();
  double t_max = sweep->times.front();
  for (double t : sweep->times) {
    t_min = std::min(t_min, t);
    t_max = std::max(t_max, t);
  }

  std::mt19937_64 rng(options.seed);
  auto draw = [&rng](double lo, double hi) {
    if (lo == hi) {
      return lo;
    }
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  std::vector<SpacetimePoint> points;
  points.reserve(config.oracle.points);
  for (std::size_t i = 0; i < config.oracle.points; ++i) {
    SpacetimePoint at;
    for (int a = 0; a < config.dimension; ++a) {
      at.position[a] = draw(sweep->lower[a], sweep->upper[a]);
    }
    at.time = draw(t_min, t_max);
    points.push_back(at);
  }
  return evaluate_points(config, options, points, /*use_oracle=*/true, "oracle-check");
}

}  // namespace mmi
