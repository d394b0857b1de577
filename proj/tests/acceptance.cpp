// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Every check compares a production code path against either an
// independent reference implementation (tests/reference.hpp), a closed form,
// or an exact algebraic identity; tolerances are part of the contract.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmi/constants.hpp"
#include "mmi/dynamics.hpp"
#include "mmi/fock.hpp"
#include "mmi/grid.hpp"
#include "mmi/interference.hpp"
#include "mmi/modes.hpp"

#include "reference.hpp"

namespace fs = std::filesystem;

using mmi::Complex;
using mmi::DetectionResult;
using mmi::GaussianShape;
using mmi::ModeDistribution;
using mmi::MomentumGrid;
using mmi::SpacetimePoint;
using mmi::Vec;

namespace {

const mmi::PhysicalConstants kUnits{};

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* pattern, ...) {
  char buffer[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buffer, sizeof buffer, pattern, args);
  va_end(args);
  return buffer;
}

ModeDistribution random_four_mode(const MomentumGrid& grid, std::mt19937_64& rng) {
  std::vector<std::size_t> indices(grid.size());
  for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  std::shuffle(indices.begin(), indices.end(), rng);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::pair<std::size_t, Complex>> entries;
  for (int k = 0; k < 4; ++k) {
    entries.emplace_back(indices[k], Complex(u(rng), u(rng)));
  }
  return mmi::from_modes(grid, entries);
}

// 1. Analytic single-detection density vs the brute-force ladder-operator
//    expectation, on random discrete distributions.
Outcome oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  double max_abs = 0.0;
  double worst_ratio = 0.0;
  int points = 0;
  for (int pair = 0; pair < 20; ++pair) {
    const int mode_count = 2 + pair % 7;
    const MomentumGrid grid = MomentumGrid::line(-3.0, 3.0, mode_count);
    const ModeDistribution eta = mmiref::random_distribution(grid, rng);
    const ModeDistribution mu = mmiref::random_distribution(grid, rng);
    for (int i = 0; i < 100; ++i) {
      const SpacetimePoint at{Vec{ux(rng), 0.0, 0.0}, ut(rng)};
      const double analytic = mmi::detection_probability(eta, mu, at, kUnits).total;
      const double oracle = mmi::fock::oracle_detection_density(eta, mu, at, kUnits);
      const double deviation = std::abs(analytic - oracle);
      const double tolerance = std::max(1e-14, 1e-10 * std::abs(analytic));
      max_abs = std::max(max_abs, deviation);
      worst_ratio = std::max(worst_ratio, deviation / tolerance);
      ++points;
    }
  }
  const double seconds = std::chrono::duration<double>(
    std::chrono::steady_clock::now() - start).count();
  const bool ok = worst_ratio <= 1.0 && seconds < 30.0;
  return {ok, fmt("max |analytic - oracle| = %.2e over %d points, %d pairs, M in [2,8], %.1f s",
                  max_abs, points, 20, seconds)};
}

// 2. Identical sources double the single-packet density.
Outcome identical_source_identity() {
  const MomentumGrid grid = MomentumGrid::line(-10.0, 10.0, 512);
  const ModeDistribution dist =
      mmi::make_gaussian(grid, Vec{0.7, 0.0, 0.0}, 1.0, Vec{-0.4, 0.0, 0.0});
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> ux(-8.0, 8.0);
  std::uniform_real_distribution<double> ut(0.0, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const SpacetimePoint at{Vec{ux(rng), 0.0, 0.0}, ut(rng)};
    const double total = mmi::detection_probability(dist, dist, at, kUnits).total;
    const double twice = 2.0 * std::norm(mmi::propagate(dist, at, kUnits));
    worst = std::max(worst, std::abs(total - twice));
  }
  return {worst < 1e-10, fmt("max |total - 2|psi|^2| = %.2e over 50 points, t in [0,5]", worst)};
}

// 3. Sources 20 sigma apart in momentum share no modes: the cross term
//    vanishes and the densities add independently.
Outcome no_common_modes_nullity() {
  const MomentumGrid grid = MomentumGrid::line(-16.0, 16.0, 1024);
  const ModeDistribution eta = mmi::make_gaussian(grid, Vec{-10.0, 0.0, 0.0}, 1.0);
  const ModeDistribution mu = mmi::make_gaussian(grid, Vec{10.0, 0.0, 0.0}, 1.0);
  const GaussianShape shapes[] = {{Vec{-10.0, 0.0, 0.0}, 1.0, Vec{}},
                                  {Vec{10.0, 0.0, 0.0}, 1.0, Vec{}}};
  const mmi::PositionBox box = mmi::enclosing_box(shapes, 0.0, kUnits, 1);
  double worst_cross = 0.0;
  double worst_sum = 0.0;
  for (int i = 0; i < 101; ++i) {
    const double x =
        box.lower[0] + (box.upper[0] - box.lower[0]) * static_cast<double>(i) / 100.0;
    const SpacetimePoint at{Vec{x, 0.0, 0.0}, 0.0};
    const DetectionResult det = mmi::detection_probability(eta, mu, at, kUnits);
    const double independent = std::norm(mmi::propagate(eta, at, kUnits)) +
                               std::norm(mmi::propagate(mu, at, kUnits));
    worst_cross = std::max(worst_cross, std::abs(det.interference));
    worst_sum = std::max(worst_sum, std::abs(det.total - independent));
  }
  const bool ok = worst_cross < 1e-10 && worst_sum < 1e-9;
  return {ok, fmt("max |interference| = %.2e, max |total - independent sum| = %.2e, 101 points",
                  worst_cross, worst_sum)};
}

// 4. The detection density integrates to the particle number, two, inside a
//    box enclosing both packets.
Outcome particle_number_conservation() {
  const MomentumGrid grid = MomentumGrid::line(-10.0, 10.0, 512);
  const GaussianShape shape_eta{Vec{0.0, 0.0, 0.0}, 1.0, Vec{}};
  const GaussianShape shape_mu{Vec{1.0, 0.0, 0.0}, 0.8, Vec{}};
  const ModeDistribution eta =
      mmi::make_gaussian(grid, shape_eta.center, shape_eta.width, shape_eta.position);
  const ModeDistribution mu =
      mmi::make_gaussian(grid, shape_mu.center, shape_mu.width, shape_mu.position);
  const double abs_overlap = std::abs(mmi::overlap_set(eta, mu).overlap);
  if (!(abs_overlap > 0.0 && abs_overlap < 1.0)) {
    return {false, fmt("setup violated 0 < |c| < 1: |c| = %.6f", abs_overlap)};
  }
  const GaussianShape shapes[] = {shape_eta, shape_mu};
  double worst = 0.0;
  for (double t : {0.0, 0.5, 2.0}) {
    const mmi::PositionBox box = mmi::enclosing_box(shapes, t, kUnits, 1);
    const double integral =
        mmiref::total_position_integral(eta, mu, box.lower[0], box.upper[0], 4097, t, kUnits);
    worst = std::max(worst, std::abs(integral - 2.0));
  }
  return {worst <= 1e-6,
          fmt("max |integral - 2| = %.2e at t in {0, 0.5, 2}, |c| = %.3f", worst, abs_overlap)};
}

// 5. The literal double-integral state norm collapses to 1 + |c|^2.
Outcome norm_collapse() {
  const MomentumGrid grid = MomentumGrid::line(-2.0, 2.0, 16);
  std::mt19937_64 rng(307);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const ModeDistribution eta = mmiref::random_distribution(grid, rng);
    const ModeDistribution mu = mmiref::random_distribution(grid, rng);
    const double literal = mmi::state_norm_literal(eta, mu);
    const double collapsed = 1.0 + std::norm(mmi::inner_product(mu, eta));
    worst = std::max(worst, std::abs(literal - collapsed));
  }
  return {worst < 1e-10, fmt("max |literal - (1 + |c|^2)| = %.2e over 20 pairs", worst)};
}

// 6. The cross function computed as a product of two single sums equals the
//    unfactored double sum.
Outcome cross_amplitude_factorization() {
  const MomentumGrid grid = MomentumGrid::line(-2.0, 2.0, 8);
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> ux(-3.0, 3.0);
  std::uniform_real_distribution<double> ut(0.0, 3.0);
  double worst = 0.0;
  for (int pair = 0; pair < 3; ++pair) {
    const ModeDistribution a = random_four_mode(grid, rng);
    const ModeDistribution b = random_four_mode(grid, rng);
    for (int i = 0; i < 10; ++i) {
      const SpacetimePoint at{Vec{ux(rng), 0.0, 0.0}, ut(rng)};
      const Complex product = mmi::cross_amplitude(a, b, at, kUnits);
      const Complex double_sum = mmiref::cross_amplitude_double_sum(a, b, at, kUnits);
      worst = std::max(worst, std::abs(product - double_sum));
    }
  }
  return {worst < 1e-12,
          fmt("max |product - double sum| = %.2e, 3 random 4-mode pairs, 10 points each", worst)};
}

// 7. Quadrature propagation of a Gaussian matches the closed-form free
//    evolution, including the drifting center and spreading width.
Outcome gaussian_closed_form() {
  const MomentumGrid grid = MomentumGrid::line(-10.0, 10.0, 512);
  const GaussianShape shape{Vec{1.2, 0.0, 0.0}, 0.8, Vec{-0.5, 0.0, 0.0}};
  const ModeDistribution dist =
      mmi::make_gaussian(grid, shape.center, shape.width, shape.position);
  const GaussianShape shapes[] = {shape};

  double worst_field = 0.0;
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    const mmi::PositionBox box = mmi::enclosing_box(shapes, t, kUnits, 1);
    for (int i = 0; i < 13; ++i) {
      const double x =
          box.lower[0] + (box.upper[0] - box.lower[0]) * static_cast<double>(i) / 12.0;
      const SpacetimePoint at{Vec{x, 0.0, 0.0}, t};
      const Complex numeric = mmi::propagate(dist, at, kUnits);
      const Complex closed = mmiref::closed_form_gaussian(shape, 1, at, kUnits);
      worst_field = std::max(worst_field, std::abs(numeric - closed));
    }
  }

  // Moments at the latest time: center x0 + p0 t / m, width spread in
  // quadrature by (sigma t / m) with sigma_x = hbar / (2 sigma).
  const double t = 3.0;
  const mmi::PositionBox box = mmi::enclosing_box(shapes, t, kUnits, 1);
  const std::size_t n = 4097;
  const double step = (box.upper[0] - box.lower[0]) / static_cast<double>(n - 1);
  double mass_sum = 0.0, mean_sum = 0.0, sq_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = box.lower[0] + static_cast<double>(i) * step;
    const double density = std::norm(mmi::propagate(dist, {Vec{x, 0.0, 0.0}, t}, kUnits));
    const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    mass_sum += w * density;
    mean_sum += w * density * x;
    sq_sum += w * density * x * x;
  }
  const double mean = mean_sum / mass_sum;
  const double variance = sq_sum / mass_sum - mean * mean;
  const double expected_mean = shape.position[0] + shape.center[0] * t / kUnits.mass;
  const double sigma_x = kUnits.hbar / (2.0 * shape.width);
  const double expected_variance =
      sigma_x * sigma_x + std::pow(shape.width * t / kUnits.mass, 2);
  const double mean_err = std::abs(mean - expected_mean);
  const double var_err = std::abs(variance - expected_variance);

  const bool ok = worst_field < 1e-8 && mean_err < 1e-6 && var_err < 1e-5;
  return {ok, fmt("max field deviation %.2e over t in [0,3]; drift error %.2e, spread error %.2e",
                  worst_field, mean_err, var_err)};
}

// 8. Equal-width overlap magnitude follows the Gaussian separation law and
//    the peak cross term keeps shrinking once the sources are well separated.
Outcome overlap_scan_monotonicity() {
  const MomentumGrid grid = MomentumGrid::line(-16.0, 16.0, 1024);
  const double base_center = -3.0;
  const GaussianShape base{Vec{base_center, 0.0, 0.0}, 1.0, Vec{}};
  const GaussianShape lattice_shape[] = {base};
  const mmi::PositionBox box = mmi::enclosing_box(lattice_shape, 0.0, kUnits, 1);

  double worst_law = 0.0;
  std::vector<double> separations;
  std::vector<double> peaks;
  for (int i = 0; i <= 24; ++i) {
    const double separation = 0.25 * static_cast<double>(i);
    const ModeDistribution eta = mmi::make_gaussian(grid, base.center, base.width);
    const ModeDistribution mu =
        mmi::make_gaussian(grid, Vec{base_center + separation, 0.0, 0.0}, base.width);
    const double abs_overlap = std::abs(mmi::overlap_set(eta, mu).overlap);
    worst_law = std::max(
        worst_law, std::abs(abs_overlap - std::exp(-separation * separation / 8.0)));

    double peak = 0.0;
    for (int j = 0; j < 201; ++j) {
      const double x =
          box.lower[0] + (box.upper[0] - box.lower[0]) * static_cast<double>(j) / 200.0;
      const DetectionResult det =
          mmi::detection_probability(eta, mu, {Vec{x, 0.0, 0.0}, 0.0}, kUnits);
      peak = std::max(peak, std::abs(det.interference));
    }
    separations.push_back(separation);
    peaks.push_back(peak);
  }

  bool monotone = true;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    if (separations[i - 1] >= 2.0 && !(peaks[i] < peaks[i - 1])) {
      monotone = false;
    }
  }
  const bool ok = worst_law < 1e-6 && monotone;
  return {ok, fmt("max law deviation %.2e over separations [0,6]; peak cross term %s past 2 sigma",
                  worst_law, monotone ? "strictly decreasing" : "NOT decreasing")};
}

// 9. The command-line pipeline is deterministic and its CSV rows preserve the
//    exact floating-point sum of the three contributions.
Outcome cli_determinism() {
  const fs::path dir =
      fs::temp_directory_path() / ("mmi_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const struct Cleanup {
    fs::path dir;
    ~Cleanup() {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  } cleanup{dir};

  {
    std::ofstream config(dir / "pair.conf");
    config << "dimension = 1\n"
              "grid.lower = -10\n"
              "grid.upper = 10\n"
              "grid.points = 512\n"
              "source_eta.kind = gaussian\n"
              "source_eta.center = 0\n"
              "source_eta.width = 1\n"
              "source_mu.kind = gaussian\n"
              "source_mu.center = 1\n"
              "source_mu.width = 1\n"
              "eval.kind = sweep\n"
              "eval.lower = -8\n"
              "eval.upper = 8\n"
              "eval.points = 161\n"
              "eval.times = 0 1\n"
              "output = pair.csv\n";
  }

  const auto run = [&dir](const std::string& output) {
    const std::string command = "cd '" + dir.string() + "' && '" + MMI_CLI_BINARY +
                                "' run pair.conf --quiet --output " + output;
    const int status = std::system(command.c_str());
    return status != -1 && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  };
  const auto slurp = [&dir](const std::string& name) {
    std::ifstream in(dir / name);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  if (!run("first.csv") || !run("second.csv") || !run("first.csv")) {
    return {false, "cli run failed"};
  }
  const std::string first = slurp("first.csv");
  const std::string second = slurp("second.csv");
  if (first.empty() || first != second) {
    return {false, "repeated runs are not byte-identical"};
  }

  std::istringstream rows(first);
  std::string line;
  std::size_t row_count = 0;
  bool exact = true;
  while (std::getline(rows, line)) {
    if (line.empty() || line.front() == '#' || line.front() == 'x') {
      continue;
    }
    std::vector<double> fields;
    std::size_t start = 0;
    while (start <= line.size()) {
      const std::size_t comma = line.find(',', start);
      const std::string token =
          line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      char* end = nullptr;
      fields.push_back(std::strtod(token.c_str(), &end));
      if (end != token.c_str() + token.size()) {
        return {false, "unparseable CSV field '" + token + "'"};
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 6) {
      return {false, fmt("expected 6 columns, got %zu", fields.size())};
    }
    if (fields[2] != (fields[3] + fields[4]) + fields[5]) {
      exact = false;
    }
    ++row_count;
  }
  const bool ok = exact && row_count == 322;
  return {ok, fmt("%zu rows byte-identical across 3 runs, row sums %s", row_count,
                  exact ? "exact" : "NOT exact")};
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Outcome (*check)();
  } criteria[] = {
      {"oracle equivalence", oracle_equivalence},
      {"identical-source identity", identical_source_identity},
      {"no-common-modes nullity", no_common_modes_nullity},
      {"particle-number conservation", particle_number_conservation},
      {"norm collapse", norm_collapse},
      {"cross-amplitude factorization", cross_amplitude_factorization},
      {"gaussian closed form", gaussian_closed_form},
      {"overlap scan monotonicity", overlap_scan_monotonicity},
      {"cli determinism and row-sum identity", cli_determinism},
  };

  int failures = 0;
  int index = 1;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("unexpected exception: ") + e.what()};
    }
    std::printf("[%s] %d %s: %s\n", outcome.ok ? "PASS" : "FAIL", index, criterion.name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.ok) ++failures;
    ++index;
  }
  if (failures == 0) {
    std::printf("all %d criteria passed\n", static_cast<int>(std::size(criteria)));
  } else {
    std::printf("%d of %d criteria FAILED\n", failures, static_cast<int>(std::size(criteria)));
  }
  return failures;
}
