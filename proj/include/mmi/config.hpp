#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mmi/constants.hpp"
#include "mmi/grid.hpp"
#include "mmi/modes.hpp"
#include "mmi/types.hpp"

namespace mmi {

/// Source descriptors, one per supported distribution family. Kept as plain
/// parameters so a config round-trips without loss; the matching
/// ModeDistribution is built on demand by build_source.
struct GaussianSourceSpec {
  Vec center{};
  double width = 1.0;
  Vec position{};
};

struct ModeEntry {
  std::size_t index = 0;
  Complex amplitude;
};

struct ModesSourceSpec {
  std::vector<ModeEntry> entries;
};

struct TableSourceSpec {
  std::filesystem::path path;
};

using SourceSpec = std::variant<GaussianSourceSpec, ModesSourceSpec, TableSourceSpec>;

/// Evaluation requests. Exactly one is present per config, selected by
/// eval.kind.
struct PointEval {
  Vec position{};
  double time = 0.0;
};

struct SweepEval {
  Vec lower{};
  Vec upper{};
  std::array<std::size_t, 3> points{1, 1, 1};
  std::vector<double> times;
};

struct TimeSweepEval {
  Vec position{};
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 1;
};

using EvalSpec = std::variant<PointEval, SweepEval, TimeSweepEval>;

struct OracleSpec {
  bool enabled = false;
  std::size_t max_modes = 16;
  std::size_t points = 100;
};

/// Fully validated experiment description. Loading re-runs every module-level
/// precondition (sources are built once and discarded), so a returned config
/// is guaranteed runnable up to I/O failures.
struct ExperimentConfig {
  PhysicalConstants constants{};
  int dimension = 1;
  Vec grid_lower{};
  Vec grid_upper{};
  std::array<std::size_t, 3> grid_points{1, 1, 1};
  SourceSpec source_eta;
  SourceSpec source_mu;
  EvalSpec eval;
  std::filesystem::path output_path = "results.csv";
  OracleSpec oracle;
  std::vector<double> scan_separations;

  /// FNV-1a 64 over the raw config text; echoed into CSV metadata so a result
  /// file identifies the exact configuration that produced it.
  std::uint64_t config_hash = 0;

  /// Directory of the config file; tabulated-source paths resolve against it.
  std::filesystem::path base_dir = ".";

  MomentumGrid make_grid() const;
};

/// Read and validate a config file.
///
/// Format: one `key = value` assignment per line, dotted keys for sections
/// (e.g. source_eta.width), full-line '#' comments, blank lines ignored.
/// Multi-component values are whitespace-separated; mode lists use
/// ';'-separated `index re im` triples.
///
/// Throws IoError (unreadable file), ParseError (malformed line, duplicate or
/// malformed value; message carries line and key), ValidationError (missing
/// or unknown key, violated invariant; message names the key).
ExperimentConfig load_config(const std::filesystem::path& path);

/// Same contract as load_config, from in-memory text.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = ".");

/// Construct the distribution a descriptor describes. key_prefix (e.g.
/// "source_eta") prefixes diagnostics. Module errors surface as
/// ValidationError naming the offending key.
ModeDistribution build_source(const SourceSpec& spec, const MomentumGrid& grid,
                              const PhysicalConstants& constants,
                              const std::string& key_prefix,
                              const std::filesystem::path& base_dir = ".");

/// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace mmi
