#include "mmi/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <utility>

#include "mmi/errors.hpp"

namespace mmi {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    }
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') {
      ++j;
    }
    if (j > i) {
      out.push_back(s.substr(i, j - i));
    }
    i = j;
  }
  return out;
}

double parse_double_token(std::string_view token, const std::string& key) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("key '" + key + "': invalid number '" + std::string(token) + "'");
  }
  return value;
}

std::size_t parse_size_token(std::string_view token, const std::string& key) {
  std::size_t value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("key '" + key + "': invalid non-negative integer '" + std::string(token) +
                     "'");
  }
  return value;
}

/// Raw assignments with line numbers; consumption tracking catches unknown
/// keys after all known ones have been taken.
class KeyTable {
 public:
  explicit KeyTable(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      std::string_view line =
          text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      line = trim(line);
      if (line.empty() || line.front() == '#') {
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value', got '" +
                         std::string(line) + "'");
      }
      const std::string key{trim(line.substr(0, eq))};
      const std::string value{trim(line.substr(eq + 1))};
      if (key.empty()) {
        throw ParseError("line " + std::to_string(line_no) + ": empty key");
      }
      auto [it, inserted] = entries_.try_emplace(key, Entry{value, line_no, false});
      if (!inserted) {
        throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key +
                         "' (first set at line " + std::to_string(it->second.line) + ")");
      }
    }
  }

  std::optional<std::string> take(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      return std::nullopt;
    }
    it->second.used = true;
    return it->second.value;
  }

  std::string require(const std::string& key) {
    auto value = take(key);
    if (!value) {
      throw ValidationError("missing required key '" + key + "'");
    }
    return *value;
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  void finish() const {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used) {
        throw ValidationError("unknown key '" + key + "' (line " + std::to_string(entry.line) +
                              ")");
      }
    }
  }

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
    bool used = false;
  };
  std::map<std::string, Entry> entries_;
};

double take_double(KeyTable& keys, const std::string& key, double fallback) {
  auto raw = keys.take(key);
  return raw ? parse_double_token(trim(*raw), key) : fallback;
}

double require_double(KeyTable& keys, const std::string& key) {
  return parse_double_token(trim(keys.require(key)), key);
}

/// Exactly `count` whitespace-separated numbers, zero-padded into a Vec.
Vec parse_components(std::string_view raw, const std::string& key, int count) {
  const auto tokens = split_ws(raw);
  if (tokens.size() != static_cast<std::size_t>(count)) {
    throw ValidationError("key '" + key + "': expected " + std::to_string(count) +
                          " component(s), got " + std::to_string(tokens.size()));
  }
  Vec v{};
  for (int a = 0; a < count; ++a) {
    v[a] = parse_double_token(tokens[a], key);
  }
  return v;
}

Vec require_vec(KeyTable& keys, const std::string& key, int dimension) {
  return parse_components(keys.require(key), key, dimension);
}

Vec take_vec(KeyTable& keys, const std::string& key, int dimension, const Vec& fallback) {
  auto raw = keys.take(key);
  return raw ? parse_components(*raw, key, dimension) : fallback;
}

std::vector<double> parse_double_list(std::string_view raw, const std::string& key) {
  std::vector<double> out;
  for (auto token : split_ws(raw)) {
    out.push_back(parse_double_token(token, key));
  }
  return out;
}

bool take_bool(KeyTable& keys, const std::string& key, bool fallback) {
  auto raw = keys.take(key);
  if (!raw) {
    return fallback;
  }
  const std::string_view v = trim(*raw);
  if (v == "true" || v == "1") {
    return true;
  }
  if (v == "false" || v == "0") {
    return false;
  }
  throw ValidationError("key '" + key + "': expected true/false, got '" + std::string(v) + "'");
}

SourceSpec parse_source(KeyTable& keys, const std::string& prefix, int dimension) {
  const std::string kind = keys.require(prefix + ".kind");
  if (kind == "gaussian") {
    GaussianSourceSpec spec;
    spec.center = require_vec(keys, prefix + ".center", dimension);
    spec.width = require_double(keys, prefix + ".width");
    spec.position = take_vec(keys, prefix + ".position", dimension, Vec{});
    if (!(spec.width > 0.0)) {
      throw ValidationError("key '" + prefix + ".width': must be > 0");
    }
    return spec;
  }
  if (kind == "modes") {
    const std::string key = prefix + ".modes";
    const std::string raw = keys.require(key);
    ModesSourceSpec spec;
    std::size_t start = 0;
    while (start <= raw.size()) {
      const std::size_t semi = raw.find(';', start);
      const std::string_view part =
          trim(std::string_view(raw).substr(start, semi == std::string::npos ? std::string::npos
                                                                             : semi - start));
      start = semi == std::string::npos ? raw.size() + 1 : semi + 1;
      if (part.empty()) {
        continue;
      }
      const auto tokens = split_ws(part);
      if (tokens.size() != 3) {
        throw ParseError("key '" + key + "': each entry needs 'index re im', got '" +
                         std::string(part) + "'");
      }
      ModeEntry entry;
      entry.index = parse_size_token(tokens[0], key);
      entry.amplitude = Complex(parse_double_token(tokens[1], key),
                                parse_double_token(tokens[2], key));
      spec.entries.push_back(entry);
    }
    if (spec.entries.empty()) {
      throw ValidationError("key '" + key + "': at least one mode entry required");
    }
    return spec;
  }
  if (kind == "tabulated") {
    TableSourceSpec spec;
    spec.path = std::filesystem::path(keys.require(prefix + ".file"));
    return spec;
  }
  throw ValidationError("key '" + prefix + ".kind': expected gaussian|modes|tabulated, got '" +
                        kind + "'");
}

EvalSpec parse_eval(KeyTable& keys, int dimension) {
  const std::string kind = keys.require("eval.kind");
  if (kind == "point") {
    PointEval spec;
    spec.position = require_vec(keys, "eval.position", dimension);
    spec.time = take_double(keys, "eval.time", 0.0);
    return spec;
  }
  if (kind == "sweep") {
    SweepEval spec;
    spec.lower = require_vec(keys, "eval.lower", dimension);
    spec.upper = require_vec(keys, "eval.upper", dimension);
    const auto tokens = split_ws(keys.require("eval.points"));
    if (tokens.size() != static_cast<std::size_t>(dimension)) {
      throw ValidationError("key 'eval.points': expected " + std::to_string(dimension) +
                            " count(s), got " + std::to_string(tokens.size()));
    }
    for (int a = 0; a < dimension; ++a) {
      spec.points[a] = parse_size_token(tokens[a], "eval.points");
      if (spec.points[a] < 1) {
        throw ValidationError("key 'eval.points': each axis needs at least 1 point");
      }
      if (spec.points[a] > 1 && !(spec.upper[a] > spec.lower[a])) {
        throw ValidationError("key 'eval.upper': must exceed eval.lower on swept axes");
      }
    }
    spec.times = parse_double_list(keys.require("eval.times"), "eval.times");
    if (spec.times.empty()) {
      throw ValidationError("key 'eval.times': at least one time required");
    }
    return spec;
  }
  if (kind == "time-sweep") {
    TimeSweepEval spec;
    spec.position = require_vec(keys, "eval.position", dimension);
    spec.start = require_double(keys, "eval.start");
    spec.stop = require_double(keys, "eval.stop");
    spec.points = parse_size_token(trim(keys.require("eval.points")), "eval.points");
    if (spec.points < 1) {
      throw ValidationError("key 'eval.points': at least 1 point required");
    }
    return spec;
  }
  throw ValidationError("key 'eval.kind': expected point|sweep|time-sweep, got '" + kind + "'");
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char byte : bytes) {
    hash ^= byte;
    hash *= 1099511628211ull;
  }
  return hash;
}

MomentumGrid ExperimentConfig::make_grid() const {
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  std::array<int, 3> n{};
  const auto count = static_cast<std::size_t>(dimension);
  for (int a = 0; a < dimension; ++a) {
    lo[a] = grid_lower[a];
    hi[a] = grid_upper[a];
    n[a] = static_cast<int>(grid_points[a]);
  }
  return MomentumGrid(dimension, std::span<const double>(lo.data(), count),
                      std::span<const double>(hi.data(), count),
                      std::span<const int>(n.data(), count));
}

ModeDistribution build_source(const SourceSpec& spec, const MomentumGrid& grid,
                              const PhysicalConstants& constants, const std::string& key_prefix,
                              const std::filesystem::path& base_dir) {
  try {
    if (const auto* g = std::get_if<GaussianSourceSpec>(&spec)) {
      return make_gaussian(grid, g->center, g->width, g->position, constants);
    }
    if (const auto* m = std::get_if<ModesSourceSpec>(&spec)) {
      std::vector<std::pair<std::size_t, Complex>> entries;
      entries.reserve(m->entries.size());
      for (const auto& e : m->entries) {
        entries.emplace_back(e.index, e.amplitude);
      }
      return from_modes(grid, entries);
    }
    const auto& table = std::get<TableSourceSpec>(spec);
    std::filesystem::path path = table.path;
    if (path.is_relative()) {
      path = base_dir / path;
    }
    return load_tabulated(grid, path.string());
  } catch (const ValidationError& e) {
    throw ValidationError(key_prefix + ": " + e.what());
  } catch (const Error& e) {
    throw ValidationError(key_prefix + ": " + e.what());
  }
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  KeyTable keys(text);
  ExperimentConfig config;
  config.config_hash = fnv1a64(text);
  config.base_dir = base_dir;

  const double dim_raw = take_double(keys, "dimension", 1.0);
  config.dimension = static_cast<int>(dim_raw);
  if (config.dimension < 1 || config.dimension > 3 ||
      dim_raw != static_cast<double>(config.dimension)) {
    throw ValidationError("key 'dimension': must be 1, 2, or 3");
  }

  const double hbar = take_double(keys, "constants.hbar", 1.0);
  const double mass = take_double(keys, "constants.mass", 1.0);
  if (!(hbar > 0.0)) {
    throw ValidationError("key 'constants.hbar': must be > 0");
  }
  if (!(mass > 0.0)) {
    throw ValidationError("key 'constants.mass': must be > 0");
  }
  config.constants = PhysicalConstants(hbar, mass);

  config.grid_lower = require_vec(keys, "grid.lower", config.dimension);
  config.grid_upper = require_vec(keys, "grid.upper", config.dimension);
  const auto count_tokens = split_ws(keys.require("grid.points"));
  if (count_tokens.size() != static_cast<std::size_t>(config.dimension)) {
    throw ValidationError("key 'grid.points': expected " + std::to_string(config.dimension) +
                          " count(s), got " + std::to_string(count_tokens.size()));
  }
  for (int a = 0; a < config.dimension; ++a) {
    config.grid_points[a] = parse_size_token(count_tokens[a], "grid.points");
    if (config.grid_points[a] < 2) {
      throw ValidationError("key 'grid.points': each axis needs at least 2 points");
    }
    if (!(config.grid_upper[a] > config.grid_lower[a])) {
      throw ValidationError("key 'grid.upper': must exceed grid.lower on every axis");
    }
  }

  config.source_eta = parse_source(keys, "source_eta", config.dimension);
  config.source_mu = parse_source(keys, "source_mu", config.dimension);
  config.eval = parse_eval(keys, config.dimension);

  if (auto output = keys.take("output")) {
    if (output->empty()) {
      throw ValidationError("key 'output': must not be empty");
    }
    config.output_path = *output;
  }

  config.oracle.enabled = take_bool(keys, "oracle.enabled", false);
  if (auto raw = keys.take("oracle.max_modes")) {
    config.oracle.max_modes = parse_size_token(trim(*raw), "oracle.max_modes");
    if (config.oracle.max_modes < 1) {
      throw ValidationError("key 'oracle.max_modes': must be at least 1");
    }
  }
  if (auto raw = keys.take("oracle.points")) {
    config.oracle.points = parse_size_token(trim(*raw), "oracle.points");
    if (config.oracle.points < 1) {
      throw ValidationError("key 'oracle.points': must be at least 1");
    }
  }

  if (auto raw = keys.take("scan.separations")) {
    config.scan_separations = parse_double_list(*raw, "scan.separations");
    for (double sep : config.scan_separations) {
      if (sep < 0.0) {
        throw ValidationError("key 'scan.separations': separations must be >= 0");
      }
    }
  }

  keys.finish();

  // Re-check every module precondition now, so a loaded config cannot fail
  // later for reasons visible in the file.
  const MomentumGrid grid = config.make_grid();
  build_source(config.source_eta, grid, config.constants, "source_eta", config.base_dir);
  build_source(config.source_mu, grid, config.constants, "source_mu", config.base_dir);

  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading config file '" + path.string() + "'");
  }
  const std::filesystem::path parent = path.parent_path();
  return parse_config(buffer.str(), parent.empty() ? "." : parent);
}

}  // namespace mmi
