#include "cli/run_config.h"

#include <fstream>

#include "sfm/errors.h"
#include "sfm/grid_io.h"

namespace sfm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

Decomposition decompose(const GridSpec& spec, const std::string& choice, bool& frames) {
  frames = false;
  if (choice == "2d" || (choice == "auto" && spec.ndim == 2)) return decompose_2d(spec);
  if (choice == "frames_chains" || (choice == "auto" && spec.ndim == 3)) {
    frames = true;
    return decompose_3d_frames_chains(spec);
  }
  if (choice == "chains") return decompose_3d_chains(spec);
  throw ArgumentError("unknown decomposition: " + choice);
}

}  // namespace

std::vector<std::size_t> parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find('x', pos);
    const std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
    std::size_t used = 0;
    unsigned long long value = 0;
    try {
      value = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (part.empty() || used != part.size() || value == 0) {
      throw ArgumentError("bad dims '" + text + "': expected e.g. 32x32 or 8x8x4");
    }
    dims.push_back(static_cast<std::size_t>(value));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (dims.size() != 2 && dims.size() != 3) throw ArgumentError("dims must have 2 or 3 entries");
  return dims;
}

Instance load_instance(const RunConfig& config, std::uint64_t seed) {
  GridSpec spec;
  if (config.input.empty()) {
    spec = synth_random_grid(config.dims, {0.0, 1.0}, {-1.0, 1.0}, seed);
  } else {
    const std::string ext = config.input.extension().string();
    if (ext == ".pgm") {
      spec = weights_from_intensities(load_pgm(config.input), config.intensity);
    } else if (ext == ".raw") {
      std::filesystem::path header = config.header;
      if (header.empty()) header = config.input.string() + ".hdr";
      spec = weights_from_intensities(load_raw_volume(config.input, header), config.intensity);
    } else {
      spec = load_grid_spec(config.input);
    }
  }
  bool frames = false;
  Decomposition d = decompose(spec, config.decomposition, frames);
  return Instance{std::move(spec), std::move(d), frames};
}

SolverConfig solver_config(const RunConfig& config, const std::string& algorithm,
                           const std::string& epsilon_mode) {
  SolverConfig out;
  out.algorithm = parse_algorithm(algorithm);
  out.epsilon_mode = parse_epsilon_mode(epsilon_mode);
  out.fixed_epsilon = config.fixed_epsilon;
  out.proportionality = config.proportionality;
  out.max_outer_iters = config.max_outer_iters;
  out.gap_tolerance = config.gap_tolerance;
  return out;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read config file " + path.string());
  std::map<std::string, std::string> entries;
  std::string line;
  for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ArgumentError(path.string() + ":" + std::to_string(line_no) + ": empty key");
    entries[key] = value;
  }
  return entries;
}

}  // namespace sfm::cli
