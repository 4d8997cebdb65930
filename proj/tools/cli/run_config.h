#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sfm/decomposition.h"
#include "sfm/grid.h"
#include "sfm/solvers.h"

namespace sfm::cli {

struct RunConfig {
  // Instance: a grid spec file, a PGM image, or a raw volume. Without an
  // input a random grid of `dims` is drawn from `seed`.
  std::filesystem::path input;
  std::filesystem::path header;  // raw volume header, default <input>.hdr
  std::vector<std::size_t> dims{32, 32};
  std::uint64_t seed = 0;
  std::string decomposition = "auto";  // auto | 2d | frames_chains | chains
  IntensityModel intensity;

  std::string algorithm = "bcd";
  std::string epsilon_mode = "delta_over_sqrt_t";
  double fixed_epsilon = 0.25;
  std::optional<double> proportionality;
  std::size_t max_outer_iters = 1000;
  std::optional<double> gap_tolerance;
  bool wall_time = false;

  std::filesystem::path output;  // mask
  std::filesystem::path trace;   // trace CSV

  // bench
  std::vector<std::string> algorithms;
  std::vector<std::string> epsilon_modes;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path summary;
};

struct Instance {
  GridSpec spec;
  Decomposition decomposition;
  bool frames = false;  // first summand holds 2D frames
};

// "32x32" or "4x3x2".
std::vector<std::size_t> parse_dims(const std::string& text);

// Builds the instance described by `config`, drawing synthetic grids from `seed`.
Instance load_instance(const RunConfig& config, std::uint64_t seed);

// Solver settings for one cell; throws ArgumentError on unknown names.
SolverConfig solver_config(const RunConfig& config, const std::string& algorithm,
                           const std::string& epsilon_mode);

// `key = value` lines; '#' starts a comment. Throws ArgumentError on
// malformed lines or unreadable files.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

}  // namespace sfm::cli
