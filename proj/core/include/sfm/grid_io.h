#pragma once

#include <filesystem>
#include <array>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>
#include <string>

#include "sfm/grid.h"
#include "sfm/subset.h"

namespace sfm {

// Malformed or unreadable input files.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line-oriented text:
//   v1
//   dims <nx> <ny> [<nz>]
//   edges <count>
//   <p> <q> <w>        (count lines, any order)
//   unary <count>
//   <u>                (count lines)
// Reals are written in shortest round-trip form, so write/read is bit-exact.
void write_grid_spec(std::ostream& out, const GridSpec& spec);
GridSpec read_grid_spec(std::istream& in);
void save_grid_spec(const std::filesystem::path& path, const GridSpec& spec);
GridSpec load_grid_spec(const std::filesystem::path& path);

// Binary PGM (P5, maxval 255).
ImageVolume load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, std::size_t width, std::size_t height,
              const std::vector<std::uint8_t>& pixels);

// Raw unsigned 8-bit voxels plus a text header "nx ny nz".
ImageVolume load_raw_volume(const std::filesystem::path& raw, const std::filesystem::path& header);
void save_raw_volume(const std::filesystem::path& raw, const std::filesystem::path& header,
                     const std::array<std::size_t, 3>& dims, const std::vector<std::uint8_t>& voxels);

// 255 for members, 0 otherwise.
std::vector<std::uint8_t> mask_bytes(const Subset& a);

}  // namespace sfm
