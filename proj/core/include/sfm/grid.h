#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sfm/cut_function.h"
#include "sfm/decomposition.h"

namespace sfm {

// Axis-aligned 2D or 3D grid cut: cell index x + nx * (y + ny * z), undirected
// edges between axis neighbours, and a unary term added to F(A).
struct GridSpec {
  std::size_t ndim = 2;
  std::array<std::size_t, 3> dims{1, 1, 1};
  // weights[a][k]: k-th edge along axis a, edges ordered by their lower cell.
  std::array<std::vector<double>, 3> weights;
  std::vector<double> unary;

  std::size_t num_cells() const { return dims[0] * dims[1] * dims[2]; }
  std::size_t num_edges(std::size_t axis) const;
  std::size_t num_edges() const { return num_edges(0) + num_edges(1) + num_edges(2); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Throws ArgumentError on non-positive dims or mismatched array lengths.
void validate(const GridSpec& spec);

// (lower cell, upper cell) for every edge along `axis`, in weight order.
std::vector<std::pair<std::size_t, std::size_t>> grid_edges(const GridSpec& spec,
                                                            std::size_t axis);

// The whole grid as one cut function.
CutFunction grid_cut_function(const GridSpec& spec);

// r = 2: horizontal chains + unary, vertical chains.
Decomposition decompose_2d(const GridSpec& spec);
// r = 2: per-slice 2D grids + unary, z chains.
Decomposition decompose_3d_frames_chains(const GridSpec& spec);
// r = 3: x chains + unary, y chains, z chains.
Decomposition decompose_3d_chains(const GridSpec& spec);

struct ImageVolume {
  std::size_t ndim = 2;
  std::array<std::size_t, 3> dims{1, 1, 1};
  std::vector<double> intensities;

  std::size_t num_cells() const { return dims[0] * dims[1] * dims[2]; }
};

struct IntensityModel {
  std::array<double, 3> lambda{1.0, 1.0, 1.0};  // per-axis smoothness
  double sigma = 10.0;
  double fg_mean = 255.0;
  double bg_mean = 0.0;
};

// Edge weight lambda_axis * exp(-(I_p - I_q)^2 / (2 sigma^2)); unary
// ((I - fg)^2 - (I - bg)^2) / 255^2, negative on foreground-like cells.
GridSpec weights_from_intensities(const ImageVolume& img, const IntensityModel& model);

// Uniform weights in weight_range and unaries in unary_range from a 64-bit
// Mersenne twister; the same seed gives the same bytes on every platform.
GridSpec synth_random_grid(std::span<const std::size_t> dims,
                           std::pair<double, double> weight_range,
                           std::pair<double, double> unary_range, std::uint64_t seed);

}  // namespace sfm
