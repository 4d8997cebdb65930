#include "sfm/grid.h"

#include <cmath>
#include <memory>
#include <random>
#include <string>

#include "sfm/errors.h"

namespace sfm {

namespace {

std::size_t stride(const GridSpec& spec, std::size_t axis) {
  if (axis == 0) return 1;
  if (axis == 1) return spec.dims[0];
  return spec.dims[0] * spec.dims[1];
}

std::size_t coordinate(const GridSpec& spec, std::size_t cell, std::size_t axis) {
  return (cell / stride(spec, axis)) % spec.dims[axis];
}

void append_axis(const GridSpec& spec, std::size_t axis,
                 std::vector<std::pair<std::size_t, std::size_t>>& edges,
                 std::vector<double>& weights) {
  const auto axis_edges = grid_edges(spec, axis);
  edges.insert(edges.end(), axis_edges.begin(), axis_edges.end());
  weights.insert(weights.end(), spec.weights[axis].begin(), spec.weights[axis].end());
}

std::shared_ptr<const SetFunction> chains(const GridSpec& spec, std::initializer_list<std::size_t> axes,
                                          bool with_unary, std::string label) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<double> weights;
  for (std::size_t axis : axes) append_axis(spec, axis, edges, weights);
  std::vector<double> modular =
      with_unary ? spec.unary : std::vector<double>(spec.num_cells(), 0.0);
  return std::make_shared<CutFunction>(
      CutFunction::from_edges(spec.num_cells(), edges, weights, std::move(modular), label));
}

double uniform(std::mt19937_64& rng, std::pair<double, double> range) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return range.first + (range.second - range.first) * u;
}

}  // namespace

std::size_t GridSpec::num_edges(std::size_t axis) const {
  if (axis >= ndim || dims[axis] == 0) return 0;
  return num_cells() / dims[axis] * (dims[axis] - 1);
}

void validate(const GridSpec& spec) {
  if (spec.ndim != 2 && spec.ndim != 3) throw ArgumentError("grid: ndim must be 2 or 3");
  for (std::size_t a = 0; a < 3; ++a) {
    if (spec.dims[a] == 0) throw ArgumentError("grid: dims must be positive");
  }
  if (spec.ndim == 2 && spec.dims[2] != 1) throw ArgumentError("grid: 2D grid with nz != 1");
  for (std::size_t a = 0; a < 3; ++a) {
    if (spec.weights[a].size() != spec.num_edges(a)) {
      throw ArgumentError("grid: axis " + std::to_string(a) + " has " +
                          std::to_string(spec.weights[a].size()) + " weights, expected " +
                          std::to_string(spec.num_edges(a)));
    }
    for (double w : spec.weights[a]) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ArgumentError("grid: bad edge weight");
    }
  }
  if (spec.unary.size() != spec.num_cells()) throw ArgumentError("grid: unary length mismatch");
  for (double u : spec.unary) {
    if (!std::isfinite(u)) throw ArgumentError("grid: non-finite unary");
  }
}

std::vector<std::pair<std::size_t, std::size_t>> grid_edges(const GridSpec& spec,
                                                            std::size_t axis) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (axis >= spec.ndim) return edges;
  edges.reserve(spec.num_edges(axis));
  const std::size_t step = stride(spec, axis);
  for (std::size_t cell = 0; cell < spec.num_cells(); ++cell) {
    if (coordinate(spec, cell, axis) + 1 < spec.dims[axis]) edges.emplace_back(cell, cell + step);
  }
  return edges;
}

CutFunction grid_cut_function(const GridSpec& spec) {
  validate(spec);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<double> weights;
  for (std::size_t axis = 0; axis < spec.ndim; ++axis) append_axis(spec, axis, edges, weights);
  return CutFunction::from_edges(spec.num_cells(), edges, weights, spec.unary, "grid");
}

Decomposition decompose_2d(const GridSpec& spec) {
  validate(spec);
  if (spec.ndim != 2) throw ArgumentError("decompose_2d: need a 2D grid");
  return Decomposition({chains(spec, {0}, true, "rows"), chains(spec, {1}, false, "cols")});
}

Decomposition decompose_3d_frames_chains(const GridSpec& spec) {
  validate(spec);
  if (spec.ndim != 3) throw ArgumentError("decompose_3d_frames_chains: need a 3D grid");
  return Decomposition(
      {chains(spec, {0, 1}, true, "frames"), chains(spec, {2}, false, "z-chains")});
}

Decomposition decompose_3d_chains(const GridSpec& spec) {
  validate(spec);
  if (spec.ndim != 3) throw ArgumentError("decompose_3d_chains: need a 3D grid");
  return Decomposition({chains(spec, {0}, true, "x-chains"), chains(spec, {1}, false, "y-chains"),
                        chains(spec, {2}, false, "z-chains")});
}

GridSpec weights_from_intensities(const ImageVolume& img, const IntensityModel& model) {
  if (!(model.sigma > 0.0)) throw ArgumentError("weights_from_intensities: sigma must be > 0");
  GridSpec spec;
  spec.ndim = img.ndim;
  spec.dims = img.dims;
  if (img.intensities.size() != spec.num_cells()) {
    throw ArgumentError("weights_from_intensities: intensity count mismatch");
  }
  const double denom = 2.0 * model.sigma * model.sigma;
  for (std::size_t axis = 0; axis < spec.ndim; ++axis) {
    for (auto [p, q] : grid_edges(spec, axis)) {
      const double diff = img.intensities[p] - img.intensities[q];
      spec.weights[axis].push_back(model.lambda[axis] * std::exp(-diff * diff / denom));
    }
  }
  spec.unary.reserve(spec.num_cells());
  for (double v : img.intensities) {
    const double to_fg = v - model.fg_mean;
    const double to_bg = v - model.bg_mean;
    spec.unary.push_back((to_fg * to_fg - to_bg * to_bg) / (255.0 * 255.0));
  }
  validate(spec);
  return spec;
}

GridSpec synth_random_grid(std::span<const std::size_t> dims,
                           std::pair<double, double> weight_range,
                           std::pair<double, double> unary_range, std::uint64_t seed) {
  if (dims.size() != 2 && dims.size() != 3) throw ArgumentError("synth_random_grid: 2 or 3 dims");
  if (!(weight_range.first >= 0.0) || weight_range.second < weight_range.first) {
    throw ArgumentError("synth_random_grid: bad weight range");
  }
  if (unary_range.second < unary_range.first) {
    throw ArgumentError("synth_random_grid: bad unary range");
  }
  GridSpec spec;
  spec.ndim = dims.size();
  for (std::size_t a = 0; a < dims.size(); ++a) {
    if (dims[a] == 0) throw ArgumentError("synth_random_grid: dims must be positive");
    spec.dims[a] = dims[a];
  }
  std::mt19937_64 rng(seed);
  for (std::size_t axis = 0; axis < spec.ndim; ++axis) {
    spec.weights[axis].resize(spec.num_edges(axis));
    for (double& w : spec.weights[axis]) w = uniform(rng, weight_range);
  }
  spec.unary.resize(spec.num_cells());
  for (double& u : spec.unary) u = uniform(rng, unary_range);
  return spec;
}

}  // namespace sfm
