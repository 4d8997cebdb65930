#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <utility>
#include <vector>

#include "sfm/cut_function.h"
#include "sfm/decomposition.h"
#include "sfm/set_function.h"
#include "sfm/subset.h"

namespace sfm::testing {

inline CutFunction chain2(double weight = 1.0) {
  const std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 1}};
  const std::vector<double> w{weight};
  return CutFunction::from_edges(2, edges, w, {0.0, 0.0}, "chain2");
}

inline CutFunction chain3() {
  const std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 1}, {1, 2}};
  const std::vector<double> w{1.0, 1.0};
  return CutFunction::from_edges(3, edges, w, {0.0, 0.0, 0.0}, "chain3");
}

// Independent cut evaluation straight from the arc list.
inline double direct_cut(std::size_t n, const std::vector<CutArc>& arcs,
                         const std::vector<double>& modular, std::uint64_t mask) {
  double v = 0.0;
  for (const auto& arc : arcs) {
    if ((mask >> arc.tail & 1U) && !(mask >> arc.head & 1U)) v += arc.capacity;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (mask >> j & 1U) v += modular[j];
  }
  return v;
}

// Minimum of F(A) - u(A) by plain enumeration of bitmasks.
inline double enumerate_min(const ValueOracle& f, const std::vector<double>& u) {
  const std::size_t n = f.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double v = f.evaluate(Subset::from_mask(n, mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask >> j & 1U) v -= u[j];
    }
    best = std::min(best, v);
  }
  return best;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Random directed cut function with roughly `density` of all ordered pairs.
inline CutFunction random_cut(std::mt19937_64& rng, std::size_t n, double density = 0.5,
                              double max_cap = 2.0, double modular_range = 1.0) {
  std::vector<CutArc> arcs;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p != q && uniform(rng, 0.0, 1.0) < density) {
        arcs.push_back({p, q, uniform(rng, 0.0, max_cap)});
      }
    }
  }
  std::vector<double> modular(n);
  for (double& m : modular) m = uniform(rng, -modular_range, modular_range);
  return CutFunction(n, std::move(arcs), std::move(modular));
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo,
                                         double hi) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, lo, hi);
  return v;
}

template <typename F>
std::shared_ptr<const SetFunction> share(F f) {
  return std::make_shared<F>(std::move(f));
}

}  // namespace sfm::testing
