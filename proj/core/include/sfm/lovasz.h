#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "sfm/set_function.h"
#include "sfm/subset.h"

namespace sfm {

// Absolute tolerance for base-polytope feasibility. Function values are
// assumed to be of scale O(1) to O(1e4).
inline constexpr double kFeasibilityTol = 1e-9;

// Box half-width of the truncated quadratic psi(w) = w^2/2 on [-eps, eps],
// +inf outside. An infinite epsilon selects the plain quadratic.
struct EpsilonBox {
  double epsilon = std::numeric_limits<double>::infinity();

  static EpsilonBox unconstrained() { return {}; }
  bool is_infinite() const { return epsilon == std::numeric_limits<double>::infinity(); }
};

struct LovaszValue {
  double value = 0.0;  // f(w) = w^T s
  BasePoint base;      // greedy maximizer of w^T s over B(F)
};

// Greedy algorithm: sort w in decreasing order (ties by ascending index) and
// take marginal gains. Throws ArgumentError on length mismatch.
LovaszValue greedy_lovasz(const ValueOracle& f, std::span<const double> w);

// The greedy order used above.
std::vector<std::size_t> decreasing_order(std::span<const double> w);

double psi(double w, EpsilonBox box);
double psi_conj(double s, EpsilonBox box);

// sum_j min(s_j, 0).
double negative_part(std::span<const double> s);

// F(A) - s_-(V).
double discrete_gap(const ValueOracle& f, const Subset& a, std::span<const double> s);

struct BruteForceMinimum {
  Subset set;
  double value = 0.0;
};

inline constexpr std::size_t kBruteForceLimit = 24;

// Exhaustive argmin_A F(A) - u(A). Ties go to smaller cardinality, then to
// the smaller bitmask. Refuses n > 24.
BruteForceMinimum brute_force_sfm(const ValueOracle& f, std::span<const double> u);

// Grid search of argmin f(w) - t^T w + sum_j psi(w_j) over
// {-eps, -eps + resolution, ..., eps}^n. Refuses n > 3 or coarse grids.
std::vector<double> brute_force_prox(const ValueOracle& f, std::span<const double> t,
                                     EpsilonBox box, double resolution);

struct FeasibilityReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  double max_violation = 0.0;  // max over checked A of s(A) - F(A), and |s(V) - F(V)|
  bool ok() const { return violations == 0; }
};

// Checks s(V) == F(V) and s(A) <= F(A) + tol: exhaustively for n <= 12,
// otherwise on `samples` random subsets drawn from `seed`.
FeasibilityReport check_base_point(const ValueOracle& f, std::span<const double> s,
                                   double tol = kFeasibilityTol,
                                   std::size_t samples = 1000, std::uint64_t seed = 1);

// Counts pairs (A, B) violating F(A) + F(B) >= F(A u B) + F(A n B) - tol.
// Refuses n > 12.
std::size_t count_submodularity_violations(const ValueOracle& f, double tol = 1e-9);

}  // namespace sfm
