#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sfm/decomposition.h"
#include "sfm/errors.h"
#include "sfm/lovasz.h"
#include "sfm/prox.h"
#include "sfm/set_function.h"
#include "sfm/subset.h"

namespace sfm {

enum class EpsilonMode { kConstDelta, kDeltaOverT, kDeltaOverSqrtT, kFixed, kInfinite };
enum class Algorithm { kBcd, kAcceleratedBcd, kAar };

std::string_view to_string(EpsilonMode mode);
std::string_view to_string(Algorithm algorithm);
// Accepts the names produced by to_string plus the short forms delta, inf and acc.
// Throws ArgumentError otherwise.
EpsilonMode parse_epsilon_mode(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

inline constexpr double kEpsilonFloor = 1e-8;

// Box half-width at outer iteration t >= 1:
//   const_delta c*Delta, delta_over_t c*Delta/t, delta_over_sqrt_t c*Delta/sqrt(t),
//   fixed -> fixed_value, infinite -> +inf. Finite values are floored at 1e-8.
double epsilon_schedule(EpsilonMode mode, double delta, std::size_t t, double proportionality,
                        double fixed_value = 0.0);

// Primal suboptimality eta_C of a box-feasible w turns into a discrete
// suboptimality eta_C / (4 eps) + sqrt(eta_C n / 2) for its best suplevel set.
double eta_d_bound(double eta_c, double epsilon, std::size_t n);

struct DualState {
  std::vector<std::vector<double>> s;  // one dual block per summand
  std::vector<BasePoint> t_cert;       // latest certificate in B(F_i) per summand
  std::vector<double> w;               // -sum_i s_i
  std::vector<double> momentum_prev;   // previous value of the extrapolated block

  // s_i = 0, certificates from the greedy algorithm at w = 0.
  static DualState initial(const Decomposition& d);
  void recompute_w();
  std::vector<double> certificate_sum() const;
};

// Emitted after every prox step inside a solver.
struct StepEvent {
  std::size_t iteration = 0;
  std::size_t summand = 0;
  EpsilonBox box;
  const DualState* before = nullptr;
  const DualState* after = nullptr;
  const ProxResult* prox = nullptr;
};

struct TraceRecord {
  std::size_t iter = 0;
  std::size_t sfmd_total = 0;
  std::vector<std::size_t> sfmd_per_summand;
  std::size_t sfmc_total = 0;
  double discrete_gap = 0.0;  // best primal value minus best dual bound so far
  double best_value = 0.0;
  double epsilon = 0.0;
  double wall_ms = 0.0;
};

// Emitted after every outer iteration (and once for the initial state).
struct IterationEvent {
  const TraceRecord* record = nullptr;
  const DualState* state = nullptr;
  std::span<const double> w;  // primal iterate that was rounded
  std::span<const double> u;  // certificate sum in B(F)
  const Subset* rounded = nullptr;
  EpsilonBox box;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::kBcd;
  EpsilonMode epsilon_mode = EpsilonMode::kDeltaOverSqrtT;
  double fixed_epsilon = 0.25;
  std::optional<double> proportionality;  // default 1/sqrt(n)
  std::size_t max_outer_iters = 1000;
  std::optional<double> gap_tolerance;  // default 1e-6 (1 + |F(best)|)
  // Accelerated solver only: extrapolation weight forced to zero.
  bool zero_momentum = false;

  std::function<void(const StepEvent&)> on_step;
  std::function<void(const IterationEvent&)> on_iteration;
};

// Throws ArgumentError: accelerated_bcd and aar need r == 2, aar needs an
// infinite box, fixed needs a positive value.
void validate(const SolverConfig& config, const Decomposition& d);

// Non-finite dual state; carries the trace recorded up to the failure.
class SolverFailure : public NumericalFailure {
 public:
  SolverFailure(const std::string& what, std::vector<TraceRecord> trace)
      : NumericalFailure(what), trace_(std::move(trace)) {}
  const std::vector<TraceRecord>& trace() const { return trace_; }

 private:
  std::vector<TraceRecord> trace_;
};

struct SolveResult {
  Subset best;
  double best_value = 0.0;
  BasePoint certificate;  // best dual certificate seen, in B(F)
  double gap = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<TraceRecord> trace;
  DualState state;
};

// One block-coordinate ascent step on summand i:
// s_i <- z - prox_{g_i}(z) with z = -sum_{j != i} s_j.
ProxResult bcd_step(const Decomposition& d, DualState& state, std::size_t i, EpsilonBox box);

SolveResult solve_bcd(const Decomposition& d, const SolverConfig& config);
// r = 2 only. Extrapolates the last block with beta = (t - 1) / (t + 2).
SolveResult solve_accelerated(const Decomposition& d, const SolverConfig& config);
// r = 2 only, infinite box: averaged alternating reflections between B(F_1)
// and -B(F_2).
SolveResult solve_aar(const Decomposition& d, const SolverConfig& config);
// Dispatches on config.algorithm.
SolveResult solve(const Decomposition& d, const SolverConfig& config);

double momentum_beta(std::size_t t);

struct Rounding {
  Subset set;
  double value = 0.0;
  double gap = 0.0;
};

// Best suplevel set {w >= alpha} over the distinct values of w, plus the empty
// set; ties go to the smaller set. The gap is F(set) - u_-(V).
Rounding round_to_set(const ValueOracle& f, std::span<const double> w,
                      std::span<const double> u);

// g*(s) = sup_{|w|_inf <= eps} w^T s - f(w) = eps (F(V) - s(V) - 2 min_A (F(A) - s(A))).
// The minimum is taken with the summand's own oracle. Infinite box: 0 on
// B(F) (within tol), +inf elsewhere.
double box_conjugate(const SetFunction& f, std::span<const double> s, EpsilonBox box);

// -sum_i g_i*(s_i) - |sum_i s_i|^2 / 2.
double dual_objective(const Decomposition& d, const DualState& state, EpsilonBox box);

// f(w) + |w|^2/2 for box-feasible w (+inf otherwise).
double primal_objective(const ValueOracle& f, std::span<const double> w, EpsilonBox box);

}  // namespace sfm
