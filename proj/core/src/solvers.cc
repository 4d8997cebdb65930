#include "sfm/solvers.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

namespace sfm {

std::string_view to_string(EpsilonMode mode) {
  switch (mode) {
    case EpsilonMode::kConstDelta: return "const_delta";
    case EpsilonMode::kDeltaOverT: return "delta_over_t";
    case EpsilonMode::kDeltaOverSqrtT: return "delta_over_sqrt_t";
    case EpsilonMode::kFixed: return "fixed";
    case EpsilonMode::kInfinite: return "infinite";
  }
  return "?";
}

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kBcd: return "bcd";
    case Algorithm::kAcceleratedBcd: return "accelerated_bcd";
    case Algorithm::kAar: return "aar";
  }
  return "?";
}

EpsilonMode parse_epsilon_mode(std::string_view text) {
  if (text == "delta" || text == "const_delta") return EpsilonMode::kConstDelta;
  if (text == "delta_over_t") return EpsilonMode::kDeltaOverT;
  if (text == "delta_over_sqrt_t") return EpsilonMode::kDeltaOverSqrtT;
  if (text == "fixed") return EpsilonMode::kFixed;
  if (text == "infinite" || text == "inf") return EpsilonMode::kInfinite;
  throw ArgumentError("unknown epsilon mode: " + std::string(text));
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "bcd") return Algorithm::kBcd;
  if (text == "acc" || text == "accelerated_bcd") return Algorithm::kAcceleratedBcd;
  if (text == "aar") return Algorithm::kAar;
  throw ArgumentError("unknown algorithm: " + std::string(text));
}

double epsilon_schedule(EpsilonMode mode, double delta, std::size_t t, double proportionality,
                        double fixed_value) {
  const double tt = static_cast<double>(std::max<std::size_t>(t, 1));
  double eps = 0.0;
  switch (mode) {
    case EpsilonMode::kConstDelta: eps = proportionality * delta; break;
    case EpsilonMode::kDeltaOverT: eps = proportionality * delta / tt; break;
    case EpsilonMode::kDeltaOverSqrtT: eps = proportionality * delta / std::sqrt(tt); break;
    case EpsilonMode::kFixed: eps = fixed_value; break;
    case EpsilonMode::kInfinite: return std::numeric_limits<double>::infinity();
  }
  return std::max(eps, kEpsilonFloor);
}

double eta_d_bound(double eta_c, double epsilon, std::size_t n) {
  return eta_c / (4.0 * epsilon) + std::sqrt(eta_c * static_cast<double>(n) / 2.0);
}

double momentum_beta(std::size_t t) {
  return (static_cast<double>(t) - 1.0) / (static_cast<double>(t) + 2.0);
}

DualState DualState::initial(const Decomposition& d) {
  const std::size_t n = d.size();
  DualState state;
  state.s.assign(d.num_summands(), std::vector<double>(n, 0.0));
  const std::vector<double> zero(n, 0.0);
  for (std::size_t i = 0; i < d.num_summands(); ++i) {
    state.t_cert.push_back(greedy_lovasz(d.summand(i), zero).base);
  }
  state.w.assign(n, 0.0);
  return state;
}

void DualState::recompute_w() {
  const std::size_t n = w.size();
  for (std::size_t k = 0; k < n; ++k) {
    double total = 0.0;
    for (const auto& block : s) total += block[k];
    w[k] = -total;
  }
}

std::vector<double> DualState::certificate_sum() const {
  std::vector<double> u(w.size(), 0.0);
  for (const auto& cert : t_cert) {
    for (std::size_t k = 0; k < u.size(); ++k) u[k] += cert.s[k];
  }
  return u;
}

void validate(const SolverConfig& config, const Decomposition& d) {
  if (d.num_summands() < 2) throw ArgumentError("solver: need r >= 2");
  if (config.algorithm != Algorithm::kBcd && d.num_summands() != 2) {
    throw ArgumentError("solver: accelerated BCD and AAR need exactly two summands");
  }
  if (config.algorithm == Algorithm::kAar && config.epsilon_mode != EpsilonMode::kInfinite) {
    throw ArgumentError("solver: AAR runs on the unconstrained problem (epsilon mode infinite)");
  }
  if (config.epsilon_mode == EpsilonMode::kFixed && !(config.fixed_epsilon > 0.0)) {
    throw ArgumentError("solver: fixed epsilon must be positive");
  }
  if (config.proportionality && !(*config.proportionality > 0.0)) {
    throw ArgumentError("solver: proportionality must be positive");
  }
  if (config.gap_tolerance && !(*config.gap_tolerance >= 0.0)) {
    throw ArgumentError("solver: gap tolerance must be >= 0");
  }
}

namespace {

// -sum_{j != i} blocks[j], summed in index order.
std::vector<double> partner_point(std::span<const std::vector<double>* const> blocks, std::size_t i) {
  const std::size_t n = blocks[0]->size();
  std::vector<double> z(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double total = 0.0;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (j != i) total += (*blocks[j])[k];
    }
    z[k] = -total;
  }
  return z;
}

ProxResult prox_update(const Decomposition& d, DualState& state, std::size_t i,
                       std::span<const double> z, EpsilonBox box) {
  ProxResult prox = constrained_tv(d.summand(i), z, box);
  auto& block = state.s[i];
  for (std::size_t k = 0; k < block.size(); ++k) block[k] = z[k] - prox.w[k];
  state.t_cert[i] = prox.s;
  state.recompute_w();
  return prox;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Rounds every iterate, keeps the best primal set and the best dual bound,
// and appends trace rows.
class Recorder {
 public:
  Recorder(const Decomposition& d, const SolverConfig& config)
      : d_(d), config_(config), sfmd_(d.num_summands(), 0), start_(Clock::now()) {
    result_.best = Subset(d.size());
    result_.best_value = std::numeric_limits<double>::infinity();
    best_dual_ = -std::numeric_limits<double>::infinity();
  }

  void count(std::size_t summand, const ProxResult& prox) {
    sfmd_[summand] += prox.sfmd_calls;
    ++sfmc_;
  }
  void count_calls(std::size_t summand, std::size_t sfmd) {
    sfmd_[summand] += sfmd;
    ++sfmc_;
  }

  // Returns true when the certified gap reaches the tolerance.
  bool record(std::size_t iter, const DualState& state, EpsilonBox box) {
    if (!all_finite(state.w)) fail("non-finite primal iterate");
    for (const auto& block : state.s) {
      if (!all_finite(block)) fail("non-finite dual block");
    }
    const std::vector<double> u = state.certificate_sum();
    if (!all_finite(u)) fail("non-finite certificate");
    Rounding rounded = round_to_set(d_, state.w, u);

    if (rounded.value < result_.best_value) {
      result_.best = rounded.set;
      result_.best_value = rounded.value;
    }
    const double dual_bound = negative_part(u);
    if (dual_bound > best_dual_) {
      best_dual_ = dual_bound;
      result_.certificate = {u, BaseSource::kAssembled};
    }
    result_.gap = std::max(0.0, result_.best_value - best_dual_);

    TraceRecord row;
    row.iter = iter;
    row.sfmd_per_summand = sfmd_;
    for (std::size_t c : sfmd_) row.sfmd_total += c;
    row.sfmc_total = sfmc_;
    row.discrete_gap = result_.gap;
    row.best_value = result_.best_value;
    row.epsilon = box.epsilon;
    row.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
    result_.trace.push_back(row);
    result_.iterations = iter;

    if (config_.on_iteration) {
      IterationEvent event;
      event.record = &result_.trace.back();
      event.state = &state;
      event.w = state.w;
      event.u = u;
      event.rounded = &rounded.set;
      event.box = box;
      config_.on_iteration(event);
    }
    const double tol = config_.gap_tolerance.value_or(1e-6 * (1.0 + std::abs(result_.best_value)));
    result_.converged = result_.gap <= tol;
    return result_.converged;
  }

  SolveResult finish(DualState state) {
    result_.state = std::move(state);
    return std::move(result_);
  }

  [[noreturn]] void fail(const char* what) { throw SolverFailure(what, result_.trace); }

 private:
  using Clock = std::chrono::steady_clock;
  const Decomposition& d_;
  const SolverConfig& config_;
  std::vector<std::size_t> sfmd_;
  std::size_t sfmc_ = 0;
  Clock::time_point start_;
  SolveResult result_;
  double best_dual_;
};

struct Schedule {
  EpsilonMode mode;
  double delta;
  double proportionality;
  double fixed;

  Schedule(const Decomposition& d, const SolverConfig& config)
      : mode(config.epsilon_mode),
        delta(config.epsilon_mode == EpsilonMode::kInfinite ||
                      config.epsilon_mode == EpsilonMode::kFixed
                  ? 0.0
                  : d.diameter()),
        proportionality(config.proportionality.value_or(
            1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(d.size(), 1))))),
        fixed(config.fixed_epsilon) {}

  EpsilonBox at(std::size_t t) const {
    return {epsilon_schedule(mode, delta, t, proportionality, fixed)};
  }
};

void emit_step(const SolverConfig& config, std::size_t iter, std::size_t summand, EpsilonBox box,
               const DualState* before, const DualState& after, const ProxResult& prox) {
  if (!config.on_step) return;
  StepEvent event;
  event.iteration = iter;
  event.summand = summand;
  event.box = box;
  event.before = before;
  event.after = &after;
  event.prox = &prox;
  config.on_step(event);
}

}  // namespace

ProxResult bcd_step(const Decomposition& d, DualState& state, std::size_t i, EpsilonBox box) {
  if (i >= d.num_summands()) throw ArgumentError("bcd_step: summand index out of range");
  std::vector<const std::vector<double>*> blocks;
  for (const auto& block : state.s) blocks.push_back(&block);
  const std::vector<double> z = partner_point(blocks, i);
  return prox_update(d, state, i, z, box);
}

SolveResult solve_bcd(const Decomposition& d, const SolverConfig& config) {
  validate(config, d);
  const Schedule schedule(d, config);
  Recorder recorder(d, config);
  DualState state = DualState::initial(d);
  if (recorder.record(0, state, schedule.at(1)) || config.max_outer_iters == 0) {
    return recorder.finish(std::move(state));
  }
  for (std::size_t t = 1; t <= config.max_outer_iters; ++t) {
    const EpsilonBox box = schedule.at(t);
    for (std::size_t i = 0; i < d.num_summands(); ++i) {
      std::optional<DualState> before;
      if (config.on_step) before = state;
      const ProxResult prox = bcd_step(d, state, i, box);
      recorder.count(i, prox);
      emit_step(config, t, i, box, before ? &*before : nullptr, state, prox);
    }
    if (recorder.record(t, state, box)) break;
  }
  return recorder.finish(std::move(state));
}

SolveResult solve_accelerated(const Decomposition& d, const SolverConfig& config) {
  validate(config, d);
  if (d.num_summands() != 2) throw ArgumentError("solve_accelerated: needs exactly two summands");
  const Schedule schedule(d, config);
  Recorder recorder(d, config);
  DualState state = DualState::initial(d);
  // Extrapolated copy of the second block; the first block is updated against it.
  std::vector<double> extrapolated = state.s[1];
  state.momentum_prev = state.s[1];
  if (recorder.record(0, state, schedule.at(1)) || config.max_outer_iters == 0) {
    return recorder.finish(std::move(state));
  }
  for (std::size_t t = 1; t <= config.max_outer_iters; ++t) {
    const EpsilonBox box = schedule.at(t);
    {
      std::optional<DualState> before;
      if (config.on_step) before = state;
      const std::vector<const std::vector<double>*> blocks{&state.s[0], &extrapolated};
      const std::vector<double> z = partner_point(blocks, 0);
      const ProxResult prox = prox_update(d, state, 0, z, box);
      recorder.count(0, prox);
      emit_step(config, t, 0, box, before ? &*before : nullptr, state, prox);
    }
    std::vector<double> previous = state.s[1];
    {
      std::optional<DualState> before;
      if (config.on_step) before = state;
      const ProxResult prox = bcd_step(d, state, 1, box);
      recorder.count(1, prox);
      emit_step(config, t, 1, box, before ? &*before : nullptr, state, prox);
    }
    const double beta = config.zero_momentum ? 0.0 : momentum_beta(t);
    if (beta == 0.0) {
      extrapolated = state.s[1];
    } else {
      for (std::size_t k = 0; k < extrapolated.size(); ++k) {
        extrapolated[k] = state.s[1][k] + beta * (state.s[1][k] - previous[k]);
      }
    }
    state.momentum_prev = std::move(previous);
    if (recorder.record(t, state, box)) break;
  }
  return recorder.finish(std::move(state));
}

SolveResult solve_aar(const Decomposition& d, const SolverConfig& config) {
  validate(config, d);
  if (d.num_summands() != 2 || config.epsilon_mode != EpsilonMode::kInfinite) {
    throw ArgumentError("solve_aar: needs two summands and an infinite box");
  }
  const std::size_t n = d.size();
  const EpsilonBox box = EpsilonBox::unconstrained();
  Recorder recorder(d, config);
  DualState state = DualState::initial(d);
  if (recorder.record(0, state, box) || config.max_outer_iters == 0) {
    return recorder.finish(std::move(state));
  }
  // Reflections between A = B(F_1) and B = -B(F_2). Projection onto B(F) is
  // x - prox_f(x), computed by divide and conquer.
  std::vector<double> z(n, 0.0), x(n), y(n), r(n);
  for (std::size_t t = 1; t <= config.max_outer_iters; ++t) {
    for (std::size_t k = 0; k < n; ++k) x[k] = -z[k];
    DivideConquerResult p2 = divide_and_conquer(d.summand(1), x);
    recorder.count_calls(1, p2.sfmd_calls);
    for (std::size_t k = 0; k < n; ++k) {
      y[k] = -(x[k] - p2.w[k]);
      r[k] = 2.0 * y[k] - z[k];
    }
    DivideConquerResult p1 = divide_and_conquer(d.summand(0), r);
    recorder.count_calls(0, p1.sfmd_calls);
    for (std::size_t k = 0; k < n; ++k) {
      const double a = r[k] - p1.w[k];
      z[k] = 0.5 * (z[k] + 2.0 * a - r[k]);
    }
    // Shadow point y converges; its partner in B(F_1) gives the primal.
    DivideConquerResult shadow = divide_and_conquer(d.summand(0), y);
    recorder.count_calls(0, shadow.sfmd_calls);
    for (std::size_t k = 0; k < n; ++k) {
      state.s[0][k] = y[k] - shadow.w[k];
      state.s[1][k] = -y[k];
    }
    state.t_cert[0] = shadow.s;
    state.t_cert[1] = p2.s;
    state.w = shadow.w;
    if (recorder.record(t, state, box)) break;
  }
  return recorder.finish(std::move(state));
}

SolveResult solve(const Decomposition& d, const SolverConfig& config) {
  switch (config.algorithm) {
    case Algorithm::kBcd: return solve_bcd(d, config);
    case Algorithm::kAcceleratedBcd: return solve_accelerated(d, config);
    case Algorithm::kAar: return solve_aar(d, config);
  }
  throw ArgumentError("solve: unknown algorithm");
}

Rounding round_to_set(const ValueOracle& f, std::span<const double> w, std::span<const double> u) {
  const std::size_t n = f.size();
  if (w.size() != n || u.size() != n) throw ArgumentError("round_to_set: length mismatch");
  const auto order = decreasing_order(w);
  const auto base = f.greedy_base(order);
  double prefix = 0.0;
  double best = 0.0;
  std::size_t best_len = 0;
  for (std::size_t k = 0; k < n; ++k) {
    prefix += base[order[k]];
    const bool level_end = k + 1 == n || w[order[k + 1]] != w[order[k]];
    if (level_end && prefix < best - 1e-12 * (1.0 + std::abs(best))) {
      best = prefix;
      best_len = k + 1;
    }
  }
  Rounding out;
  out.set = Subset::of(n, std::span<const std::size_t>(order.data(), best_len));
  out.value = f.evaluate(out.set);
  out.gap = out.value - negative_part(u);
  return out;
}

double box_conjugate(const SetFunction& f, std::span<const double> s, EpsilonBox box) {
  const std::size_t n = f.size();
  if (s.size() != n) throw ArgumentError("box_conjugate: length mismatch");
  const double f_all = f.evaluate(Subset::full(n));
  double s_all = 0.0;
  for (double v : s) s_all += v;
  const double min_gap = std::min(0.0, f.minimize(s).value);
  if (box.is_infinite()) {
    const double tol = kFeasibilityTol * (1.0 + std::abs(f_all));
    const bool feasible = min_gap >= -tol && std::abs(f_all - s_all) <= tol;
    return feasible ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return box.epsilon * (f_all - s_all - 2.0 * min_gap);
}

double dual_objective(const Decomposition& d, const DualState& state, EpsilonBox box) {
  double value = 0.0;
  for (std::size_t i = 0; i < d.num_summands(); ++i) {
    value -= box_conjugate(d.summand(i), state.s[i], box);
  }
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k) {
    double total = 0.0;
    for (const auto& block : state.s) total += block[k];
    value -= 0.5 * total * total;
  }
  return value;
}

double primal_objective(const ValueOracle& f, std::span<const double> w, EpsilonBox box) {
  std::vector<double> clipped(w.begin(), w.end());
  if (!box.is_infinite()) {
    const double slack = 1e-12 * (1.0 + box.epsilon);
    for (double& v : clipped) {
      if (std::abs(v) > box.epsilon + slack) return std::numeric_limits<double>::infinity();
      v = std::clamp(v, -box.epsilon, box.epsilon);
    }
  }
  double value = greedy_lovasz(f, clipped).value;
  for (double v : clipped) value += 0.5 * v * v;
  return value;
}

}  // namespace sfm
