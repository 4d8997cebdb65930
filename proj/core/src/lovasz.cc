#include "sfm/lovasz.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "sfm/errors.h"

namespace sfm {

std::vector<std::size_t> decreasing_order(std::span<const double> w) {
  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  return order;
}

LovaszValue greedy_lovasz(const ValueOracle& f, std::span<const double> w) {
  if (w.size() != f.size()) throw ArgumentError("greedy_lovasz: length mismatch");
  const auto order = decreasing_order(w);
  LovaszValue out;
  out.base.s = f.greedy_base(order);
  out.base.source = BaseSource::kGreedy;
  for (std::size_t j : order) out.value += w[j] * out.base.s[j];
  return out;
}

double psi(double w, EpsilonBox box) {
  if (!box.is_infinite() && std::abs(w) > box.epsilon) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * w * w;
}

double psi_conj(double s, EpsilonBox box) {
  const double a = std::abs(s);
  if (box.is_infinite() || a <= box.epsilon) return 0.5 * s * s;
  return box.epsilon * a - 0.5 * box.epsilon * box.epsilon;
}

double negative_part(std::span<const double> s) {
  double total = 0.0;
  for (double v : s) total += std::min(v, 0.0);
  return total;
}

double discrete_gap(const ValueOracle& f, const Subset& a, std::span<const double> s) {
  return f.evaluate(a) - negative_part(s);
}

BruteForceMinimum brute_force_sfm(const ValueOracle& f, std::span<const double> u) {
  const std::size_t n = f.size();
  if (n > kBruteForceLimit) throw RefusalError("brute_force_sfm: ground set too large");
  if (u.size() != n) throw ArgumentError("brute_force_sfm: length mismatch");
  BruteForceMinimum best{Subset(n), f.evaluate(Subset(n))};
  std::size_t best_card = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const Subset a = Subset::from_mask(n, mask);
    const double value = f.evaluate(a) - modular_sum(u, a);
    const auto card = static_cast<std::size_t>(std::popcount(mask));
    // Masks are visited in increasing order, so an equal value only wins on
    // strictly smaller cardinality.
    if (value < best.value || (value == best.value && card < best_card)) {
      best = {a, value};
      best_card = card;
    }
  }
  return best;
}

namespace {

double prox_objective(const ValueOracle& f, std::span<const double> t, EpsilonBox box,
                      std::span<const double> w) {
  double value = greedy_lovasz(f, w).value;
  for (std::size_t j = 0; j < w.size(); ++j) value += psi(w[j], box) - t[j] * w[j];
  return value;
}

// Exhaustive search over lo + k * step, k in [k_lo[j], k_hi[j]], per coordinate.
std::vector<long> grid_argmin(const ValueOracle& f, std::span<const double> t, EpsilonBox box,
                              double lo, double step, const std::vector<long>& k_lo,
                              const std::vector<long>& k_hi) {
  const std::size_t n = t.size();
  std::vector<long> k(k_lo), best_k(k_lo);
  std::vector<double> w(n);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t j = 0; j < n; ++j) w[j] = lo + static_cast<double>(k[j]) * step;
    const double value = prox_objective(f, t, box, w);
    if (value < best) {
      best = value;
      best_k = k;
    }
    std::size_t j = 0;
    while (j < n && k[j] == k_hi[j]) {
      k[j] = k_lo[j];
      ++j;
    }
    if (j == n) break;
    ++k[j];
  }
  return best_k;
}

}  // namespace

std::vector<double> brute_force_prox(const ValueOracle& f, std::span<const double> t,
                                     EpsilonBox box, double resolution) {
  const std::size_t n = f.size();
  if (n > 3) throw RefusalError("brute_force_prox: at most 3 elements");
  if (t.size() != n) throw ArgumentError("brute_force_prox: length mismatch");
  if (!(resolution > 0.0) || resolution > 1e-2) {
    throw ArgumentError("brute_force_prox: resolution must be in (0, 1e-2]");
  }
  if (box.is_infinite() || !(box.epsilon > 0.0)) {
    throw ArgumentError("brute_force_prox: needs a finite positive epsilon");
  }
  if (n == 0) return {};

  const double eps = box.epsilon;
  const auto points = static_cast<long>(std::floor(2.0 * eps / resolution + 1e-9)) + 1;
  const auto full_size = std::pow(static_cast<double>(points), static_cast<double>(n));

  // Small grids are enumerated outright. Larger ones are searched coarse to
  // fine, each level re-enumerating a window of +-30 coarse steps around the
  // previous winner; the objective is 1-strongly convex, so the winner moves
  // little between levels.
  constexpr double kExhaustiveLimit = 2.5e6;
  std::vector<long> k_lo(n, 0), k_hi(n, points - 1);
  if (full_size > kExhaustiveLimit) {
    long stride = 1;
    while ((points - 1) / stride > 40) stride *= 10;
    std::vector<long> center(n, 0);
    bool first = true;
    for (; stride >= 1; stride /= 10) {
      std::vector<long> lo(n), hi(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (first) {
          lo[j] = 0;
          hi[j] = (points - 1) / stride;
        } else {
          lo[j] = std::max<long>(0, center[j] / stride - 30);
          hi[j] = std::min<long>((points - 1) / stride, center[j] / stride + 30);
        }
      }
      auto best = grid_argmin(f, t, box, -eps, resolution * static_cast<double>(stride), lo, hi);
      for (std::size_t j = 0; j < n; ++j) center[j] = best[j] * stride;
      first = false;
      if (stride == 1) break;
    }
    std::vector<double> w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = -eps + static_cast<double>(center[j]) * resolution;
    return w;
  }
  const auto best = grid_argmin(f, t, box, -eps, resolution, k_lo, k_hi);
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = -eps + static_cast<double>(best[j]) * resolution;
  return w;
}

FeasibilityReport check_base_point(const ValueOracle& f, std::span<const double> s, double tol,
                                   std::size_t samples, std::uint64_t seed) {
  const std::size_t n = f.size();
  if (s.size() != n) throw ArgumentError("check_base_point: length mismatch");
  FeasibilityReport report;
  auto record = [&](double excess) {
    ++report.checked;
    report.max_violation = std::max(report.max_violation, excess);
    if (excess > tol) ++report.violations;
  };
  const Subset all = Subset::full(n);
  record(std::abs(modular_sum(s, all) - f.evaluate(all)));

  if (n <= 12) {
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask + 1 < total; ++mask) {
      const Subset a = Subset::from_mask(n, mask);
      record(modular_sum(s, a) - f.evaluate(a));
    }
    return report;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < samples; ++k) {
    Subset a(n);
    for (std::size_t j = 0; j < n; ++j) a.assign(j, (rng() >> 63) != 0);
    record(modular_sum(s, a) - f.evaluate(a));
  }
  return report;
}

std::size_t count_submodularity_violations(const ValueOracle& f, double tol) {
  const std::size_t n = f.size();
  if (n > 12) throw RefusalError("count_submodularity_violations: at most 12 elements");
  const std::uint64_t total = std::uint64_t{1} << n;
  std::vector<double> table(total);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    table[mask] = f.evaluate(Subset::from_mask(n, mask));
  }
  std::size_t violations = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    for (std::uint64_t b = a + 1; b < total; ++b) {
      if (table[a] + table[b] < table[a | b] + table[a & b] - tol) ++violations;
    }
  }
  return violations;
}

}  // namespace sfm
