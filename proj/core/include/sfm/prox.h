#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "sfm/lovasz.h"
#include "sfm/set_function.h"
#include "sfm/subset.h"

namespace sfm {

// Oracle-call counter shared by concurrent recursion branches.
class CallCounter {
 public:
  void add(std::size_t k = 1) { calls_.fetch_add(k, std::memory_order_relaxed); }
  std::size_t value() const { return calls_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> calls_{0};
};

// G(B) = F(anchor | B) - F(anchor) for B within domain = keep \ anchor.
// Elements of the domain are numbered 0..|domain|-1 in increasing parent order.
class RestrictedFunction final : public SetFunction {
 public:
  RestrictedFunction(std::shared_ptr<const SetFunction> parent, Subset anchor, Subset keep);

  std::size_t size() const override { return domain_.size(); }
  double evaluate(const Subset& b) const override;
  DiscreteMinimum minimize(std::span<const double> u) const override;
  std::unique_ptr<SetFunction> contract(const Subset& anchor,
                                        const Subset& keep) const override;
  std::vector<double> greedy_base(std::span<const std::size_t> order) const override;
  std::string name() const override;

  const Subset& anchor() const { return anchor_; }
  // Parent index of each domain element.
  const std::vector<std::size_t>& domain() const { return domain_; }

 private:
  std::shared_ptr<const SetFunction> parent_;
  Subset anchor_;
  std::vector<std::size_t> domain_;
  double anchor_value_;
  // The parent's own contraction; carries the oracle with forced memberships.
  std::unique_ptr<SetFunction> reduced_;
};

// Throws ArgumentError unless a_plus is within a_minus.
RestrictedFunction restrict_contract(std::shared_ptr<const SetFunction> f,
                                     const Subset& a_plus, const Subset& a_minus);

struct DivideConquerResult {
  std::vector<double> w;
  BasePoint s;  // s in B(G), equal to t - w on every constant block
  std::size_t sfmd_calls = 0;
};

// Minimizes g(w) - t^T w + |w|^2 / 2 by level-set splitting with SFM calls.
DivideConquerResult divide_and_conquer(const SetFunction& g, std::span<const double> t);

struct ProxResult {
  std::vector<double> w;
  BasePoint s;  // s in B(F); optimal dual for min f(w) - t^T w + sum psi(w_j)
  std::size_t sfmd_calls = 0;
  double primal_value = 0.0;  // f(w) - t^T w + sum psi(w_j)
  double dual_value = 0.0;    // -sum psi*(t_j - s_j)
  Subset a_plus;
  Subset a_minus;
};

// Constrained total-variation oracle: argmin_w f(w) - t^T w + sum_j psi(w_j)
// with psi the quadratic on [-eps, eps]. Two SFM calls fix the saturated
// coordinates (w = +eps on A+, -eps outside A-); the rest is an unconstrained
// prox of the contracted function. With an infinite box this is the plain
// divide-and-conquer prox.
ProxResult constrained_tv(const SetFunction& f, std::span<const double> t, EpsilonBox box);

// Number of distinct values among `w` (absolute tolerance 1e-10).
std::size_t count_distinct_levels(std::span<const double> w, double tol = 1e-10);

}  // namespace sfm
