#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sfm/subset.h"

namespace sfm {

enum class BaseSource { kFlow, kGreedy, kAssembled, kModular };

// A point of the base polytope B(F) = {s : s(V) = F(V), s(A) <= F(A)}.
struct BasePoint {
  std::vector<double> s;
  BaseSource source = BaseSource::kAssembled;
};

// Answer of a discrete minimization oracle for min_A F(A) - u(A).
struct DiscreteMinimum {
  Subset set;          // inclusion-minimal minimizer
  double value = 0.0;  // F(set) - u(set)
  BasePoint certificate;  // s in B(F) with (s - u)_-(V) == value
};

// Value access to a normalized set function F on {0, ..., n-1}.
class ValueOracle {
 public:
  virtual ~ValueOracle() = default;

  virtual std::size_t size() const = 0;
  virtual double evaluate(const Subset& a) const = 0;

  // Marginal gains along `order`: s[order[k]] = F(first k+1) - F(first k).
  // The default evaluates F n times; implementations may do better.
  virtual std::vector<double> greedy_base(std::span<const std::size_t> order) const;

  virtual std::string name() const { return "set-function"; }
};

// A submodular function that can be minimized (plus a modular term) with a
// base-polytope certificate. Implementations must be safe to call
// concurrently through const methods.
class SetFunction : public ValueOracle {
 public:
  // argmin_A F(A) - u(A). Must return the inclusion-minimal minimizer.
  virtual DiscreteMinimum minimize(std::span<const double> u) const = 0;

  // The function B -> F(anchor | B) - F(anchor) on keep \ anchor, with
  // elements renumbered in increasing order. Requires anchor within keep.
  virtual std::unique_ptr<SetFunction> contract(const Subset& anchor,
                                                const Subset& keep) const = 0;
};

// F(A) = m(A).
class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);

  std::size_t size() const override { return weights_.size(); }
  double evaluate(const Subset& a) const override;
  DiscreteMinimum minimize(std::span<const double> u) const override;
  std::unique_ptr<SetFunction> contract(const Subset& anchor,
                                        const Subset& keep) const override;
  std::vector<double> greedy_base(std::span<const std::size_t> order) const override;
  std::string name() const override { return "modular"; }

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

}  // namespace sfm
