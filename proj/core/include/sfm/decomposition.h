#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sfm/set_function.h"

namespace sfm {

// F = F_1 + ... + F_r over a shared ground set. Evaluates as the sum.
class Decomposition final : public ValueOracle {
 public:
  explicit Decomposition(std::vector<std::shared_ptr<const SetFunction>> summands);

  std::size_t size() const override { return n_; }
  double evaluate(const Subset& a) const override;
  std::vector<double> greedy_base(std::span<const std::size_t> order) const override;
  std::string name() const override;

  std::size_t num_summands() const { return summands_.size(); }
  const SetFunction& summand(std::size_t i) const { return *summands_[i]; }
  const std::shared_ptr<const SetFunction>& summand_ptr(std::size_t i) const {
    return summands_[i];
  }

  // Delta^2 = r * sum_i Delta_i^2.
  double squared_diameter() const;
  double diameter() const;

 private:
  std::size_t n_;
  std::vector<std::shared_ptr<const SetFunction>> summands_;
};

// Delta_i with Delta_i^2 = sum_j (F({j}) + F(V \ {j}) - F(V))^2, a bound on the
// squared diameter of B(F).
double diameter(const ValueOracle& f);

}  // namespace sfm
