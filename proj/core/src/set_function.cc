#include "sfm/set_function.h"

#include "sfm/errors.h"

namespace sfm {

std::vector<double> ValueOracle::greedy_base(std::span<const std::size_t> order) const {
  const std::size_t n = size();
  std::vector<double> s(n, 0.0);
  Subset prefix(n);
  double previous = 0.0;
  for (std::size_t j : order) {
    prefix.insert(j);
    const double current = evaluate(prefix);
    s[j] = current - previous;
    previous = current;
  }
  return s;
}

ModularFunction::ModularFunction(std::vector<double> weights) : weights_(std::move(weights)) {}

double ModularFunction::evaluate(const Subset& a) const { return modular_sum(weights_, a); }

DiscreteMinimum ModularFunction::minimize(std::span<const double> u) const {
  if (u.size() != weights_.size()) throw ArgumentError("modular: length mismatch");
  DiscreteMinimum out;
  out.set = Subset(weights_.size());
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] - u[j] < 0.0) {
      out.set.insert(j);
      out.value += weights_[j] - u[j];
    }
  }
  out.certificate = {weights_, BaseSource::kModular};
  return out;
}

std::unique_ptr<SetFunction> ModularFunction::contract(const Subset& anchor,
                                                       const Subset& keep) const {
  if (!anchor.is_subset_of(keep)) throw ArgumentError("contract: anchor not within keep");
  std::vector<double> sub;
  for (std::size_t j : (keep - anchor).elements()) sub.push_back(weights_[j]);
  return std::make_unique<ModularFunction>(std::move(sub));
}

std::vector<double> ModularFunction::greedy_base(std::span<const std::size_t>) const {
  return weights_;
}

}  // namespace sfm
