#include "sfm/decomposition.h"

#include <cmath>

#include "sfm/errors.h"

namespace sfm {

Decomposition::Decomposition(std::vector<std::shared_ptr<const SetFunction>> summands)
    : n_(0), summands_(std::move(summands)) {
  if (summands_.size() < 2) throw ArgumentError("decomposition: need at least two summands");
  for (const auto& f : summands_) {
    if (!f) throw ArgumentError("decomposition: null summand");
  }
  n_ = summands_.front()->size();
  for (const auto& f : summands_) {
    if (f->size() != n_) throw ArgumentError("decomposition: summands disagree on n");
  }
}

double Decomposition::evaluate(const Subset& a) const {
  double total = 0.0;
  for (const auto& f : summands_) total += f->evaluate(a);
  return total;
}

std::vector<double> Decomposition::greedy_base(std::span<const std::size_t> order) const {
  std::vector<double> s(n_, 0.0);
  for (const auto& f : summands_) {
    const auto part = f->greedy_base(order);
    for (std::size_t j = 0; j < n_; ++j) s[j] += part[j];
  }
  return s;
}

std::string Decomposition::name() const {
  std::string out;
  for (const auto& f : summands_) {
    if (!out.empty()) out += " + ";
    out += f->name();
  }
  return out;
}

double Decomposition::squared_diameter() const {
  double total = 0.0;
  for (const auto& f : summands_) {
    const double d = sfm::diameter(*f);
    total += d * d;
  }
  return static_cast<double>(summands_.size()) * total;
}

double Decomposition::diameter() const { return std::sqrt(squared_diameter()); }

double diameter(const ValueOracle& f) {
  const std::size_t n = f.size();
  const Subset all = Subset::full(n);
  const double f_all = f.evaluate(all);
  double total = 0.0;
  Subset single(n);
  Subset rest = all;
  for (std::size_t j = 0; j < n; ++j) {
    single.insert(j);
    rest.erase(j);
    const double term = f.evaluate(single) + f.evaluate(rest) - f_all;
    total += term * term;
    single.erase(j);
    rest.insert(j);
  }
  return std::sqrt(total);
}

}  // namespace sfm
