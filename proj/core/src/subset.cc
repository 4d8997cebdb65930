#include "sfm/subset.h"

#include <algorithm>
#include <cassert>

namespace sfm {

Subset Subset::full(std::size_t n) {
  Subset a(n);
  std::fill(a.bits_.begin(), a.bits_.end(), 1);
  return a;
}

Subset Subset::of(std::size_t n, std::initializer_list<std::size_t> elements) {
  Subset a(n);
  for (std::size_t j : elements) a.insert(j);
  return a;
}

Subset Subset::of(std::size_t n, std::span<const std::size_t> elements) {
  Subset a(n);
  for (std::size_t j : elements) a.insert(j);
  return a;
}

Subset Subset::from_mask(std::size_t n, std::uint64_t mask) {
  assert(n <= 64);
  Subset a(n);
  for (std::size_t j = 0; j < n; ++j) a.bits_[j] = (mask >> j) & 1U;
  return a;
}

std::size_t Subset::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> Subset::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j]) out.push_back(j);
  }
  return out;
}

bool Subset::is_subset_of(const Subset& other) const {
  assert(other.bits_.size() == bits_.size());
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (bits_[j] && !other.bits_[j]) return false;
  }
  return true;
}

Subset Subset::operator|(const Subset& other) const {
  Subset out(*this);
  for (std::size_t j = 0; j < bits_.size(); ++j) out.bits_[j] |= other.bits_[j];
  return out;
}

Subset Subset::operator&(const Subset& other) const {
  Subset out(*this);
  for (std::size_t j = 0; j < bits_.size(); ++j) out.bits_[j] &= other.bits_[j];
  return out;
}

Subset Subset::operator-(const Subset& other) const {
  Subset out(*this);
  for (std::size_t j = 0; j < bits_.size(); ++j) {
    if (other.bits_[j]) out.bits_[j] = 0;
  }
  return out;
}

Subset Subset::complement() const {
  Subset out(*this);
  for (auto& b : out.bits_) b = b ? 0 : 1;
  return out;
}

double modular_sum(std::span<const double> s, const Subset& a) {
  double total = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (a.contains(j)) total += s[j];
  }
  return total;
}

}  // namespace sfm
