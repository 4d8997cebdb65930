#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace sfm {

// Membership bitset over a ground set {0, ..., n-1}.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t n) : bits_(n, 0) {}

  static Subset full(std::size_t n);
  static Subset of(std::size_t n, std::initializer_list<std::size_t> elements);
  static Subset of(std::size_t n, std::span<const std::size_t> elements);
  // Bit j of `mask` is membership of element j. Requires n <= 64.
  static Subset from_mask(std::size_t n, std::uint64_t mask);

  std::size_t universe_size() const { return bits_.size(); }
  bool contains(std::size_t j) const { return bits_[j] != 0; }
  void insert(std::size_t j) { bits_[j] = 1; }
  void erase(std::size_t j) { bits_[j] = 0; }
  void assign(std::size_t j, bool member) { bits_[j] = member ? 1 : 0; }

  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> elements() const;
  bool is_subset_of(const Subset& other) const;

  Subset operator|(const Subset& other) const;
  Subset operator&(const Subset& other) const;
  // Set difference: this \ other.
  Subset operator-(const Subset& other) const;
  Subset complement() const;

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

// s(A) = sum of s_j over j in A.
double modular_sum(std::span<const double> s, const Subset& a);

}  // namespace sfm
