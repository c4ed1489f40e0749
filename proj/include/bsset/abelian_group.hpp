#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bsset/exact.hpp"

namespace bsset {

// Finite abelian group Z/f_1 + ... + Z/f_r with f_1 | f_2 | ... | f_r, f_i >= 2.
// Elements are residue vectors of length r; the trivial group has r = 0.
class FiniteAbelianGroup {
 public:
  using Label = std::int32_t;
  using Element = std::vector<Label>;

  FiniteAbelianGroup() = default;
  // Throws InputError unless the list is a valid invariant-factor chain.
  explicit FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors);

  static FiniteAbelianGroup cyclic(std::int64_t order);
  // Any list of cyclic orders (entries 1 are dropped), normalized to invariant factors.
  static FiniteAbelianGroup from_cyclic_orders(std::span<const std::int64_t> orders);

  const std::vector<std::int64_t>& invariant_factors() const noexcept { return factors_; }
  int rank() const noexcept { return static_cast<int>(factors_.size()); }
  bool is_trivial() const noexcept { return factors_.empty(); }
  Integer order() const;
  std::uint64_t order_u64() const;  // throws InputError on overflow

  Element zero() const { return Element(factors_.size(), 0); }
  // Componentwise on packed elements: spans of equal length, a multiple of rank().
  void add_into(std::span<Label> acc, std::span<const Label> x) const;
  void sub_into(std::span<Label> acc, std::span<const Label> x) const;
  void negate(std::span<Label> x) const;
  bool is_zero(std::span<const Label> x) const;

  // All elements, lexicographic in residues.
  std::vector<Element> elements() const;

  // p-primary part as its own group.
  FiniteAbelianGroup primary_part(std::int64_t p) const;

  // "Z/2+Z/4", or "0" for the trivial group.
  std::string str() const;

  friend bool operator==(const FiniteAbelianGroup&, const FiniteAbelianGroup&) = default;

 private:
  std::vector<std::int64_t> factors_;
};

}  // namespace bsset
