#pragma once

// Group-valued cochains on the standard simplex.
//
// A cochain of degree k on Delta^n labels each (k+1)-element subset of
// {0..n} by an element of a finite abelian group. Subsets are bitmasks and
// labels are stored in colex order of the subsets, one residue vector per
// subset. The group is passed to every operation rather than stored.

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bsset/abelian_group.hpp"
#include "bsset/sset.hpp"

namespace bsset {

struct Cochain {
  int dim = 0;     // n
  int degree = 0;  // k
  std::vector<FiniteAbelianGroup::Label> labels;

  friend auto operator<=>(const Cochain&, const Cochain&) = default;
};

struct CochainHash {
  std::size_t operator()(const Cochain& c) const noexcept;
};

std::size_t label_count(int dim, int degree);
Cochain zero_cochain(const FiniteAbelianGroup& g, int dim, int degree);

// Label of the subset `mask` (popcount degree+1, bits within 0..dim).
std::span<const FiniteAbelianGroup::Label> label_of(const FiniteAbelianGroup& g, const Cochain& c, std::uint32_t mask);
std::span<FiniteAbelianGroup::Label> label_of(const FiniteAbelianGroup& g, Cochain& c, std::uint32_t mask);

// f^* c: (f^* c)(S) = c(f(S)) when f is injective on S, else 0.
Cochain em_operator(const FiniteAbelianGroup& g, const Cochain& c, const MonotoneMap& f);
Cochain cochain_face(const FiniteAbelianGroup& g, const Cochain& c, int i);
Cochain cochain_degeneracy(const FiniteAbelianGroup& g, const Cochain& c, int j);
bool is_degenerate_cochain(const FiniteAbelianGroup& g, const Cochain& c);

Cochain coboundary(const FiniteAbelianGroup& g, const Cochain& c);
bool is_cocycle(const FiniteAbelianGroup& g, const Cochain& c);

// The cocycle of degree k on Delta^n whose labels on subsets {0, a_1..a_k}
// are given. `free` lists those labels (residue vectors concatenated) in colex
// order of {a_1-1, .., a_k-1} as subsets of {0..n-1}; there are C(n,k).
Cochain extend_free_labels(const FiniteAbelianGroup& g, std::span<const FiniteAbelianGroup::Label> free, int n, int k);
// The free labels of a cochain, in the order extend_free_labels expects.
std::vector<FiniteAbelianGroup::Label> free_labels(const FiniteAbelianGroup& g, const Cochain& c);

// Cone contraction towards vertex 0: h(z)(S) = z({0} u S) if 0 not in S, else 0.
// For a cocycle z of degree >= 1, coboundary(h(z)) = z. Commutes with faces
// d_i (i >= 1) and all degeneracies.
Cochain cone_section(const FiniteAbelianGroup& g, const Cochain& z);

// Every cochain (resp. cocycle) of degree k on Delta^n, in a fixed order.
void for_each_cochain(const FiniteAbelianGroup& g, int n, int k, const std::function<void(const Cochain&)>& fn);
void for_each_cocycle(const FiniteAbelianGroup& g, int n, int k, const std::function<void(const Cochain&)>& fn);

// "0.1.0" style rendering; multi-factor labels as "a,b".
std::string format_labels(const FiniteAbelianGroup& g, const Cochain& c);

}  // namespace bsset
