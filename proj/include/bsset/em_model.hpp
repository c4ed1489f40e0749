#pragma once

// Standard simplicial models of K(pi,k) (cocycles) and E(pi,k) (cochains).

#include <cstdint>
#include <string>
#include <vector>

#include "bsset/abelian_group.hpp"
#include "bsset/cochain.hpp"
#include "bsset/exact.hpp"
#include "bsset/materialize.hpp"

namespace bsset {

enum class EmSpace { K, E };

std::string to_string(EmSpace s);

// |K(pi,k)_n| = |pi|^C(n,k), |E(pi,k)_n| = |pi|^C(n+1,k+1). K needs k >= 1.
Integer em_cardinality(const FiniteAbelianGroup& g, int k, int n, EmSpace space);

// The E -> K(pi,k+1) projection e |-> coboundary(e).
inline Cochain coboundary_map(const FiniteAbelianGroup& g, const Cochain& e) { return coboundary(g, e); }

class EmModel {
 public:
  using Simplex = Cochain;
  using Hash = CochainHash;

  EmModel(FiniteAbelianGroup g, int k, EmSpace space);

  const FiniteAbelianGroup& group() const noexcept { return g_; }
  int k() const noexcept { return k_; }
  EmSpace space() const noexcept { return space_; }

  Integer simplex_count(int n) const { return em_cardinality(g_, k_, n, space_); }
  std::vector<Cochain> simplices(int n) const;
  int degree(const Cochain& c) const { return c.dim; }
  Cochain face(const Cochain& c, int i) const { return cochain_face(g_, c, i); }
  Cochain degeneracy(const Cochain& c, int j) const { return cochain_degeneracy(g_, c, j); }
  std::string name(const Cochain& c) const;

 private:
  FiniteAbelianGroup g_;
  int k_;
  EmSpace space_;
};

using EmSkeleton = Materialized<EmModel>;

// Degrees 0..up_to of K(pi,k) or E(pi,k); BudgetExceeded if a degree holds
// more than `budget` simplices.
EmSkeleton build_em_skeleton(const FiniteAbelianGroup& g, int k, EmSpace space, int up_to,
                             std::uint64_t budget = default_budget);

}  // namespace bsset
