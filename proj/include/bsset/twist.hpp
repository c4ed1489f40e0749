#pragma once

// Twisting operators K(pi,k+1) -> K(pi,k) and twisted Cartesian products
// K(pi,k) x_tau K(pi,k+1), with the fiber acting on itself by addition.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bsset/cochain.hpp"
#include "bsset/em_model.hpp"
#include "bsset/materialize.hpp"

namespace bsset {

struct TwistingOperator {
  FiniteAbelianGroup group;
  int fiber_degree = 1;  // k
  std::string name;
  // A degree-(k+1) cocycle on Delta^l to a degree-k cochain on Delta^(l-1).
  std::function<Cochain(const Cochain&)> rule;

  Cochain operator()(const Cochain& beta) const { return rule(beta); }
};

// (tau z)(i_0..i_k) = z(0, i_0+1, .., i_k+1) - z(1, i_0+1, .., i_k+1).
Cochain canonical_tau(const FiniteAbelianGroup& g, const Cochain& z);

TwistingOperator canonical_twist(const FiniteAbelianGroup& g, int k);
TwistingOperator trivial_twist(const FiniteAbelianGroup& g, int k);

struct TwistViolation {
  std::string axiom;  // "cocycle", "d0", "di", "si", "s0"
  Cochain beta;
  int index = 0;
};

struct TwistAxiomReport {
  std::uint64_t simplices_checked = 0;
  std::uint64_t violation_count = 0;
  std::map<std::string, std::uint64_t> per_axiom;
  std::vector<TwistViolation> violations;  // first few, for diagnostics
  bool ok() const noexcept { return violation_count == 0; }
};

// Evaluates every axiom on all base simplices of degree <= up_to.
TwistAxiomReport check_twisting_axioms(const TwistingOperator& tau, int up_to, std::uint64_t budget = default_budget);

class TwistedProductModel {
 public:
  using Simplex = std::pair<Cochain, Cochain>;  // (fiber, base)
  struct Hash {
    std::size_t operator()(const Simplex& s) const noexcept {
      CochainHash h;
      return h(s.first) * 0x9e3779b97f4a7c15ULL ^ h(s.second);
    }
  };

  explicit TwistedProductModel(TwistingOperator tau);

  const TwistingOperator& tau() const noexcept { return tau_; }
  Integer simplex_count(int n) const;
  std::vector<Simplex> simplices(int n) const;
  int degree(const Simplex& x) const { return x.first.dim; }
  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int j) const;
  std::string name(const Simplex& x) const;

 private:
  TwistingOperator tau_;
  EmModel fiber_;
  EmModel base_;
};

// Throws PreconditionError if the axioms fail in range.
Materialized<TwistedProductModel> twisted_product(const TwistingOperator& tau, int up_to,
                                                  std::uint64_t budget = default_budget);

// e |-> (e - h(coboundary e), coboundary e) with h the cone section.
std::pair<Cochain, Cochain> twisted_splitting(const FiniteAbelianGroup& g, const Cochain& e);

struct IsoDegreeReport {
  int degree = 0;
  std::uint64_t e_count = 0;
  std::uint64_t pair_count = 0;  // |K(pi,k)_n| * |K(pi,k+1)_n|
  bool bijective = false;
  bool faces_commute = false;       // d_i, i >= 1
  bool twisted_d0_commutes = false;
  bool degeneracies_commute = false;
  bool ok() const noexcept { return bijective && faces_commute && twisted_d0_commutes && degeneracies_commute; }
};

struct IsoReport {
  std::string splitting;
  std::vector<IsoDegreeReport> degrees;
  bool ok() const noexcept;
};

IsoReport e_as_twisted_product_iso(const FiniteAbelianGroup& g, int k, int up_to,
                                   std::uint64_t budget = default_budget);

}  // namespace bsset
