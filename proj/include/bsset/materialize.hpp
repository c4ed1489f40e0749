#pragma once

// Turning lazily described simplicial sets into FinSimplicialSets.
//
// A model only has to enumerate its n-simplices and apply face and
// degeneracy operators; materialize() finds the nondegenerate ones, names
// them and fills in the face table.

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bsset/errors.hpp"
#include "bsset/exact.hpp"
#include "bsset/sset.hpp"

namespace bsset {

inline constexpr std::uint64_t default_budget = 1'000'000;

template <class M>
concept SimplicialModel = requires(const M& m, const typename M::Simplex& x, int n, int i) {
  typename M::Hash;
  { m.simplex_count(n) } -> std::convertible_to<Integer>;
  { m.simplices(n) } -> std::convertible_to<std::vector<typename M::Simplex>>;
  { m.degree(x) } -> std::convertible_to<int>;
  { m.face(x, i) } -> std::same_as<typename M::Simplex>;
  { m.degeneracy(x, i) } -> std::same_as<typename M::Simplex>;
  { m.name(x) } -> std::convertible_to<std::string>;
  { x == x } -> std::convertible_to<bool>;
};

// Throws BudgetExceeded when count > budget.
void check_budget(int degree, const Integer& count, std::uint64_t budget);

template <SimplicialModel M>
class Materialized {
 public:
  using Simplex = typename M::Simplex;

  Materialized(M model, int up_to, std::uint64_t budget = default_budget) : model_(std::move(model)) {
    FinSimplicialSet::Builder builder(up_to);
    generators_.resize(static_cast<std::size_t>(up_to) + 1);
    for (int n = 0; n <= up_to; ++n) {
      check_budget(n, Integer(model_.simplex_count(n)), budget);
      for (Simplex& x : model_.simplices(n)) {
        if (collapse_any(x)) continue;
        GeneratorId id = builder.add_generator(n, model_.name(x));
        index_.emplace(x, id);
        generators_[static_cast<std::size_t>(n)].push_back(std::move(x));
      }
      if (n == 0) continue;
      const auto& level = generators_[static_cast<std::size_t>(n)];
      for (std::size_t g = 0; g < level.size(); ++g)
        for (int i = 0; i <= n; ++i)
          builder.set_face(GeneratorId{n, static_cast<int>(g)}, i, locate(model_.face(level[g], i)));
    }
    set_ = std::move(builder).build();
  }

  const FinSimplicialSet& set() const noexcept { return set_; }
  const M& model() const noexcept { return model_; }
  const Simplex& generator(GeneratorId g) const {
    return generators_.at(static_cast<std::size_t>(g.degree)).at(static_cast<std::size_t>(g.index));
  }

  // Eilenberg-Zilber decomposition of a model simplex.
  SimplexRef locate(const Simplex& x) const {
    const int n = model_.degree(x);
    for (int j = 0; j < n; ++j) {
      Simplex y = model_.face(x, j);
      if (model_.degeneracy(y, j) == x) {
        SimplexRef r = locate(y);
        std::vector<int> w{j};
        w.insert(w.end(), r.word.indices().begin(), r.word.indices().end());
        return SimplexRef{r.generator, DegeneracyWord::from_composite(w)};
      }
    }
    auto it = index_.find(x);
    if (it == index_.end()) throw InternalError("simplex '" + model_.name(x) + "' lies outside the materialized range");
    return SimplexRef{it->second, {}};
  }

  // The model simplex represented by a SimplexRef.
  Simplex realize(const SimplexRef& r) const {
    Simplex x = generator(r.generator);
    const auto& w = r.word.indices();
    for (auto it = w.rbegin(); it != w.rend(); ++it) x = model_.degeneracy(x, *it);
    return x;
  }

 private:
  bool collapse_any(const Simplex& x) const {
    const int n = model_.degree(x);
    for (int j = 0; j < n; ++j)
      if (model_.degeneracy(model_.face(x, j), j) == x) return true;
    return false;
  }

  M model_;
  FinSimplicialSet set_;
  std::vector<std::vector<Simplex>> generators_;
  std::unordered_map<Simplex, GeneratorId, typename M::Hash> index_;
};

// Cartesian product of two finitely generated sets.
class ProductModel {
 public:
  using Simplex = std::pair<SimplexRef, SimplexRef>;
  struct Hash {
    std::size_t operator()(const Simplex& s) const noexcept {
      SimplexRefHash h;
      return h(s.first) * 0x9e3779b97f4a7c15ULL ^ h(s.second);
    }
  };

  ProductModel(const FinSimplicialSet& a, const FinSimplicialSet& b) : a_(&a), b_(&b) {}

  Integer simplex_count(int n) const;
  std::vector<Simplex> simplices(int n) const;
  int degree(const Simplex& x) const { return x.first.degree(); }
  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int j) const;
  std::string name(const Simplex& x) const;

 private:
  const FinSimplicialSet* a_;
  const FinSimplicialSet* b_;
};

FinSimplicialSet product(const FinSimplicialSet& a, const FinSimplicialSet& b, int up_to,
                         std::uint64_t budget = default_budget);

// Whitespace-free rendering of a simplex, usable inside generator names:
// "g" or "s2s0(g)".
std::string token_ref(const FinSimplicialSet& s, const SimplexRef& x);

}  // namespace bsset
