#pragma once

// Finitely generated simplicial sets in Eilenberg-Zilber normal form.
//
// Only nondegenerate simplices ("generators") are stored. Every simplex is a
// SimplexRef: a generator together with a degeneracy word s_{i_1}...s_{i_r}
// in normal form (i_1 > ... > i_r).

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bsset {

class DegeneracyWord {
 public:
  DegeneracyWord() = default;

  // Normal form of the composite s_{word[0]} s_{word[1]} ... s_{word[r-1]}
  // (word[0] is applied last). Throws InputError on negative indices.
  static DegeneracyWord from_composite(std::span<const int> word);
  // Adopts indices that are already strictly decreasing; throws otherwise.
  static DegeneracyWord from_normal(std::vector<int> indices);

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t length() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(int j) const noexcept;

  friend auto operator<=>(const DegeneracyWord&, const DegeneracyWord&) = default;

 private:
  std::vector<int> indices_;
};

DegeneracyWord normalize_word(std::span<const int> word);

struct GeneratorId {
  int degree = 0;
  int index = 0;
  friend auto operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

struct SimplexRef {
  GeneratorId generator;
  DegeneracyWord word;

  int degree() const noexcept { return generator.degree + static_cast<int>(word.length()); }
  bool is_nondegenerate() const noexcept { return word.empty(); }
  friend auto operator<=>(const SimplexRef&, const SimplexRef&) = default;
};

struct SimplexRefHash {
  std::size_t operator()(const SimplexRef& r) const noexcept;
};

// A weakly increasing map [source_dim] -> [target_dim] of vertex sets.
class MonotoneMap {
 public:
  MonotoneMap(int target_dim, std::vector<int> values);

  // delta^i : [n-1] -> [n], skipping i.
  static MonotoneMap coface(int n, int i);
  // sigma^j : [n+1] -> [n], hitting j twice.
  static MonotoneMap codegeneracy(int n, int j);
  static MonotoneMap identity(int n);

  int source_dim() const noexcept { return static_cast<int>(values_.size()) - 1; }
  int target_dim() const noexcept { return target_dim_; }
  int operator()(int v) const { return values_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& values() const noexcept { return values_; }

  // (*this) after `first`: v -> this(first(v)).
  MonotoneMap after(const MonotoneMap& first) const;

 private:
  int target_dim_;
  std::vector<int> values_;
};

class FinSimplicialSet {
 public:
  class Builder;

  FinSimplicialSet() = default;

  int top_degree() const noexcept { return top_degree_; }
  std::size_t generator_count(int n) const noexcept;
  std::vector<std::size_t> generator_counts() const;
  std::size_t total_generators() const noexcept;

  const std::string& name(GeneratorId g) const;
  std::optional<GeneratorId> find(std::string_view name) const;
  // d_i of a generator, already in normal form.
  const SimplexRef& generator_face(GeneratorId g, int i) const;

  bool valid(GeneratorId g) const noexcept;

 private:
  struct Generator {
    std::string name;
    std::vector<SimplexRef> faces;
  };

  int top_degree_ = 0;
  std::vector<std::vector<Generator>> generators_;
  std::unordered_map<std::string, GeneratorId> by_name_;
};

class FinSimplicialSet::Builder {
 public:
  explicit Builder(int top_degree);

  // Throws InputError for duplicate names or degrees outside [0, top_degree].
  GeneratorId add_generator(int degree, std::string name);
  void set_face(GeneratorId g, int i, SimplexRef face);
  // Checks that every face is set and resolves to a simplex of degree n-1.
  FinSimplicialSet build() &&;

 private:
  FinSimplicialSet set_;
  std::vector<std::vector<std::vector<bool>>> assigned_;
};

SimplexRef face(const FinSimplicialSet& s, const SimplexRef& x, int i);
SimplexRef degeneracy(const SimplexRef& x, int j);
// Applies f^* for a monotone f : [m] -> [degree(x)]; the result has degree m.
SimplexRef pull_back(const FinSimplicialSet& s, const SimplexRef& x, const MonotoneMap& f);
// The face of x spanned by the given strictly increasing vertex list.
SimplexRef restrict_to_vertices(const FinSimplicialSet& s, const SimplexRef& x, std::span<const int> vertices);

FinSimplicialSet skeleton(const FinSimplicialSet& s, int k);

// Number of n-simplices, degenerate ones included.
std::uint64_t simplex_count(const FinSimplicialSet& s, int n);
// Every n-simplex as a SimplexRef (generator-major order).
std::vector<SimplexRef> all_simplices(const FinSimplicialSet& s, int n);

// Standard models.
FinSimplicialSet standard_simplex(int n);
FinSimplicialSet simplex_boundary(int n);
FinSimplicialSet point();

struct IdentityViolation {
  GeneratorId generator;
  int i = 0;
  int j = 0;
  SimplexRef lhs;  // d_i d_j x
  SimplexRef rhs;  // d_{j-1} d_i x
  friend bool operator==(const IdentityViolation&, const IdentityViolation&) = default;
};

// Checks d_i d_j = d_{j-1} d_i (i < j) on every generator up to top_degree.
std::vector<IdentityViolation> check_simplicial_identities(const FinSimplicialSet& s);

std::string format_ref(const FinSimplicialSet& s, const SimplexRef& x);

}  // namespace bsset
