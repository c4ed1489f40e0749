#include "bsset/materialize.hpp"

namespace bsset {

void check_budget(int degree, const Integer& count, std::uint64_t budget) {
  if (count > Integer(static_cast<unsigned long long>(budget))) throw BudgetExceeded(degree, count.str(), budget);
}

Integer ProductModel::simplex_count(int n) const {
  return Integer(static_cast<unsigned long long>(bsset::simplex_count(*a_, n))) *
         Integer(static_cast<unsigned long long>(bsset::simplex_count(*b_, n)));
}

std::vector<ProductModel::Simplex> ProductModel::simplices(int n) const {
  const auto xs = all_simplices(*a_, n);
  const auto ys = all_simplices(*b_, n);
  std::vector<Simplex> out;
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) out.emplace_back(x, y);
  return out;
}

ProductModel::Simplex ProductModel::face(const Simplex& x, int i) const {
  return {bsset::face(*a_, x.first, i), bsset::face(*b_, x.second, i)};
}

ProductModel::Simplex ProductModel::degeneracy(const Simplex& x, int j) const {
  return {bsset::degeneracy(x.first, j), bsset::degeneracy(x.second, j)};
}

std::string ProductModel::name(const Simplex& x) const {
  return "(" + token_ref(*a_, x.first) + "," + token_ref(*b_, x.second) + ")";
}

FinSimplicialSet product(const FinSimplicialSet& a, const FinSimplicialSet& b, int up_to, std::uint64_t budget) {
  if (up_to < 0) throw InputError("product degree must be non-negative");
  return Materialized<ProductModel>(ProductModel(a, b), up_to, budget).set();
}

std::string token_ref(const FinSimplicialSet& s, const SimplexRef& x) {
  if (x.word.empty()) return s.name(x.generator);
  std::string out;
  for (int j : x.word.indices()) out += "s" + std::to_string(j);
  return out + "(" + s.name(x.generator) + ")";
}

}  // namespace bsset
