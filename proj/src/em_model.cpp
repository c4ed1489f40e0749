#include "bsset/em_model.hpp"

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

std::string to_string(EmSpace s) { return s == EmSpace::K ? "K" : "E"; }

Integer em_cardinality(const FiniteAbelianGroup& g, int k, int n, EmSpace space) {
  if (n < 0) throw InputError("degree must be non-negative");
  if (space == EmSpace::K && k < 1) throw InputError("K(pi,k) is only modelled for k >= 1");
  if (k < 0) throw InputError("E(pi,k) needs k >= 0");
  const std::uint64_t e = space == EmSpace::K ? binomial(n, k) : binomial(n + 1, k + 1);
  return pow(g.order(), static_cast<unsigned>(e));
}

EmModel::EmModel(FiniteAbelianGroup g, int k, EmSpace space) : g_(std::move(g)), k_(k), space_(space) {
  if (space == EmSpace::K && k < 1) throw InputError("K(pi,k) is only modelled for k >= 1");
  if (k < 0) throw InputError("E(pi,k) needs k >= 0");
}

std::vector<Cochain> EmModel::simplices(int n) const {
  std::vector<Cochain> out;
  auto push = [&](const Cochain& c) { out.push_back(c); };
  if (space_ == EmSpace::K)
    for_each_cocycle(g_, n, k_, push);
  else
    for_each_cochain(g_, n, k_, push);
  return out;
}

std::string EmModel::name(const Cochain& c) const {
  return (space_ == EmSpace::K ? "z" : "e") + std::to_string(c.dim) + ":" + format_labels(g_, c);
}

EmSkeleton build_em_skeleton(const FiniteAbelianGroup& g, int k, EmSpace space, int up_to, std::uint64_t budget) {
  if (up_to < 0) throw InputError("skeleton degree must be non-negative");
  return EmSkeleton(EmModel(g, k, space), up_to, budget);
}

}  // namespace bsset
