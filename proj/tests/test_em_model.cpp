#include <set>

#include "doctest.h"

#include "bsset/cochain.hpp"
#include "bsset/combinatorics.hpp"
#include "bsset/em_model.hpp"
#include "bsset/errors.hpp"

using namespace bsset;

namespace {

// Coboundary straight from the alternating-sum definition, one factor at a time.
bool cocycle_by_definition(const FiniteAbelianGroup& g, const Cochain& c) {
  const int r = g.rank();
  for (std::uint32_t t : subsets_of_size(c.dim + 1, c.degree + 2)) {
    const auto verts = elements(t);
    for (int f = 0; f < r; ++f) {
      long long sum = 0;
      for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto lab = label_of(g, c, t & ~(1u << verts[i]));
        sum += (i % 2 ? -1 : 1) * static_cast<long long>(lab[static_cast<std::size_t>(f)]);
      }
      if (sum % g.invariant_factors()[static_cast<std::size_t>(f)] != 0) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("finite abelian groups") {
  const std::vector<std::int64_t> orders{2, 3, 4};
  const FiniteAbelianGroup g = FiniteAbelianGroup::from_cyclic_orders(orders);
  CHECK(g.invariant_factors() == std::vector<std::int64_t>{2, 12});
  CHECK(g.order() == Integer(24));
  CHECK(g.str() == "Z/2+Z/12");
  CHECK(g.elements().size() == 24);
  CHECK(g.primary_part(2).invariant_factors() == std::vector<std::int64_t>{2, 4});
  CHECK(FiniteAbelianGroup().is_trivial());
  CHECK_THROWS_AS(FiniteAbelianGroup({4, 2}), InputError);
  CHECK_THROWS_AS(FiniteAbelianGroup({1}), InputError);
}

TEST_CASE("cocycle enumeration matches brute force over all cochains") {
  for (std::int64_t order : {2, 3}) {
    const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
    for (int k = 1; k <= 2; ++k)
      for (int n = 0; n <= 3; ++n) {
        std::set<Cochain> brute, listed;
        for_each_cochain(g, n, k, [&](const Cochain& c) {
          if (cocycle_by_definition(g, c)) brute.insert(c);
          CHECK(is_cocycle(g, c) == cocycle_by_definition(g, c));
        });
        for_each_cocycle(g, n, k, [&](const Cochain& c) { listed.insert(c); });
        CHECK(listed == brute);
        CHECK(Integer(static_cast<unsigned long long>(listed.size())) == em_cardinality(g, k, n, EmSpace::K));
      }
  }
  const FiniteAbelianGroup v4({2, 2});
  std::set<Cochain> brute;
  std::size_t listed = 0;
  for_each_cochain(v4, 3, 2, [&](const Cochain& c) {
    if (cocycle_by_definition(v4, c)) brute.insert(c);
  });
  for_each_cocycle(v4, 3, 2, [&](const Cochain& c) {
    CHECK(brute.count(c) == 1);
    ++listed;
  });
  CHECK(listed == brute.size());
}

TEST_CASE("extend_free_labels inverts free_labels") {
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  for_each_cocycle(g, 4, 2, [&](const Cochain& z) {
    const auto free = free_labels(g, z);
    CHECK(free.size() == binomial(4, 2));
    CHECK(extend_free_labels(g, free, 4, 2) == z);
  });
}

TEST_CASE("faces and degeneracies of cochains") {
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(4);
  for_each_cocycle(g, 3, 2, [&](const Cochain& z) {
    for (int i = 0; i <= 3; ++i) CHECK(is_cocycle(g, cochain_face(g, z, i)));
    for (int j = 0; j <= 3; ++j) {
      const Cochain s = cochain_degeneracy(g, z, j);
      CHECK(is_degenerate_cochain(g, s));
      CHECK(cochain_face(g, s, j) == z);
      CHECK(cochain_face(g, s, j + 1) == z);
    }
  });
}

TEST_CASE("cone section contracts cocycles") {
  const FiniteAbelianGroup g({2, 6});
  for (int k = 1; k <= 2; ++k)
    for_each_cocycle(g, 3, k, [&](const Cochain& z) { CHECK(coboundary(g, cone_section(g, z)) == z); });
}

TEST_CASE("EM skeleta") {
  const FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);
  SUBCASE("counts") {
    CHECK(em_cardinality(z2, 2, 3, EmSpace::K) == Integer(8));
    CHECK(em_cardinality(z2, 2, 3, EmSpace::E) == Integer(16));
    CHECK(em_cardinality(FiniteAbelianGroup::cyclic(3), 1, 4, EmSpace::K) == Integer(81));
    CHECK_THROWS_AS(em_cardinality(z2, 0, 2, EmSpace::K), InputError);
  }
  SUBCASE("K(Z/2,2) through degree 4") {
    const EmSkeleton k = build_em_skeleton(z2, 2, EmSpace::K, 4);
    CHECK(k.set().generator_counts() == std::vector<std::size_t>{1, 0, 1, 4, 41});
    CHECK(check_simplicial_identities(k.set()).empty());
    for (int n = 0; n <= 4; ++n)
      CHECK(Integer(static_cast<unsigned long long>(simplex_count(k.set(), n))) == em_cardinality(z2, 2, n, EmSpace::K));
  }
  SUBCASE("E(Z/3,1) through degree 3") {
    const FiniteAbelianGroup z3 = FiniteAbelianGroup::cyclic(3);
    const EmSkeleton e = build_em_skeleton(z3, 1, EmSpace::E, 3);
    CHECK(check_simplicial_identities(e.set()).empty());
    for (int n = 0; n <= 3; ++n)
      CHECK(Integer(static_cast<unsigned long long>(simplex_count(e.set(), n))) == em_cardinality(z3, 1, n, EmSpace::E));
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(build_em_skeleton(z2, 2, EmSpace::K, 6, 1000), BudgetExceeded);
  }
}
