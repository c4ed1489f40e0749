#include "doctest.h"

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"
#include "bsset/twist.hpp"

using namespace bsset;

namespace {

// tau'(z)(S) = z({0} u (S+1)) + z({1} u (S+1)): the canonical rule with the
// sign of the second term flipped.
TwistingOperator sign_flipped(const FiniteAbelianGroup& g, int k) {
  return TwistingOperator{g, k, "sign-flipped", [g](const Cochain& z) {
                            Cochain out = zero_cochain(g, z.dim - 1, z.degree - 1);
                            for (std::uint32_t s : subsets_of_size(z.dim, z.degree)) {
                              const std::uint32_t up = s << 1;
                              auto dst = label_of(g, out, s);
                              g.add_into(dst, label_of(g, z, up | 1u));
                              if (!(up & 2u)) g.add_into(dst, label_of(g, z, up | 2u));
                            }
                            return out;
                          }};
}

}  // namespace

TEST_CASE("canonical twisting operator satisfies the axioms") {
  for (std::int64_t order : {2, 3}) {
    const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
    for (int k = 1; k <= 2; ++k) {
      const TwistAxiomReport r = check_twisting_axioms(canonical_twist(g, k), 4);
      CHECK(r.ok());
      CHECK(r.simplices_checked > 0);
    }
  }
  CHECK(check_twisting_axioms(trivial_twist(FiniteAbelianGroup::cyclic(2), 1), 3).ok());
}

TEST_CASE("canonical tau is d_0 h - h d_0") {
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  for_each_cocycle(g, 3, 2, [&](const Cochain& z) {
    Cochain expect = cochain_face(g, cone_section(g, z), 0);
    const Cochain b = cone_section(g, cochain_face(g, z, 0));
    g.sub_into(expect.labels, b.labels);
    CHECK(canonical_tau(g, z) == expect);
  });
}

TEST_CASE("sign-flipped twist fails the d_0 axiom over Z/3") {
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  const TwistAxiomReport r = check_twisting_axioms(sign_flipped(g, 1), 3);
  CHECK_FALSE(r.ok());
  CHECK(r.per_axiom.at("d0") > 0);
  CHECK_FALSE(r.violations.empty());
  CHECK_THROWS_AS(twisted_product(sign_flipped(g, 1), 3), PreconditionError);
  // Over Z/2 the two signs agree.
  CHECK(check_twisting_axioms(sign_flipped(FiniteAbelianGroup::cyclic(2), 1), 3).ok());
}

TEST_CASE("E(pi,k) is the twisted product of K(pi,k) and K(pi,k+1)") {
  for (std::int64_t order : {2, 3}) {
    const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
    const IsoReport r = e_as_twisted_product_iso(g, 1, 3);
    CHECK(r.ok());
    REQUIRE(r.degrees.size() == 4);
    for (const auto& d : r.degrees) CHECK(d.e_count == d.pair_count);
  }
  const auto tp = twisted_product(canonical_twist(FiniteAbelianGroup::cyclic(2), 1), 3);
  CHECK(check_simplicial_identities(tp.set()).empty());
}

TEST_CASE("splitting round trip") {
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  for_each_cochain(g, 2, 1, [&](const Cochain& e) {
    const auto [f, b] = twisted_splitting(g, e);
    CHECK(is_cocycle(g, f));
    CHECK(b == coboundary(g, e));
    Cochain back = cone_section(g, b);
    g.add_into(back.labels, f.labels);
    CHECK(back == e);
  });
}
