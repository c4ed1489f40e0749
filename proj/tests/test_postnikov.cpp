#include "doctest.h"

#include "bsset/bounds.hpp"
#include "bsset/errors.hpp"
#include "bsset/linalg.hpp"
#include "bsset/postnikov.hpp"
#include "bsset/sset_io.hpp"
#include "support.hpp"

using namespace bsset;

namespace {

const FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);

std::shared_ptr<const FinSimplicialSet> em_set(const FiniteAbelianGroup& g, int k, int up_to) {
  auto em = std::make_shared<EmSkeleton>(build_em_skeleton(g, k, EmSpace::K, up_to));
  return std::shared_ptr<const FinSimplicialSet>(em, &em->set());
}

}  // namespace

TEST_CASE("homology isomorphisms through the mapping cone") {
  const FinSimplicialSet x = testing::load("corpus/sigma_rp2.sset");
  CHECK(verify_homology_iso(x, x, identity_map(x), 3, std::nullopt).ok());
  CHECK(verify_homology_iso(x, x, identity_map(x), 3, 2).ok());

  const FinSimplicialSet d3 = standard_simplex(3);
  const FinSimplicialSet pt = point();
  CHECK(verify_homology_iso(d3, pt, constant_map(d3, {0, 0}), 4, std::nullopt).ok());

  // The constant map of the sphere kills H_2.
  const FinSimplicialSet s2 = simplex_boundary(3);
  const auto r = verify_homology_iso(s2, pt, constant_map(s2, {0, 0}), 2, std::nullopt);
  CHECK_FALSE(r.ok());
  CHECK(r.degrees[0].iso);
  CHECK(r.degrees[1].iso);
  CHECK_FALSE(r.degrees[2].iso);

  // Not simplicial: the wrong vertex order on an edge.
  SimplicialMap bad = identity_map(d3);
  std::swap(bad.images[0][0], bad.images[0][1]);
  CHECK_THROWS_AS(verify_homology_iso(d3, d3, bad, 2, std::nullopt), PreconditionError);
}

TEST_CASE("Hurewicz bootstrap") {
  SUBCASE("suspension of the projective plane") {
    const FinSimplicialSet x = testing::load("corpus/sigma_rp2.sset");
    const HurewiczStage2 h = hurewicz_stage2(x, 3);
    CHECK(h.pi2.str() == "Z/2");
    CHECK(check_kinvariant(x, h.phi_cochains).empty());
    const auto iso = verify_homology_iso(x, *h.stage.space, h.phi, 2, std::nullopt);
    CHECK(iso.ok());
    CHECK(iso.degrees[2].source.str() == "Z/2");
  }
  SUBCASE("contractible input") {
    const HurewiczStage2 h = hurewicz_stage2(standard_simplex(3), 3);
    CHECK(h.pi2.is_trivial());
    CHECK(h.stage.space->total_generators() == 1);
  }
  SUBCASE("not simply connected") {
    CHECK_THROWS_AS(hurewicz_stage2(testing::load("corpus/rp2.sset"), 3), PreconditionError);
  }
  SUBCASE("infinite H_2") {
    CHECK_THROWS_AS(hurewicz_stage2(simplex_boundary(3), 3), PreconditionError);
  }
}

TEST_CASE("pullback stages") {
  SUBCASE("constant k-invariant gives the product with K(pi,k)") {
    auto prev = em_set(z2, 2, 4);
    const PostnikovStage st = pullback_stage(prev, zero_kinvariant(*prev, z2, 3), 2, 4);
    for (int n = 0; n <= 4; ++n)
      CHECK(st.simplex_counts[static_cast<std::size_t>(n)] ==
            Integer(static_cast<unsigned long long>(simplex_count(*prev, n))) * em_cardinality(z2, 2, n, EmSpace::K));
    CHECK(check_simplicial_identities(*st.space).empty());
    CHECK(check_simplicial_map(*st.space, *prev, st.projection).empty());
  }
  SUBCASE("identity k-invariant gives E(pi,k)") {
    auto em = std::make_shared<EmSkeleton>(build_em_skeleton(z2, 2, EmSpace::K, 4));
    std::shared_ptr<const FinSimplicialSet> prev(em, &em->set());
    const PostnikovStage st = pullback_stage(prev, identity_kinvariant(*em), 1, 4);
    for (int n = 0; n <= 4; ++n) {
      CHECK(st.simplex_counts[static_cast<std::size_t>(n)] == em_cardinality(z2, 1, n, EmSpace::E));
      CHECK(Integer(static_cast<unsigned long long>(simplex_count(*st.space, n))) == em_cardinality(z2, 1, n, EmSpace::E));
    }
    CHECK(check_simplicial_identities(*st.space).empty());
    const auto h = homology_all(normalized_chain_complex(*st.space));
    for (std::size_t n = 1; n + 1 < h.size(); ++n) CHECK(h[n].is_zero());
  }
  SUBCASE("non-simplicial k-invariant is rejected") {
    auto prev = em_set(z2, 2, 4);
    KInvariantMap k = zero_kinvariant(*prev, z2, 3);
    k.values[4][0].labels[0] = 1;  // not a cocycle
    CHECK_THROWS_AS(pullback_stage(prev, k, 2, 4), PreconditionError);
  }
  SUBCASE("k-invariant files round trip") {
    auto prev = em_set(z2, 2, 3);
    auto em = build_em_skeleton(z2, 2, EmSpace::K, 3);
    const KInvariantMap k = identity_kinvariant(em);
    const KInvariantMap back = parse_kinv(serialize_kinv(k, *prev), *prev);
    CHECK(back.values == k.values);
    CHECK(check_kinvariant(*prev, back).empty());
    const KInvariantMap zero = parse_kinv(read_text_file(testing::data_path("kinv/zero_z2_degree4.kinv")), *prev);
    CHECK(zero.degree == 4);
    CHECK(check_kinvariant(*prev, zero).empty());
    CHECK_THROWS_AS(parse_kinv("KINV/1\ngroup 2\ndegree 2\nmap nowhere : 0.1.2=1\nend\n", *prev), ParseError);
  }
}

TEST_CASE("column selection") {
  RatMatrix m(1, 2);
  m(0, 0) = Rational(2);
  m(0, 1) = Rational(3);
  CHECK(select_unit_columns(m, 2) == std::vector<int>{1});
  CHECK(select_unit_columns(m, 3) == std::vector<int>{0});
  CHECK(select_unit_columns(m, 5) == std::vector<int>{0});
  RatMatrix none(1, 1);
  none(0, 0) = Rational(4);
  CHECK_THROWS_AS(select_unit_columns(none, 2), PreconditionError);
}

TEST_CASE("pruning the 4-skeleton of K(Z/2,2)") {
  const auto w = em_set(z2, 2, 4);
  const PrunedSet y = prune(*w, 2, 2);
  CHECK(y.verified());
  CHECK(y.h_d1.is_zero());
  CHECK(y.h_d2.is_zero());
  CHECK(static_cast<Eigen::Index>(y.selected.size()) == rational_rank(to_rational(boundary_matrix(*w, 4))));
  CHECK(check_simplicial_identities(y.y).empty());
  const ChainComplexZ c = normalized_chain_complex(y.y);
  CHECK(local_homology(c, 2, 2).str() == "Z/2");
  CHECK(y.y.generator_count(3) == w->generator_count(3));

  // Nothing to select in degree d+2.
  const FinSimplicialSet d2 = standard_simplex(2);
  const PrunedSet same = prune(d2, 2, 2);
  CHECK(same.selected.empty());
  CHECK(same.y.generator_counts() == d2.generator_counts());

  CHECK_THROWS_AS(select_basis_simplices(simplex_boundary(3), 1, 2), PreconditionError);
}

TEST_CASE("pipeline") {
  SUBCASE("contractible input") {
    const PipelineResult r = pipeline(testing::load("corpus/delta3.sset"), PipelineOptions{}, {});
    CHECK(r.ok());
    CHECK(r.y_total_generators == 1);
    CHECK(r.stages.size() == 3);
    for (const auto& s : r.stages) CHECK(s.containment_ok);
  }
  SUBCASE("suspension of the projective plane, stage 2 only") {
    PipelineOptions o;
    o.stage2_only = true;
    const PipelineResult r = pipeline(testing::load("corpus/sigma_rp2.sset"), o, {});
    for (const auto& v : r.verdicts) CHECK_MESSAGE(v.status == "pass", (v.name + ": " + v.reason));
    REQUIRE(r.stages.size() == 1);
    CHECK(r.stages[0].total_simplices == r.stages[0].containment_bound);
    CHECK(r.y_generators[3] == 4);
  }
  SUBCASE("missing k-invariants") {
    CHECK_THROWS_AS(pipeline(testing::load("corpus/sigma_rp2.sset"), PipelineOptions{}, {}), PreconditionError);
  }
  SUBCASE("hypotheses") {
    CHECK_THROWS_AS(pipeline(testing::load("corpus/rp2.sset"), PipelineOptions{}, {}), PreconditionError);
    CHECK_THROWS_AS(pipeline(simplex_boundary(3), PipelineOptions{}, {}), PreconditionError);
    PipelineOptions bad;
    bad.p = 6;
    CHECK_THROWS_AS(pipeline(standard_simplex(2), bad, {}), InputError);
  }
}
