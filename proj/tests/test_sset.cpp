#include <algorithm>
#include <functional>

#include "doctest.h"

#include "bsset/errors.hpp"
#include "bsset/homology.hpp"
#include "bsset/materialize.hpp"
#include "bsset/sset.hpp"
#include "bsset/sset_io.hpp"
#include "support.hpp"

using namespace bsset;

namespace {

std::vector<int> act(std::vector<int> seq, const std::vector<int>& word) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) seq.insert(seq.begin() + *it, seq[static_cast<std::size_t>(*it)]);
  return seq;
}

// Every composable word of the given length acting on degree-n simplices.
void for_each_word(int n, int length, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> rev;  // applied order
  std::function<void(int)> rec = [&](int deg) {
    if (static_cast<int>(rev.size()) == length) {
      fn(std::vector<int>(rev.rbegin(), rev.rend()));
      return;
    }
    for (int j = 0; j <= deg; ++j) {
      rev.push_back(j);
      rec(deg + 1);
      rev.pop_back();
    }
  };
  rec(n);
}

void for_each_monotone(int len, int m, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> seq;
  std::function<void(int)> rec = [&](int lo) {
    if (static_cast<int>(seq.size()) == len) {
      fn(seq);
      return;
    }
    for (int v = lo; v <= m; ++v) {
      seq.push_back(v);
      rec(v);
      seq.pop_back();
    }
  };
  rec(0);
}

}  // namespace

TEST_CASE("normalize_word acts like its input on the standard simplex") {
  int checked = 0;
  for (int n = 0; n <= 2; ++n)
    for (int len = 1; len <= 3; ++len)
      for_each_word(n, len, [&](const std::vector<int>& w) {
        const DegeneracyWord nf = normalize_word(w);
        CHECK(std::is_sorted(nf.indices().rbegin(), nf.indices().rend()));
        CHECK(std::adjacent_find(nf.indices().begin(), nf.indices().end()) == nf.indices().end());
        CHECK(normalize_word(nf.indices()) == nf);
        const int m = std::min(n + len, 6);
        for_each_monotone(n + 1, m, [&](const std::vector<int>& seq) {
          CHECK(act(seq, w) == act(seq, nf.indices()));
          ++checked;
        });
      });
  CHECK(checked > 1000);
}

TEST_CASE("face and pull_back agree with vertex sequences on the standard simplex") {
  const int m = 3;
  const FinSimplicialSet delta = standard_simplex(m);
  for (int n = 0; n <= 5; ++n)
    for (const SimplexRef& x : all_simplices(delta, n)) {
      const auto seq = testing::vertex_sequence(delta, x);
      REQUIRE(static_cast<int>(seq.size()) == n + 1);
      for (int i = 0; n >= 1 && i <= n; ++i) {
        auto expect = seq;
        expect.erase(expect.begin() + i);
        CHECK(testing::vertex_sequence(delta, face(delta, x, i)) == expect);
      }
      for (int j = 0; j <= n; ++j) CHECK(testing::vertex_sequence(delta, degeneracy(x, j)) == act(seq, {j}));
      if (n >= 1) {
        const MonotoneMap f(n, {0, 0, n, n});
        CHECK(testing::vertex_sequence(delta, pull_back(delta, x, f)) ==
              std::vector<int>{seq[0], seq[0], seq[static_cast<std::size_t>(n)], seq[static_cast<std::size_t>(n)]});
      }
    }
}

TEST_CASE("simplex counts") {
  const FinSimplicialSet d2 = standard_simplex(2);
  CHECK(d2.generator_counts() == std::vector<std::size_t>{3, 3, 1});
  CHECK(simplex_count(d2, 3) == 15);
  CHECK(all_simplices(d2, 3).size() == 15);
  CHECK(simplex_count(point(), 4) == 1);
  const FinSimplicialSet b = simplex_boundary(3);
  CHECK(b.generator_counts() == std::vector<std::size_t>{4, 6, 4});
  CHECK(check_simplicial_identities(b).empty());
}

TEST_CASE("products of simplices") {
  const FinSimplicialSet d1 = standard_simplex(1);
  const FinSimplicialSet sq = product(d1, d1, 2);
  // Two triangles plus the diagonal: five nondegenerate edges.
  CHECK(sq.generator_counts() == std::vector<std::size_t>{4, 5, 2});
  CHECK(check_simplicial_identities(sq).empty());
  const FinSimplicialSet prism = product(standard_simplex(2), d1, 3);
  CHECK(prism.generator_counts() == std::vector<std::size_t>{6, 12, 10, 3});
  CHECK(check_simplicial_identities(prism).empty());
  const auto h = homology_all(normalized_chain_complex(prism));
  CHECK(h[0].str() == "Z");
  for (std::size_t n = 1; n < h.size(); ++n) CHECK(h[n].is_zero());
}

TEST_CASE("skeleta keep homology below the cut") {
  const FinSimplicialSet x = testing::load("corpus/sigma_rp2.sset");
  const auto full = homology_all(normalized_chain_complex(x));
  for (int k = 1; k <= 3; ++k) {
    const auto part = homology_all(normalized_chain_complex(skeleton(x, k)));
    for (int n = 0; n < k; ++n) CHECK(part[static_cast<std::size_t>(n)] == full[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("SSET/1 parsing") {
  const FinSimplicialSet d2 = testing::load("corpus/delta2.sset");
  CHECK(d2.generator_counts() == std::vector<std::size_t>{3, 3, 1});

  SUBCASE("dangling reference names the generator") {
    try {
      testing::load("corpus/dangling.sset");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("'c'") != std::string::npos);
      CHECK(e.line() == 6);
    }
  }
  SUBCASE("transposed faces are rejected unless verification is off") {
    CHECK_THROWS_AS(testing::load("corpus/transposed_faces.sset"), InputError);
    const FinSimplicialSet s = testing::load("corpus/transposed_faces.sset", false);
    const auto v = check_simplicial_identities(s);
    REQUIRE(v.size() == 2);
    CHECK(v[0].i == 0);
    CHECK(v[0].j == 2);
  }
  SUBCASE("degenerate faces") {
    const FinSimplicialSet s = testing::load("corpus/degenerate_face.sset");
    const auto h = homology_all(normalized_chain_complex(s));
    CHECK(h[2].str() == "Z");
    CHECK(h[1].is_zero());
  }
  SUBCASE("syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_sset("SSET/1\ntop_degree x\n"), "line 2, column 12: expected degree, found 'x'", ParseError);
    CHECK_THROWS_AS(parse_sset("SSET/1\ntop_degree 1\ngens 0: a\ngens 0: b\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_sset("SSET/1\ntop_degree 1\ngens 0: a a\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_sset("SSET/1\ntop_degree 1\ngens 0: a\ngens 1: e\nd 0 e = a\nend\n"), ParseError);
    CHECK_THROWS_AS(parse_sset("SSET/1\ntop_degree 0\ngens 0: a\n"), ParseError);
    CHECK_THROWS_AS(parse_sset("SSET/1\ntop_degree 1\ngens 0: a\ngens 1: e\nd 0 e = [s0] a\nd 1 e = a\nend\n"), ParseError);
  }
  SUBCASE("brackets are optional") {
    const auto a = parse_sset("SSET/1\ntop_degree 2\ngens 0: p\ngens 2: t\nd 0 t = s0 p\nd 1 t = [s0] p\nd 2 t = [ s0 ] p\nend\n");
    CHECK(a.generator_face({2, 0}, 0) == a.generator_face({2, 0}, 2));
  }
}

TEST_CASE("serialize then parse gives the same set") {
  for (const char* f : {"corpus/delta3.sset", "corpus/sigma_rp2.sset", "corpus/degenerate_face.sset"}) {
    const FinSimplicialSet s = testing::load(f);
    const FinSimplicialSet t = parse_sset(serialize_sset(s));
    REQUIRE(t.generator_counts() == s.generator_counts());
    for (int n = 1; n <= s.top_degree(); ++n)
      for (std::size_t g = 0; g < s.generator_count(n); ++g)
        for (int i = 0; i <= n; ++i) {
          const GeneratorId id{n, static_cast<int>(g)};
          CHECK(t.name(id) == s.name(id));
          CHECK(t.generator_face(id, i) == s.generator_face(id, i));
        }
    CHECK(serialize_sset(t) == serialize_sset(s));
  }
}
