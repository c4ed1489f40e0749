#include "doctest.h"

#include "bsset/bounds.hpp"
#include "bsset/em_model.hpp"

using namespace bsset;

namespace {

const BoundConfig C0{Real(0)};
const BoundConfig C1{Real(1)};

}  // namespace

TEST_CASE("elementary bounds") {
  CHECK(rank_bound(2, 1, C0) == Real(1));
  CHECK(rank_bound(3, 0, C1) == Real(0));
  CHECK(rank_bound(3, 2, C0) == Real(8));
  CHECK(rank_bound(3, 3, C1) > rank_bound(3, 2, C1));
  CHECK(rank_bound(3, 2, C1) > rank_bound(3, 2, C0));
  CHECK(torsion_exponent_bound(3, 1) == 6);
  CHECK(torsion_exponent_bound(5, 0) == 0);
  CHECK(torsion_exponent_bound(8, 2) == 2 * torsion_exponent_bound(4, 2));
}

TEST_CASE("per-prime homotopy order bound") {
  CHECK(pre_absorption_exact(2, 2, 1, 2) == Integer(65536));
  const LogBound b = homotopy_order_bound_p(2, 2, 1, 2, C0);
  CHECK(log_leq(b.log_pre_absorption, Real(16) * log(Real(2))));
  CHECK(log_leq(Real(16) * log(Real(2)), b.log_pre_absorption));
  CHECK(homotopy_order_bound_p(4, 3, 0, 2, C1).log_value == Real(0));
  const LogBound deg = homotopy_order_bound_p(3, 2, 1, 1, C1);
  CHECK(deg.degenerate);
  CHECK(deg.log_value == deg.log_pre_absorption);
  CHECK_FALSE(deg.note.empty());
}

TEST_CASE("combined bound dominates each prime") {
  for (int n = 2; n <= 6; ++n)
    for (int h = 2; h <= 4; ++h)
      for (int m = 1; m <= 3; ++m) {
        const LogBound one = homotopy_order_bound_p(n, 3, m, h, C1);
        const LogBound all = homotopy_order_bound(n, m, Integer(6), h, C1);
        CHECK(log_leq(one.log_value, all.log_value));
      }
  CHECK(homotopy_order_bound(4, 2, Integer(1), 2, C1).log_value == Real(0));
}

TEST_CASE("stage size bound") {
  CHECK(stage_size_bound(3, 2, {Integer(2)}) == Integer(12));
  CHECK(stage_size_bound(5, 4, {Integer(1), Integer(1), Integer(1)}) == Integer(6));
  // Equality with the simplex count of a single EM skeleton.
  const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(3);
  Integer total(0);
  for (int l = 0; l <= 4; ++l) total += em_cardinality(g, 2, l, EmSpace::K);
  CHECK(stage_size_bound(4, 2, {Integer(3)}) == total);
  const Real lg = stage_size_bound_log(4, 2, {log(Real(3))});
  CHECK(log_leq(lg, log(Real(static_cast<long long>(to_int64(total))))));
  CHECK(log_leq(log(Real(static_cast<long long>(to_int64(total)))), lg));
}

TEST_CASE("final bound") {
  CHECK(final_bound(3, 1, 1, Integer(1), C1).log_value == Real(0));
  CHECK_FALSE(final_bound(3, 1, 1, Integer(1), C1).note.empty());
  CHECK(final_bound(3, 1, 0, Integer(2), C1).log_value == Real(0));
  const Real base = final_bound(3, 1, 2, Integer(2), C1).log_value;
  CHECK(base > Real(0));
  CHECK(final_bound(4, 1, 2, Integer(2), C1).log_value > base);
  CHECK(final_bound(3, 2, 2, Integer(2), C1).log_value > base);
  CHECK(final_bound(3, 1, 3, Integer(2), C1).log_value > base);
  CHECK(final_bound(3, 1, 2, Integer(6), C1).log_value > base);
  CHECK(final_bound(3, 1, 2, Integer(2), BoundConfig{Real(2)}).log_value > base);
}

TEST_CASE("proof chains on a small grid") {
  for (const auto& cfg : {C0, C1})
    for (int n = 2; n <= 5; ++n)
      for (int h = 2; h <= 3; ++h)
        for (int m = 1; m <= 2; ++m) {
          const ChainCheck a = check_chain(homotopy_chain(n, 2, m, h, 2 * m, h, cfg));
          CHECK_MESSAGE(a.ok, (a.failures.empty() ? std::string() : a.failures.front()));
          const ChainCheck b = check_chain(stage_chain(n, m, h, Integer(2), cfg));
          CHECK_MESSAGE(b.ok, (b.failures.empty() ? std::string() : b.failures.front()));
        }
}

TEST_CASE("formatting") {
  CHECK(format_log_value(Real(0)) == "1");
  CHECK(format_log_value(log(Real(65536))).find("6.5536e+4") != std::string::npos);
}
