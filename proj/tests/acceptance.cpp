// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance is
// exact except the bound chains, which compare natural logs with the
// relative slack of log_leq (1e-80).

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "bsset/bounds.hpp"
#include "bsset/cochain.hpp"
#include "bsset/combinatorics.hpp"
#include "bsset/em_model.hpp"
#include "bsset/homology.hpp"
#include "bsset/linalg.hpp"
#include "bsset/materialize.hpp"
#include "bsset/postnikov.hpp"
#include "bsset/sset_io.hpp"
#include "bsset/twist.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace bsset;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  char t[32];
  std::snprintf(t, sizeof t, "%.1fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << number << " " << title << " [" << t << "] " << o.detail.str() << std::endl;
}

std::shared_ptr<const FinSimplicialSet> shared_em(const FiniteAbelianGroup& g, int k, EmSpace s, int up_to) {
  auto em = std::make_shared<EmSkeleton>(build_em_skeleton(g, k, s, up_to));
  return std::shared_ptr<const FinSimplicialSet>(em, &em->set());
}

const FiniteAbelianGroup z2 = FiniteAbelianGroup::cyclic(2);

}  // namespace

int main() {
  criterion(1, "EM counting: |K(pi,k)_n| = |pi|^C(n,k) by exhaustive enumeration", [](Outcome& o) {
    const std::vector<FiniteAbelianGroup> groups{FiniteAbelianGroup::cyclic(2), FiniteAbelianGroup::cyclic(3),
                                                 FiniteAbelianGroup::cyclic(4), FiniteAbelianGroup({2, 2})};
    int cases = 0;
    std::uint64_t enumerated = 0;
    for (const auto& g : groups)
      for (int k = 1; k <= 2; ++k)
        for (int n = 0; n <= 5; ++n) {
          std::uint64_t count = 0;
          bool valid = true;
          for_each_cocycle(g, n, k, [&](const Cochain& z) {
            ++count;
            if (!is_cocycle(g, z) || extend_free_labels(g, free_labels(g, z), n, k) != z) valid = false;
          });
          const Integer expect = pow(g.order(), static_cast<unsigned>(binomial(n, k)));
          o.require(valid, "non-cocycle or non-injective labelling for " + g.str());
          o.require(Integer(static_cast<unsigned long long>(count)) == expect,
                    g.str() + " k=" + std::to_string(k) + " n=" + std::to_string(n));
          o.require(em_cardinality(g, k, n, EmSpace::K) == expect, "em_cardinality formula");
          enumerated += count;
          ++cases;
        }
    o.detail << cases << " (group, k, n) cases, " << enumerated << " cocycles enumerated";
  });

  criterion(2, "Twisted decomposition: axioms and E(pi,k) = K(pi,k) x_tau K(pi,k+1)", [](Outcome& o) {
    int cases = 0;
    std::uint64_t checked = 0;
    for (std::int64_t order : {2, 3})
      for (int k = 1; k <= 2; ++k) {
        const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
        const TwistAxiomReport axioms = check_twisting_axioms(canonical_twist(g, k), 4);
        o.require(axioms.ok(), "axioms for Z/" + std::to_string(order) + " k=" + std::to_string(k));
        checked += axioms.simplices_checked;
        const IsoReport iso = e_as_twisted_product_iso(g, k, 4);
        o.require(iso.ok() && iso.degrees.size() == 5, "bijection for Z/" + std::to_string(order) + " k=" + std::to_string(k));
        for (const auto& d : iso.degrees) o.require(d.e_count == d.pair_count, "degreewise cardinality");
        ++cases;
      }
    o.detail << cases << " (pi, k) cases through degree 4, " << checked << " base simplices checked";
  });

  criterion(3, "Simplicial identity gate on every constructed set", [](Outcome& o) {
    std::vector<std::pair<std::string, std::shared_ptr<const FinSimplicialSet>>> sets;
    auto add = [&](std::string name, FinSimplicialSet s) {
      sets.emplace_back(std::move(name), std::make_shared<const FinSimplicialSet>(std::move(s)));
    };
    for (int n = 0; n <= 5; ++n) add("Delta^" + std::to_string(n), standard_simplex(n));
    for (int n = 1; n <= 4; ++n) add("boundary Delta^" + std::to_string(n), simplex_boundary(n));
    add("Delta^1 x Delta^1", product(standard_simplex(1), standard_simplex(1), 2));
    add("Delta^2 x Delta^1", product(standard_simplex(2), standard_simplex(1), 3));
    add("Delta^2 x Delta^2", product(standard_simplex(2), standard_simplex(2), 4));
    for (const char* f : {"delta2", "delta3", "boundary_delta3", "rp2", "sigma_rp2", "degenerate_face"})
      add(std::string("corpus ") + f, testing::load(std::string("corpus/") + f + ".sset"));
    for (std::int64_t order : {2, 3})
      for (int k = 1; k <= 2; ++k)
        for (EmSpace s : {EmSpace::K, EmSpace::E}) {
          const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
          const int top = (order == 3 && k == 1 && s == EmSpace::E) ? 3 : 4;
          sets.emplace_back(to_string(s) + "(Z/" + std::to_string(order) + "," + std::to_string(k) + ")", shared_em(g, k, s, top));
        }
    for (std::int64_t order : {2, 3})
      for (int k = 1; k <= 2; ++k) {
        const FiniteAbelianGroup g = FiniteAbelianGroup::cyclic(order);
        add("twisted product Z/" + std::to_string(order) + " k=" + std::to_string(k),
            twisted_product(canonical_twist(g, k), 3).set());
      }
    auto k22 = std::make_shared<EmSkeleton>(build_em_skeleton(z2, 2, EmSpace::K, 4));
    std::shared_ptr<const FinSimplicialSet> k22s(k22, &k22->set());
    sets.emplace_back("pullback along zero", pullback_stage(k22s, zero_kinvariant(*k22s, z2, 4), 3, 4).space);
    sets.emplace_back("pullback along identity", pullback_stage(k22s, identity_kinvariant(*k22), 1, 4).space);
    add("pruned sk_4 K(Z/2,2)", prune(*k22s, 2, 2).y);
    PipelineOptions opts;
    opts.stage2_only = true;
    const PipelineResult r = pipeline(testing::load("corpus/sigma_rp2.sset"), opts, {});
    sets.emplace_back("pipeline output for sigma_rp2", r.y);
    const PipelineResult c = pipeline(testing::load("corpus/delta3.sset"), PipelineOptions{}, {});
    sets.emplace_back("pipeline output for delta3", c.y);

    std::size_t violations = 0, generators = 0;
    for (const auto& [name, s] : sets) {
      const auto v = check_simplicial_identities(*s);
      o.require(v.empty(), name);
      violations += v.size();
      generators += s->total_generators();
    }
    o.detail << sets.size() << " sets, " << generators << " generators, " << violations << " violations";
  });

  criterion(4, "Homology engine: SNF vs gcd-of-minors oracle; H(boundary Delta^3); H(sk_5 K(Z/2,1))", [](Outcome& o) {
    std::mt19937_64 rng(20261018);
    int matrices = 0;
    for (; matrices < 1000; ++matrices) {
      const auto a = testing::random_matrix(rng);
      const auto expect = testing::divisors_from_minors(a);
      const auto got = elementary_divisors(testing::to_matrix(a));
      bool same = got.size() == expect.size();
      for (std::size_t i = 0; same && i < got.size(); ++i) same = got[i] == Integer(expect[i]);
      o.require(same, "divisors of random matrix " + std::to_string(matrices));
    }
    const auto s = homology_all(normalized_chain_complex(simplex_boundary(3)));
    o.require(s.size() == 3 && s[0].str() == "Z" && s[1].is_zero() && s[2].str() == "Z", "H(boundary Delta^3)");
    const auto k = build_em_skeleton(z2, 1, EmSpace::K, 5);
    const ChainComplexZ c = normalized_chain_complex(k.set());
    const auto h1 = homology(c, 1), h2 = homology(c, 2), h3 = homology(c, 3);
    o.require(h1.str() == "Z/2" && h2.is_zero() && h3.str() == "Z/2", "H(sk_5 K(Z/2,1))");
    o.detail << matrices << " random matrices; H(dDelta^3) = " << s[0].str() << ", " << s[1].str() << ", " << s[2].str()
             << "; sk_5 K(Z/2,1): H_1 = " << h1.str() << ", H_2 = " << h2.str() << ", H_3 = " << h3.str();
  });

  criterion(5, "Pruning sk_4 K(Z/2,2) at d = 2, p = 2", [](Outcome& o) {
    const auto w = shared_em(z2, 2, EmSpace::K, 4);
    const PrunedSet y = prune(*w, 2, 2);
    const ChainComplexZ c = normalized_chain_complex(y.y);
    const auto h2 = local_homology(c, 2, 2);
    o.require(y.h_d1.is_zero(), "H_3(Y; Z_(2)) = " + y.h_d1.str());
    o.require(y.h_d2.is_zero(), "H_4(Y; Z_(2)) = " + y.h_d2.str());
    o.require(h2.str() == "Z/2", "H_2(Y; Z_(2)) = " + h2.str());
    o.require(y.rank_selected == static_cast<Eigen::Index>(y.selected.size()), "selected boundaries independent");
    o.require(y.rank_selected == y.rank_image, "selected boundaries span the image");
    o.require(y.verified(), "verified()");
    o.detail << "|T| = " << y.selected.size() << " of " << w->generator_count(4) << " 4-generators; rank(im d_4) = "
             << y.rank_image << "; H_2 = " << h2.str() << ", H_3 = " << y.h_d1.str() << ", H_4 = " << y.h_d2.str();
  });

  criterion(6, "Stage containment and exact pullback counts", [](Outcome& o) {
    auto k22 = std::make_shared<EmSkeleton>(build_em_skeleton(z2, 2, EmSpace::K, 4));
    std::shared_ptr<const FinSimplicialSet> prev(k22, &k22->set());
    const int top = 4;
    const PostnikovStage trivial = pullback_stage(prev, zero_kinvariant(*prev, z2, 4), 3, top);
    Integer total(0);
    for (int n = 0; n <= top; ++n) {
      const Integer expect = Integer(static_cast<unsigned long long>(simplex_count(*prev, n))) * em_cardinality(z2, 3, n, EmSpace::K);
      const Integer actual(static_cast<unsigned long long>(simplex_count(*trivial.space, n)));
      o.require(trivial.simplex_counts[static_cast<std::size_t>(n)] == expect && actual == expect,
                "trivial bundle degree " + std::to_string(n));
      total += actual;
    }
    const Integer bound = stage_size_bound(top, 3, {Integer(2), Integer(2)});
    o.require(total <= bound, "trivial bundle total within stage_size_bound");

    const PostnikovStage ident = pullback_stage(prev, identity_kinvariant(*k22), 1, top);
    for (int n = 0; n <= top; ++n)
      o.require(Integer(static_cast<unsigned long long>(simplex_count(*ident.space, n))) == em_cardinality(z2, 1, n, EmSpace::E),
                "identity pullback degree " + std::to_string(n));

    PipelineOptions opts;
    opts.stage2_only = true;
    const PipelineResult r = pipeline(testing::load("corpus/sigma_rp2.sset"), opts, {});
    const PipelineResult c = pipeline(testing::load("corpus/delta3.sset"), PipelineOptions{}, {});
    int stages = 0;
    for (const auto* res : {&r, &c})
      for (const auto& s : res->stages) {
        o.require(s.containment_ok && s.total_simplices <= s.containment_bound, "pipeline stage " + std::to_string(s.k));
        ++stages;
      }
    o.detail << "trivial bundle total " << total.str() << " <= " << bound.str() << "; identity pullback = E(Z/2,1) through degree "
             << top << "; " << stages << " pipeline stages within bound";
  });

  criterion(7, "Bound-chain numerics over the grid; stage_size_bound(3,2,[2]) = 12", [](Outcome& o) {
    int chains = 0, steps = 0, skipped = 0;
    for (const BoundConfig& cfg : {BoundConfig{Real(0)}, BoundConfig{Real(1)}}) {
      for (int n = 2; n <= 8; ++n)
        for (std::int64_t p : {2, 3})
          for (int hp = 2; hp <= 4; ++hp)
            for (int mp = 1; mp <= 3; ++mp)
              for (int c = 1; c <= 2 * mp; ++c)
                for (int r = 1; r <= hp; ++r) {
                  const ChainCheck chk = check_chain(homotopy_chain(n, p, mp, hp, c, r, cfg));
                  ++chains;
                  steps += chk.steps_checked;
                  skipped += chk.steps_skipped;
                  if (!chk.ok)
                    o.require(false, "per-prime chain n=" + std::to_string(n) + " p=" + std::to_string(p) + " h_p=" +
                                         std::to_string(hp) + " m_p=" + std::to_string(mp) + ": " + chk.failures.front());
                }
      for (int d = 2; d <= 8; ++d)
        for (int h = 2; h <= 4; ++h)
          for (int m = 1; m <= 3; ++m)
            for (long long N : {2LL, 6LL, 30LL}) {
              const ChainCheck chk = check_chain(stage_chain(d, m, h, Integer(N), cfg));
              ++chains;
              steps += chk.steps_checked;
              skipped += chk.steps_skipped;
              if (!chk.ok)
                o.require(false, "stage chain d=" + std::to_string(d) + " h=" + std::to_string(h) + " m=" + std::to_string(m) +
                                     " N=" + std::to_string(N) + ": " + chk.failures.front());
            }
    }
    const Integer s = stage_size_bound(3, 2, {Integer(2)});
    o.require(s == Integer(12), "stage_size_bound(3,2,[2]) = " + s.str());
    o.detail << chains << " chains, " << steps << " inequalities checked, " << skipped
             << " skipped (a+b <= ab outside a,b >= 2); stage_size_bound(3,2,[2]) = " << s.str();
  });

  criterion(8, "Hurewicz bootstrap on the suspended projective plane", [](Outcome& o) {
    const FinSimplicialSet x = testing::load("corpus/sigma_rp2.sset");
    const HurewiczStage2 h = hurewicz_stage2(x, 4);
    o.require(h.pi2.str() == "Z/2", "pi_2 = " + h.pi2.str());
    const auto iso = verify_homology_iso(x, *h.stage.space, h.phi, 2, std::nullopt);
    o.require(iso.ok(), "phi_2 is not an isomorphism on H_<=2");
    const auto& top = iso.degrees.back();
    o.detail << "pi_2 = " << h.pi2.str() << "; H_2(X) = " << top.source.str() << " -> H_2(K) = " << top.target.str()
             << ", cone H_2 = " << top.cone.str();
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
