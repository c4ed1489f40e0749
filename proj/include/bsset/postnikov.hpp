#pragma once

// Postnikov stages as pullbacks of E(pi,k) -> K(pi,k+1), the stage-2
// Hurewicz bootstrap, and the Z_(p) pruning of the top skeleton degree.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bsset/abelian_group.hpp"
#include "bsset/cochain.hpp"
#include "bsset/em_model.hpp"
#include "bsset/homology.hpp"
#include "bsset/materialize.hpp"
#include "bsset/sset.hpp"

namespace bsset {

// ---------------------------------------------------------------------------
// Simplicial maps between finitely generated sets

struct SimplicialMap {
  std::vector<std::vector<SimplexRef>> images;  // images[n][g] for each generator of the source

  SimplexRef apply(const SimplexRef& x) const;
};

// Problems found (empty iff every generator's faces are mapped compatibly).
std::vector<std::string> check_simplicial_map(const FinSimplicialSet& source, const FinSimplicialSet& target,
                                              const SimplicialMap& f);
SimplicialMap identity_map(const FinSimplicialSet& s);
// Everything to the degeneracies of one vertex of the target.
SimplicialMap constant_map(const FinSimplicialSet& source, GeneratorId target_vertex);
// f_n : C_n(source) -> C_n(target) on normalized chains.
IntMatrix chain_map_matrix(const FinSimplicialSet& source, const FinSimplicialSet& target, const SimplicialMap& f, int n);

struct IsoDegree {
  int degree = 0;
  HomologyGroup source;
  HomologyGroup target;
  HomologyGroup cone;
  bool iso = false;
};

struct HomologyIsoReport {
  std::optional<std::int64_t> prime;  // nullopt: integral coefficients
  std::vector<IsoDegree> degrees;
  bool ok() const noexcept;
};

// Checks that f induces isomorphisms on H_n for n <= through via the mapping
// cone: cone homology vanishes through `through` and the top groups agree.
// Throws PreconditionError if f is not simplicial.
HomologyIsoReport verify_homology_iso(const FinSimplicialSet& source, const FinSimplicialSet& target,
                                      const SimplicialMap& f, int through, std::optional<std::int64_t> p);

// ---------------------------------------------------------------------------
// k-invariants: simplicial maps into K(pi, degree) given by cochains

struct KInvariantMap {
  FiniteAbelianGroup group;
  int degree = 2;  // target K(group, degree)
  std::vector<std::vector<Cochain>> values;  // per generator of the source

  // The cochain assigned to an arbitrary simplex (degeneracies applied).
  Cochain evaluate(const SimplexRef& x) const;
};

// Problems found: wrong shapes, non-cocycles, or faces not commuting.
std::vector<std::string> check_kinvariant(const FinSimplicialSet& source, const KInvariantMap& k);
KInvariantMap zero_kinvariant(const FinSimplicialSet& source, const FiniteAbelianGroup& g, int degree);
// sigma |-> (S |-> z(sigma restricted to S)), for a normalized cocycle z given
// on the degree-`degree` generators.
KInvariantMap kinvariant_from_cocycle(const FinSimplicialSet& source, const FiniteAbelianGroup& g, int degree,
                                      const std::vector<FiniteAbelianGroup::Element>& z);
// The tautological map of an EM skeleton to itself.
KInvariantMap identity_kinvariant(const EmSkeleton& k);

// Locates the image cochains in a materialized K(pi,degree).
SimplicialMap to_simplicial_map(const KInvariantMap& k, const EmSkeleton& target);

// ---------------------------------------------------------------------------
// Pullback stages

class PullbackModel {
 public:
  using Simplex = std::pair<SimplexRef, Cochain>;  // (b, e) with coboundary(e) = kinv(b)
  struct Hash {
    std::size_t operator()(const Simplex& s) const noexcept {
      return SimplexRefHash{}(s.first) * 0x9e3779b97f4a7c15ULL ^ CochainHash{}(s.second);
    }
  };

  PullbackModel(std::shared_ptr<const FinSimplicialSet> base, std::shared_ptr<const KInvariantMap> kinv);

  const FinSimplicialSet& base() const noexcept { return *base_; }
  const KInvariantMap& kinv() const noexcept { return *kinv_; }
  const FiniteAbelianGroup& group() const noexcept { return kinv_->group; }
  int fiber_degree() const noexcept { return kinv_->degree - 1; }

  Integer simplex_count(int n) const;
  std::vector<Simplex> simplices(int n) const;
  int degree(const Simplex& x) const { return x.second.dim; }
  Simplex face(const Simplex& x, int i) const;
  Simplex degeneracy(const Simplex& x, int j) const;
  std::string name(const Simplex& x) const;

 private:
  std::shared_ptr<const FinSimplicialSet> base_;
  std::shared_ptr<const KInvariantMap> kinv_;
  EmModel fiber_;
};

struct PostnikovStage {
  int k = 0;
  FiniteAbelianGroup pi;
  std::shared_ptr<const FinSimplicialSet> space;
  SimplicialMap projection;  // to the previous stage (empty for stage 2)
  // Total simplex counts per degree, degenerate ones included.
  std::vector<Integer> simplex_counts;
};

// Throws PreconditionError when kinv is not simplicial.
PostnikovStage pullback_stage(std::shared_ptr<const FinSimplicialSet> previous, const KInvariantMap& kinv, int k,
                              int up_to, std::uint64_t budget = default_budget);

// ---------------------------------------------------------------------------
// Stage 2 from the Hurewicz isomorphism

struct HurewiczStage2 {
  FiniteAbelianGroup pi2;
  std::shared_ptr<const EmSkeleton> em;  // K(pi2, 2) through the requested degree
  PostnikovStage stage;
  std::vector<FiniteAbelianGroup::Element> cocycle;  // on the 2-generators of X
  KInvariantMap phi_cochains;
  SimplicialMap phi;  // X -> stage.space
};

// Throws PreconditionError if H_1(X) != 0 or H_2(X) is infinite.
HurewiczStage2 hurewicz_stage2(const FinSimplicialSet& x, int up_to, std::uint64_t budget = default_budget);

// ---------------------------------------------------------------------------
// Pruning

// Generator indices (degree d+2) whose boundaries form a Z_(p)-basis of the
// image of the (d+2)-differential. Throws PreconditionError if
// H_{d+1}(W; Z_(p)) != 0.
std::vector<int> select_basis_simplices(const FinSimplicialSet& w, int d, std::int64_t p);
// Greedy elimination on coordinates: repeatedly the lowest column with a
// p-unit entry in a remaining row. Throws PreconditionError if it stalls.
std::vector<int> select_unit_columns(RatMatrix m, std::int64_t p);

struct PrunedSet {
  FinSimplicialSet y;
  std::vector<int> selected;  // degree d+2 generator indices in the source
  std::int64_t p = 2;
  int d = 0;
  HomologyGroup h_d1;  // H_{d+1}(Y; Z_(p))
  HomologyGroup h_d2;  // H_{d+2}(Y; Z_(p))
  Eigen::Index rank_selected = 0;  // rank over Q of the selected boundaries
  Eigen::Index rank_image = 0;     // rank over Q of the full (d+2)-differential
  bool verified() const noexcept;
};

PrunedSet prune(const FinSimplicialSet& w, int d, std::int64_t p);

// Keeps all generators of degree <= d+1 and the listed ones in degree d+2.
FinSimplicialSet restrict_top_degree(const FinSimplicialSet& w, int d, const std::vector<int>& keep);

// ---------------------------------------------------------------------------
// End-to-end

// Supplies the k-invariant P_{k-1} -> K(pi_k, k+1) for stage k >= 3.
using KInvariantProvider = std::function<KInvariantMap(int k, const FinSimplicialSet& previous)>;

struct PipelineOptions {
  std::int64_t p = 2;
  bool stage2_only = false;
  std::uint64_t budget = default_budget;
  double bound_constant = 1.0;
};

struct StageSummary {
  int k = 0;
  std::string group;
  std::vector<std::size_t> generators;  // nondegenerate, per degree
  std::vector<Integer> simplices;       // all, per degree
  Integer containment_bound;            // stage_size_bound through the top degree
  Integer total_simplices;
  bool containment_ok = false;
};

struct Verdict {
  std::string name;
  std::string status;  // pass, fail, skipped
  std::string reason;
};

struct PipelineResult {
  int dimension = 0;   // dim X
  int d = 0;           // effective d used for skeleton and pruning
  HomologyProfile profile;
  Invariants invariants;
  std::vector<StageSummary> stages;
  std::vector<std::size_t> w_generators;
  std::vector<std::size_t> y_generators;
  std::size_t y_total_generators = 0;
  std::vector<std::string> selected;  // names of T
  std::string final_bound_log;        // natural log of the final bound
  std::string final_bound_note;
  std::vector<Verdict> verdicts;
  std::shared_ptr<const FinSimplicialSet> y;
  bool ok() const noexcept;
};

// Throws PreconditionError when X fails the hypotheses or k-invariants are
// missing; verification outcomes are reported as verdicts.
PipelineResult pipeline(const FinSimplicialSet& x, const PipelineOptions& options, const KInvariantProvider& kinvs);

}  // namespace bsset
