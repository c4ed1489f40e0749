#include "bsset/postnikov.hpp"

#include <algorithm>

#include "bsset/bounds.hpp"
#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"
#include "bsset/linalg.hpp"

namespace bsset {

namespace {

// Homology of a complex that is zero above its top degree.
HomologyGroup homology_at(const ChainComplexZ& c, int n) {
  HomologyGroup h;
  if (n < 0) return h;
  const auto rank_n = integer_rank(c.differential(n));
  const auto next = elementary_divisors(c.differential(n + 1));
  h.free_rank = static_cast<int>(static_cast<Eigen::Index>(c.dim(n)) - rank_n - static_cast<Eigen::Index>(next.size()));
  for (const auto& d : next)
    if (d > Integer(1)) h.torsion.push_back(d);
  return h;
}

HomologyGroup maybe_local(const HomologyGroup& h, std::optional<std::int64_t> p) { return p ? local_part(h, *p) : h; }

SimplexRef with_word(const SimplexRef& x, const DegeneracyWord& outer) {
  std::vector<int> w(outer.indices());
  w.insert(w.end(), x.word.indices().begin(), x.word.indices().end());
  return SimplexRef{x.generator, DegeneracyWord::from_composite(w)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Simplicial maps

SimplexRef SimplicialMap::apply(const SimplexRef& x) const {
  const auto& level = images.at(static_cast<std::size_t>(x.generator.degree));
  return with_word(level.at(static_cast<std::size_t>(x.generator.index)), x.word);
}

std::vector<std::string> check_simplicial_map(const FinSimplicialSet& source, const FinSimplicialSet& target,
                                              const SimplicialMap& f) {
  std::vector<std::string> problems;
  if (f.images.size() != static_cast<std::size_t>(source.top_degree()) + 1) {
    problems.push_back("map covers " + std::to_string(f.images.size()) + " degrees, source has " +
                       std::to_string(source.top_degree() + 1));
    return problems;
  }
  for (int n = 0; n <= source.top_degree(); ++n) {
    const auto& level = f.images[static_cast<std::size_t>(n)];
    if (level.size() != source.generator_count(n)) {
      problems.push_back("degree " + std::to_string(n) + ": wrong number of images");
      return problems;
    }
    for (const auto& img : level)
      if (!target.valid(img.generator) || img.degree() != n) {
        problems.push_back("degree " + std::to_string(n) + ": image is not a valid " + std::to_string(n) + "-simplex");
        return problems;
      }
  }
  for (int n = 1; n <= source.top_degree(); ++n)
    for (std::size_t g = 0; g < source.generator_count(n); ++g) {
      const SimplexRef x{GeneratorId{n, static_cast<int>(g)}, {}};
      const SimplexRef fx = f.apply(x);
      for (int i = 0; i <= n; ++i)
        if (f.apply(face(source, x, i)) != face(target, fx, i))
          problems.push_back("d_" + std::to_string(i) + " of '" + source.name(x.generator) + "' is not preserved");
    }
  return problems;
}

SimplicialMap identity_map(const FinSimplicialSet& s) {
  SimplicialMap f;
  for (int n = 0; n <= s.top_degree(); ++n) {
    f.images.emplace_back();
    for (std::size_t g = 0; g < s.generator_count(n); ++g) f.images.back().push_back({GeneratorId{n, static_cast<int>(g)}, {}});
  }
  return f;
}

SimplicialMap constant_map(const FinSimplicialSet& source, GeneratorId target_vertex) {
  if (target_vertex.degree != 0) throw InputError("constant_map needs a vertex");
  SimplicialMap f;
  for (int n = 0; n <= source.top_degree(); ++n) {
    std::vector<int> w;
    for (int j = n - 1; j >= 0; --j) w.push_back(j);
    const SimplexRef img{target_vertex, DegeneracyWord::from_normal(w)};
    f.images.emplace_back(source.generator_count(n), img);
  }
  return f;
}

IntMatrix chain_map_matrix(const FinSimplicialSet& source, const FinSimplicialSet& target, const SimplicialMap& f, int n) {
  IntMatrix m = IntMatrix::Zero(static_cast<Eigen::Index>(target.generator_count(n)),
                                static_cast<Eigen::Index>(source.generator_count(n)));
  if (n < 0 || n > source.top_degree()) return m;
  for (std::size_t g = 0; g < source.generator_count(n); ++g) {
    const SimplexRef& img = f.images[static_cast<std::size_t>(n)][g];
    if (img.is_nondegenerate()) m(img.generator.index, static_cast<Eigen::Index>(g)) += Integer(1);
  }
  return m;
}

bool HomologyIsoReport::ok() const noexcept {
  return !degrees.empty() && std::all_of(degrees.begin(), degrees.end(), [](const IsoDegree& d) { return d.iso; });
}

HomologyIsoReport verify_homology_iso(const FinSimplicialSet& source, const FinSimplicialSet& target,
                                      const SimplicialMap& f, int through, std::optional<std::int64_t> p) {
  if (p) require_prime(*p);
  if (through < 0) throw InputError("verify_homology_iso: negative degree");
  const auto problems = check_simplicial_map(source, target, f);
  if (!problems.empty()) throw PreconditionError("map is not simplicial: " + problems.front());

  const ChainComplexZ cx = normalized_chain_complex(source);
  const ChainComplexZ cw = normalized_chain_complex(target);

  // Cone_k = C_{k-1}(X) + C_k(W), d(x, w) = (-dx, f(x) + dw).
  ChainComplexZ cone;
  cone.top = through + 1;
  for (int k = 0; k <= cone.top; ++k) {
    const auto ax = static_cast<Eigen::Index>(cx.dim(k - 1));
    const auto aw = static_cast<Eigen::Index>(cw.dim(k));
    const auto bx = static_cast<Eigen::Index>(cx.dim(k - 2));
    const auto bw = static_cast<Eigen::Index>(cw.dim(k - 1));
    cone.dims.push_back(static_cast<std::size_t>(ax + aw));
    IntMatrix d = IntMatrix::Zero(k == 0 ? 0 : bx + bw, ax + aw);
    if (k >= 1) {
      if (bx > 0 && ax > 0) d.topLeftCorner(bx, ax) = -cx.differential(k - 1);
      if (bw > 0 && ax > 0) d.bottomLeftCorner(bw, ax) = chain_map_matrix(source, target, f, k - 1);
      if (bw > 0 && aw > 0) d.bottomRightCorner(bw, aw) = cw.differential(k);
    }
    cone.boundary.push_back(std::move(d));
  }

  HomologyIsoReport report;
  report.prime = p;
  std::vector<HomologyGroup> cone_h;
  for (int k = 0; k <= through + 1; ++k) cone_h.push_back(maybe_local(homology_at(cone, k), p));
  // cone.top = through + 1 makes the last entry ignore C_{through+2}; it is
  // only used below for degrees < through.
  for (int k = 0; k <= through; ++k) {
    IsoDegree d;
    d.degree = k;
    d.source = maybe_local(homology_at(cx, k), p);
    d.target = maybe_local(homology_at(cw, k), p);
    d.cone = cone_h[static_cast<std::size_t>(k)];
    if (k < through)
      d.iso = d.cone.is_zero() && cone_h[static_cast<std::size_t>(k) + 1].is_zero();
    else
      d.iso = d.cone.is_zero() && d.source == d.target;
    report.degrees.push_back(std::move(d));
  }
  return report;
}

// ---------------------------------------------------------------------------
// k-invariants

Cochain KInvariantMap::evaluate(const SimplexRef& x) const {
  Cochain c = values.at(static_cast<std::size_t>(x.generator.degree)).at(static_cast<std::size_t>(x.generator.index));
  const auto& w = x.word.indices();
  for (auto it = w.rbegin(); it != w.rend(); ++it) c = cochain_degeneracy(group, c, *it);
  return c;
}

std::vector<std::string> check_kinvariant(const FinSimplicialSet& source, const KInvariantMap& k) {
  std::vector<std::string> problems;
  if (k.degree < 1) return {"target degree must be at least 1"};
  if (k.values.size() != static_cast<std::size_t>(source.top_degree()) + 1) return {"values do not cover every degree"};
  for (int n = 0; n <= source.top_degree(); ++n) {
    const auto& level = k.values[static_cast<std::size_t>(n)];
    if (level.size() != source.generator_count(n)) return {"degree " + std::to_string(n) + ": wrong number of values"};
    for (std::size_t g = 0; g < level.size(); ++g) {
      const Cochain& c = level[g];
      const std::string who = "'" + source.name({n, static_cast<int>(g)}) + "'";
      if (c.dim != n || c.degree != k.degree ||
          c.labels.size() != label_count(n, k.degree) * static_cast<std::size_t>(k.group.rank())) {
        problems.push_back("value on " + who + " has the wrong shape");
        continue;
      }
      for (std::size_t i = 0; i < c.labels.size(); ++i) {
        const auto f = k.group.invariant_factors()[i % static_cast<std::size_t>(k.group.rank())];
        if (c.labels[i] < 0 || c.labels[i] >= f) {
          problems.push_back("value on " + who + " has unreduced labels");
          break;
        }
      }
      if (!is_cocycle(k.group, c)) problems.push_back("value on " + who + " is not a cocycle");
    }
  }
  if (!problems.empty()) return problems;
  for (int n = 1; n <= source.top_degree(); ++n)
    for (std::size_t g = 0; g < source.generator_count(n); ++g) {
      const SimplexRef x{GeneratorId{n, static_cast<int>(g)}, {}};
      const Cochain& c = k.values[static_cast<std::size_t>(n)][g];
      for (int i = 0; i <= n; ++i)
        if (cochain_face(k.group, c, i) != k.evaluate(face(source, x, i)))
          problems.push_back("d_" + std::to_string(i) + " of '" + source.name(x.generator) + "' is not preserved");
    }
  return problems;
}

KInvariantMap zero_kinvariant(const FinSimplicialSet& source, const FiniteAbelianGroup& g, int degree) {
  KInvariantMap k{g, degree, {}};
  for (int n = 0; n <= source.top_degree(); ++n) k.values.emplace_back(source.generator_count(n), zero_cochain(g, n, degree));
  return k;
}

KInvariantMap kinvariant_from_cocycle(const FinSimplicialSet& source, const FiniteAbelianGroup& g, int degree,
                                      const std::vector<FiniteAbelianGroup::Element>& z) {
  if (z.size() != source.generator_count(degree)) throw InputError("cocycle needs one value per generator of its degree");
  KInvariantMap k{g, degree, {}};
  for (int n = 0; n <= source.top_degree(); ++n) {
    k.values.emplace_back();
    for (std::size_t gi = 0; gi < source.generator_count(n); ++gi) {
      const SimplexRef sigma{GeneratorId{n, static_cast<int>(gi)}, {}};
      Cochain c = zero_cochain(g, n, degree);
      for (std::uint32_t s : subsets_of_size(n + 1, degree + 1)) {
        const auto verts = elements(s);
        const SimplexRef r = restrict_to_vertices(source, sigma, verts);
        if (!r.is_nondegenerate()) continue;
        const auto& v = z[static_cast<std::size_t>(r.generator.index)];
        auto dst = label_of(g, c, s);
        std::copy(v.begin(), v.end(), dst.begin());
      }
      k.values.back().push_back(std::move(c));
    }
  }
  return k;
}

KInvariantMap identity_kinvariant(const EmSkeleton& em) {
  if (em.model().space() != EmSpace::K) throw InputError("identity k-invariant needs a K(pi,n) skeleton");
  const FinSimplicialSet& s = em.set();
  KInvariantMap k{em.model().group(), em.model().k(), {}};
  for (int n = 0; n <= s.top_degree(); ++n) {
    k.values.emplace_back();
    for (std::size_t g = 0; g < s.generator_count(n); ++g) k.values.back().push_back(em.generator({n, static_cast<int>(g)}));
  }
  return k;
}

SimplicialMap to_simplicial_map(const KInvariantMap& k, const EmSkeleton& target) {
  if (target.model().group() != k.group || target.model().k() != k.degree || target.model().space() != EmSpace::K)
    throw InputError("target is not K(" + k.group.str() + ", " + std::to_string(k.degree) + ")");
  SimplicialMap f;
  for (const auto& level : k.values) {
    f.images.emplace_back();
    for (const auto& c : level) f.images.back().push_back(target.locate(c));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Pullback stages

PullbackModel::PullbackModel(std::shared_ptr<const FinSimplicialSet> base, std::shared_ptr<const KInvariantMap> kinv)
    : base_(std::move(base)), kinv_(std::move(kinv)), fiber_(kinv_->group, kinv_->degree - 1, EmSpace::K) {}

Integer PullbackModel::simplex_count(int n) const {
  return Integer(static_cast<unsigned long long>(bsset::simplex_count(*base_, n))) * fiber_.simplex_count(n);
}

std::vector<PullbackModel::Simplex> PullbackModel::simplices(int n) const {
  const auto& g = kinv_->group;
  const auto fibers = fiber_.simplices(n);
  std::vector<Simplex> out;
  for (const SimplexRef& b : all_simplices(*base_, n)) {
    const Cochain lift = cone_section(g, kinv_->evaluate(b));
    for (const Cochain& z : fibers) {
      Cochain e = lift;
      g.add_into(e.labels, z.labels);
      out.emplace_back(b, std::move(e));
    }
  }
  return out;
}

PullbackModel::Simplex PullbackModel::face(const Simplex& x, int i) const {
  return {bsset::face(*base_, x.first, i), cochain_face(kinv_->group, x.second, i)};
}

PullbackModel::Simplex PullbackModel::degeneracy(const Simplex& x, int j) const {
  return {bsset::degeneracy(x.first, j), cochain_degeneracy(kinv_->group, x.second, j)};
}

std::string PullbackModel::name(const Simplex& x) const {
  return "(" + token_ref(*base_, x.first) + "|e" + std::to_string(x.second.dim) + ":" +
         format_labels(kinv_->group, x.second) + ")";
}

PostnikovStage pullback_stage(std::shared_ptr<const FinSimplicialSet> previous, const KInvariantMap& kinv, int k,
                              int up_to, std::uint64_t budget) {
  if (kinv.degree != k + 1) throw InputError("stage " + std::to_string(k) + " needs a k-invariant of degree " + std::to_string(k + 1));
  if (k < 1) throw InputError("stage index must be at least 1");
  const auto problems = check_kinvariant(*previous, kinv);
  if (!problems.empty()) throw PreconditionError("k-invariant is not simplicial: " + problems.front());

  auto model = std::make_shared<Materialized<PullbackModel>>(
      PullbackModel(previous, std::make_shared<const KInvariantMap>(kinv)), up_to, budget);
  PostnikovStage stage;
  stage.k = k;
  stage.pi = kinv.group;
  stage.space = std::shared_ptr<const FinSimplicialSet>(model, &model->set());
  for (int n = 0; n <= up_to; ++n) {
    stage.projection.images.emplace_back();
    for (std::size_t g = 0; g < model->set().generator_count(n); ++g)
      stage.projection.images.back().push_back(model->generator({n, static_cast<int>(g)}).first);
    stage.simplex_counts.push_back(model->model().simplex_count(n));
  }
  return stage;
}

// ---------------------------------------------------------------------------
// Hurewicz bootstrap

HurewiczStage2 hurewicz_stage2(const FinSimplicialSet& x, int up_to, std::uint64_t budget) {
  const ChainComplexZ c = normalized_chain_complex(x);
  const HomologyGroup h1 = homology_at(c, 1);
  if (!h1.is_zero()) throw PreconditionError("H_1 = " + h1.str() + " is nonzero; a simply connected input is required");
  const HomologyGroup h2 = homology_at(c, 2);
  if (h2.free_rank > 0) throw PreconditionError("H_2 = " + h2.str() + " is infinite");

  const auto snf = smith_normal_form(c.differential(3), Transforms::both);
  std::vector<std::int64_t> factors;
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < snf.rank(); ++i) {
    const Integer& d = snf.divisors[static_cast<std::size_t>(i)];
    if (d == Integer(1)) continue;
    if (!fits_int64(d)) throw InputError("H_2 torsion coefficient too large");
    factors.push_back(to_int64(d));
    rows.push_back(i);
  }

  HurewiczStage2 out;
  out.pi2 = FiniteAbelianGroup(factors);
  const std::size_t gens2 = x.generator_count(2);
  for (std::size_t g = 0; g < gens2; ++g) {
    FiniteAbelianGroup::Element v;
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Integer D(static_cast<long long>(factors[t]));
      Integer r = snf.U(rows[t], static_cast<Eigen::Index>(g)) % D;
      if (r < Integer(0)) r += D;
      v.push_back(static_cast<FiniteAbelianGroup::Label>(to_int64(r)));
    }
    out.cocycle.push_back(std::move(v));
  }

  auto em = std::make_shared<EmSkeleton>(build_em_skeleton(out.pi2, 2, EmSpace::K, up_to, budget));
  out.em = em;
  out.stage.k = 2;
  out.stage.pi = out.pi2;
  out.stage.space = std::shared_ptr<const FinSimplicialSet>(em, &em->set());
  for (int n = 0; n <= up_to; ++n) out.stage.simplex_counts.push_back(em->model().simplex_count(n));

  if (x.top_degree() > up_to) throw InputError("stage 2 must be built at least through dim X");
  out.phi_cochains = kinvariant_from_cocycle(x, out.pi2, 2, out.cocycle);
  const auto problems = check_kinvariant(x, out.phi_cochains);
  if (!problems.empty()) throw InternalError("Hurewicz cocycle does not define a simplicial map: " + problems.front());
  out.phi = to_simplicial_map(out.phi_cochains, *em);
  return out;
}

// ---------------------------------------------------------------------------
// Pruning

std::vector<int> select_unit_columns(RatMatrix m, std::int64_t p) {
  const Integer P(static_cast<long long>(p));
  std::vector<bool> alive(static_cast<std::size_t>(m.rows()), true);
  std::vector<bool> used(static_cast<std::size_t>(m.cols()), false);
  std::vector<int> chosen;
  for (Eigen::Index remaining = m.rows(); remaining > 0; --remaining) {
    Eigen::Index pr = -1, pc = -1;
    for (Eigen::Index c = 0; c < m.cols() && pc < 0; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (alive[static_cast<std::size_t>(r)] && is_p_unit(m(r, c), P)) {
          pr = r;
          pc = c;
          break;
        }
    }
    if (pc < 0) throw PreconditionError("no column has a p-unit entry; the columns do not span over Z_(p)");
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c == pc || m(pr, c).is_zero()) continue;
      const Rational factor = m(pr, c) / m(pr, pc);
      m.col(c) -= factor * m.col(pc);
    }
    alive[static_cast<std::size_t>(pr)] = false;
    used[static_cast<std::size_t>(pc)] = true;
    chosen.push_back(static_cast<int>(pc));
  }
  return chosen;
}

std::vector<int> select_basis_simplices(const FinSimplicialSet& w, int d, std::int64_t p) {
  require_prime(p);
  if (d < 0) throw InputError("d must be non-negative");
  const ChainComplexZ c = normalized_chain_complex(w);
  const HomologyGroup h = local_part(homology_at(c, d + 1), p);
  if (!h.is_zero())
    throw PreconditionError("H_" + std::to_string(d + 1) + "(W; Z_(" + std::to_string(p) + ")) = " + h.str() +
                            " is nonzero");
  const IntMatrix basis = local_kernel_basis(c.differential(d + 1), p);
  if (basis.cols() == 0) return {};
  const auto coords = solve_in_span(to_rational(basis), to_rational(c.differential(d + 2)));
  if (!coords) throw InternalError("boundaries are not in the span of the cycle basis");
  const Integer P(static_cast<long long>(p));
  for (Eigen::Index i = 0; i < coords->rows(); ++i)
    for (Eigen::Index j = 0; j < coords->cols(); ++j)
      if (!is_p_unit(denominator((*coords)(i, j)), P))
        throw InternalError("cycle coordinates have a denominator divisible by p");
  return select_unit_columns(*coords, p);
}

FinSimplicialSet restrict_top_degree(const FinSimplicialSet& w, int d, const std::vector<int>& keep) {
  const int top = std::min(w.top_degree(), d + 2);
  FinSimplicialSet::Builder b(top);
  std::vector<int> kept(keep);
  std::sort(kept.begin(), kept.end());
  for (int n = 0; n <= std::min(top, d + 1); ++n)
    for (std::size_t g = 0; g < w.generator_count(n); ++g) b.add_generator(n, w.name({n, static_cast<int>(g)}));
  if (top == d + 2)
    for (int g : kept) b.add_generator(d + 2, w.name({d + 2, g}));
  for (int n = 1; n <= std::min(top, d + 1); ++n)
    for (std::size_t g = 0; g < w.generator_count(n); ++g) {
      const GeneratorId id{n, static_cast<int>(g)};
      for (int i = 0; i <= n; ++i) b.set_face(id, i, w.generator_face(id, i));
    }
  if (top == d + 2)
    for (std::size_t t = 0; t < kept.size(); ++t)
      for (int i = 0; i <= d + 2; ++i)
        b.set_face(GeneratorId{d + 2, static_cast<int>(t)}, i, w.generator_face({d + 2, kept[t]}, i));
  return std::move(b).build();
}

bool PrunedSet::verified() const noexcept {
  return h_d1.is_zero() && h_d2.is_zero() && rank_selected == static_cast<Eigen::Index>(selected.size()) &&
         rank_selected == rank_image;
}

PrunedSet prune(const FinSimplicialSet& w, int d, std::int64_t p) {
  PrunedSet out;
  out.p = p;
  out.d = d;
  out.selected = select_basis_simplices(w, d, p);
  out.y = restrict_top_degree(w, d, out.selected);
  const ChainComplexZ cy = normalized_chain_complex(out.y);
  out.h_d1 = local_part(homology_at(cy, d + 1), p);
  out.h_d2 = local_part(homology_at(cy, d + 2), p);
  const IntMatrix full = boundary_matrix(w, d + 2);
  IntMatrix sel(full.rows(), static_cast<Eigen::Index>(out.selected.size()));
  for (std::size_t t = 0; t < out.selected.size(); ++t) sel.col(static_cast<Eigen::Index>(t)) = full.col(out.selected[t]);
  out.rank_selected = rational_rank(to_rational(sel));
  out.rank_image = rational_rank(to_rational(full));
  return out;
}

// ---------------------------------------------------------------------------
// End-to-end

bool PipelineResult::ok() const noexcept {
  return std::none_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.status == "fail"; });
}

namespace {

int dimension_of(const FinSimplicialSet& x) {
  for (int n = x.top_degree(); n > 0; --n)
    if (x.generator_count(n) > 0) return n;
  return 0;
}

Verdict verdict(std::string name, bool pass, std::string reason = "") {
  return Verdict{std::move(name), pass ? "pass" : "fail", std::move(reason)};
}

StageSummary summarize(const PostnikovStage& stage, const std::vector<Integer>& orders, int up_to) {
  StageSummary s;
  s.k = stage.k;
  s.group = stage.pi.str();
  s.generators = stage.space->generator_counts();
  s.simplices = stage.simplex_counts;
  s.total_simplices = Integer(0);
  bool per_degree = true;
  for (int n = 0; n <= up_to; ++n) {
    s.total_simplices += s.simplices[static_cast<std::size_t>(n)];
    Integer product_e(1);
    for (int j = 2; j <= stage.k; ++j)
      product_e *= pow(orders[static_cast<std::size_t>(j - 2)], static_cast<unsigned>(binomial(n + 1, j + 1)));
    if (s.simplices[static_cast<std::size_t>(n)] > product_e) per_degree = false;
  }
  s.containment_bound = stage_size_bound(up_to, stage.k, orders);
  s.containment_ok = per_degree && s.total_simplices <= s.containment_bound;
  return s;
}

}  // namespace

PipelineResult pipeline(const FinSimplicialSet& x, const PipelineOptions& options, const KInvariantProvider& kinvs) {
  require_prime(options.p);
  PipelineResult result;

  const auto violations = check_simplicial_identities(x);
  if (!violations.empty())
    throw PreconditionError("input violates " + std::to_string(violations.size()) + " simplicial identities");

  result.dimension = dimension_of(x);
  result.profile = homology_profile(x);
  const auto& groups = result.profile.groups;
  if (groups.empty() || groups[0].free_rank != 1 || !groups[0].torsion.empty())
    throw PreconditionError("input is not connected (H_0 = " + (groups.empty() ? std::string("0") : groups[0].str()) + ")");
  if (groups.size() > 1 && !groups[1].is_zero())
    throw PreconditionError("H_1 = " + groups[1].str() + " is nonzero; a simply connected input is required");
  result.invariants = invariants(result.profile);  // throws on infinite homology
  bool acyclic = true;
  for (std::size_t k = 1; k < groups.size(); ++k) acyclic = acyclic && groups[k].is_zero();

  result.d = options.stage2_only ? 2 : result.dimension;
  const int d = result.d;
  const int top_stage = options.stage2_only ? 2 : std::max(2, d + 1);
  const int up_to = std::max(d + 2, result.dimension);

  result.verdicts.push_back(verdict("input_identities", true));

  HurewiczStage2 s2 = hurewicz_stage2(x, up_to, options.budget);
  std::vector<Integer> orders{s2.pi2.order()};
  std::vector<PostnikovStage> stages;
  stages.push_back(s2.stage);
  for (int k = 3; k <= top_stage; ++k) {
    const auto& prev = stages.back().space;
    KInvariantMap kinv = acyclic ? zero_kinvariant(*prev, FiniteAbelianGroup(), k + 1) : kinvs ? kinvs(k, *prev) : KInvariantMap{};
    if (!acyclic && !kinvs) throw PreconditionError("stage " + std::to_string(k) + " needs a k-invariant");
    stages.push_back(pullback_stage(prev, kinv, k, up_to, options.budget));
    orders.push_back(kinv.group.order());
  }
  bool identities_ok = true;
  for (const auto& st : stages) {
    result.stages.push_back(summarize(st, orders, up_to));
    identities_ok = identities_ok && check_simplicial_identities(*st.space).empty();
  }
  result.verdicts.push_back(verdict("stage_identities", identities_ok));
  bool containment = true;
  for (const auto& s : result.stages) containment = containment && s.containment_ok;
  result.verdicts.push_back(verdict("stage_containment", containment));

  const FinSimplicialSet w = skeleton(*stages.back().space, d + 2);
  result.w_generators = w.generator_counts();
  PrunedSet pruned = prune(w, d, options.p);
  for (int t : pruned.selected) result.selected.push_back(w.name({d + 2, t}));
  result.verdicts.push_back(verdict("prune", pruned.verified(),
                                    "H_" + std::to_string(d + 1) + " = " + pruned.h_d1.str() + ", H_" + std::to_string(d + 2) +
                                        " = " + pruned.h_d2.str() + ", rank " + std::to_string(pruned.rank_selected) +
                                        " of " + std::to_string(pruned.rank_image)));
  result.verdicts.push_back(verdict("pruned_identities", check_simplicial_identities(pruned.y).empty()));
  result.y = std::make_shared<const FinSimplicialSet>(std::move(pruned.y));
  const FinSimplicialSet& y = *result.y;
  result.y_generators = y.generator_counts();
  result.y_total_generators = y.total_generators();

  if (top_stage == 2) {
    // phi_2 lands in degrees <= dim X; re-index the kept (d+2)-generators.
    std::vector<int> kept(pruned.selected);
    std::sort(kept.begin(), kept.end());
    SimplicialMap phi = s2.phi;
    bool factors = true;
    for (auto& level : phi.images)
      for (auto& img : level) {
        if (img.generator.degree < d + 2) continue;
        auto it = std::find(kept.begin(), kept.end(), img.generator.index);
        if (it == kept.end() || img.generator.degree > d + 2) {
          factors = false;
          continue;
        }
        img.generator.index = static_cast<int>(it - kept.begin());
      }
    if (!factors) {
      result.verdicts.push_back(verdict("phi_homology_iso", false, "phi does not factor through Y"));
    } else {
      const auto iso = verify_homology_iso(x, y, phi, d + 2, options.p);
      std::string reason = "Z_(" + std::to_string(options.p) + ") through degree " + std::to_string(d + 2);
      for (const auto& deg : iso.degrees)
        if (!deg.iso) reason += "; degree " + std::to_string(deg.degree) + " fails (cone " + deg.cone.str() + ")";
      result.verdicts.push_back(verdict("phi_homology_iso", iso.ok(), reason));
    }
  } else {
    result.verdicts.push_back(Verdict{"phi_homology_iso", "skipped", "phi_k beyond stage 2 is not constructed"});
    const ChainComplexZ cx = normalized_chain_complex(x);
    const ChainComplexZ cy = normalized_chain_complex(y);
    bool same = true;
    for (int n = 0; n <= d + 2; ++n)
      same = same && local_part(homology_at(cx, n), options.p) == local_part(homology_at(cy, n), options.p);
    result.verdicts.push_back(verdict("local_homology_match", same, "abstract comparison through degree " + std::to_string(d + 2)));
  }

  const BoundConfig cfg{Real(options.bound_constant)};
  const int dim_for_bound = std::max(2, result.dimension);
  const LogBound fb = final_bound(dim_for_bound, result.invariants.m, result.invariants.h, result.invariants.N, cfg);
  result.final_bound_log = format_real(fb.log_value);
  result.final_bound_note = fb.note;
  if (result.dimension < 2) result.final_bound_note += (fb.note.empty() ? "" : "; ") + std::string("dimension < 2 evaluated at d = 2");
  const Real log_count = boost::multiprecision::log(Real(static_cast<unsigned long long>(result.y_total_generators)));
  result.verdicts.push_back(verdict("size_within_final_bound", log_leq(log_count, fb.log_value),
                                    std::to_string(result.y_total_generators) + " nondegenerate simplices"));
  return result;
}

}  // namespace bsset
