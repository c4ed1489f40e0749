#include "bsset/twist.hpp"

#include <unordered_set>

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

Cochain canonical_tau(const FiniteAbelianGroup& g, const Cochain& z) {
  if (z.dim < 1) throw InputError("canonical_tau needs a simplex of dimension at least 1");
  if (z.degree < 1) throw InputError("canonical_tau needs a cocycle of degree at least 1");
  Cochain out = zero_cochain(g, z.dim - 1, z.degree - 1);
  for (std::uint32_t s : subsets_of_size(out.dim + 1, out.degree + 1)) {
    const std::uint32_t shifted = s << 1;
    auto dst = label_of(g, out, s);
    g.add_into(dst, label_of(g, z, shifted | 1u));
    if (!(shifted & 2u)) g.sub_into(dst, label_of(g, z, shifted | 2u));
  }
  return out;
}

TwistingOperator canonical_twist(const FiniteAbelianGroup& g, int k) {
  return TwistingOperator{g, k, "canonical", [g](const Cochain& z) { return canonical_tau(g, z); }};
}

TwistingOperator trivial_twist(const FiniteAbelianGroup& g, int k) {
  return TwistingOperator{g, k, "trivial", [g](const Cochain& z) {
                            if (z.dim < 1) throw InputError("twisting operator needs a simplex of dimension >= 1");
                            return zero_cochain(g, z.dim - 1, z.degree - 1);
                          }};
}

TwistAxiomReport check_twisting_axioms(const TwistingOperator& tau, int up_to, std::uint64_t budget) {
  const auto& g = tau.group;
  const int k = tau.fiber_degree;
  TwistAxiomReport report;
  for (const char* a : {"cocycle", "d0", "di", "si", "s0"}) report.per_axiom[a] = 0;
  auto flag = [&](const char* axiom, const Cochain& beta, int index) {
    ++report.violation_count;
    ++report.per_axiom[axiom];
    if (report.violations.size() < 16) report.violations.push_back({axiom, beta, index});
  };

  EmModel base(g, k + 1, EmSpace::K);
  for (int l = 0; l <= up_to; ++l) {
    check_budget(l, base.simplex_count(l), budget);
    for (const Cochain& beta : base.simplices(l)) {
      ++report.simplices_checked;
      if (l >= 1) {
        const Cochain t = tau(beta);
        if (t.dim != l - 1 || t.degree != k || !is_cocycle(g, t)) flag("cocycle", beta, 0);
        for (int i = 0; i <= l - 1; ++i)
          if (cochain_degeneracy(g, t, i) != tau(cochain_degeneracy(g, beta, i + 1))) flag("si", beta, i);
        if (l >= 2) {
          Cochain rhs = tau(cochain_face(g, beta, 1));
          g.sub_into(rhs.labels, tau(cochain_face(g, beta, 0)).labels);
          if (cochain_face(g, t, 0) != rhs) flag("d0", beta, 0);
          for (int i = 1; i <= l - 1; ++i)
            if (cochain_face(g, t, i) != tau(cochain_face(g, beta, i + 1))) flag("di", beta, i);
        }
      }
      if (!g.is_zero(tau(cochain_degeneracy(g, beta, 0)).labels)) flag("s0", beta, 0);
    }
  }
  return report;
}

TwistedProductModel::TwistedProductModel(TwistingOperator tau)
    : tau_(std::move(tau)), fiber_(tau_.group, tau_.fiber_degree, EmSpace::K), base_(tau_.group, tau_.fiber_degree + 1, EmSpace::K) {}

Integer TwistedProductModel::simplex_count(int n) const { return fiber_.simplex_count(n) * base_.simplex_count(n); }

std::vector<TwistedProductModel::Simplex> TwistedProductModel::simplices(int n) const {
  const auto fs = fiber_.simplices(n);
  const auto bs = base_.simplices(n);
  std::vector<Simplex> out;
  out.reserve(fs.size() * bs.size());
  for (const auto& f : fs)
    for (const auto& b : bs) out.emplace_back(f, b);
  return out;
}

TwistedProductModel::Simplex TwistedProductModel::face(const Simplex& x, int i) const {
  const auto& g = tau_.group;
  if (i != 0) return {cochain_face(g, x.first, i), cochain_face(g, x.second, i)};
  Cochain f = cochain_face(g, x.first, 0);
  g.add_into(f.labels, tau_(x.second).labels);
  return {std::move(f), cochain_face(g, x.second, 0)};
}

TwistedProductModel::Simplex TwistedProductModel::degeneracy(const Simplex& x, int j) const {
  return {cochain_degeneracy(tau_.group, x.first, j), cochain_degeneracy(tau_.group, x.second, j)};
}

std::string TwistedProductModel::name(const Simplex& x) const {
  return "(" + fiber_.name(x.first) + "|" + base_.name(x.second) + ")";
}

Materialized<TwistedProductModel> twisted_product(const TwistingOperator& tau, int up_to, std::uint64_t budget) {
  const auto report = check_twisting_axioms(tau, up_to, budget);
  if (!report.ok())
    throw PreconditionError("twisting operator '" + tau.name + "' violates " + std::to_string(report.violation_count) +
                            " axiom instances");
  return Materialized<TwistedProductModel>(TwistedProductModel(tau), up_to, budget);
}

std::pair<Cochain, Cochain> twisted_splitting(const FiniteAbelianGroup& g, const Cochain& e) {
  Cochain b = coboundary(g, e);
  Cochain f = e;
  g.sub_into(f.labels, cone_section(g, b).labels);
  return {std::move(f), std::move(b)};
}

bool IsoReport::ok() const noexcept {
  for (const auto& d : degrees)
    if (!d.ok()) return false;
  return !degrees.empty();
}

IsoReport e_as_twisted_product_iso(const FiniteAbelianGroup& g, int k, int up_to, std::uint64_t budget) {
  if (k < 1) throw InputError("the twisted decomposition needs k >= 1");
  IsoReport report;
  report.splitting = "e -> (e - h(de), de), h(z)(S) = z({0} u S) for 0 not in S";
  const TwistedProductModel twisted(canonical_twist(g, k));
  const EmModel e_model(g, k, EmSpace::E);

  for (int n = 0; n <= up_to; ++n) {
    check_budget(n, e_model.simplex_count(n), budget);
    IsoDegreeReport d;
    d.degree = n;
    d.pair_count = static_cast<std::uint64_t>(to_int64(twisted.simplex_count(n)));
    d.faces_commute = d.twisted_d0_commutes = d.degeneracies_commute = true;
    bool lands_in_product = true;
    std::unordered_set<TwistedProductModel::Simplex, TwistedProductModel::Hash> images;
    for_each_cochain(g, n, k, [&](const Cochain& e) {
      ++d.e_count;
      const auto phi = twisted_splitting(g, e);
      if (!is_cocycle(g, phi.first) || !is_cocycle(g, phi.second)) lands_in_product = false;
      images.insert(phi);
      for (int i = 0; i <= n && n >= 1; ++i) {
        const auto lhs = twisted_splitting(g, cochain_face(g, e, i));
        const auto rhs = twisted.face(phi, i);
        if (lhs != rhs) (i == 0 ? d.twisted_d0_commutes : d.faces_commute) = false;
      }
      for (int j = 0; j <= n; ++j)
        if (twisted_splitting(g, cochain_degeneracy(g, e, j)) != twisted.degeneracy(phi, j)) d.degeneracies_commute = false;
    });
    d.bijective = lands_in_product && images.size() == d.e_count && d.e_count == d.pair_count;
    report.degrees.push_back(d);
  }
  return report;
}

}  // namespace bsset
