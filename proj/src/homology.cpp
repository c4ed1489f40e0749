#include "bsset/homology.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "bsset/errors.hpp"

namespace bsset {

IntMatrix ChainComplexZ::differential(int n) const {
  if (n < 0 || n > top) return IntMatrix::Zero(static_cast<Eigen::Index>(dim(n - 1)), static_cast<Eigen::Index>(dim(n)));
  return boundary[static_cast<std::size_t>(n)];
}

IntMatrix boundary_matrix(const FinSimplicialSet& s, int n) {
  const auto rows = static_cast<Eigen::Index>(n >= 1 ? s.generator_count(n - 1) : 0);
  const auto cols = static_cast<Eigen::Index>(s.generator_count(n));
  IntMatrix m = IntMatrix::Zero(rows, cols);
  if (n < 1) return m;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const SimplexRef x{GeneratorId{n, static_cast<int>(c)}, {}};
    for (int i = 0; i <= n; ++i) {
      const SimplexRef f = face(s, x, i);
      if (!f.is_nondegenerate()) continue;
      m(f.generator.index, c) += Integer(i % 2 == 0 ? 1 : -1);
    }
  }
  return m;
}

ChainComplexZ normalized_chain_complex(const FinSimplicialSet& s) {
  ChainComplexZ c;
  c.top = s.top_degree();
  for (int n = 0; n <= c.top; ++n) {
    c.dims.push_back(s.generator_count(n));
    c.boundary.push_back(boundary_matrix(s, n));
  }
  return c;
}

std::string HomologyGroup::str() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " ⊕ " + parts[i];
  return out;
}

namespace {

HomologyGroup assemble(std::size_t dim_n, Eigen::Index rank_n, const std::vector<Integer>& divisors_next) {
  HomologyGroup h;
  const auto rank_next = static_cast<Eigen::Index>(divisors_next.size());
  h.free_rank = static_cast<int>(static_cast<Eigen::Index>(dim_n) - rank_n - rank_next);
  for (const auto& d : divisors_next)
    if (d > Integer(1)) h.torsion.push_back(d);
  return h;
}

}  // namespace

HomologyGroup homology(const ChainComplexZ& c, int n) {
  if (n < 0 || n > c.top) throw InputError("homology degree " + std::to_string(n) + " out of range");
  const auto rank_n = integer_rank(c.differential(n));
  return assemble(c.dim(n), rank_n, elementary_divisors(c.differential(n + 1)));
}

std::vector<HomologyGroup> homology_all(const ChainComplexZ& c) {
  std::vector<std::vector<Integer>> divisors;
  for (int n = 0; n <= c.top + 1; ++n) divisors.push_back(elementary_divisors(c.differential(n)));
  std::vector<HomologyGroup> out;
  for (int n = 0; n <= c.top; ++n)
    out.push_back(assemble(c.dim(n), static_cast<Eigen::Index>(divisors[static_cast<std::size_t>(n)].size()),
                           divisors[static_cast<std::size_t>(n) + 1]));
  return out;
}

HomologyGroup local_part(const HomologyGroup& h, std::int64_t p) {
  require_prime(p);
  HomologyGroup out;
  out.free_rank = h.free_rank;
  const Integer P(static_cast<long long>(p));
  for (const auto& t : h.torsion) {
    const int v = valuation(t, P);
    if (v > 0) out.torsion.push_back(pow(P, static_cast<unsigned>(v)));
  }
  return out;
}

HomologyGroup local_homology(const ChainComplexZ& c, int n, std::int64_t p) {
  require_prime(p);
  return local_part(homology(c, n), p);
}

HomologyProfile homology_profile(const FinSimplicialSet& s) {
  HomologyProfile p;
  p.d = s.top_degree();
  p.groups = homology_all(normalized_chain_complex(s));
  return p;
}

Invariants invariants(const HomologyProfile& profile) {
  std::set<std::int64_t> primes;
  for (int k = 0; k <= profile.d && k < static_cast<int>(profile.groups.size()); ++k) {
    const auto& g = profile.groups[static_cast<std::size_t>(k)];
    if (k >= 1 && g.free_rank > 0)
      throw PreconditionError("H_" + std::to_string(k) + " is infinite (free rank " + std::to_string(g.free_rank) +
                              "); finite integral homology is required");
    for (const auto& t : g.torsion)
      for (auto p : prime_factors(t)) primes.insert(p);
  }
  Invariants inv;
  for (auto p : primes) {
    PrimeInvariants pi{p, 0, 0};
    const Integer P(static_cast<long long>(p));
    for (int k = 0; k <= profile.d && k < static_cast<int>(profile.groups.size()); ++k) {
      int count = 0, exponent = 0;
      for (const auto& t : profile.groups[static_cast<std::size_t>(k)].torsion) {
        const int v = valuation(t, P);
        if (v > 0) ++count;
        exponent = std::max(exponent, v);
      }
      if (k >= 1) pi.h_p += count;
      pi.m_p += exponent;
    }
    inv.h = std::max(inv.h, pi.h_p);
    inv.m = std::max(inv.m, pi.m_p);
    if (pi.h_p != 0) inv.N *= P;
    inv.primes.push_back(pi);
  }
  return inv;
}

IntMatrix local_kernel_basis(const IntMatrix& m, std::int64_t p) {
  require_prime(p);
  return integral_kernel_basis(m);
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
}

std::vector<std::int64_t> prime_factors(const Integer& n) {
  if (!fits_int64(n)) throw InputError("torsion coefficient " + n.str() + " is too large to factor");
  std::int64_t v = to_int64(abs(n));
  std::vector<std::int64_t> out;
  for (std::int64_t q = 2; q * q <= v; ++q) {
    if (v % q) continue;
    out.push_back(q);
    while (v % q == 0) v /= q;
  }
  if (v > 1) out.push_back(v);
  return out;
}

}  // namespace bsset
