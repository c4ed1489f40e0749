#pragma once

// Normalized chain complexes, integral and p-local homology, and the
// homological invariants h_p, m_p, h, m, N of a finite simply connected space.

#include <cstdint>
#include <string>
#include <vector>

#include "bsset/exact.hpp"
#include "bsset/linalg.hpp"
#include "bsset/sset.hpp"

namespace bsset {

// boundary[n] : C_n -> C_{n-1}, a dims[n-1] x dims[n] matrix; boundary[0] is
// 0 x dims[0]. The complex is zero above `top`.
struct ChainComplexZ {
  int top = 0;
  std::vector<std::size_t> dims;
  std::vector<IntMatrix> boundary;

  // The zero map is returned for n outside 0..top.
  IntMatrix differential(int n) const;
  std::size_t dim(int n) const { return n < 0 || n > top ? 0 : dims[static_cast<std::size_t>(n)]; }
};

ChainComplexZ normalized_chain_complex(const FinSimplicialSet& s);
IntMatrix boundary_matrix(const FinSimplicialSet& s, int n);

struct HomologyGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;  // elementary divisors >= 2, d_1 | d_2 | ...

  bool is_zero() const noexcept { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const noexcept { return free_rank == 0; }
  // "0", "Z", "Z^2 ⊕ Z/2 ⊕ Z/4"
  std::string str() const;
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// H_n of a chain complex with elementary divisors as torsion.
HomologyGroup homology(const ChainComplexZ& c, int n);
// Homology with Z_(p) coefficients: same free rank, p-power divisors only.
HomologyGroup local_homology(const ChainComplexZ& c, int n, std::int64_t p);
HomologyGroup local_part(const HomologyGroup& h, std::int64_t p);
// All degrees 0..top, sharing the Smith forms between adjacent degrees.
std::vector<HomologyGroup> homology_all(const ChainComplexZ& c);

struct HomologyProfile {
  int d = 0;
  std::vector<HomologyGroup> groups;  // degrees 0..d
};

HomologyProfile homology_profile(const FinSimplicialSet& s);

struct PrimeInvariants {
  std::int64_t p = 0;
  int h_p = 0;
  int m_p = 0;
};

struct Invariants {
  std::vector<PrimeInvariants> primes;  // every prime dividing some torsion coefficient
  int h = 0;
  int m = 0;
  Integer N{1};
};

// Throws PreconditionError if some H_k, k >= 1, has positive free rank.
Invariants invariants(const HomologyProfile& profile);

// Columns form a Z_(p)-basis of ker M (an integral basis suffices).
IntMatrix local_kernel_basis(const IntMatrix& m, std::int64_t p);

bool is_prime(std::int64_t p);
void require_prime(std::int64_t p);
std::vector<std::int64_t> prime_factors(const Integer& n);

}  // namespace bsset
