#pragma once

// Homotopy-group and Postnikov-stage size bounds.
//
// The asymptotic bounds are doubly exponential, so values are carried as
// natural logarithms in 100-digit binary floating point. The O(log(n)^3)
// terms are C * log(n)^3 with C explicit.

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bsset/exact.hpp"

namespace bsset {

using Real = boost::multiprecision::cpp_bin_float_100;

struct BoundConfig {
  Real C{1};  // constant of the log(n)^3 term
};

// log f(n) = C log(n)^3.
Real log_f(int n, const BoundConfig& cfg);

// f(n) * h_p^n.
Real rank_bound(int n, int h_p, const BoundConfig& cfg);
// 2 m_p n: p to this power annihilates pi_n of the p-localization.
std::int64_t torsion_exponent_bound(int n, int m_p);

struct LogBound {
  Real log_value;               // natural log of the bound; 0 means the bound 1
  Real log_pre_absorption{0};   // log of the product form before constants are absorbed
  bool degenerate = false;      // closed form unusable, log_value is the product form
  std::string note;
};

// exp(m_p log(p) exp(n log(h_p) + C log(n)^3)); pre-absorption p^(2 m_p n h_p^n f(n)).
LogBound homotopy_order_bound_p(int n, std::int64_t p, int m_p, int h_p, const BoundConfig& cfg);
// exp(m log(N) exp(n log(h) + C log(n)^3)); pre-absorption N^(2 m n h^n f(n)).
LogBound homotopy_order_bound(int n, int m, const Integer& N, int h, const BoundConfig& cfg);
// p^(2 m_p n h_p^n), the pre-absorption value when C = 0.
Integer pre_absorption_exact(int n, std::int64_t p, int m_p, int h_p);

// sum_{l=0..n} prod_{j=2..k} |pi_j|^C(l,j); orders[j-2] = |pi_j|.
Integer stage_size_bound(int n, int k, const std::vector<Integer>& orders);
// The same with log |pi_j| given; returns the log of the sum.
Real stage_size_bound_log(int n, int k, const std::vector<Real>& log_orders);

// exp(m h log(N) exp(log(2h) d + C log(d)^3)); the trivial bound 1 when
// N = 1 or h = 0.
LogBound final_bound(int d, int m, int h, const Integer& N, const BoundConfig& cfg);

// Constants absorbed by the last steps of the two proof chains.
Real absorption_homotopy_chain();  // sup_{n>=2} log(2n)/log(n)^3
Real shift_stage_chain();          // sup_{d>=2} (log(d+1)/log(d))^3
Real absorption_stage_chain();     // sup_{d>=2} (log log(d+3) + log d)/log(d)^3

struct ChainLine {
  std::string label;
  Real log_value;
  bool checked = true;  // whether "previous <= this" is asserted
  std::string note;
};

// Lines of the per-prime chain with torsion coefficient c <= 2 m_p and rank
// base r <= h_p. The last line uses C + absorption_homotopy_chain().
std::vector<ChainLine> homotopy_chain(int n, std::int64_t p, int m_p, int h_p, int c, int r, const BoundConfig& cfg);
// Lines of the stage-size chain starting from the exact log of the stage
// sum with orders from homotopy_order_bound(cfg). The final line equals
// final_bound with the constant raised to
// C * shift_stage_chain() + absorption_stage_chain().
std::vector<ChainLine> stage_chain(int d, int m, int h, const Integer& N, const BoundConfig& cfg);
BoundConfig stage_chain_final_config(const BoundConfig& cfg);

struct ChainCheck {
  bool ok = true;
  std::vector<std::string> failures;
  int steps_checked = 0;
  int steps_skipped = 0;
};

ChainCheck check_chain(const std::vector<ChainLine>& lines);

// a <= b up to relative rounding slack.
bool log_leq(const Real& a, const Real& b);

// "exp(12.3456) ≈ 2.3e+5"
std::string format_log_value(const Real& log_value);
std::string format_real(const Real& x, int digits = 12);

}  // namespace bsset
