#include "bsset/bounds.hpp"

#include <algorithm>
#include <sstream>

#include "bsset/combinatorics.hpp"
#include "bsset/errors.hpp"

namespace bsset {

namespace {

Real ln(const Real& x) { return boost::multiprecision::log(x); }
Real ex(const Real& x) { return boost::multiprecision::exp(x); }
Real ln_int(const Integer& n) {
  // log of a positive big integer via its decimal length, exact enough for 100 digits.
  const std::string s = n.str();
  if (s.size() <= 90) return ln(Real(s));
  const Real head(s.substr(0, 90));
  return ln(head) + Real(static_cast<long long>(s.size() - 90)) * ln(Real(10));
}

Real log_sum_exp(const std::vector<Real>& xs) {
  if (xs.empty()) throw InternalError("log_sum_exp of nothing");
  const Real mx = *std::max_element(xs.begin(), xs.end());
  Real s = 0;
  for (const auto& x : xs) s += ex(x - mx);
  return mx + ln(s);
}

void require(bool ok, const char* what) {
  if (!ok) throw InputError(what);
}

}  // namespace

Real log_f(int n, const BoundConfig& cfg) {
  require(n >= 1, "log_f needs n >= 1");
  const Real l = ln(Real(n));
  return cfg.C * l * l * l;
}

Real rank_bound(int n, int h_p, const BoundConfig& cfg) {
  require(n >= 2, "rank_bound needs n >= 2");
  require(h_p >= 0, "rank_bound needs h_p >= 0");
  require(cfg.C >= 0, "the constant must be non-negative");
  return ex(log_f(n, cfg)) * boost::multiprecision::pow(Real(h_p), n);
}

std::int64_t torsion_exponent_bound(int n, int m_p) {
  require(n >= 2, "torsion_exponent_bound needs n >= 2");
  require(m_p >= 0, "m_p must be non-negative");
  return 2 * static_cast<std::int64_t>(m_p) * n;
}

namespace {

// log of P^(2 m n h^n f(n)) where log P = log_base.
Real log_pre(int n, const Real& log_base, int m, int h, const BoundConfig& cfg) {
  if (m == 0 || h == 0) return 0;
  return log_base * Real(2 * m) * Real(n) * ex(Real(n) * ln(Real(h)) + log_f(n, cfg));
}

LogBound order_bound(int n, const Real& log_base, int m, int h, const BoundConfig& cfg) {
  require(n >= 2, "homotopy bounds need n >= 2");
  require(m >= 0 && h >= 0, "invariants must be non-negative");
  require(cfg.C >= 0, "the constant must be non-negative");
  LogBound b;
  if (m == 0 || log_base == 0) {
    b.log_value = 0;
    b.note = "trivial bound";
    return b;
  }
  b.log_pre_absorption = log_pre(n, log_base, m, h, cfg);
  if (h <= 1) {
    b.degenerate = true;
    b.log_value = b.log_pre_absorption;
    b.note = "h <= 1: closed form degenerates, pre-absorption product form used";
    return b;
  }
  b.log_value = Real(m) * log_base * ex(Real(n) * ln(Real(h)) + log_f(n, cfg));
  return b;
}

}  // namespace

LogBound homotopy_order_bound_p(int n, std::int64_t p, int m_p, int h_p, const BoundConfig& cfg) {
  require(p >= 2, "p must be a prime");
  return order_bound(n, ln(Real(p)), m_p, h_p, cfg);
}

LogBound homotopy_order_bound(int n, int m, const Integer& N, int h, const BoundConfig& cfg) {
  require(N >= Integer(1), "N must be positive");
  return order_bound(n, ln_int(N), m, h, cfg);
}

Integer pre_absorption_exact(int n, std::int64_t p, int m_p, int h_p) {
  require(n >= 2 && m_p >= 0 && h_p >= 0, "invalid arguments");
  const Integer e = Integer(2LL * m_p * n) * pow(Integer(h_p), static_cast<unsigned>(n));
  if (!fits_int64(e) || to_int64(e) > 100000) throw InputError("pre-absorption exponent too large for exact evaluation");
  return pow(Integer(static_cast<long long>(p)), static_cast<unsigned>(to_int64(e)));
}

Integer stage_size_bound(int n, int k, const std::vector<Integer>& orders) {
  require(n >= 0, "n must be non-negative");
  require(k >= 1, "k must be at least 1");
  require(orders.size() + 1 >= static_cast<std::size_t>(k), "one order per group pi_2..pi_k is required");
  for (const auto& o : orders) require(o >= Integer(1), "group orders must be positive");
  Integer total(0);
  for (int l = 0; l <= n; ++l) {
    Integer term(1);
    for (int j = 2; j <= k; ++j) {
      const auto e = binomial(l, j);
      if (e > 1'000'000) throw InputError("stage_size_bound exponent too large for exact evaluation");
      term *= pow(orders[static_cast<std::size_t>(j - 2)], static_cast<unsigned>(e));
    }
    total += term;
  }
  return total;
}

Real stage_size_bound_log(int n, int k, const std::vector<Real>& log_orders) {
  require(n >= 0 && k >= 1, "invalid arguments");
  require(log_orders.size() + 1 >= static_cast<std::size_t>(k), "one order per group pi_2..pi_k is required");
  std::vector<Real> terms;
  for (int l = 0; l <= n; ++l) {
    Real t = 0;
    for (int j = 2; j <= k; ++j) t += Real(binomial(l, j)) * log_orders[static_cast<std::size_t>(j - 2)];
    terms.push_back(t);
  }
  return log_sum_exp(terms);
}

LogBound final_bound(int d, int m, int h, const Integer& N, const BoundConfig& cfg) {
  require(d >= 2, "final_bound needs d >= 2");
  require(m >= 0 && h >= 0, "invariants must be non-negative");
  require(N >= Integer(1), "N must be positive");
  require(cfg.C >= 0, "the constant must be non-negative");
  LogBound b;
  if (N == Integer(1) || h == 0 || m == 0) {
    b.log_value = 0;
    b.note = "trivial bound: N = 1, h = 0 or m = 0";
    return b;
  }
  b.log_value = Real(m) * Real(h) * ln_int(N) * ex(ln(Real(2 * h)) * Real(d) + log_f(d, cfg));
  return b;
}

Real absorption_homotopy_chain() {
  const Real l2 = ln(Real(2));
  return ln(Real(4)) / (l2 * l2 * l2);
}

Real shift_stage_chain() {
  const Real r = ln(Real(3)) / ln(Real(2));
  return r * r * r;
}

Real absorption_stage_chain() {
  const Real l2 = ln(Real(2));
  return (ln(ln(Real(5))) + l2) / (l2 * l2 * l2);
}

std::vector<ChainLine> homotopy_chain(int n, std::int64_t p, int m_p, int h_p, int c, int r, const BoundConfig& cfg) {
  require(n >= 2 && m_p >= 1 && h_p >= 2, "chain needs n >= 2, m_p >= 1, h_p >= 2");
  require(c >= 0 && c <= 2 * m_p && r >= 0 && r <= h_p, "chain needs c <= 2 m_p and r <= h_p");
  const Real lp = ln(Real(p));
  const Real lf = log_f(n, cfg);
  const Real N(n);
  const Real f = ex(lf);
  const Real rank = f * boost::multiprecision::pow(Real(r), n);
  std::vector<ChainLine> out;
  out.push_back({"(p^(cn))^rank", Real(c) * N * rank * lp, false, ""});
  out.push_back({"p^(c n r^n f(n))", Real(c) * N * rank * lp, true, ""});
  out.push_back({"p^(2 m_p n h_p^n f(n))", lp * Real(2 * m_p) * N * boost::multiprecision::pow(Real(h_p), n) * f, true, ""});
  out.push_back({"exp(log(p) 2 m_p n h_p^n exp(C log(n)^3))",
                 lp * Real(2 * m_p) * N * boost::multiprecision::pow(Real(h_p), n) * ex(lf), true, ""});
  out.push_back({"exp(m_p log(p) exp(log(2 n h_p^n) + C log(n)^3))",
                 Real(m_p) * lp * ex(ln(Real(2) * N * boost::multiprecision::pow(Real(h_p), n)) + lf), true, ""});
  out.push_back({"exp(m_p log(p) exp(log(2n) + n log(h_p) + C log(n)^3))",
                 Real(m_p) * lp * ex(ln(Real(2) * N) + N * ln(Real(h_p)) + lf), true, ""});
  BoundConfig absorbed{cfg.C + absorption_homotopy_chain()};
  out.push_back({"exp(m_p log(p) exp(n log(h_p) + C' log(n)^3))",
                 Real(m_p) * lp * ex(N * ln(Real(h_p)) + log_f(n, absorbed)), true, "C' = C + log(4)/log(2)^3"});
  return out;
}

BoundConfig stage_chain_final_config(const BoundConfig& cfg) { return BoundConfig{cfg.C * shift_stage_chain() + absorption_stage_chain()}; }

std::vector<ChainLine> stage_chain(int d, int m, int h, const Integer& N, const BoundConfig& cfg) {
  require(d >= 2 && m >= 1 && h >= 2 && N >= Integer(2), "chain needs d >= 2, m >= 1, h >= 2, N >= 2");
  const Real lN = ln_int(N);
  const Real lh = ln(Real(h));
  const Real D(d);
  auto A = [&](int j) { return homotopy_order_bound(j, m, N, h, cfg).log_value; };

  std::vector<ChainLine> out;
  {
    std::vector<Real> logs;
    for (int j = 2; j <= d + 1; ++j) logs.push_back(A(j));
    out.push_back({"sum_l prod_j |pi_j|^C(l,j)", stage_size_bound_log(d + 2, d + 1, logs), false, ""});
  }
  Real sum_a = 0;
  Real sum_b = 0;
  for (int j = 2; j <= d + 1; ++j) {
    sum_a += Real(binomial(d + 2, j)) * A(j);
    sum_b += Real(binomial(d + 2, j)) * ex(Real(j) * lh + log_f(j, cfg));
  }
  const Real l3 = ln(Real(d + 3));
  out.push_back({"(d+3) prod_j |pi_j|^C(d+2,j)", l3 + sum_a, true, ""});
  out.push_back({"(d+3) exp(m log(N) sum_j C(d+2,j) exp(j log(h) + C log(j)^3))", l3 + Real(m) * lN * sum_b, true, ""});
  out.push_back({"(d+3) exp(m log(N) d 2^d exp((d+1) log(h) + C log(d+1)^3))",
                 l3 + Real(m) * lN * D * ex(ln(Real(2)) * D) * ex(Real(d + 1) * lh + log_f(d + 1, cfg)), true, ""});
  const BoundConfig c2{cfg.C * shift_stage_chain()};
  const Real inner5 = ln(D) + ln(Real(2)) * D + D * lh + lh + log_f(d, c2);
  out.push_back({"exp(log(d+3) + m log(N) exp(log(d) + log(2) d + d log(h) + log(h) + C2 log(d)^3))",
                 l3 + Real(m) * lN * ex(inner5), true, "C2 = C (log 3/log 2)^3"});
  const Real b6 = Real(m) * lN * ex(inner5);
  const bool large = l3 >= 2 && b6 >= 2;
  out.push_back({"exp(log(d+3) m log(N) exp(log(d) + log(2h) d + log(h) + C2 log(d)^3))", l3 * b6, large,
                 large ? "" : "a + b <= ab needs a, b >= 2; step not asserted"});
  out.push_back({"exp(m log(N) exp(log log(d+3) + log(d) + log(2h) d + log(h) + C2 log(d)^3))",
                 Real(m) * lN * ex(ln(l3) + inner5), true, ""});
  const BoundConfig c3 = stage_chain_final_config(cfg);
  out.push_back({"exp(m log(N) exp(log(2h) d + log(h) + C3 log(d)^3))",
                 Real(m) * lN * ex(ln(Real(2 * h)) * D + lh + log_f(d, c3)), true,
                 "C3 = C2 + (log log 5 + log 2)/log(2)^3"});
  out.push_back({"exp(m h log(N) exp(log(2h) d + C3 log(d)^3))", final_bound(d, m, h, N, c3).log_value, true, ""});
  return out;
}

bool log_leq(const Real& a, const Real& b) {
  const Real scale = std::max(Real(1), std::max(abs(a), abs(b)));
  return a <= b + scale * Real("1e-80");
}

ChainCheck check_chain(const std::vector<ChainLine>& lines) {
  ChainCheck c;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (!lines[i].checked) {
      ++c.steps_skipped;
      continue;
    }
    ++c.steps_checked;
    if (!log_leq(lines[i - 1].log_value, lines[i].log_value)) {
      c.ok = false;
      c.failures.push_back("line " + std::to_string(i) + " (" + lines[i].label + "): " + format_real(lines[i].log_value) +
                           " < previous " + format_real(lines[i - 1].log_value));
    }
  }
  return c;
}

std::string format_real(const Real& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

std::string format_log_value(const Real& log_value) {
  if (log_value == 0) return "1";
  const Real l10 = log_value / ln(Real(10));
  const Real e = boost::multiprecision::floor(l10);
  const Real mant = boost::multiprecision::pow(Real(10), l10 - e);
  std::ostringstream os;
  os.precision(6);
  const long long ee = e.convert_to<long long>();
  os << "exp(" << format_real(log_value) << ") ≈ " << mant << (ee >= 0 ? "e+" : "e") << ee;
  return os.str();
}

}  // namespace bsset
