#include "bsset/abelian_group.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

#include "bsset/errors.hpp"

namespace bsset {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> invariant_factors) : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InputError("invariant factors must be at least 2");
    if (factors_[i] > std::numeric_limits<Label>::max()) throw InputError("invariant factor too large");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw InputError("invariant factors must form a divisibility chain");
  }
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(std::int64_t order) {
  if (order < 1) throw InputError("cyclic group order must be positive");
  if (order == 1) return {};
  return FiniteAbelianGroup({order});
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::span<const std::int64_t> orders) {
  // Split into prime powers, then regroup the largest powers of each prime.
  std::map<std::int64_t, std::vector<std::int64_t>> powers;
  for (std::int64_t n : orders) {
    if (n < 1) throw InputError("cyclic group order must be positive");
    for (std::int64_t p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      std::int64_t q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      powers[p].push_back(q);
    }
    if (n > 1) powers[n].push_back(n);
  }
  std::size_t r = 0;
  for (auto& [p, qs] : powers) {
    std::sort(qs.begin(), qs.end(), std::greater<>());
    r = std::max(r, qs.size());
  }
  std::vector<std::int64_t> factors(r, 1);
  for (auto& [p, qs] : powers)
    for (std::size_t i = 0; i < qs.size(); ++i) factors[r - 1 - i] *= qs[i];
  return FiniteAbelianGroup(std::move(factors));
}

Integer FiniteAbelianGroup::order() const {
  Integer o(1);
  for (auto f : factors_) o *= Integer(static_cast<long long>(f));
  return o;
}

std::uint64_t FiniteAbelianGroup::order_u64() const {
  std::uint64_t o = 1;
  for (auto f : factors_) {
    if (o > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(f))
      throw InputError("group order overflows 64 bits");
    o *= static_cast<std::uint64_t>(f);
  }
  return o;
}

void FiniteAbelianGroup::add_into(std::span<Label> acc, std::span<const Label> x) const {
  const std::size_t r = factors_.size();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto f = factors_[i % r];
    const std::int64_t s = std::int64_t{acc[i]} + x[i];
    acc[i] = static_cast<Label>(s >= f ? s - f : s);
  }
}

void FiniteAbelianGroup::sub_into(std::span<Label> acc, std::span<const Label> x) const {
  const std::size_t r = factors_.size();
  for (std::size_t i = 0; i < acc.size(); ++i) {
    const auto f = factors_[i % r];
    const std::int64_t s = std::int64_t{acc[i]} - x[i];
    acc[i] = static_cast<Label>(s < 0 ? s + f : s);
  }
}

void FiniteAbelianGroup::negate(std::span<Label> x) const {
  const std::size_t r = factors_.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) x[i] = static_cast<Label>(factors_[i % r] - x[i]);
}

bool FiniteAbelianGroup::is_zero(std::span<const Label> x) const {
  return std::all_of(x.begin(), x.end(), [](Label v) { return v == 0; });
}

std::vector<FiniteAbelianGroup::Element> FiniteAbelianGroup::elements() const {
  std::vector<Element> out;
  Element e = zero();
  for (;;) {
    out.push_back(e);
    std::size_t i = factors_.size();
    while (i > 0) {
      --i;
      if (++e[i] < factors_[i]) break;
      e[i] = 0;
      if (i == 0) return out;
    }
    if (factors_.empty()) return out;
  }
}

FiniteAbelianGroup FiniteAbelianGroup::primary_part(std::int64_t p) const {
  std::vector<std::int64_t> out;
  for (auto f : factors_) {
    std::int64_t q = 1;
    while (f % p == 0) {
      f /= p;
      q *= p;
    }
    if (q > 1) out.push_back(q);
  }
  return FiniteAbelianGroup(std::move(out));
}

std::string FiniteAbelianGroup::str() const {
  if (factors_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? "+Z/" : "Z/") + std::to_string(factors_[i]);
  return s;
}

}  // namespace bsset
