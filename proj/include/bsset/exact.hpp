#pragma once

// Exact scalar types usable as Eigen matrix scalars.
//
// boost::multiprecision::number participates in overload resolution against
// Eigen expression types (its converting constructors are too greedy), so the
// arbitrary-precision representations are held behind a thin value wrapper.

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace bsset {

namespace mp = boost::multiprecision;

using BigIntRep = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using BigRationalRep = mp::number<mp::cpp_rational_backend, mp::et_off>;

template <class Rep>
class Exact {
 public:
  static constexpr bool is_integer = std::is_same_v<Rep, BigIntRep>;

  Exact() = default;
  Exact(int v) : v_(v) {}
  Exact(long v) : v_(v) {}
  Exact(long long v) : v_(v) {}
  Exact(unsigned long v) : v_(v) {}
  Exact(unsigned long long v) : v_(v) {}
  explicit Exact(Rep v) : v_(std::move(v)) {}

  // Integer -> Rational promotion.
  template <class Other>
    requires(!std::is_same_v<Other, Rep> && std::is_same_v<Rep, BigRationalRep>)
  explicit Exact(const Exact<Other>& other) : v_(other.rep()) {}

  // numerator / denominator, rational only
  template <class R = Rep>
    requires std::is_same_v<R, BigRationalRep>
  Exact(const Exact<BigIntRep>& num, const Exact<BigIntRep>& den) : v_(num.rep(), den.rep()) {}

  const Rep& rep() const noexcept { return v_; }

  Exact& operator+=(const Exact& o) { v_ += o.v_; return *this; }
  Exact& operator-=(const Exact& o) { v_ -= o.v_; return *this; }
  Exact& operator*=(const Exact& o) { v_ *= o.v_; return *this; }
  // Truncating division for integers, exact division for rationals.
  Exact& operator/=(const Exact& o) { v_ /= o.v_; return *this; }
  Exact& operator%=(const Exact& o)
    requires is_integer
  { v_ %= o.v_; return *this; }

  friend Exact operator+(Exact a, const Exact& b) { return a += b; }
  friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
  friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
  friend Exact operator/(Exact a, const Exact& b) { return a /= b; }
  friend Exact operator%(Exact a, const Exact& b)
    requires is_integer
  { return a %= b; }
  friend Exact operator-(const Exact& a) { return Exact(Rep(-a.v_)); }

  friend bool operator==(const Exact& a, const Exact& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Exact& a, const Exact& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool is_zero() const { return v_.is_zero(); }
  int sign() const { return v_.sign(); }

  std::string str() const { return v_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const Exact& a) { return os << a.v_; }

 private:
  Rep v_{};
};

using Integer = Exact<BigIntRep>;
using Rational = Exact<BigRationalRep>;

inline Integer abs(const Integer& a) { return a.sign() < 0 ? -a : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? -a : a; }

inline Integer gcd(const Integer& a, const Integer& b) { return Integer(BigIntRep(mp::gcd(a.rep(), b.rep()))); }
inline Integer lcm(const Integer& a, const Integer& b) { return Integer(BigIntRep(mp::lcm(a.rep(), b.rep()))); }

inline Integer numerator(const Rational& r) { return Integer(BigIntRep(mp::numerator(r.rep()))); }
inline Integer denominator(const Rational& r) { return Integer(BigIntRep(mp::denominator(r.rep()))); }

inline Integer pow(const Integer& base, unsigned exponent) { return Integer(BigIntRep(mp::pow(base.rep(), exponent))); }

// Exponent of p in x; x must be nonzero.
inline int valuation(Integer x, const Integer& p) {
  int v = 0;
  while ((x % p).is_zero()) {
    x /= p;
    ++v;
  }
  return v;
}

// True if x is a unit in Z_(p), i.e. p does not divide x.
inline bool is_p_unit(const Integer& x, const Integer& p) { return !(x % p).is_zero(); }
inline bool is_p_unit(const Rational& x, const Integer& p) {
  return !x.is_zero() && is_p_unit(numerator(x), p) && is_p_unit(denominator(x), p);
}

inline bool fits_int64(const Integer& x) {
  return x.rep() <= std::numeric_limits<std::int64_t>::max() && x.rep() >= std::numeric_limits<std::int64_t>::min();
}
inline std::int64_t to_int64(const Integer& x) { return x.rep().convert_to<std::int64_t>(); }

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

}  // namespace bsset

namespace Eigen {

template <class Rep>
struct NumTraits<bsset::Exact<Rep>> : GenericNumTraits<bsset::Exact<Rep>> {
  using Real = bsset::Exact<Rep>;
  using NonInteger = bsset::Exact<Rep>;
  using Nested = bsset::Exact<Rep>;
  using Literal = bsset::Exact<Rep>;
  enum {
    IsComplex = 0,
    IsInteger = bsset::Exact<Rep>::is_integer ? 1 : 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 40
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
