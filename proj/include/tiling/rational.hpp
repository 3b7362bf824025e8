#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace tiling {

/// Thrown when a 64-bit rational operation would lose exactness.
struct RationalOverflow : std::overflow_error {
  RationalOverflow() : std::overflow_error("rational overflow") {}
};

/// Exact rational with 64-bit numerator and denominator.
///
/// Always normalized: den > 0 and gcd(num, den) == 1. Every operation is
/// computed in 128-bit and throws RationalOverflow if the reduced result does
/// not fit, so a value is either exact or absent.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator-() const {
    if (num_ == INT64_MIN) throw RationalOverflow();
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(__int128(a.num_) + b.num_, a.den_);
    return from_wide(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                     __int128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    if (a.den_ == b.den_) return from_wide(__int128(a.num_) - b.num_, a.den_);
    return from_wide(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                     __int128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    if (a.num_ == 0 || b.num_ == 0) return Rational();
    return from_wide(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return __int128(a.num_) * b.den_ < __int128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return (num_ > 0) - (num_ < 0); }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return double(num_) / double(den_); }
  long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Rational();
    __int128 g = gcd128(n, d);
    n /= g;
    d /= g;
    if (n > INT64_MAX || n < -INT64_MAX || d > INT64_MAX) throw RationalOverflow();
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_wide(n, d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Arbitrary-precision fallback scalar for systems that overflow Rational.
using BigRational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                  boost::multiprecision::et_off>;

/// Comparison and conversion hooks so exact and floating scalars share the
/// same elimination and simplex code. Floating scalars compare with a fixed
/// absolute tolerance.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static int sign(const Rational& x) { return x.sign(); }
  static long double to_long_double(const Rational& x) { return x.to_long_double(); }
  static Rational from_rational(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<BigRational> {
  static constexpr bool exact = true;
  static int sign(const BigRational& x) { return x.sign(); }
  static long double to_long_double(const BigRational& x) {
    return x.convert_to<long double>();
  }
  static BigRational from_rational(const Rational& x) {
    return BigRational(x.num()) / BigRational(x.den());
  }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-10;
  static int sign(double x) { return x > tolerance ? 1 : (x < -tolerance ? -1 : 0); }
  static long double to_long_double(double x) { return x; }
  static double from_rational(const Rational& x) { return x.to_double(); }
};

template <>
struct ScalarTraits<long double> {
  static constexpr bool exact = false;
  static constexpr long double tolerance = 1e-13L;
  static int sign(long double x) { return x > tolerance ? 1 : (x < -tolerance ? -1 : 0); }
  static long double to_long_double(long double x) { return x; }
  static long double from_rational(const Rational& x) { return x.to_long_double(); }
};

template <class Scalar>
bool is_zero(const Scalar& x) {
  return ScalarTraits<Scalar>::sign(x) == 0;
}

}  // namespace tiling

namespace Eigen {

template <>
struct NumTraits<tiling::Rational> : GenericNumTraits<tiling::Rational> {
  typedef tiling::Rational Real;
  typedef tiling::Rational NonInteger;
  typedef tiling::Rational Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 16,
    MulCost = 16
  };
};

template <>
struct NumTraits<tiling::BigRational> : GenericNumTraits<tiling::BigRational> {
  typedef tiling::BigRational Real;
  typedef tiling::BigRational NonInteger;
  typedef tiling::BigRational Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64
  };
};

}  // namespace Eigen
