#pragma once

#include <mpfr.h>

#include <string>

#include "upcert/rational.hpp"

namespace upcert {

/// Owning wrapper around an MPFR value.
class Float {
 public:
  explicit Float(long precision_bits = 64);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  static Float from_rational(const Rational& q, long precision_bits, mpfr_rnd_t rnd = MPFR_RNDN);
  static Float from_long(long v, long precision_bits);

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }

  bool is_zero() const noexcept { return mpfr_zero_p(value_) != 0; }
  int sign() const noexcept { return mpfr_sgn(value_); }
  double to_double() const noexcept { return mpfr_get_d(value_, MPFR_RNDN); }
  Rational to_rational() const;
  std::string to_decimal(int digits) const;

 private:
  mpfr_t value_;
};

/// Complex disc: midpoint (re, im) at a working precision plus a radius that
/// is maintained with upward rounding. Every operation returns a disc
/// containing the exact result of applying the operation to any points of the
/// operand discs.
class ComplexBall {
 public:
  static constexpr long kRadiusBits = 64;

  ComplexBall();
  explicit ComplexBall(long precision_bits);

  /// Disc around re + i*im; rounding error of the conversion is added to the radius.
  static ComplexBall from_rationals(const Rational& re, const Rational& im, long precision_bits);
  static ComplexBall from_rational(const Rational& re, long precision_bits) {
    return from_rationals(re, Rational(0), precision_bits);
  }
  static ComplexBall from_long(long v, long precision_bits);
  /// Point ball (radius 0) at the given midpoint values, rounded to precision.
  static ComplexBall point(const Float& re, const Float& im, long precision_bits);
  static ComplexBall imaginary_unit(long precision_bits);
  /// sqrt of a positive rational.
  static ComplexBall sqrt_of(const Rational& q, long precision_bits);

  long precision() const noexcept { return precision_; }
  const Float& mid_re() const noexcept { return re_; }
  const Float& mid_im() const noexcept { return im_; }
  const Float& radius() const noexcept { return rad_; }
  Rational radius_rational() const { return rad_.to_rational(); }

  /// Same midpoint, radius enlarged by r (rounded up).
  ComplexBall inflated(const Float& r) const;
  ComplexBall with_radius(const Float& r) const;
  /// Midpoint only, radius 0.
  ComplexBall center() const;
  ComplexBall with_precision(long precision_bits) const;

  /// Upper and lower bounds on |z| over the disc (lower bound clamps at 0).
  Float abs_upper() const;
  Float abs_lower() const;

  bool contains_zero() const;
  /// True when `inner` lies strictly inside this disc.
  bool strictly_contains(const ComplexBall& inner) const;
  bool contains(const ComplexBall& inner) const;
  bool overlaps(const ComplexBall& other) const;
  bool disjoint(const ComplexBall& other) const { return !overlaps(other); }

  /// Certified comparisons of the real/imaginary projections.
  /// Returns -1 (strictly less), +1 (strictly greater) or 0 (overlap).
  int compare_re(const ComplexBall& other) const;
  int compare_im(const ComplexBall& other) const;

  ComplexBall operator-() const;
  friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b);
  friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b);
  /// Throws DivisionByZero if the divisor disc contains 0.
  friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b);
  ComplexBall& operator+=(const ComplexBall& b) { return *this = *this + b; }
  ComplexBall& operator-=(const ComplexBall& b) { return *this = *this - b; }
  ComplexBall& operator*=(const ComplexBall& b) { return *this = *this * b; }
  ComplexBall inverse() const;
  ComplexBall scaled(long k) const;

  /// Human-readable "re + im*i +/- rad" with the given significant digits.
  std::string to_string(int digits = 20) const;

 private:
  long precision_;
  Float re_;
  Float im_;
  Float rad_;
};

/// Upper bound of |x| * 2^(1-prec): covers one round-to-nearest error.
Float rounding_error_bound(const Float& x, long precision_bits);

}  // namespace upcert
