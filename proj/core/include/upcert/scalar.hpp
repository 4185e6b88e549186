#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "upcert/ball.hpp"
#include "upcert/number_field.hpp"
#include "upcert/rational.hpp"

namespace upcert {

/// Exact element of Q or of a NumberField. Values are immutable; mixing a
/// rational with a field element promotes the rational.
class ExactScalar {
 public:
  ExactScalar();
  ExactScalar(const Rational& q);  // NOLINT(google-explicit-constructor)
  ExactScalar(long v);             // NOLINT(google-explicit-constructor)
  ExactScalar(FieldPtr field, NumberField::Coords power_coords);
  ExactScalar(FieldPtr field, const Rational& q);

  static ExactScalar generator(const FieldPtr& field);

  const FieldPtr& field() const noexcept { return field_; }
  const NumberField::Coords& coords() const noexcept { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in Q (whatever field it is expressed in).
  bool is_rational() const;
  /// Throws InvalidArgument if the value is not rational.
  Rational to_rational() const;

  ExactScalar promoted(const FieldPtr& field) const;

  ExactScalar operator-() const;
  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b);
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b);
  /// Throws DivisionByZero.
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b);
  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }
  ExactScalar& operator/=(const ExactScalar& b) { return *this = *this / b; }
  friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return (a - b).is_zero(); }

  ExactScalar inverse() const;
  ExactScalar pow(unsigned e) const;

  /// Complex conjugate, real part and imaginary part (multiquadratic fields).
  ExactScalar conj() const;
  ExactScalar real_part() const;
  ExactScalar imag_part() const;

  /// Certified enclosure of the embedded value.
  ComplexBall embed(long precision_bits) const;

  /// Exact text in the input grammar, e.g. "7/4 - 1/4*i*sqrt(95)".
  std::string to_string() const;

 private:
  FieldPtr field_;
  NumberField::Coords coords_;
};

/// Resolves the common field of two operands, or throws FieldMismatch.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

}  // namespace upcert
