#pragma once

#include <string>

#include "upcert/poly.hpp"

namespace upcert {

/// Reduced quotient num/den: gcd(num, den) = 1 and den monic. Reduction is
/// performed on construction, so structural equality is value equality.
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(const Poly& num);  // NOLINT(google-explicit-constructor)
  /// Throws DivisionByZero when den is zero.
  RationalFunction(const Poly& num, const Poly& den);

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_polynomial() const noexcept { return den_.degree() == 0; }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  RationalFunction pow(unsigned e) const;

  /// Value at an exact point; throws DivisionByZero at a pole.
  ExactScalar eval(const ExactScalar& x) const;

  std::string to_string(const std::string& var = "u") const;

 private:
  Poly num_;
  Poly den_;
};

/// Result of substituting R into P before cancellation: P(N/D) = top / D^deg P.
struct UnreducedComposition {
  Poly top;
  Poly bottom;
};

/// P(N/D) written over the common denominator D^deg(P), without reduction.
UnreducedComposition compose_unreduced(const Poly& p, const RationalFunction& r);

/// Reduced P o R.
RationalFunction compose_rational(const Poly& p, const RationalFunction& r);

}  // namespace upcert
