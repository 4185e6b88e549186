#pragma once

#include <string>
#include <utility>
#include <vector>

#include "upcert/ball_poly.hpp"
#include "upcert/scalar.hpp"

namespace upcert {

/// Dense univariate polynomial over an ExactScalar field, low degree first.
/// The leading stored coefficient is nonzero unless the polynomial is zero.
class Poly {
 public:
  Poly();
  explicit Poly(std::vector<ExactScalar> coeffs);
  Poly(std::initializer_list<Rational> coeffs);
  static Poly constant(const ExactScalar& c);
  static Poly monomial(const ExactScalar& c, int degree);
  static Poly variable(const FieldPtr& field = NumberField::rationals());
  /// Monic polynomial with the given roots.
  static Poly from_roots(const std::vector<ExactScalar>& roots);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_constant() const noexcept { return coeffs_.size() <= 1; }
  const std::vector<ExactScalar>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of z^k (zero beyond the degree).
  ExactScalar coeff(int k) const;
  ExactScalar leading() const;
  const FieldPtr& field() const noexcept { return field_; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const ExactScalar& c, const Poly& p);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b);

  /// Euclidean division; throws DivisionByZero for a zero divisor.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  /// Exact quotient; throws InternalError if the division leaves a remainder.
  Poly exact_div(const Poly& divisor) const;
  Poly pow(unsigned e) const;
  Poly monic() const;
  Poly derivative() const;
  /// P(Q(z)).
  Poly compose(const Poly& inner) const;

  ExactScalar eval(const ExactScalar& x) const;
  /// Certified: the result contains P(x) for every x in the disc.
  ComplexBall eval(const ComplexBall& x) const;
  /// Coefficient enclosures at the given precision.
  BallPoly embedded(long precision_bits) const;

  Poly promoted(const FieldPtr& field) const;

  std::string to_string(const std::string& var = "z") const;

 private:
  void normalize();
  std::vector<ExactScalar> coeffs_;
  FieldPtr field_;
};

struct SquarefreeFactor {
  Poly factor;  // monic, squarefree, nonconstant
  int multiplicity;
};

/// Monic gcd; gcd(P, 0) = monic(P). Both zero is an error.
Poly gcd(const Poly& a, const Poly& b);

/// Yun's algorithm. Factors are monic, pairwise coprime and ordered by
/// ascending multiplicity; lc(P) * prod factor^multiplicity == P.
std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p);

/// Product of the distinct monic irreducible factors' roots: P / gcd(P, P').
Poly squarefree_part(const Poly& p);

/// Res(P, Q) = lc(P)^deg(Q) * prod_{P(a)=0} Q(a): the determinant of the
/// Sylvester matrix whose first deg(Q) rows carry P's coefficients.
ExactScalar resultant(const Poly& p, const Poly& q);

/// D(y) = Res_x(P(x) - y, P'(x)) as a polynomial in y. Up to a nonzero
/// constant, D(y) = prod_i (P(d_i) - y)^{q_i} over the critical points d_i
/// of multiplicity q_i.
Poly critical_value_poly(const Poly& p);

/// Lagrange interpolation through (x_k, y_k) with distinct x_k.
Poly interpolate(const std::vector<ExactScalar>& xs, const std::vector<ExactScalar>& ys);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace upcert
