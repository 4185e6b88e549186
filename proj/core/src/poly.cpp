#include "upcert/poly.hpp"

#include <ostream>

#include "upcert/errors.hpp"

namespace upcert {

Poly::Poly() : field_(NumberField::rationals()) {}

Poly::Poly(std::vector<ExactScalar> coeffs) : coeffs_(std::move(coeffs)), field_(NumberField::rationals()) {
  normalize();
}

Poly::Poly(std::initializer_list<Rational> coeffs) : field_(NumberField::rationals()) {
  for (const auto& c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

void Poly::normalize() {
  for (const auto& c : coeffs_) field_ = common_field(field_, c.field());
  for (auto& c : coeffs_)
    if (c.field() != field_) c = c.promoted(field_);
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const ExactScalar& c) { return Poly(std::vector<ExactScalar>{c}); }

Poly Poly::monomial(const ExactScalar& c, int degree) {
  std::vector<ExactScalar> v(static_cast<std::size_t>(degree) + 1, ExactScalar(c.field(), Rational(0)));
  v.back() = c;
  return Poly(std::move(v));
}

Poly Poly::variable(const FieldPtr& field) {
  return Poly(std::vector<ExactScalar>{ExactScalar(field, Rational(0)), ExactScalar(field, Rational(1))});
}

Poly Poly::from_roots(const std::vector<ExactScalar>& roots) {
  Poly r = constant(ExactScalar(1));
  for (const auto& a : roots) r *= Poly(std::vector<ExactScalar>{-a, ExactScalar(1)});
  return r;
}

ExactScalar Poly::coeff(int k) const {
  if (k < 0 || k > degree()) return ExactScalar(field_, Rational(0));
  return coeffs_[static_cast<std::size_t>(k)];
}

ExactScalar Poly::leading() const {
  if (is_zero()) return ExactScalar(field_, Rational(0));
  return coeffs_.back();
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<ExactScalar> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k < a.coeffs_.size() && k < b.coeffs_.size()) v[k] = a.coeffs_[k] + b.coeffs_[k];
    else if (k < a.coeffs_.size()) v[k] = a.coeffs_[k];
    else v[k] = b.coeffs_[k];
  }
  Poly r(std::move(v));
  r.field_ = common_field(r.field_, common_field(a.field_, b.field_));
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  if (a.is_zero() || b.is_zero()) {
    Poly z;
    z.field_ = f;
    return z;
  }
  std::vector<ExactScalar> v(a.coeffs_.size() + b.coeffs_.size() - 1, ExactScalar(f, Rational(0)));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(v));
}

Poly operator*(const ExactScalar& c, const Poly& p) {
  std::vector<ExactScalar> v;
  v.reserve(p.coeffs_.size());
  for (const auto& x : p.coeffs_) v.push_back(c * x);
  Poly r(std::move(v));
  r.field_ = common_field(r.field_, common_field(c.field(), p.field_));
  return r;
}

bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }

std::pair<Poly, Poly> Poly::divmod(const Poly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero();
  FieldPtr f = common_field(field_, divisor.field_);
  std::vector<ExactScalar> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) {
    Poly q;
    q.field_ = f;
    Poly r = *this;
    r.field_ = f;
    return {q, r};
  }
  std::vector<ExactScalar> quo(static_cast<std::size_t>(degree() - dd + 1), ExactScalar(f, Rational(0)));
  const ExactScalar inv_lc = divisor.leading().inverse();
  for (int k = degree(); k >= dd; --k) {
    const ExactScalar c = rem[static_cast<std::size_t>(k)] * inv_lc;
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(k - dd)] = c;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k - dd + j)] -= c * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(dd));
  Poly q(std::move(quo)), r(std::move(rem));
  q.field_ = common_field(q.field_, f);
  r.field_ = common_field(r.field_, f);
  return {q, r};
}

Poly Poly::exact_div(const Poly& divisor) const {
  auto [q, r] = divmod(divisor);
  if (!r.is_zero()) throw InternalError("inexact polynomial division");
  return q;
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(ExactScalar(field_, Rational(1)));
  Poly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return leading().inverse() * *this;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) {
    Poly z;
    z.field_ = field_;
    return z;
  }
  std::vector<ExactScalar> v;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v.push_back(ExactScalar(static_cast<long>(k)) * coeffs_[k]);
  Poly r(std::move(v));
  r.field_ = common_field(r.field_, field_);
  return r;
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  acc.field_ = common_field(field_, inner.field_);
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * inner + constant(coeffs_[k]);
  return acc;
}

ExactScalar Poly::eval(const ExactScalar& x) const {
  ExactScalar acc(common_field(field_, x.field()), Rational(0));
  for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * x + coeffs_[k];
  return acc;
}

ComplexBall Poly::eval(const ComplexBall& x) const {
  const BallPoly c = embedded(x.precision());
  return horner(c, x);
}

BallPoly Poly::embedded(long precision_bits) const {
  BallPoly out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.embed(precision_bits));
  return out;
}

Poly Poly::promoted(const FieldPtr& field) const {
  std::vector<ExactScalar> v;
  for (const auto& c : coeffs_) v.push_back(c.promoted(field));
  Poly r(std::move(v));
  r.field_ = common_field(r.field_, field);
  return r;
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const ExactScalar& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono = k == 0 ? "" : k == 1 ? var : var + "^" + std::to_string(k);
    std::string cs = c.to_string();
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.to_rational();
      negative = q < 0;
      cs = upcert::to_string(negative ? Rational(-q) : q);
    } else if (cs.find(' ') != std::string::npos) {
      cs = "(" + cs + ")";
    } else if (cs[0] == '-') {
      negative = true;
      cs = cs.substr(1);
    }
    std::string term;
    if (mono.empty()) term = cs;
    else if (cs == "1") term = mono;
    else term = cs + "*" + mono;
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw InvalidArgument("gcd of two zero polynomials");
  Poly r0 = a.monic(), r1 = b.monic();
  while (!r1.is_zero()) {
    Poly r = r0.divmod(r1).second.monic();
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  return r0.monic();
}

std::vector<SquarefreeFactor> squarefree_decomposition(const Poly& p) {
  if (p.is_zero()) throw InvalidArgument("squarefree decomposition of the zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (p.is_constant()) return out;
  const Poly dp = p.derivative();
  const Poly a0 = gcd(p, dp);
  Poly b = p.exact_div(a0);
  Poly c = dp.exact_div(a0);
  Poly d = c - b.derivative();
  for (int i = 1; !b.is_constant(); ++i) {
    const Poly a = gcd(b, d);
    b = b.exact_div(a);
    c = d.exact_div(a);
    d = c - b.derivative();
    if (!a.is_constant()) out.push_back({a.monic(), i});
  }
  return out;
}

Poly squarefree_part(const Poly& p) {
  if (p.is_constant()) return p.is_zero() ? p : Poly::constant(ExactScalar(p.field(), Rational(1)));
  return p.exact_div(gcd(p, p.derivative())).monic();
}

ExactScalar resultant(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return ExactScalar(common_field(p.field(), q.field()), Rational(0));
  FieldPtr f = common_field(p.field(), q.field());
  ExactScalar acc(f, Rational(1));
  Poly a = p, b = q;
  while (true) {
    const int n = a.degree(), m = b.degree();
    if (m == 0) return acc * b.leading().pow(static_cast<unsigned>(n));
    if (n == 0) return acc * a.leading().pow(static_cast<unsigned>(m));
    Poly r = a.divmod(b).second;
    if (r.is_zero()) return ExactScalar(f, Rational(0));
    // res(A, B) = (-1)^{nm} lc(B)^{n - deg R} res(B, R)
    if ((n * m) % 2 != 0) acc = -acc;
    acc *= b.leading().pow(static_cast<unsigned>(n - r.degree()));
    a = std::move(b);
    b = std::move(r);
  }
}

Poly interpolate(const std::vector<ExactScalar>& xs, const std::vector<ExactScalar>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw InvalidArgument("interpolation needs matching nonempty samples");
  Poly result;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    Poly basis = Poly::constant(ExactScalar(1));
    ExactScalar denom(1);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == k) continue;
      basis *= Poly(std::vector<ExactScalar>{-xs[j], ExactScalar(1)});
      denom *= xs[k] - xs[j];
    }
    result += (ys[k] / denom) * basis;
  }
  return result;
}

Poly critical_value_poly(const Poly& p) {
  const Poly dp = p.derivative();
  if (dp.is_zero()) throw InvalidArgument("critical_value_poly needs a nonconstant polynomial");
  const unsigned n = static_cast<unsigned>(p.degree());
  // Res(A, a * prod F_j^j) = a^{deg A} * prod Res(A, F_j)^j by multiplicativity.
  Poly d = Poly::constant(dp.leading().pow(n));
  for (const auto& [factor, mult] : squarefree_decomposition(dp)) {
    std::vector<ExactScalar> xs, ys;
    for (int l = 0; l <= factor.degree(); ++l) {
      const ExactScalar y(static_cast<long>(l));
      xs.push_back(y);
      ys.push_back(resultant(p - Poly::constant(y), factor));
    }
    d *= interpolate(xs, ys).pow(static_cast<unsigned>(mult));
  }
  return d;
}

}  // namespace upcert
