#include "upcert/rational_function.hpp"

#include "upcert/errors.hpp"

namespace upcert {

RationalFunction::RationalFunction() : den_(Poly::constant(ExactScalar(1))) {}

RationalFunction::RationalFunction(const Poly& num) : num_(num), den_(Poly::constant(ExactScalar(1))) {}

RationalFunction::RationalFunction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DivisionByZero();
  if (num.is_zero()) {
    num_ = num;
    den_ = Poly::constant(ExactScalar(1));
    return;
  }
  const Poly g = gcd(num, den);
  Poly n = num.exact_div(g);
  Poly d = den.exact_div(g);
  const ExactScalar lc = d.leading();
  num_ = lc.inverse() * n;
  den_ = d.monic();
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DivisionByZero();
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ == b.num_ && a.den_ == b.den_;
}

RationalFunction RationalFunction::pow(unsigned e) const { return RationalFunction(num_.pow(e), den_.pow(e)); }

ExactScalar RationalFunction::eval(const ExactScalar& x) const {
  const ExactScalar d = den_.eval(x);
  if (d.is_zero()) throw DivisionByZero();
  return num_.eval(x) / d;
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

UnreducedComposition compose_unreduced(const Poly& p, const RationalFunction& r) {
  // sum_k c_k N^k D^{n-k}
  const int n = std::max(p.degree(), 0);
  std::vector<Poly> num_powers{Poly::constant(ExactScalar(1))};
  std::vector<Poly> den_powers{Poly::constant(ExactScalar(1))};
  for (int k = 1; k <= n; ++k) {
    num_powers.push_back(num_powers.back() * r.num());
    den_powers.push_back(den_powers.back() * r.den());
  }
  Poly top;
  for (int k = 0; k <= p.degree(); ++k) {
    const ExactScalar c = p.coeff(k);
    if (c.is_zero()) continue;
    top += c * (num_powers[static_cast<std::size_t>(k)] * den_powers[static_cast<std::size_t>(n - k)]);
  }
  return {top, den_powers[static_cast<std::size_t>(n)]};
}

RationalFunction compose_rational(const Poly& p, const RationalFunction& r) {
  UnreducedComposition u = compose_unreduced(p, r);
  return RationalFunction(u.top, u.bottom);
}

}  // namespace upcert
