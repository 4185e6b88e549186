#include "upcert/ball.hpp"

#include <algorithm>
#include <cstdlib>

#include "upcert/errors.hpp"

namespace upcert {

namespace {

constexpr long kRad = ComplexBall::kRadiusBits;

Float zero_radius() { return Float(kRad); }

// |a - b| bounds, rounded in the requested direction.
Float abs_diff(const Float& a, const Float& b, mpfr_rnd_t rnd) {
  Float d(kRad);
  if (mpfr_cmp(a.get(), b.get()) >= 0) mpfr_sub(d.get(), a.get(), b.get(), rnd);
  else mpfr_sub(d.get(), b.get(), a.get(), rnd);
  return d;
}

Float add_up(const Float& a, const Float& b) {
  Float r(kRad);
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Float mul_up(const Float& a, const Float& b) {
  Float r(kRad);
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDU);
  return r;
}

Float hypot_dir(const Float& x, const Float& y, mpfr_rnd_t rnd) {
  Float r(kRad);
  mpfr_hypot(r.get(), x.get(), y.get(), rnd);
  return r;
}

// Distance between midpoints, bounded from below or above.
Float mid_distance(const ComplexBall& a, const ComplexBall& b, mpfr_rnd_t rnd) {
  Float dre = abs_diff(a.mid_re(), b.mid_re(), rnd);
  Float dim = abs_diff(a.mid_im(), b.mid_im(), rnd);
  return hypot_dir(dre, dim, rnd);
}

// Exact product of two floats (precision is the sum of operand precisions).
Float exact_mul(const Float& a, const Float& b) {
  Float r(a.precision() + b.precision());
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Float::Float(long precision_bits) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(std::max<long>(precision_bits, MPFR_PREC_MIN)));
  mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

Float Float::from_rational(const Rational& q, long precision_bits, mpfr_rnd_t rnd) {
  Float f(precision_bits);
  mpfr_set_q(f.value_, q.get_mpq_t(), rnd);
  return f;
}

Float Float::from_long(long v, long precision_bits) {
  Float f(precision_bits);
  mpfr_set_si(f.value_, v, MPFR_RNDN);
  return f;
}

Rational Float::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Float::to_decimal(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, value_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Float rounding_error_bound(const Float& x, long precision_bits) {
  Float r(kRad);
  mpfr_abs(r.get(), x.get(), MPFR_RNDU);
  mpfr_mul_2si(r.get(), r.get(), 1 - precision_bits, MPFR_RNDU);
  return r;
}

ComplexBall::ComplexBall() : ComplexBall(64) {}

ComplexBall::ComplexBall(long precision_bits)
    : precision_(precision_bits), re_(precision_bits), im_(precision_bits), rad_(zero_radius()) {}

ComplexBall ComplexBall::from_rationals(const Rational& re, const Rational& im, long precision_bits) {
  ComplexBall b(precision_bits);
  int tr = mpfr_set_q(b.re_.get(), re.get_mpq_t(), MPFR_RNDN);
  int ti = mpfr_set_q(b.im_.get(), im.get_mpq_t(), MPFR_RNDN);
  if (tr != 0) b.rad_ = add_up(b.rad_, rounding_error_bound(b.re_, precision_bits));
  if (ti != 0) b.rad_ = add_up(b.rad_, rounding_error_bound(b.im_, precision_bits));
  return b;
}

ComplexBall ComplexBall::from_long(long v, long precision_bits) {
  return from_rational(Rational(v), precision_bits);
}

ComplexBall ComplexBall::point(const Float& re, const Float& im, long precision_bits) {
  ComplexBall b(precision_bits);
  int tr = mpfr_set(b.re_.get(), re.get(), MPFR_RNDN);
  int ti = mpfr_set(b.im_.get(), im.get(), MPFR_RNDN);
  if (tr != 0) b.rad_ = add_up(b.rad_, rounding_error_bound(b.re_, precision_bits));
  if (ti != 0) b.rad_ = add_up(b.rad_, rounding_error_bound(b.im_, precision_bits));
  return b;
}

ComplexBall ComplexBall::imaginary_unit(long precision_bits) {
  ComplexBall b(precision_bits);
  mpfr_set_si(b.im_.get(), 1, MPFR_RNDN);
  return b;
}

ComplexBall ComplexBall::sqrt_of(const Rational& q, long precision_bits) {
  if (q <= 0) throw InvalidArgument("sqrt_of expects a positive rational");
  const long work = precision_bits + 8;
  Float lo = Float::from_rational(q, work, MPFR_RNDD);
  Float hi = Float::from_rational(q, work, MPFR_RNDU);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  ComplexBall b(precision_bits);
  mpfr_add(b.re_.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(b.re_.get(), b.re_.get(), 1, MPFR_RNDN);
  Float up = abs_diff(hi, b.re_, MPFR_RNDU);
  Float down = abs_diff(b.re_, lo, MPFR_RNDU);
  b.rad_ = mpfr_cmp(up.get(), down.get()) >= 0 ? up : down;
  return b;
}

ComplexBall ComplexBall::inflated(const Float& r) const {
  ComplexBall b = *this;
  b.rad_ = add_up(rad_, r);
  return b;
}

ComplexBall ComplexBall::with_radius(const Float& r) const {
  ComplexBall b = *this;
  b.rad_ = Float(kRad);
  mpfr_set(b.rad_.get(), r.get(), MPFR_RNDU);
  return b;
}

ComplexBall ComplexBall::center() const {
  ComplexBall b = *this;
  b.rad_ = zero_radius();
  return b;
}

ComplexBall ComplexBall::with_precision(long precision_bits) const {
  ComplexBall b = point(re_, im_, precision_bits);
  b.rad_ = add_up(b.rad_, rad_);
  return b;
}

Float ComplexBall::abs_upper() const { return add_up(hypot_dir(re_, im_, MPFR_RNDU), rad_); }

Float ComplexBall::abs_lower() const {
  Float m = hypot_dir(re_, im_, MPFR_RNDD);
  mpfr_sub(m.get(), m.get(), rad_.get(), MPFR_RNDD);
  if (m.sign() < 0) mpfr_set_zero(m.get(), 1);
  return m;
}

bool ComplexBall::contains_zero() const {
  Float m = hypot_dir(re_, im_, MPFR_RNDD);
  return mpfr_cmp(m.get(), rad_.get()) <= 0;
}

bool ComplexBall::strictly_contains(const ComplexBall& inner) const {
  Float reach = add_up(mid_distance(*this, inner, MPFR_RNDU), inner.rad_);
  return mpfr_cmp(reach.get(), rad_.get()) < 0;
}

bool ComplexBall::contains(const ComplexBall& inner) const {
  Float reach = add_up(mid_distance(*this, inner, MPFR_RNDU), inner.rad_);
  return mpfr_cmp(reach.get(), rad_.get()) <= 0;
}

bool ComplexBall::overlaps(const ComplexBall& other) const {
  Float d = mid_distance(*this, other, MPFR_RNDD);
  Float reach = add_up(rad_, other.rad_);
  return mpfr_cmp(d.get(), reach.get()) <= 0;
}

int ComplexBall::compare_re(const ComplexBall& other) const {
  Float gap = abs_diff(re_, other.re_, MPFR_RNDD);
  Float reach = add_up(rad_, other.rad_);
  if (mpfr_cmp(gap.get(), reach.get()) <= 0) return 0;
  return mpfr_cmp(re_.get(), other.re_.get()) < 0 ? -1 : 1;
}

int ComplexBall::compare_im(const ComplexBall& other) const {
  Float gap = abs_diff(im_, other.im_, MPFR_RNDD);
  Float reach = add_up(rad_, other.rad_);
  if (mpfr_cmp(gap.get(), reach.get()) <= 0) return 0;
  return mpfr_cmp(im_.get(), other.im_.get()) < 0 ? -1 : 1;
}

ComplexBall ComplexBall::operator-() const {
  ComplexBall b = *this;
  mpfr_neg(b.re_.get(), re_.get(), MPFR_RNDN);
  mpfr_neg(b.im_.get(), im_.get(), MPFR_RNDN);
  return b;
}

ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
  const long p = std::max(a.precision_, b.precision_);
  ComplexBall r(p);
  int tr = mpfr_add(r.re_.get(), a.re_.get(), b.re_.get(), MPFR_RNDN);
  int ti = mpfr_add(r.im_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  r.rad_ = add_up(a.rad_, b.rad_);
  if (tr != 0) r.rad_ = add_up(r.rad_, rounding_error_bound(r.re_, p));
  if (ti != 0) r.rad_ = add_up(r.rad_, rounding_error_bound(r.im_, p));
  return r;
}

ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) { return a + (-b); }

ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
  const long p = std::max(a.precision_, b.precision_);
  ComplexBall r(p);
  Float rr = exact_mul(a.re_, b.re_);
  Float ii = exact_mul(a.im_, b.im_);
  Float ri = exact_mul(a.re_, b.im_);
  Float ir = exact_mul(a.im_, b.re_);
  int tr = mpfr_sub(r.re_.get(), rr.get(), ii.get(), MPFR_RNDN);
  int ti = mpfr_add(r.im_.get(), ri.get(), ir.get(), MPFR_RNDN);
  Float rad(kRad);
  if (!a.rad_.is_zero() || !b.rad_.is_zero()) {
    Float am = hypot_dir(a.re_, a.im_, MPFR_RNDU);
    Float bm = hypot_dir(b.re_, b.im_, MPFR_RNDU);
    rad = add_up(add_up(mul_up(am, b.rad_), mul_up(bm, a.rad_)), mul_up(a.rad_, b.rad_));
  }
  if (tr != 0) rad = add_up(rad, rounding_error_bound(r.re_, p));
  if (ti != 0) rad = add_up(rad, rounding_error_bound(r.im_, p));
  r.rad_ = rad;
  return r;
}

ComplexBall ComplexBall::inverse() const {
  Float mlow = hypot_dir(re_, im_, MPFR_RNDD);
  if (mpfr_cmp(mlow.get(), rad_.get()) <= 0) throw DivisionByZero();
  const long p = precision_;
  // Approximate reciprocal of the midpoint, then bound its error rigorously.
  Float norm(p + 16);
  {
    Float t(p + 16);
    mpfr_sqr(norm.get(), re_.get(), MPFR_RNDN);
    mpfr_sqr(t.get(), im_.get(), MPFR_RNDN);
    mpfr_add(norm.get(), norm.get(), t.get(), MPFR_RNDN);
  }
  Float cre(p), cim(p);
  mpfr_div(cre.get(), re_.get(), norm.get(), MPFR_RNDN);
  mpfr_div(cim.get(), im_.get(), norm.get(), MPFR_RNDN);
  mpfr_neg(cim.get(), cim.get(), MPFR_RNDN);
  ComplexBall c = point(cre, cim, p);
  ComplexBall residual = ComplexBall::from_long(1, p) - c * center();
  Float delta = residual.abs_upper();
  // |1/b - c| <= |1 - c m|/|m| + r/(|m|(|m|-r)).
  Float rad(kRad);
  mpfr_div(rad.get(), delta.get(), mlow.get(), MPFR_RNDU);
  if (!rad_.is_zero()) {
    Float gap(kRad);
    mpfr_sub(gap.get(), mlow.get(), rad_.get(), MPFR_RNDD);
    Float den(kRad);
    mpfr_mul(den.get(), mlow.get(), gap.get(), MPFR_RNDD);
    Float term(kRad);
    mpfr_div(term.get(), rad_.get(), den.get(), MPFR_RNDU);
    rad = add_up(rad, term);
  }
  c.rad_ = add_up(c.rad_, rad);
  return c;
}

ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) { return a * b.inverse(); }

ComplexBall ComplexBall::scaled(long k) const { return *this * from_long(k, precision_); }

std::string ComplexBall::to_string(int digits) const {
  std::string s = re_.to_decimal(digits);
  std::string im = im_.to_decimal(digits);
  if (!im.empty() && im[0] == '-') s += " - " + im.substr(1) + "*i";
  else s += " + " + im + "*i";
  s += " +/- " + rad_.to_decimal(3);
  return s;
}

}  // namespace upcert
