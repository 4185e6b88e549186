#include "upcert/scalar.hpp"

#include "upcert/errors.hpp"

namespace upcert {

FieldPtr common_field(const FieldPtr& a, const FieldPtr& b) {
  if (a == b || a->equivalent(*b)) return a;
  if (a->is_rational()) return b;
  if (b->is_rational()) return a;
  throw FieldMismatch("operands live in different number fields: " + a->describe() + " and " +
                      b->describe());
}

ExactScalar::ExactScalar() : ExactScalar(Rational(0)) {}

ExactScalar::ExactScalar(const Rational& q) : field_(NumberField::rationals()), coords_{q} {}

ExactScalar::ExactScalar(long v) : ExactScalar(Rational(v)) {}

ExactScalar::ExactScalar(FieldPtr field, NumberField::Coords power_coords)
    : field_(std::move(field)), coords_(std::move(power_coords)) {
  coords_.resize(static_cast<std::size_t>(field_->degree()), Rational(0));
}

ExactScalar::ExactScalar(FieldPtr field, const Rational& q) : field_(std::move(field)) {
  coords_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
  coords_[0] = q;
}

ExactScalar ExactScalar::generator(const FieldPtr& field) {
  if (field->is_rational()) return ExactScalar(field, Rational(0));
  NumberField::Coords c(static_cast<std::size_t>(field->degree()), Rational(0));
  c[1] = 1;
  return ExactScalar(field, c);
}

bool ExactScalar::is_zero() const {
  for (const auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool ExactScalar::is_one() const { return is_rational() && coords_[0] == 1; }

bool ExactScalar::is_rational() const {
  for (std::size_t k = 1; k < coords_.size(); ++k)
    if (coords_[k] != 0) return false;
  return true;
}

Rational ExactScalar::to_rational() const {
  if (!is_rational()) throw InvalidArgument("value is not rational: " + to_string());
  return coords_[0];
}

ExactScalar ExactScalar::promoted(const FieldPtr& field) const {
  if (field == field_ || field->equivalent(*field_)) return ExactScalar(field, coords_);
  if (!field_->is_rational() && !is_rational())
    throw FieldMismatch("cannot move a value of " + field_->describe() + " into " + field->describe());
  return ExactScalar(field, coords_[0]);
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  ExactScalar x = a.promoted(f);
  const ExactScalar y = b.promoted(f);
  for (std::size_t k = 0; k < x.coords_.size(); ++k) x.coords_[k] += y.coords_[k];
  return x;
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) { return a + (-b); }

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
  FieldPtr f = common_field(a.field_, b.field_);
  if (a.is_rational() || b.is_rational()) {
    const bool left = a.is_rational();
    const Rational s = left ? a.coords_[0] : b.coords_[0];
    ExactScalar r = (left ? b : a).promoted(f);
    for (auto& c : r.coords_) c *= s;
    return r;
  }
  return ExactScalar(f, f->multiply(a.coords_, b.coords_));
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (is_rational()) return ExactScalar(field_, Rational(1) / coords_[0]);
  return ExactScalar(field_, field_->inverse(coords_));
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) { return a * b.inverse(); }

ExactScalar ExactScalar::pow(unsigned e) const {
  ExactScalar result(field_, Rational(1));
  ExactScalar base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

ExactScalar ExactScalar::conj() const { return ExactScalar(field_, field_->conjugate(coords_)); }

ExactScalar ExactScalar::real_part() const { return (*this + conj()) * ExactScalar(Rational(1, 2)); }

ExactScalar ExactScalar::imag_part() const {
  // (x - conj x) / (2i) = -i (x - conj x) / 2, computed in display coordinates.
  const ExactScalar diff = *this - conj();
  NumberField::Coords d = field_->to_display(diff.coords_);
  int imag = -1;
  for (std::size_t j = 0; j < field_->generators().size(); ++j)
    if (field_->generators()[j] == -1) imag = static_cast<int>(j);
  if (imag < 0) return ExactScalar(field_, Rational(0));
  NumberField::Coords out(d.size(), Rational(0));
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (d[s] == 0) continue;
    // b_s with the i factor removed: b_s = i * b_{s ^ bit}.
    out[s ^ (1u << imag)] += d[s] / 2;
  }
  return ExactScalar(field_, field_->from_display(out));
}

ComplexBall ExactScalar::embed(long precision_bits) const {
  if (is_rational()) return ComplexBall::from_rational(coords_[0], precision_bits);
  const long work = precision_bits + 16 + 4 * field_->degree();
  const ComplexBall theta = field_->generator_ball(work);
  ComplexBall acc = ComplexBall::from_rational(coords_.back(), work);
  for (std::size_t k = coords_.size() - 1; k-- > 0;)
    acc = acc * theta + ComplexBall::from_rational(coords_[k], work);
  return acc.with_precision(precision_bits);
}

std::string ExactScalar::to_string() const {
  if (is_rational()) return upcert::to_string(coords_[0]);
  const NumberField::Coords d = field_->to_display(coords_);
  const auto& names = field_->display_names();
  std::string out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (d[s] == 0) continue;
    Rational c = d[s];
    const bool negative = c < 0;
    if (negative) c = -c;
    std::string term;
    if (s == 0) term = upcert::to_string(c);
    else if (c == 1) term = names[s];
    else term = upcert::to_string(c) + "*" + names[s];
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

}  // namespace upcert
