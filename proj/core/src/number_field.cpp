#include "upcert/number_field.hpp"

#include <bit>
#include <sstream>

#include "upcert/ball_poly.hpp"
#include "upcert/errors.hpp"

namespace upcert {

namespace {

using Coords = NumberField::Coords;

void trim(Coords& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder in Q[x], low degree first.
std::pair<Coords, Coords> divmod(Coords a, const Coords& b) {
  trim(a);
  const int db = static_cast<int>(b.size()) - 1;
  if (db < 0) throw DivisionByZero();
  Coords q;
  if (static_cast<int>(a.size()) - 1 >= db) q.assign(a.size() - b.size() + 1, Rational(0));
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    const int shift = static_cast<int>(a.size()) - 1 - db;
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (int k = 0; k <= db; ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return {q, a};
}

Coords mul_plain(const Coords& a, const Coords& b) {
  if (a.empty() || b.empty()) return {};
  Coords r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Coords sub_plain(Coords a, const Coords& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

// Inverse of a square rational matrix given by columns; throws on singular input.
std::vector<Coords> invert_columns(const std::vector<Coords>& cols) {
  const std::size_t n = cols.size();
  // Row-major augmented matrix [A | I].
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = cols[c][r];
    m[r][n + r] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c] == 0) ++pivot;
    if (pivot == n) throw InternalError("singular basis matrix in number field construction");
    std::swap(m[pivot], m[c]);
    const Rational inv = 1 / m[c][c];
    for (auto& v : m[c]) v *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Coords> inv(n, Coords(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) inv[c][r] = m[r][n + c];
  return inv;
}

Coords apply_columns(const std::vector<Coords>& cols, const Coords& v) {
  const std::size_t n = cols.size();
  Coords out(n, Rational(0));
  for (std::size_t c = 0; c < n && c < v.size(); ++c) {
    if (v[c] == 0) continue;
    for (std::size_t r = 0; r < n; ++r) out[r] += cols[c][r] * v[c];
  }
  return out;
}

std::string generator_label(const Integer& g) {
  if (g == -1) return "i";
  return "sqrt(" + g.get_str() + ")";
}

}  // namespace

FieldPtr NumberField::rationals() {
  static const FieldPtr q = [] {
    std::shared_ptr<NumberField> f(new NumberField());
    f->kind_ = Kind::rationals;
    f->degree_ = 1;
    f->minpoly_ = {Rational(0), Rational(1)};
    f->display_names_ = {"1"};
    f->display_to_power_ = {Coords{Rational(1)}};
    f->power_to_display_ = {Coords{Rational(1)}};
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr NumberField::multiquadratic(std::vector<Integer> generators) {
  if (generators.empty()) return rationals();
  if (generators.size() > 4) throw InvalidArgument("at most four independent radicals are supported");
  std::shared_ptr<NumberField> f(new NumberField());
  f->kind_ = Kind::multiquadratic;
  f->generators_ = std::move(generators);
  f->build_multiquadratic();
  return FieldPtr(f);
}

void NumberField::build_multiquadratic() {
  const unsigned m = static_cast<unsigned>(generators_.size());
  const unsigned n = 1u << m;
  degree_ = static_cast<int>(n);

  // Multiplication of display coordinates: b_S * b_T = prod_{S&T} g * b_{S^T}.
  auto display_mul = [&](const Coords& a, const Coords& b) {
    Coords r(n, Rational(0));
    for (unsigned s = 0; s < n; ++s) {
      if (a[s] == 0) continue;
      for (unsigned t = 0; t < n; ++t) {
        if (b[t] == 0) continue;
        Rational f = a[s] * b[t];
        for (unsigned j = 0; j < m; ++j)
          if ((s & t) & (1u << j)) f *= Rational(generators_[j]);
        r[s ^ t] += f;
      }
    }
    return r;
  };

  Coords theta(n, Rational(0));
  for (unsigned j = 0; j < m; ++j) theta[1u << j] = 1;
  std::vector<Coords> powers;
  Coords cur(n, Rational(0));
  cur[0] = 1;
  for (unsigned k = 0; k <= n; ++k) {
    powers.push_back(cur);
    cur = display_mul(cur, theta);
  }
  power_to_display_.assign(powers.begin(), powers.begin() + n);
  display_to_power_ = invert_columns(power_to_display_);
  const Coords top = apply_columns(display_to_power_, powers[n]);
  minpoly_.assign(n + 1, Rational(0));
  for (unsigned k = 0; k < n; ++k) minpoly_[k] = -top[k];
  minpoly_[n] = 1;

  display_names_.clear();
  for (unsigned s = 0; s < n; ++s) {
    if (s == 0) {
      display_names_.push_back("1");
      continue;
    }
    std::string name;
    for (unsigned j = 0; j < m; ++j) {
      if (!(s & (1u << j))) continue;
      if (!name.empty()) name += "*";
      name += generator_label(generators_[j]);
    }
    display_names_.push_back(name);
  }
}

FieldPtr NumberField::declare(std::vector<Rational> minimal_poly, const ComplexBall& embedding,
                              std::string generator_name) {
  trim(minimal_poly);
  if (minimal_poly.size() < 2) throw InvalidArgument("minimal polynomial must have degree >= 1");
  if (minimal_poly.back() != 1) throw InvalidArgument("minimal polynomial must be monic");
  BallPoly balls;
  for (const auto& c : minimal_poly) balls.push_back(ComplexBall::from_rational(c, embedding.precision()));
  if (!krawczyk_unique_root(balls, embedding))
    throw InvalidArgument("embedding ball does not isolate a unique root of the minimal polynomial");
  std::shared_ptr<NumberField> f(new NumberField());
  f->kind_ = Kind::declared;
  f->degree_ = static_cast<int>(minimal_poly.size()) - 1;
  f->minpoly_ = std::move(minimal_poly);
  f->generator_name_ = std::move(generator_name);
  f->declared_embedding_ = embedding;
  const std::size_t n = static_cast<std::size_t>(f->degree_);
  for (std::size_t k = 0; k < n; ++k) {
    f->display_names_.push_back(k == 0 ? "1" : k == 1 ? f->generator_name_
                                                      : f->generator_name_ + "^" + std::to_string(k));
    Coords e(n, Rational(0));
    e[k] = 1;
    f->display_to_power_.push_back(e);
    f->power_to_display_.push_back(e);
  }
  return FieldPtr(f);
}

bool NumberField::equivalent(const NumberField& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::declared) return false;
  return generators_ == other.generators_;
}

std::string NumberField::describe() const {
  switch (kind_) {
    case Kind::rationals:
      return "Q";
    case Kind::multiquadratic: {
      std::string s = "Q(";
      for (std::size_t j = 0; j < generators_.size(); ++j) {
        if (j) s += ", ";
        s += generator_label(generators_[j]);
      }
      return s + ")";
    }
    case Kind::declared: {
      std::ostringstream os;
      os << "Q(" << generator_name_ << "), minimal polynomial";
      for (std::size_t k = minpoly_.size(); k-- > 0;)
        if (minpoly_[k] != 0) os << " " << (minpoly_[k] > 0 ? "+" : "") << minpoly_[k] << "*x^" << k;
      return os.str();
    }
  }
  return "?";
}

ComplexBall NumberField::generator_ball(long precision_bits) const {
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = ball_cache_.find(precision_bits);
    if (it != ball_cache_.end()) return it->second;
  }
  ComplexBall result(precision_bits);
  switch (kind_) {
    case Kind::rationals:
      result = ComplexBall::from_long(0, precision_bits);
      break;
    case Kind::multiquadratic: {
      result = ComplexBall::from_long(0, precision_bits + 8);
      for (const auto& g : generators_) {
        result += g == -1 ? ComplexBall::imaginary_unit(precision_bits + 8)
                          : ComplexBall::sqrt_of(Rational(g), precision_bits + 8);
      }
      result = result.with_precision(precision_bits);
      break;
    }
    case Kind::declared: {
      BallPoly balls;
      for (const auto& c : minpoly_) balls.push_back(ComplexBall::from_rational(c, precision_bits + 16));
      ComplexBall z = newton_polish(balls, declared_embedding_, precision_bits + 16);
      Float rho = z.abs_upper();
      if (mpfr_cmp_ui(rho.get(), 1) < 0) mpfr_set_ui(rho.get(), 1, MPFR_RNDU);
      mpfr_mul_2si(rho.get(), rho.get(), -precision_bits, MPFR_RNDU);
      bool ok = false;
      for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
        ComplexBall box = z.with_radius(rho);
        if (declared_embedding_.contains(box) && krawczyk_unique_root(balls, box)) {
          result = box.with_precision(precision_bits);
          ok = true;
        }
        mpfr_mul_2si(rho.get(), rho.get(), 8, MPFR_RNDU);
      }
      if (!ok) throw InternalError("could not refine the declared embedding");
      break;
    }
  }
  std::lock_guard<std::mutex> lock(cache_mutex_);
  ball_cache_.emplace(precision_bits, result);
  return result;
}

Coords NumberField::multiply(const Coords& a, const Coords& b) const {
  Coords r = mul_plain(a, b);
  const std::size_t n = static_cast<std::size_t>(degree_);
  for (std::size_t d = r.size(); d-- > n;) {
    if (r[d] == 0) continue;
    const Rational f = r[d];
    for (std::size_t k = 0; k <= n; ++k) r[d - n + k] -= f * minpoly_[k];
  }
  r.resize(n, Rational(0));
  return r;
}

Coords NumberField::inverse(const Coords& a) const {
  Coords x = a;
  trim(x);
  if (x.empty()) throw DivisionByZero();
  // Extended Euclid on (minpoly, a): track s with s*a == r (mod minpoly).
  Coords r0 = minpoly_, r1 = x;
  Coords s0, s1{Rational(1)};
  while (r1.size() > 1) {
    auto [q, r] = divmod(r0, r1);
    Coords s = sub_plain(s0, mul_plain(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    if (r1.empty()) throw InternalError("minimal polynomial is reducible");
  }
  const Rational c = r1[0];
  for (auto& v : s1) v /= c;
  s1.resize(static_cast<std::size_t>(degree_), Rational(0));
  return s1;
}

Coords NumberField::conjugate(const Coords& a) const {
  if (kind_ == Kind::declared) throw InvalidArgument("conjugation is not available for declared fields");
  if (kind_ == Kind::rationals) return a;
  int imag = -1;
  for (std::size_t j = 0; j < generators_.size(); ++j)
    if (generators_[j] == -1) imag = static_cast<int>(j);
  if (imag < 0) return a;
  Coords d = to_display(a);
  for (std::size_t s = 0; s < d.size(); ++s)
    if (s & (1u << imag)) d[s] = -d[s];
  return from_display(d);
}

Coords NumberField::to_display(const Coords& power) const { return apply_columns(power_to_display_, power); }

Coords NumberField::from_display(const Coords& display) const {
  return apply_columns(display_to_power_, display);
}

Coords NumberField::display_element(unsigned mask) const {
  if (mask >= static_cast<unsigned>(degree_)) throw InvalidArgument("display basis index out of range");
  return display_to_power_[mask];
}

}  // namespace upcert
