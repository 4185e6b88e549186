#include "upcert/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "recognize.hpp"
#include "upcert/errors.hpp"

namespace upcert {

namespace {

using cd = std::complex<double>;

// |x| <= 2^-bits * max(1, |scale|)
bool negligible(const ComplexBall& x, const ComplexBall& scale, long bits) {
  Float bound = scale.abs_upper();
  if (mpfr_cmp_ui(bound.get(), 1) < 0) mpfr_set_ui(bound.get(), 1, MPFR_RNDU);
  mpfr_mul_2si(bound.get(), bound.get(), -bits, MPFR_RNDU);
  const Float size = x.abs_upper();
  return mpfr_cmp(size.get(), bound.get()) <= 0;
}

// Deterministic start: perturbed circle around the root centroid.
std::vector<cd> circle_start(const std::vector<cd>& c) {
  const std::size_t d = c.size() - 1;
  const cd centre = -c[d - 1] / (static_cast<double>(d) * c[d]);
  double radius = 0;
  for (std::size_t k = 0; k < d; ++k) {
    const double ratio = std::abs(c[k] / c[d]);
    if (ratio > 0) radius = std::max(radius, std::pow(ratio, 1.0 / static_cast<double>(d - k)));
  }
  radius = std::max(2 * radius, 1e-3);
  std::vector<cd> z(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double angle = 2 * M_PI * static_cast<double>(j) / static_cast<double>(d) + 0.4;
    z[j] = centre + std::polar(radius * (1 + 0.01 * static_cast<double>(j % 3)), angle);
  }
  return z;
}

// Aberth iteration in double precision from `z`; false if it does not settle.
bool aberth_double(const std::vector<cd>& c, std::vector<cd>& z) {
  for (const auto& x : c)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  const std::size_t d = c.size() - 1;
  for (int iter = 0; iter < 2000; ++iter) {
    bool done = true;
    for (std::size_t j = 0; j < d; ++j) {
      cd p = c[d], dp = 0;
      for (std::size_t k = d; k-- > 0;) {
        dp = dp * z[j] + p;
        p = p * z[j] + c[k];
      }
      if (dp == cd(0)) continue;
      const cd w = p / dp;
      cd s = 0;
      for (std::size_t l = 0; l < d; ++l)
        if (l != j) s += 1.0 / (z[j] - z[l]);
      const cd step = w / (1.0 - w * s);
      z[j] -= step;
      if (!(std::abs(step) <= 1e-11 * std::max(1.0, std::abs(z[j])))) done = false;
    }
    if (done) return true;
  }
  return false;
}

// Aberth iteration at `prec` from the given start; returns false if it fails
// to converge within the budget.
bool aberth_mp(const BallPoly& c, std::vector<ComplexBall>& z, long prec, int budget) {
  const std::size_t d = c.size() - 1;
  const ComplexBall one = ComplexBall::from_long(1, prec);
  for (int iter = 0; iter < budget; ++iter) {
    bool done = true;
    for (std::size_t j = 0; j < d; ++j) {
      // p carries its evaluation error, so a disc containing 0 means z[j] is
      // as good as this precision allows.
      ComplexBall p = c[d], dp(prec);
      for (std::size_t k = d; k-- > 0;) {
        dp = (dp * z[j] + p).center();
        p = p * z[j] + c[k];
      }
      const bool settled = p.contains_zero();
      p = p.center();
      if (dp.contains_zero()) {
        done = false;
        continue;
      }
      const ComplexBall w = (p / dp).center();
      ComplexBall s(prec);
      for (std::size_t l = 0; l < d; ++l) {
        if (l == j) continue;
        const ComplexBall diff = (z[j] - z[l]).center();
        if (diff.contains_zero()) return false;
        s = (s + diff.inverse()).center();
      }
      const ComplexBall denom = (one - w * s).center();
      if (denom.contains_zero()) return false;
      const ComplexBall step = (w / denom).center();
      z[j] = (z[j] - step).center();
      if (!settled && !negligible(step, z[j], prec - 8)) done = false;
    }
    if (done) return true;
  }
  return false;
}

// Krawczyk certification around m with a radius drawn from a fixed ladder;
// the disc stays well inside the gap to the other approximations.
std::optional<ComplexBall> certify(const BallPoly& g, const ComplexBall& m, const std::vector<ComplexBall>& others,
                                   long prec) {
  Float gap(ComplexBall::kRadiusBits);
  mpfr_set_inf(gap.get(), 1);
  for (const auto& o : others) {
    Float d = (m.center() - o.center()).abs_lower();
    if (mpfr_cmp(d.get(), gap.get()) < 0) gap = d;
  }
  mpfr_div_ui(gap.get(), gap.get(), 4, MPFR_RNDD);

  Float scale = m.abs_upper();
  if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDU);
  for (long shift : {prec - 24, (3 * prec) / 4, prec / 2, prec / 4, 8L}) {
    Float r(ComplexBall::kRadiusBits);
    mpfr_mul_2si(r.get(), scale.get(), -shift, MPFR_RNDU);
    if (mpfr_cmp(r.get(), gap.get()) >= 0) continue;
    const ComplexBall box = m.center().with_radius(r);
    if (krawczyk_unique_root(g, box)) return box;
  }
  return std::nullopt;
}

struct FactorRoots {
  std::vector<ComplexBall> balls;
  std::vector<std::optional<ExactScalar>> exact;
};

std::optional<FactorRoots> isolate_factor(const Poly& f, long prec) {
  FactorRoots out;
  if (f.degree() == 1) {
    const ExactScalar x = -f.coeff(0) / f.coeff(1);
    out.balls.push_back(x.embed(prec));
    out.exact.emplace_back(x);
    return out;
  }

  const BallPoly coeffs = f.embedded(prec);
  std::vector<ComplexBall> z;
  {
    std::vector<cd> cdouble;
    for (const auto& c : coeffs) cdouble.emplace_back(c.mid_re().to_double(), c.mid_im().to_double());
    std::vector<cd> start = circle_start(cdouble);
    const bool settled = aberth_double(cdouble, start);
    for (const auto& s : start) {
      const bool finite = std::isfinite(s.real()) && std::isfinite(s.imag());
      z.push_back(ComplexBall::from_rationals(Rational(finite ? s.real() : 1.0), Rational(finite ? s.imag() : 0.0), prec)
                      .center());
    }
    if (!aberth_mp(coeffs, z, prec, settled ? 200 : 3000)) return std::nullopt;
  }

  // Exact roots in the coefficient field, deflated one at a time.
  Poly rest = f;
  std::vector<bool> is_exact(z.size(), false);
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (rest.degree() < 1) break;
    if (auto x = detail::recognize_root(rest, z[j], prec - 24)) {
      rest = rest.exact_div(Poly::variable(f.field()) - Poly::constant(*x));
      is_exact[j] = true;
      out.exact.emplace_back(*x);
      out.balls.push_back(x->embed(prec));
    }
  }
  if (rest.degree() >= 1) {
    const BallPoly rest_coeffs = rest.embedded(prec);
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (is_exact[j]) continue;
      std::vector<ComplexBall> others;
      for (std::size_t l = 0; l < z.size(); ++l)
        if (l != j) others.push_back(z[l]);
      auto box = certify(rest_coeffs, z[j], others, prec);
      if (!box) return std::nullopt;
      out.balls.push_back(*box);
      out.exact.emplace_back(std::nullopt);
    }
  }
  return out;
}

bool pairwise_disjoint(const std::vector<RootEnclosure>& es) {
  for (std::size_t a = 0; a < es.size(); ++a)
    for (std::size_t b = a + 1; b < es.size(); ++b)
      if (es[a].ball.overlaps(es[b].ball)) return false;
  return true;
}

Float to_radius(const Rational& q) { return Float::from_rational(q, ComplexBall::kRadiusBits, MPFR_RNDD); }

bool radius_at_most(const ComplexBall& b, const Rational& r) {
  const Float bound = to_radius(r);
  return mpfr_cmp(b.radius().get(), bound.get()) <= 0;
}

}  // namespace

IsolationResult isolate_roots(const Poly& p, const Rational& target_radius, const PrecisionConfig& config) {
  if (p.degree() < 1) throw InvalidArgument("isolate_roots needs a nonconstant polynomial");
  if (target_radius <= 0) throw InvalidArgument("target radius must be positive");
  const auto factors = squarefree_decomposition(p);

  for (long prec = config.start_bits; prec <= config.max_bits; prec *= 2) {
    IsolationResult result;
    result.source_degree = p.degree();
    result.precision_used = prec;
    bool ok = true;
    for (const auto& sf : factors) {
      const auto roots = isolate_factor(sf.factor, prec);
      if (!roots) {
        ok = false;
        break;
      }
      for (std::size_t j = 0; j < roots->balls.size(); ++j)
        result.enclosures.push_back({roots->balls[j], sf.multiplicity, roots->exact[j], sf.factor});
    }
    if (!ok || !pairwise_disjoint(result.enclosures)) continue;

    int total = 0;
    for (const auto& e : result.enclosures) total += e.multiplicity;
    if (total != p.degree()) throw InternalError("root multiplicities do not add up to the degree");

    for (auto& e : result.enclosures)
      if (!radius_at_most(e.ball, target_radius)) e = refine(e, target_radius, {prec, config.max_bits});
    return result;
  }
  throw PrecisionExhausted("root isolation did not succeed at " + std::to_string(config.max_bits) + " bits");
}

RootEnclosure refine(const RootEnclosure& e, const Rational& new_radius, const PrecisionConfig& config) {
  if (radius_at_most(e.ball, new_radius)) return e;
  const Float target = to_radius(new_radius);
  for (long prec = std::max(config.start_bits, e.ball.precision()); prec <= config.max_bits; prec *= 2) {
    if (e.exact_value) {
      ComplexBall b = e.exact_value->embed(prec);
      if (radius_at_most(b, new_radius) && e.ball.contains(b)) return {b, e.multiplicity, e.exact_value, e.factor};
      continue;
    }
    const BallPoly g = e.factor.embedded(prec);
    const ComplexBall m = newton_polish(g, e.ball.center(), prec);
    Float scale = m.abs_upper();
    if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDU);
    for (long shift : {prec - 24, (3 * prec) / 4, prec / 2}) {
      Float r(ComplexBall::kRadiusBits);
      mpfr_mul_2si(r.get(), scale.get(), -shift, MPFR_RNDU);
      if (mpfr_cmp(r.get(), target.get()) > 0) continue;
      const ComplexBall box = m.with_radius(r);
      if (e.ball.contains(box) && krawczyk_unique_root(g, box)) return {box, e.multiplicity, std::nullopt, e.factor};
    }
  }
  throw PrecisionExhausted("refinement did not reach the requested radius at " + std::to_string(config.max_bits) +
                           " bits");
}

LexOrder certified_compare(const ComplexBall& a, const ComplexBall& b) {
  const int re = a.compare_re(b);
  if (re < 0) return LexOrder::LessLex;
  if (re > 0) return LexOrder::GreaterLex;
  return LexOrder::Unknown;
}

int real_sign(const ExactScalar& x) {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return sgn(x.to_rational());
  for (long prec = 64; prec <= (1L << 20); prec *= 2) {
    const ComplexBall b = x.embed(prec);
    const ComplexBall z = ComplexBall::from_long(0, prec);
    const int s = b.compare_re(z);
    if (s != 0) return s;
  }
  throw InternalError("sign of a nonzero field element could not be separated from zero");
}

LexOrder certified_compare(const RootEnclosure& a, const RootEnclosure& b, const PrecisionConfig& config) {
  if (a.exact_value && b.exact_value) {
    const ExactScalar diff = *a.exact_value - *b.exact_value;
    if (diff.is_zero()) return LexOrder::Equal;
    int s = real_sign(diff.real_part());
    if (s == 0) s = real_sign(diff.imag_part());
    return s < 0 ? LexOrder::LessLex : LexOrder::GreaterLex;
  }
  RootEnclosure x = a, y = b;
  long prec = std::max({config.start_bits, a.ball.precision(), b.ball.precision()});
  while (true) {
    const LexOrder o = certified_compare(x.ball, y.ball);
    if (o != LexOrder::Unknown) return o;
    prec *= 2;
    if (prec > config.max_bits) return LexOrder::Unknown;
    Rational r(1);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(prec / 2));
    try {
      x = refine(x, r, {prec, prec});
      y = refine(y, r, {prec, prec});
    } catch (const PrecisionExhausted&) {
      return LexOrder::Unknown;
    }
  }
}

const char* to_string(LexOrder order) {
  switch (order) {
    case LexOrder::LessLex: return "LessLex";
    case LexOrder::GreaterLex: return "GreaterLex";
    case LexOrder::Equal: return "Equal";
    case LexOrder::Unknown: return "Unknown";
  }
  return "Unknown";
}

}  // namespace upcert
