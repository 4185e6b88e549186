#include "upcert/identity.hpp"

#include <algorithm>

#include "upcert/errors.hpp"

namespace upcert {

PairCheck verify_pair(const Poly& p, const RationalFunction& f, const RationalFunction& g) {
  PairCheck out;
  out.distinct = !(f - g).is_zero();
  const UnreducedComposition pf = compose_unreduced(p, f);
  const UnreducedComposition pg = compose_unreduced(p, g);
  if (pf.bottom == pg.bottom) {
    out.unreduced_numerator_degree = std::max(pf.top.degree(), pg.top.degree());
  } else {
    out.unreduced_numerator_degree = std::max((pf.top * pg.bottom).degree(), (pg.top * pf.bottom).degree());
  }
  out.holds = (compose_rational(p, f) - compose_rational(p, g)).is_zero();
  return out;
}

WitnessPair tt8_witness(const ExactScalar& a, const ExactScalar& c) {
  if (a.is_zero()) throw InvalidArgument("the witness needs a nonzero coefficient a");
  const FieldPtr field = common_field(a.field(), c.field());
  const Poly u = Poly::variable(field);
  const Poly one = Poly::constant(ExactScalar(field, Rational(1)));
  const Poly u2 = u * u;
  const Poly num = (-a) * (u2 * u + (u2 + one) * (u2 * u2 + one));
  const Poly den = ExactScalar(2) * (u2 + u2.pow(2) + u2.pow(3) + u2.pow(4) + one);
  const RationalFunction f(num, den);
  const RationalFunction g = RationalFunction(u2) * f;

  const Poly z = Poly::variable(field);
  const Poly p = z.pow(5) + a * z.pow(4) + (a * a / ExactScalar(4)) * z.pow(3) + Poly::constant(c);
  const PairCheck check = verify_pair(p, f, g);
  if (!check.holds || !check.distinct) throw InternalError("witness identity failed to verify");
  return {p, f, g, "u = e^z, g = u^2 f"};
}

}  // namespace upcert
