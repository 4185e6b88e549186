#include "upcert/ball_poly.hpp"

#include "upcert/errors.hpp"

namespace upcert {

ComplexBall horner(std::span<const ComplexBall> coeffs, const ComplexBall& x) {
  if (coeffs.empty()) return ComplexBall(x.precision());
  ComplexBall acc = coeffs.back();
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

BallPoly derivative(std::span<const ComplexBall> coeffs) {
  BallPoly d;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k].scaled(static_cast<long>(k)));
  return d;
}

bool krawczyk_unique_root(std::span<const ComplexBall> coeffs, const ComplexBall& box) {
  if (coeffs.size() < 2) return false;
  const BallPoly dcoeffs = derivative(coeffs);
  const ComplexBall m = box.center();
  const ComplexBall fm = horner(coeffs, m);
  const ComplexBall dm = horner(dcoeffs, m);
  if (dm.contains_zero()) return false;
  const ComplexBall y = dm.inverse().center();
  const ComplexBall slope = horner(dcoeffs, box);
  const ComplexBall offset = box - m;  // disc centred at 0 with the box radius
  const ComplexBall one = ComplexBall::from_long(1, box.precision());
  const ComplexBall k = m - y * fm + (one - y * slope) * offset;
  return box.strictly_contains(k);
}

ComplexBall newton_polish(std::span<const ComplexBall> coeffs, const ComplexBall& start,
                          long precision_bits, int max_steps) {
  BallPoly lifted;
  lifted.reserve(coeffs.size());
  for (const auto& c : coeffs) lifted.push_back(c.center().with_precision(precision_bits).center());
  const BallPoly dlifted = derivative(lifted);
  ComplexBall z = start.center().with_precision(precision_bits).center();
  for (int step = 0; step < max_steps; ++step) {
    ComplexBall f = horner(lifted, z).center();
    ComplexBall d = horner(dlifted, z).center();
    if (d.contains_zero()) break;
    ComplexBall delta = (f * d.inverse()).center();
    z = (z - delta).center();
    Float size = delta.abs_upper();
    Float scale = z.abs_upper();
    if (mpfr_cmp_ui(scale.get(), 1) < 0) mpfr_set_ui(scale.get(), 1, MPFR_RNDU);
    mpfr_mul_2si(scale.get(), scale.get(), -(precision_bits - 4), MPFR_RNDU);
    if (mpfr_cmp(size.get(), scale.get()) <= 0) break;
  }
  return z;
}

}  // namespace upcert
