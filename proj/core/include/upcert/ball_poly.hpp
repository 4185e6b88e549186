#pragma once

#include <span>
#include <vector>

#include "upcert/ball.hpp"

namespace upcert {

/// Polynomials with disc coefficients (low degree first). Evaluation encloses
/// the value of every polynomial whose coefficients lie in the discs.
using BallPoly = std::vector<ComplexBall>;

ComplexBall horner(std::span<const ComplexBall> coeffs, const ComplexBall& x);
BallPoly derivative(std::span<const ComplexBall> coeffs);

/// Krawczyk test for analytic maps with disc slopes: when it returns true the
/// disc `box` contains exactly one root of every polynomial in `coeffs`
/// (and that root is simple).
bool krawczyk_unique_root(std::span<const ComplexBall> coeffs, const ComplexBall& box);

/// Plain Newton iteration on midpoints at `precision_bits`; not certified.
/// Stops after `max_steps` or once the step falls below 2^-precision relative.
ComplexBall newton_polish(std::span<const ComplexBall> coeffs, const ComplexBall& start,
                          long precision_bits, int max_steps = 64);

}  // namespace upcert
