#pragma once

#include <optional>
#include <vector>

#include "upcert/ball.hpp"
#include "upcert/poly.hpp"

namespace upcert::detail {

/// LLL-reduces the rows of `basis` in place (delta = 3/4).
void lll_reduce(std::vector<std::vector<Integer>>& basis);

/// Looks for an element x of f's field with f(x) = 0 close to `approx`, by an
/// integer relation between approx and the field's display basis. Every
/// candidate is verified exactly; `scale_bits` is the accuracy of approx.
std::optional<ExactScalar> recognize_root(const Poly& f, const ComplexBall& approx, long scale_bits);

}  // namespace upcert::detail
