#pragma once

#include <string>

#include "upcert/rational_function.hpp"

namespace upcert {

struct PairCheck {
  bool holds = false;     // P(f) - P(g) reduces to zero
  bool distinct = false;  // f - g is not zero
  /// Degree in u of the numerators of P(f) and P(g) over the common
  /// denominator, before any cancellation.
  int unreduced_numerator_degree = -1;
};

PairCheck verify_pair(const Poly& p, const RationalFunction& f, const RationalFunction& g);

/// Rational functions in a formal variable u standing for e^z.
struct WitnessPair {
  Poly p;
  RationalFunction f;
  RationalFunction g;
  std::string note;
};

/// f = -a(u^3 + (u^2+1)(u^4+1)) / (2(u^2+u^4+u^6+u^8+1)), g = u^2 f and
/// P = z^5 + a z^4 + (a^2/4) z^3 + c. Throws InvalidArgument for a = 0.
WitnessPair tt8_witness(const ExactScalar& a, const ExactScalar& c);

}  // namespace upcert
