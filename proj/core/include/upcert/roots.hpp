#pragma once

#include <optional>
#include <vector>

#include "upcert/poly.hpp"

namespace upcert {

/// Working-precision schedule: start, double on failure, stop at the ceiling.
struct PrecisionConfig {
  long start_bits = 128;
  long max_bits = 8192;
};

struct RootEnclosure {
  ComplexBall ball;
  int multiplicity = 1;
  /// Present when the root lies in the coefficient field.
  std::optional<ExactScalar> exact_value;
  /// Monic squarefree factor of the source polynomial having this root as a
  /// simple root; used for refinement.
  Poly factor;
};

struct IsolationResult {
  std::vector<RootEnclosure> enclosures;
  int source_degree = 0;
  long precision_used = 0;
};

/// All distinct roots of `p` in pairwise disjoint discs of radius at most
/// `target_radius`, with multiplicities from the squarefree decomposition.
/// Throws PrecisionExhausted when the ceiling is reached.
IsolationResult isolate_roots(const Poly& p, const Rational& target_radius,
                              const PrecisionConfig& config = {});

/// Shrinks the enclosure to radius at most `new_radius`; the result lies
/// inside the original disc and encloses the same root.
RootEnclosure refine(const RootEnclosure& e, const Rational& new_radius, const PrecisionConfig& config = {});

enum class LexOrder { LessLex, GreaterLex, Equal, Unknown };

/// Lexicographic (Re, Im) comparison of two discs; Unknown when a projection overlaps.
LexOrder certified_compare(const ComplexBall& a, const ComplexBall& b);

/// As above for enclosures; exact values are compared exactly and Equal is
/// returned only for equal exact values. Numeric enclosures are refined up to
/// the precision ceiling before giving up.
LexOrder certified_compare(const RootEnclosure& a, const RootEnclosure& b, const PrecisionConfig& config = {});

/// Sign of a real element of a multiquadratic field (exact, by refinement).
int real_sign(const ExactScalar& x);

const char* to_string(LexOrder order);

}  // namespace upcert
