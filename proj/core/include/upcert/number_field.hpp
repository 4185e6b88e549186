#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "upcert/ball.hpp"
#include "upcert/rational.hpp"

namespace upcert {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A number field Q(theta) given by the monic minimal polynomial of theta and
/// a certified complex embedding. Elements are coordinate vectors in the power
/// basis 1, theta, ..., theta^(N-1).
///
/// Fields produced by the parser are multiquadratic, Q(sqrt(g_1), ..., sqrt(g_m))
/// with squarefree, multiplicatively independent g_j (g_j = -1 is written `i`);
/// their primitive element is theta = sum_j sqrt(g_j), and they additionally
/// carry a display basis of radical products used for printing and for
/// recognising roots.
class NumberField {
 public:
  using Coords = std::vector<Rational>;

  static FieldPtr rationals();
  /// `generators` must be squarefree, pairwise independent modulo squares and
  /// sorted as the caller wants them displayed.
  static FieldPtr multiquadratic(std::vector<Integer> generators);
  /// User-declared field. The minimal polynomial (low degree first, monic) is
  /// trusted to be irreducible; `embedding` must isolate exactly one of its roots.
  static FieldPtr declare(std::vector<Rational> minimal_poly, const ComplexBall& embedding,
                          std::string generator_name = "theta");

  NumberField(const NumberField&) = delete;
  NumberField& operator=(const NumberField&) = delete;

  int degree() const noexcept { return degree_; }
  bool is_rational() const noexcept { return degree_ == 1; }
  const std::vector<Rational>& minimal_poly() const noexcept { return minpoly_; }
  const std::vector<Integer>& generators() const noexcept { return generators_; }
  bool is_multiquadratic() const noexcept { return kind_ != Kind::declared; }
  bool equivalent(const NumberField& other) const;
  std::string describe() const;

  /// Enclosure of the embedded primitive element.
  ComplexBall generator_ball(long precision_bits) const;

  Coords multiply(const Coords& a, const Coords& b) const;
  /// Throws DivisionByZero for the zero element.
  Coords inverse(const Coords& a) const;
  /// Complex conjugate under the embedding; multiquadratic fields only.
  Coords conjugate(const Coords& a) const;

  // Display basis (multiquadratic fields; the power basis otherwise).
  int display_dimension() const noexcept { return degree_; }
  const std::vector<std::string>& display_names() const noexcept { return display_names_; }
  Coords to_display(const Coords& power) const;
  Coords from_display(const Coords& display) const;
  /// Display basis element index for the product of the generators in `mask`.
  Coords display_element(unsigned mask) const;

 private:
  enum class Kind { rationals, multiquadratic, declared };
  NumberField() = default;
  void build_multiquadratic();

  Kind kind_ = Kind::rationals;
  int degree_ = 1;
  std::vector<Rational> minpoly_;
  std::vector<Integer> generators_;
  std::string generator_name_;
  std::vector<std::string> display_names_;
  std::vector<Coords> display_to_power_;  // column j: display element j in power coords
  std::vector<Coords> power_to_display_;  // column j: theta^j in display coords
  ComplexBall declared_embedding_;

  mutable std::mutex cache_mutex_;
  mutable std::map<long, ComplexBall> ball_cache_;
};

}  // namespace upcert
