#pragma once

#include "json.hpp"
#include "upcert/ball.hpp"
#include "upcert/errors.hpp"
#include "upcert/scalar.hpp"

namespace upcert::detail {

using Json = nlohmann::ordered_json;

inline Json ball_to_json(const ComplexBall& b) {
  return Json{{"re", to_string(b.mid_re().to_rational())},
              {"im", to_string(b.mid_im().to_rational())},
              {"rad", to_string(b.radius_rational())},
              {"prec", b.precision()},
              {"approx", b.to_string(12)}};
}

inline ComplexBall ball_from_json(const Json& j) {
  const long prec = j.at("prec").get<long>();
  const ComplexBall mid = ComplexBall::from_rationals(parse_rational(j.at("re").get<std::string>()),
                                                      parse_rational(j.at("im").get<std::string>()), prec);
  const Rational rad = parse_rational(j.at("rad").get<std::string>());
  return mid.with_radius(Float::from_rational(rad, ComplexBall::kRadiusBits, MPFR_RNDU));
}

inline bool same_ball(const ComplexBall& a, const ComplexBall& b) {
  return a.precision() == b.precision() && a.mid_re().to_rational() == b.mid_re().to_rational() &&
         a.mid_im().to_rational() == b.mid_im().to_rational() && a.radius_rational() == b.radius_rational();
}

inline Json field_to_json(const FieldPtr& f) {
  Json gens = Json::array();
  for (const auto& g : f->generators()) gens.push_back(g.get_str());
  return Json{{"name", f->describe()}, {"generators", gens}};
}

inline FieldPtr field_from_json(const Json& j) {
  std::vector<Integer> gens;
  for (const auto& g : j.at("generators")) gens.emplace_back(g.get<std::string>());
  return gens.empty() ? NumberField::rationals() : NumberField::multiquadratic(gens);
}

}  // namespace upcert::detail
