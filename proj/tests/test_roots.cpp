#include "doctest.h"

#include <random>

#include "support/oracle.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"
#include "upcert/roots.hpp"

using namespace upcert;

namespace {
const Rational kTiny("1/1000000000000000000000000000000");

bool has_exact(const IsolationResult& r, const ExactScalar& x) {
  for (const auto& e : r.enclosures)
    if (e.exact_value && *e.exact_value == x) return true;
  return false;
}

bool disjoint(const IsolationResult& r) {
  for (std::size_t a = 0; a < r.enclosures.size(); ++a)
    for (std::size_t b = a + 1; b < r.enclosures.size(); ++b)
      if (r.enclosures[a].ball.overlaps(r.enclosures[b].ball)) return false;
  return true;
}

oracle::Complex centre(const ComplexBall& b) {
  return {oracle::Real(b.mid_re().to_decimal(230)), oracle::Real(b.mid_im().to_decimal(230))};
}
}  // namespace

TEST_CASE("critical points of the sextic with a double collision are exact") {
  const Poly p = parse_poly(
      "1/6 z^6 - 186/53 z^5 + 1565/53 z^4 - 6630/53 z^3 + 28967/106 z^2 - 14460/53 z + 1");
  const IsolationResult r = isolate_roots(p.derivative(), kTiny);
  REQUIRE(r.enclosures.size() == 5);
  for (const char* x : {"1", "241/53", "3", "4", "5"}) CHECK(has_exact(r, ExactScalar(Rational(x))));
  for (const auto& e : r.enclosures) CHECK(e.multiplicity == 1);
  CHECK(disjoint(r));
}

TEST_CASE("roots of z^2+1") {
  const IsolationResult r = isolate_roots(parse_poly("z^2+1"), kTiny);
  REQUIRE(r.enclosures.size() == 2);
  const ComplexBall i = ComplexBall::imaginary_unit(256);
  int hits = 0;
  for (const auto& e : r.enclosures) {
    CHECK(!e.exact_value);
    if (e.ball.overlaps(i) || e.ball.overlaps(-i)) ++hits;
    CHECK(mpfr_cmp_d(e.ball.radius().get(), 1e-30) <= 0);
  }
  CHECK(hits == 2);
  CHECK(disjoint(r));
}

TEST_CASE("roots over Q(i) are recognised exactly") {
  const Poly dp = parse_poly("(z-i)^2 (z-1)(z-2)(z-3)");
  const IsolationResult r = isolate_roots(dp, kTiny);
  REQUIRE(r.enclosures.size() == 4);
  const ExactScalar i = parse_scalar("i", dp.field());
  CHECK(has_exact(r, i));
  for (const auto& e : r.enclosures) CHECK(e.multiplicity == (e.exact_value && *e.exact_value == i ? 2 : 1));
}

TEST_CASE("multiquadratic root recognised") {
  const Poly dp = parse_poly("z^7 (z-1)^4 (z - 56/91 + 2 i sqrt(35)/91)^2");
  const IsolationResult r = isolate_roots(dp, kTiny);
  REQUIRE(r.enclosures.size() == 3);
  CHECK(has_exact(r, parse_scalar("56/91 - 2/91*i*sqrt(35)", dp.field())));
  int total = 0;
  for (const auto& e : r.enclosures) total += e.multiplicity;
  CHECK(total == 13);
}

TEST_CASE("refine shrinks inside the old disc") {
  const Poly p = parse_poly("z^2+1");
  const IsolationResult r = isolate_roots(p, Rational(1, 1000));
  for (const auto& e : r.enclosures) {
    const RootEnclosure f = refine(e, kTiny * kTiny);
    CHECK(e.ball.contains(f.ball));
    CHECK(mpfr_cmp_d(f.ball.radius().get(), 1e-60) <= 0);
  }
  const IsolationResult lin = isolate_roots(parse_poly("53z - 241"), Rational(1, 10));
  const RootEnclosure g = refine(lin.enclosures.front(), kTiny);
  CHECK(g.ball.contains(ComplexBall::from_rational(Rational(241, 53), 512).center()) ==
        g.ball.overlaps(ComplexBall::from_rational(Rational(241, 53), 512)));
  CHECK(*g.exact_value == ExactScalar(Rational(241, 53)));
  const RootEnclosure three = refine(isolate_roots(parse_poly("z-3"), Rational(1)).enclosures.front(), kTiny);
  CHECK(three.ball.radius().is_zero());
}

TEST_CASE("certified comparison") {
  const IsolationResult r = isolate_roots(parse_poly("(z-3)(z-4)(53z-241)"), kTiny);
  auto find = [&](const char* v) {
    for (const auto& e : r.enclosures)
      if (*e.exact_value == ExactScalar(Rational(v))) return e;
    throw std::runtime_error("missing root");
  };
  CHECK(certified_compare(find("3"), find("4")) == LexOrder::LessLex);
  CHECK(certified_compare(find("241/53"), find("4")) == LexOrder::GreaterLex);
  CHECK(certified_compare(find("4"), find("4")) == LexOrder::Equal);
  const IsolationResult c = isolate_roots(parse_poly("z^2+1"), kTiny);
  // conjugates share a real part: lexicographic order is undecidable numerically
  CHECK(certified_compare(c.enclosures[0], c.enclosures[1], {128, 512}) == LexOrder::Unknown);
}

TEST_CASE("isolation agrees with the 200-digit oracle") {
  std::mt19937_64 rng(20261018);
  for (int trial = 0; trial < 100; ++trial) {
    const int degree = 2 + trial % 9;
    const Poly p = oracle::random_poly(rng, degree);
    const IsolationResult r = isolate_roots(p, kTiny);
    CHECK(disjoint(r));
    int total = 0;
    for (const auto& e : r.enclosures) total += e.multiplicity;
    CHECK(total == degree);
    const auto oracle_roots = oracle::roots(oracle::coefficients(squarefree_part(p)));
    std::vector<oracle::Complex> centres;
    for (const auto& e : r.enclosures) centres.push_back(centre(refine(e, Rational(1) / Rational(Integer(1) << 400)).ball));
    for (const auto& z : oracle_roots) {
      int inside = 0;
      for (const auto& c : centres)
        if (oracle::close(c, z)) ++inside;
      CHECK(inside == 1);
    }
  }
}
