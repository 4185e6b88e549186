#include "doctest.h"

#include <algorithm>
#include <random>

#include "support/oracle.hpp"
#include "upcert/poly.hpp"

using namespace upcert;

TEST_CASE("squarefree decomposition reconstructs random products") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> deg(1, 3), mult(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    Poly p = Poly::constant(ExactScalar(static_cast<long>(mult(rng))));
    const int parts = deg(rng);
    for (int i = 0; i < parts; ++i) p *= oracle::random_poly(rng, deg(rng), 4).pow(mult(rng));
    const auto factors = squarefree_decomposition(p);
    Poly back = Poly::constant(p.coeffs().back());
    for (const auto& f : factors) {
      CHECK(f.factor.coeffs().back() == ExactScalar(1));
      CHECK(gcd(f.factor, f.factor.derivative()).degree() == 0);
      back *= f.factor.pow(f.multiplicity);
    }
    CHECK(back == p);
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (std::size_t j = i + 1; j < factors.size(); ++j) CHECK(gcd(factors[i].factor, factors[j].factor).degree() == 0);
  }
}

TEST_CASE("critical value polynomial vanishes exactly at oracle critical values") {
  std::mt19937_64 rng(57);
  std::uniform_int_distribution<int> deg(2, 7);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly p = oracle::random_poly(rng, deg(rng));
    if (p.degree() < 2) continue;
    const Poly d = critical_value_poly(p);
    const auto pc = oracle::coefficients(p);
    const auto dc = oracle::coefficients(d);
    const auto crit = oracle::clustered_roots(oracle::coefficients(p.derivative()));
    int total = 0;
    for (const auto& c : crit) {
      const oracle::Complex v = oracle::horner(pc, c.centre);
      const oracle::Complex scale = oracle::horner(dc, v + oracle::Real("1e-30"));
      // D(v) is tiny relative to D one perturbation away
      CHECK(oracle::Real(abs(oracle::horner(dc, v))) < oracle::Real(abs(scale)) * oracle::Real("1e-20"));
      total += c.multiplicity;
    }
    CHECK(total == p.degree() - 1);
    CHECK(d.degree() == p.degree() - 1);
  }
}
