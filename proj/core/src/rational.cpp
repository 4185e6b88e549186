#include "upcert/rational.hpp"

#include "upcert/errors.hpp"

namespace upcert {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty rational literal");
  Rational q;
  if (q.set_str(s, 10) != 0) throw InvalidArgument("malformed rational literal: " + s);
  if (q.get_den() == 0) throw DivisionByZero();
  q.canonicalize();
  return q;
}

long ceil_log2(const Rational& q) {
  if (q == 0) throw InvalidArgument("ceil_log2 of zero");
  Rational a = abs(q);
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 2));
  // a is within a factor of two of 2^e; step to the exact ceiling.
  auto pow2 = [](long k) {
    Rational r(1);
    if (k >= 0) mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return r;
  };
  while (pow2(e) < a) ++e;
  while (pow2(e - 1) >= a) --e;
  return e;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace upcert
