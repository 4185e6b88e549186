#pragma once

// Independent 200-digit root oracle (Durand-Kerner in Boost multiprecision),
// sharing no code with the library's isolation path.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <random>
#include <vector>

#include "upcert/poly.hpp"

namespace oracle {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<220>>;
using Complex = boost::multiprecision::number<boost::multiprecision::complex_adaptor<
    boost::multiprecision::cpp_bin_float<220>>>;

inline Real to_real(const upcert::Rational& q) {
  return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
}

/// Coefficients of a polynomial over Q, or over Q(i) written as re + i*im.
inline std::vector<Complex> coefficients(const upcert::Poly& p) {
  std::vector<Complex> out;
  for (const auto& c : p.coeffs()) {
    out.emplace_back(to_real(c.real_part().to_rational()), to_real(c.imag_part().to_rational()));
  }
  return out;
}

/// Coefficients of a polynomial over any field, from 800-bit embeddings.
inline std::vector<Complex> embedded_coefficients(const upcert::Poly& p) {
  std::vector<Complex> out;
  for (const auto& c : p.coeffs()) {
    const upcert::ComplexBall b = c.embed(800);
    out.emplace_back(to_real(b.mid_re().to_rational()), to_real(b.mid_im().to_rational()));
  }
  return out;
}

inline Complex horner(const std::vector<Complex>& c, const Complex& z) {
  Complex acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * z + c[k];
  return acc;
}

/// All roots of a polynomial, repeated by multiplicity. About 200 correct
/// digits for simple roots; a q-fold root is approximated to about 200/q digits.
inline std::vector<Complex> roots(const std::vector<Complex>& coeffs, int max_iter = 5000) {
  const std::size_t d = coeffs.size() - 1;
  std::vector<Complex> c(coeffs.size());
  for (std::size_t k = 0; k <= d; ++k) c[k] = coeffs[k] / coeffs[d];
  std::vector<Complex> z(d);
  const Complex seed(Real("0.4"), Real("0.9"));
  Complex w(1);
  for (std::size_t j = 0; j < d; ++j) {
    z[j] = w;
    w *= seed;
  }
  const Real tol = Real("1e-205");
  Real best = -1;
  int since_best = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    Real worst = 0;
    for (std::size_t j = 0; j < d; ++j) {
      Complex den(1);
      for (std::size_t l = 0; l < d; ++l)
        if (l != j) den *= z[j] - z[l];
      const Complex step = horner(c, z[j]) / den;
      z[j] -= step;
      worst = std::max(worst, Real(abs(step)));
    }
    if (worst < tol) break;
    // clustered approximations of a multiple root stop improving near eps^(1/q)
    if (best < 0 || worst < best / 2) {
      best = worst;
      since_best = 0;
    } else if (++since_best > 200) {
      break;
    }
  }
  return z;
}

struct Cluster {
  Complex centre;
  int multiplicity;
};

/// Roots grouped into clusters of radius `gap`; the cluster mean approximates
/// a multiple root far better than its members do.
inline std::vector<Cluster> clustered_roots(const std::vector<Complex>& coeffs, const Real& gap = Real("1e-8")) {
  const std::vector<Complex> z = roots(coeffs, 20000);
  std::vector<int> owner(z.size(), -1);
  std::vector<Cluster> out;
  for (std::size_t j = 0; j < z.size(); ++j) {
    if (owner[j] >= 0) continue;
    owner[j] = static_cast<int>(out.size());
    Complex sum = z[j];
    int count = 1;
    for (std::size_t l = j + 1; l < z.size(); ++l)
      if (owner[l] < 0 && abs(z[l] - z[j]) < gap) {
        owner[l] = owner[j];
        sum += z[l];
        ++count;
      }
    out.push_back({sum / Real(count), count});
  }
  return out;
}

inline bool close(const Complex& a, const Complex& b, const Real& eps = Real("1e-100")) {
  return abs(a - b) < eps;
}

/// Random integer-coefficient polynomial with nonzero leading coefficient.
inline upcert::Poly random_poly(std::mt19937_64& rng, int degree, int bound = 9) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  std::vector<upcert::ExactScalar> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(static_cast<long>(dist(rng)));
  if (c.back().is_zero()) c.back() = upcert::ExactScalar(1);
  return upcert::Poly(c);
}

}  // namespace oracle
