#include "recognize.hpp"

#include <algorithm>

namespace upcert::detail {

namespace {

Rational dot(const std::vector<Integer>& a, const std::vector<Rational>& b) {
  Rational s(0);
  for (std::size_t j = 0; j < a.size(); ++j) s += Rational(a[j]) * b[j];
  return s;
}

Integer round_nearest(const Rational& q) {
  Integer twice_num = 2 * q.get_num() + q.get_den();
  Integer den = 2 * q.get_den();
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), twice_num.get_mpz_t(), den.get_mpz_t());
  return r;
}

Integer scaled_integer(const Float& x, long bits) {
  Float t(x.precision() + bits + 8);
  mpfr_mul_2si(t.get(), x.get(), bits, MPFR_RNDN);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), t.get(), MPFR_RNDN);
  return out;
}

// |a - b| <= 2^-bits * max(1, |b|)
bool near(const ComplexBall& a, const ComplexBall& b, long bits) {
  Float bound = b.abs_upper();
  if (mpfr_cmp_ui(bound.get(), 1) < 0) mpfr_set_ui(bound.get(), 1, MPFR_RNDU);
  mpfr_mul_2si(bound.get(), bound.get(), -bits, MPFR_RNDU);
  const Float gap = (a - b).abs_lower();
  return mpfr_cmp(gap.get(), bound.get()) <= 0;
}

}  // namespace

void lll_reduce(std::vector<std::vector<Integer>>& b) {
  const std::size_t n = b.size();
  if (n < 2) return;
  const Rational delta(3, 4);
  const Rational half(1, 2);

  // Gram-Schmidt data: mu[i][j] and B[i] = |b*_i|^2.
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n, Rational(0)));
  std::vector<Rational> B(n);
  std::vector<std::vector<Rational>> bstar(n);
  for (std::size_t i = 0; i < n; ++i) {
    bstar[i].assign(b[i].begin(), b[i].end());
    for (std::size_t j = 0; j < i; ++j) {
      if (B[j] == 0) continue;
      mu[i][j] = dot(b[i], bstar[j]) / B[j];
      for (std::size_t c = 0; c < bstar[i].size(); ++c) bstar[i][c] -= mu[i][j] * bstar[j][c];
    }
    B[i] = 0;
    for (const auto& v : bstar[i]) B[i] += v * v;
  }

  auto size_reduce = [&](std::size_t k, std::size_t l) {
    if (abs(mu[k][l]) <= half) return;
    const Integer r = round_nearest(mu[k][l]);
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= r * b[l][c];
    for (std::size_t j = 0; j < l; ++j) mu[k][j] -= Rational(r) * mu[l][j];
    mu[k][l] -= Rational(r);
  };

  std::size_t k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      const Rational m = mu[k][k - 1];
      const Rational Bnew = B[k] + m * m * B[k - 1];
      if (Bnew == 0) {
        std::swap(B[k], B[k - 1]);
        for (std::size_t i = k + 1; i < n; ++i) std::swap(mu[i][k], mu[i][k - 1]);
      } else {
        mu[k][k - 1] = m * B[k - 1] / Bnew;
        B[k] = B[k - 1] * B[k] / Bnew;
        B[k - 1] = Bnew;
        for (std::size_t i = k + 1; i < n; ++i) {
          const Rational t = mu[i][k];
          mu[i][k] = mu[i][k - 1] - m * t;
          mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
        }
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
      ++k;
    }
  }
}

std::optional<ExactScalar> recognize_root(const Poly& f, const ComplexBall& approx, long scale_bits) {
  const FieldPtr& field = f.field();
  const int N = field->degree();
  const long prec = approx.precision();

  // x_0 = approx, x_{1+j} = display basis element j.
  std::vector<ComplexBall> xs{approx};
  std::vector<ExactScalar> basis;
  for (int j = 0; j < N; ++j) {
    basis.emplace_back(field, field->display_element(static_cast<unsigned>(j)));
    xs.push_back(basis.back().embed(prec));
  }
  bool any_imag = false;
  for (const auto& x : xs) any_imag = any_imag || !x.mid_im().is_zero();

  const std::size_t dim = xs.size();
  std::vector<std::vector<Integer>> lattice(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    std::vector<Integer> row(dim, Integer(0));
    row[r] = 1;
    row.push_back(scaled_integer(xs[r].mid_re(), scale_bits));
    if (any_imag) row.push_back(scaled_integer(xs[r].mid_im(), scale_bits));
    lattice[r] = std::move(row);
  }
  lll_reduce(lattice);

  for (std::size_t r = 0; r < std::min<std::size_t>(lattice.size(), 3); ++r) {
    const auto& row = lattice[r];
    const Integer& c0 = row[0];
    if (c0 == 0) continue;
    // c0 * approx + sum_j c_{1+j} b_j ~ 0
    NumberField::Coords display(static_cast<std::size_t>(N), Rational(0));
    for (int j = 0; j < N; ++j) display[static_cast<std::size_t>(j)] = -Rational(row[1 + j]) / Rational(c0);
    for (auto& d : display) d.canonicalize();
    const ExactScalar candidate(field, field->from_display(display));
    if (!near(candidate.embed(prec), approx, scale_bits - 8)) continue;
    if (f.eval(candidate).is_zero()) return candidate;
  }
  return std::nullopt;
}

}  // namespace upcert::detail
