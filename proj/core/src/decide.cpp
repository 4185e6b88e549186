#include "upcert/decide.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <list>
#include <map>
#include <numeric>
#include <sstream>

#include "json_util.hpp"
#include "upcert/errors.hpp"

namespace upcert {

namespace {

using detail::Json;

CertificateEntry entry(std::string condition, std::string value, bool ok) {
  return {std::move(condition), std::move(value), ok};
}

std::string str(long v) { return std::to_string(v); }

RuleResult inapplicable(std::string reason, std::vector<CertificateEntry> cert = {}) {
  RuleResult r;
  r.outcome = RuleOutcome::Inapplicable;
  r.reason = std::move(reason);
  r.certificate = std::move(cert);
  return r;
}

RuleResult decisive(RuleOutcome o, std::string property, std::vector<CertificateEntry> cert) {
  RuleResult r;
  r.outcome = o;
  r.property = std::move(property);
  r.certificate = std::move(cert);
  return r;
}

std::vector<int> all_q(const StructureReport& r) {
  std::vector<int> q;
  for (const auto& c : r.columns)
    for (const auto& m : c.value_class.members) q.push_back(m.q);
  return q;
}

std::string list_text(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// ------------------------------------------------ three-valued evaluation

enum class Tri { Yes, No, Unknown };

struct NotExact {};

/// Points and the cofactor Q of P' used by the inequality conditions.
struct Scene {
  PrecisionConfig config;
  std::optional<Poly> q_exact;
  std::optional<Poly> dq_exact;
  ExactScalar lc;
  std::vector<std::pair<const RootEnclosure*, int>> others;  // remaining zeros of P'
  mutable std::map<std::pair<const RootEnclosure*, long>, ComplexBall> cache;

  ComplexBall ball(const RootEnclosure* e, long prec) const {
    if (e->exact_value) return e->exact_value->embed(prec);
    const auto key = std::make_pair(e, prec);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Rational rad(1);
    mpq_div_2exp(rad.get_mpq_t(), rad.get_mpq_t(), static_cast<mp_bitcnt_t>(prec / 2));
    const ComplexBall b = refine(*e, rad, {prec, config.max_bits}).ball;
    cache.emplace(key, b);
    return b;
  }
};

struct ExactCtx {
  const Scene& s;
  ExactScalar c(long v) const { return ExactScalar(v); }
  ExactScalar at(const RootEnclosure* e) const {
    if (!e->exact_value) throw NotExact{};
    return *e->exact_value;
  }
  ExactScalar Q(const ExactScalar& x) const {
    if (!s.q_exact) throw NotExact{};
    return s.q_exact->eval(x);
  }
  ExactScalar dQ(const ExactScalar& x) const {
    if (!s.dq_exact) throw NotExact{};
    return s.dq_exact->eval(x);
  }
};

struct BallCtx {
  const Scene& s;
  long prec;
  ComplexBall c(long v) const { return ComplexBall::from_long(v, prec); }
  ComplexBall at(const RootEnclosure* e) const { return s.ball(e, prec); }
  ComplexBall Q(const ComplexBall& x) const {
    if (s.q_exact) return s.q_exact->eval(x);
    ComplexBall acc = s.lc.embed(prec);
    for (const auto& [e, m] : s.others) {
      const ComplexBall f = x - at(e);
      for (int j = 0; j < m; ++j) acc *= f;
    }
    return acc;
  }
  ComplexBall dQ(const ComplexBall& x) const {
    if (s.dq_exact) return s.dq_exact->eval(x);
    ComplexBall sum = c(0);
    for (const auto& [e, m] : s.others) sum += c(m) / (x - at(e));
    return Q(x) * sum;
  }
};

struct Check {
  Tri tri = Tri::Unknown;
  std::string value;
};

/// Decides whether expr != 0, exactly when every quantity is exact.
template <class F>
Check nonzero(const Scene& s, const F& expr) {
  try {
    const ExactScalar v = expr(ExactCtx{s});
    return {v.is_zero() ? Tri::No : Tri::Yes, v.to_string()};
  } catch (const NotExact&) {
  } catch (const DivisionByZero&) {
    return {Tri::Unknown, "undefined (division by zero)"};
  }
  for (long prec = s.config.start_bits; prec <= s.config.max_bits; prec *= 2) {
    try {
      const ComplexBall b = expr(BallCtx{s, prec});
      if (!b.contains_zero()) return {Tri::Yes, "~" + b.to_string(12)};
    } catch (const DivisionByZero&) {
    } catch (const PrecisionExhausted&) {
      break;
    }
  }
  return {Tri::Unknown, "undecided at " + str(s.config.max_bits) + " bits"};
}

Scene make_scene(const Poly& p, const StructureReport& r, const std::vector<const CriticalPoint*>& chosen,
                 const std::vector<int>& exps, const PrecisionConfig& config) {
  Scene s;
  s.config = config;
  const Poly dp = p.derivative();
  s.lc = dp.leading();
  for (const auto& col : r.columns)
    for (const auto& m : col.value_class.members) {
      const bool picked = std::any_of(chosen.begin(), chosen.end(), [&](const CriticalPoint* c) { return c == &m; });
      if (!picked) s.others.emplace_back(&m.root, m.q);
    }
  bool exact = true;
  for (const auto* c : chosen) exact = exact && c->root.exact_value.has_value();
  if (exact) {
    Poly divisor = Poly::constant(ExactScalar(1));
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const Poly lin = Poly::variable(dp.field()) - Poly::constant(*chosen[i]->root.exact_value);
      divisor *= lin.pow(static_cast<unsigned>(exps[i]));
    }
    s.q_exact = dp.exact_div(divisor);
    s.dq_exact = s.q_exact->derivative();
  }
  return s;
}

const char* tri_text(Tri t) { return t == Tri::Yes ? "holds" : t == Tri::No ? "fails" : "undecided"; }

std::vector<std::size_t> columns_with_bh2(const StructureReport& r) {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < r.columns.size(); ++c)
    if (!r.columns[c].derived.B_H2.empty()) out.push_back(c);
  return out;
}

/// Member of the column's B_H2 with the largest q.
const CriticalPoint* top_member(const Column& col) {
  const CriticalPoint* best = nullptr;
  for (auto j : col.derived.B_H2) {
    const CriticalPoint* m = &col.value_class.members[j];
    if (!best || m->q > best->q) best = m;
  }
  return best;
}

std::string point_name(const CriticalPoint& c) {
  if (c.root.exact_value) return c.root.exact_value->to_string();
  const std::string b = c.root.ball.to_string(10);
  return "~" + b.substr(0, b.find(" +/-"));
}

Rational half(long v) {
  Rational h(v, 2);
  h.canonicalize();
  return h;
}

}  // namespace

// ------------------------------------------------------------ iff rules

RuleResult check_thm_A(const StructureReport& r) {
  if (!r.is_cip) return inapplicable("P is not a CIP");
  if (!r.p_squarefree) return inapplicable("P has multiple zeros");
  const std::vector<int> q = all_q(r);
  long pair_sum = 0, sum = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    sum += q[i];
    for (std::size_t j = i + 1; j < q.size(); ++j) pair_sum += static_cast<long>(q[i]) * q[j];
  }
  const bool ok = pair_sum > sum;
  std::vector<CertificateEntry> cert{entry("is_cip", "true", true), entry("p_squarefree", "true", true),
                                     entry("q", list_text(q), true),
                                     entry("sum_{l<m} q_l q_m > sum q_l", str(pair_sum) + " > " + str(sum), ok)};
  return decisive(ok ? RuleOutcome::Proven : RuleOutcome::Refuted, "UPM", std::move(cert));
}

RuleResult check_thm_B(const StructureReport& r) {
  if (!r.is_cip) return inapplicable("P is not a CIP");
  const std::vector<int> q = all_q(r);
  std::vector<CertificateEntry> cert{entry("is_cip", "true", true), entry("q", list_text(q), true)};
  bool ok = false;
  if (r.k >= 3) {
    ok = true;
    cert.push_back(entry("k >= 3", str(r.k), true));
  } else {
    cert.push_back(entry("k >= 3", str(r.k), false));
    ok = r.k == 2 && std::min(q[0], q[1]) >= 2;
    cert.push_back(entry("k = 2 and min q >= 2", list_text(q), ok));
  }
  return decisive(ok ? RuleOutcome::Proven : RuleOutcome::Refuted, "UPM", std::move(cert));
}

RuleResult check_quartic(const Poly& p, const StructureReport& r, const Query& q) {
  if (p.degree() != 4) return inapplicable("degree is not 4");
  if (q.field != FieldKind::Complex) return inapplicable("field is not C");
  if (r.k <= 1) return inapplicable("derivative index <= 1");
  if (q.function_class == FunctionClass::Meromorphic)
    return decisive(RuleOutcome::Refuted, "UPM", {entry("deg P = 4", "4", true)});
  const ExactScalar lc = p.leading();
  const ExactScalar a3 = p.coeff(3) / lc, a2 = p.coeff(2) / lc, a1 = p.coeff(1) / lc, a0 = p.coeff(0) / lc;
  const ExactScalar I = a3 * a3 * a3 / ExactScalar(8) - a2 * a3 / ExactScalar(2) + a1;
  const bool proven = !I.is_zero();
  if (proven != r.is_cip) throw InternalError("quartic invariant disagrees with the CIP classification");
  std::vector<CertificateEntry> cert{entry("deg P = 4", "4", true), entry("k >= 2", str(r.k), true),
                                     entry("I = a3^3/8 - a2 a3/2 + a1 != 0", I.to_string(), proven),
                                     entry("Thm_tt7: CIP <=> I != 0", r.is_cip ? "CIP" : "NCIP", true)};
  if (!proven) {
    const ExactScalar s = a3 * a3 - ExactScalar(4) * a2;
    const ExactScalar shared = lc * (a0 - s * s / ExactScalar(64));
    bool found = false;
    for (const auto& col : r.columns) {
      if (col.value_class.members.size() < 2) continue;
      const auto& vc = col.value_class;
      found = vc.exact_value ? *vc.exact_value == shared
                             : vc.class_value.overlaps(shared.embed(vc.class_value.precision()));
      if (found) break;
    }
    if (!found) throw InternalError("shared critical value of a quartic with I = 0 not found");
    cert.push_back(entry("shared critical value a0 - (a3^2 - 4 a2)^2/64", shared.to_string(), true));
  }
  return decisive(proven ? RuleOutcome::Proven : RuleOutcome::Refuted, "UPE", std::move(cert));
}

// ------------------------------------------------------- threshold rules

RuleResult check_thresholds_31_to_34(const StructureReport& r, const Query& q, const std::string& theorem) {
  struct Threshold {
    FieldKind field;
    int t_min;
    int upm;
    int upe;
  };
  static const std::map<std::string, Threshold> table{{"Thm3_1", {FieldKind::Padic, 1, 5, 4}},
                                                      {"Thm3_2", {FieldKind::Complex, 1, 6, 5}},
                                                      {"Thm3_3", {FieldKind::Padic, 3, 3, 3}},
                                                      {"Thm3_4", {FieldKind::Complex, 3, 4, 4}}};
  const auto it = table.find(theorem);
  if (it == table.end()) throw InvalidArgument("unknown threshold rule " + theorem);
  const Threshold& th = it->second;
  if (q.field != th.field) return inapplicable("wrong field");
  const bool entire = q.function_class == FunctionClass::Entire;
  const int need = entire ? th.upe : th.upm;
  std::vector<CertificateEntry> cert{entry("t >= " + str(th.t_min), str(r.t), r.t >= th.t_min),
                                     entry("t' >= " + str(need), str(r.t_prime), r.t_prime >= need)};
  if (r.t < th.t_min) return inapplicable("t = " + str(r.t) + " < " + str(th.t_min), cert);
  if (r.t_prime < need) return inapplicable("t' = " + str(r.t_prime) + " < " + str(need), cert);
  const bool upm = r.t_prime >= th.upm;
  return decisive(RuleOutcome::Proven, upm ? "UPM" : "UPE", std::move(cert));
}

// ---------------------------------------------------------- band rule

int compare_with_band_upper(long q1, long q3) {
  const long D = q1 * q1 - 4 * q1 - 4;
  if (D < 0) throw InvalidArgument("band is undefined for q1 = " + str(q1));
  // sign of q3 - U = sign(a - sqrt(D)) with a = 2 q3 - q1 + 2
  const long a = 2 * q3 - q1 + 2;
  if (a < 0) return -1;
  const long a2 = a * a;
  return a2 < D ? -1 : (a2 == D ? 0 : 1);
}

std::string band_upper_text(long q1) {
  // (q1-2)/2 + sqrt(D)/2 with D = f^2 g, g squarefree
  long f = 1, g = q1 * q1 - 4 * q1 - 4;
  if (g < 0) throw InvalidArgument("band is undefined for q1 = " + str(q1));
  for (long d = 2; d * d <= g; ++d)
    while (g % (d * d) == 0) {
      g /= d * d;
      f *= d;
    }
  if (g <= 1) return to_string(half(q1 - 2) + half(f * g));
  const Rational coef = half(f);
  return to_string(half(q1 - 2)) + " + " + (coef == 1 ? "" : to_string(coef) + "*") + "sqrt(" + str(g) + ")";
}

RuleResult check_thm_3_9(const StructureReport& r, const Query& q) {
  if (r.is_cip) return inapplicable("P is a CIP");
  if (r.t != 2 || r.t_prime != 3) return inapplicable("needs t = 2 and t' = 3");
  if (r.k != 3) return inapplicable("P' has " + str(r.k) + " distinct zeros, not 3");
  const Column* pair = nullptr;
  const Column* single = nullptr;
  for (const auto& col : r.columns) {
    if (col.derived.B_H2.size() == 2) pair = &col;
    if (col.derived.B_H2.size() == 1) single = &col;
  }
  if (!pair || !single || pair->value_class.members.size() != 2)
    return inapplicable("B(H2) sets are not {d1, d3} and {d2}");
  const int q2 = single->value_class.members[single->derived.B_H2[0]].q;
  if (q2 != 2) return inapplicable("middle multiplicity is " + str(q2) + ", not 2");
  const int q1 = std::max(pair->value_class.members[0].q, pair->value_class.members[1].q);
  const int q3 = std::min(pair->value_class.members[0].q, pair->value_class.members[1].q);
  std::vector<CertificateEntry> cert{entry("NCIP, t = 2, t' = 3", "t = 2, t' = 3", true),
                                     entry("P' = (z-d1)^q1 (z-d2)^2 (z-d3)^q3", list_text({q1, 2, q3}), true),
                                     entry("q1 >= 6", str(q1), q1 >= 6)};
  if (q1 < 6) return inapplicable("q1 = " + str(q1) + " < 6", cert);
  const bool lower = 2 * q3 > q1 - 1;
  cert.push_back(entry("q3 > (q1-1)/2", str(q3) + " > " + to_string(half(q1 - 1)), lower));
  const int cmp = compare_with_band_upper(q1, q3);
  const bool strict = q.field == FieldKind::Complex;
  const bool upper = strict ? cmp < 0 : cmp <= 0;
  cert.push_back(entry(strict ? "q3 < (q1-2)/2 + sqrt(q1^2-4q1-4)/2" : "q3 <= (q1-2)/2 + sqrt(q1^2-4q1-4)/2",
                       str(q3) + (strict ? " < " : " <= ") + band_upper_text(q1), upper));
  if (!lower || !upper) return inapplicable("q3 = " + str(q3) + " outside the band", cert);
  return decisive(RuleOutcome::Proven, "UPM", std::move(cert));
}

// ----------------------------------------------------- three-column rule

RuleResult check_thm_3_7(const StructureReport& r, const Poly& p, const DecideOptions& options) {
  if (r.t < 3) return inapplicable("t = " + str(r.t) + " < 3");
  const std::vector<std::size_t> cols = columns_with_bh2(r);
  std::string first_failure;
  bool undecided = false;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b)
      for (std::size_t c = b + 1; c < cols.size(); ++c) {
        const std::vector<const CriticalPoint*> pts{top_member(r.columns[cols[a]]), top_member(r.columns[cols[b]]),
                                                    top_member(r.columns[cols[c]])};
        const std::string subset = "columns {" + str(static_cast<long>(cols[a] + 1)) + "," +
                                   str(static_cast<long>(cols[b] + 1)) + "," + str(static_cast<long>(cols[c] + 1)) +
                                   "}";
        const int qmax = std::max({pts[0]->q, pts[1]->q, pts[2]->q});
        const int qmin = std::min({pts[0]->q, pts[1]->q, pts[2]->q});
        std::vector<CertificateEntry> base{
            entry("t >= 3", str(r.t), true), entry("chosen " + subset, point_name(*pts[0]) + ", " +
                                                                           point_name(*pts[1]) + ", " +
                                                                           point_name(*pts[2]), true),
            entry("max(q1,q2,q3) >= 2", list_text({pts[0]->q, pts[1]->q, pts[2]->q}), qmax >= 2)};
        if (qmax < 2) {
          if (first_failure.empty()) first_failure = subset + ": max(q1,q2,q3) = 1 < 2";
          continue;
        }
        if (qmin >= 2) {
          base.push_back(entry("(i) min(q1,q2,q3) >= 2", str(qmin), true));
          return decisive(RuleOutcome::Proven, "UPM", base);
        }
        if (r.is_cip) {
          base.push_back(entry("(ii) P is a CIP", "true", true));
          return decisive(RuleOutcome::Proven, "UPM", base);
        }
        if (r.t_prime >= 4) {
          base.push_back(entry("(iii) NCIP with t' >= 4", str(r.t_prime), true));
          return decisive(RuleOutcome::Proven, "UPM", base);
        }
        // (iv): each admissible choice of d1 among the maximal multiplicities
        for (int l = 0; l < 3; ++l) {
          if (pts[static_cast<std::size_t>(l)]->q != qmax) continue;
          std::vector<const CriticalPoint*> d{pts[static_cast<std::size_t>(l)]};
          for (int m = 0; m < 3; ++m)
            if (m != l) d.push_back(pts[static_cast<std::size_t>(m)]);
          const Scene s = make_scene(p, r, d, {d[0]->q, d[1]->q, d[2]->q}, options.precision);
          std::vector<CertificateEntry> cert = base;
          cert.push_back(entry("d1", point_name(*d[0]), true));
          bool all = true;
          for (auto [i, j] : {std::pair<std::size_t, std::size_t>{1, 2}, {2, 1}}) {
            const long q1 = d[0]->q, qi = d[i]->q;
            const Check ch = nonzero(s, [&](const auto& cx) {
              const auto d1 = cx.at(&d[0]->root);
              const auto di = cx.at(&d[i]->root);
              const auto dj = cx.at(&d[j]->root);
              const auto lhs = cx.dQ(dj) / cx.Q(di);
              const auto rhs = (di * cx.c(1 + q1) + d1 * cx.c(1 + qi) - cx.c(2 + q1 + qi) * dj) /
                               ((dj - d1) * (dj - di));
              return lhs - rhs;
            });
            cert.push_back(entry("(iv) Q'(d" + str(static_cast<long>(j + 1)) + ")/Q(d" + str(static_cast<long>(i + 1)) +
                                     ") - [d_i(1+q1)+d1(1+q_i)-(2+q1+q_i)d_j]/[(d_j-d1)(d_j-d_i)] != 0",
                                 ch.value, ch.tri == Tri::Yes));
            if (ch.tri != Tri::Yes) {
              all = false;
              if (ch.tri == Tri::Unknown) undecided = true;
              if (first_failure.empty()) first_failure = subset + ": inequality (iv) " + tri_text(ch.tri);
              break;
            }
          }
          if (all) return decisive(RuleOutcome::Proven, "UPM", cert);
        }
      }
  RuleResult res = inapplicable(first_failure.empty() ? "no admissible choice of three columns" : first_failure);
  if (undecided) res.outcome = RuleOutcome::Undecided;
  return res;
}

// ----------------------------------------------------- simple-point rule

RuleResult check_thm_3_6(const StructureReport& r, const Poly& p, const DecideOptions& options) {
  if (r.is_cip) return inapplicable("P is a CIP");
  if (r.n < 6) return inapplicable("degree " + str(r.n) + " < 6");
  if (r.t != 3 || r.t_prime != 3) return inapplicable("needs t = t' = 3");
  std::vector<const CriticalPoint*> d;
  std::vector<const Column*> dcol;
  for (std::size_t c : columns_with_bh2(r)) {
    const Column& col = r.columns[c];
    d.push_back(&col.value_class.members[col.derived.B_H2[0]]);
    dcol.push_back(&col);
  }
  for (const auto* x : d)
    if (x->q != 1) return inapplicable("a chosen point is a multiple zero of P'");
  const int deg_q = r.n - 1 - 3;
  std::vector<CertificateEntry> cert{entry("NCIP, n >= 6", str(r.n), true), entry("t = t' = 3", "3", true),
                                     entry("d1, d2, d3", point_name(*d[0]) + ", " + point_name(*d[1]) + ", " +
                                                             point_name(*d[2]), true),
                                     entry("deg Q >= 2", str(deg_q), deg_q >= 2)};
  if (deg_q < 2) return inapplicable("deg Q < 2", cert);
  const Scene s = make_scene(p, r, d, {1, 1, 1}, options.precision);
  bool undecided = false;
  std::string failure;
  auto record = [&](const std::string& name, const Check& ch) {
    cert.push_back(entry(name, ch.value, ch.tri == Tri::Yes));
    if (ch.tri == Tri::Yes) return true;
    if (ch.tri == Tri::Unknown) undecided = true;
    if (failure.empty()) failure = name + " " + tri_text(ch.tri);
    return false;
  };
  auto finish = [&]() {
    RuleResult res = inapplicable(failure, cert);
    if (undecided) res.outcome = RuleOutcome::Undecided;
    return res;
  };
  auto label = [](std::size_t i) { return str(static_cast<long>(i + 1)); };

  for (std::size_t j = 0; j < 3; ++j) {
    const Check ch = nonzero(s, [&](const auto& cx) { return cx.dQ(cx.at(&d[j]->root)); });
    if (!record("(a) Q'(d" + label(j) + ") != 0", ch)) return finish();
  }
  const std::vector<std::array<std::size_t, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& [i, j, k] : perms) {
    const Check ch = nonzero(s, [&](const auto& cx) {
      const auto di = cx.at(&d[i]->root);
      const auto dj = cx.at(&d[j]->root);
      const auto dk = cx.at(&d[k]->root);
      return cx.dQ(dj) / cx.Q(di) - (cx.c(2) * di + cx.c(2) * dk - cx.c(4) * dj) / ((dj - dk) * (dj - di));
    });
    if (!record("(b) i,j,k = " + label(i) + "," + label(j) + "," + label(k), ch)) return finish();
  }
  // kept alive so that cached enclosures stay keyed by unique addresses
  std::list<IsolationResult> isolations;
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t i = k == 0 ? 1 : 0;
    const std::size_t j = k == 2 ? 1 : 2;
    const auto& vc = dcol[k]->value_class;
    if (!vc.exact_value) {
      record("(c) k = " + label(k), {Tri::Unknown, "P(d" + label(k) + ") is not in the coefficient field"});
      return finish();
    }
    const Poly rk = p - Poly::constant(*vc.exact_value);
    Rational rad(1);
    mpq_div_2exp(rad.get_mpq_t(), rad.get_mpq_t(), 20);
    try {
      isolations.push_back(isolate_roots(rk, rad, options.precision));
    } catch (const PrecisionExhausted&) {
      record("(c) k = " + label(k), {Tri::Unknown, "roots of P - P(d" + label(k) + ") not isolated"});
      return finish();
    }
    const IsolationResult& iso = isolations.back();
    // locate d_k among the isolated roots
    std::optional<std::size_t> self;
    for (long prec = options.precision.start_bits; prec <= options.precision.max_bits && !self; prec *= 2) {
      std::vector<std::size_t> hits;
      for (std::size_t e = 0; e < iso.enclosures.size(); ++e) {
        const auto& enc = iso.enclosures[e];
        const bool hit = enc.exact_value && d[k]->root.exact_value
                             ? *enc.exact_value == *d[k]->root.exact_value
                             : enc.ball.overlaps(s.ball(&d[k]->root, prec));
        if (hit) hits.push_back(e);
      }
      if (hits.size() == 1) self = hits[0];
    }
    if (!self) {
      record("(c) k = " + label(k), {Tri::Unknown, "d" + label(k) + " not separated from other roots"});
      return finish();
    }
    for (std::size_t e = 0; e < iso.enclosures.size(); ++e) {
      if (e == *self) continue;
      const RootEnclosure* xi = &iso.enclosures[e];
      const Check ch = nonzero(s, [&](const auto& cx) {
        const auto x = cx.at(xi);
        const auto di = cx.at(&d[i]->root);
        const auto dj = cx.at(&d[j]->root);
        const auto dk = cx.at(&d[k]->root);
        const auto ki = dk - di, kj = dk - dj, xi_i = x - di, xj = x - dj;
        return cx.Q(x) / cx.Q(dk) - (ki * ki * kj * kj) / (xi_i * xi_i * xj * xj);
      });
      if (!record("(c) k = " + label(k) + ", xi = " + (xi->exact_value ? xi->exact_value->to_string()
                                                                         : "~" + xi->ball.to_string(8)),
                  ch))
        return finish();
    }
  }
  for (const auto& [i, j, k] : perms) {
    const std::string tag = label(i) + "," + label(j) + "," + label(k);
    const Check eq = nonzero(s, [&](const auto& cx) {
      return cx.at(&d[k]->root) - cx.c(2) * cx.at(&d[i]->root) + cx.at(&d[j]->root);
    });
    if (eq.tri == Tri::Yes) {
      record("(i) d_k != 2 d_i - d_j, i,j,k = " + tag, eq);
      continue;
    }
    if (eq.tri == Tri::Unknown) {
      record("(i) d_k != 2 d_i - d_j, i,j,k = " + tag, eq);
      return finish();
    }
    cert.push_back(entry("equality case d_k = 2 d_i - d_j, i,j,k = " + tag, eq.value, true));
    const Check ch = nonzero(s, [&](const auto& cx) {
      const auto dj = cx.at(&d[j]->root);
      return cx.dQ(dj) / cx.Q(dj) - cx.c(3) / (cx.at(&d[k]->root) - cx.at(&d[i]->root));
    });
    if (!record("(ii) Q'(d_j)/Q(d_j) != 3/(d_k - d_i), i,j,k = " + tag, ch)) return finish();
  }
  return decisive(RuleOutcome::Proven, "UPM", std::move(cert));
}

// ---------------------------------------------------------- quintic rule

RuleResult check_tt8(const Poly& p, const StructureReport& r) {
  if (p.degree() != 5) return inapplicable("degree is not 5");
  const ExactScalar lc = p.leading();
  if (!p.coeff(2).is_zero() || !p.coeff(1).is_zero())
    return inapplicable("shape z^5 + a z^4 + b z^3 + c does not match");
  if (r.is_cip) return inapplicable("P is a CIP");
  const ExactScalar a = p.coeff(4) / lc, b = p.coeff(3) / lc, c = p.coeff(0) / lc;
  const ExactScalar lhs = ExactScalar(8) * a * a, rhs = ExactScalar(5) * b;
  std::vector<CertificateEntry> cert{
      entry("monic shape z^5 + a z^4 + b z^3 + c", "a = " + a.to_string() + ", b = " + b.to_string(), true),
      entry("NCIP", "true", true), entry("8a^2 != 5b", lhs.to_string() + " vs " + rhs.to_string(), !(lhs == rhs))};
  if (lhs == rhs) return inapplicable("8a^2 = 5b", cert);
  const bool forced = a * a == ExactScalar(4) * b;
  cert.push_back(entry("a^2 = 4b", (a * a).to_string() + " vs " + (ExactScalar(4) * b).to_string(), forced));
  if (!forced || a.is_zero()) return inapplicable("a^2 != 4b", cert);
  WitnessPair w = tt8_witness(a, c);
  const PairCheck pc = verify_pair(w.p, w.f, w.g);
  cert.push_back(entry("witness P(f) = P(g), f != g", pc.holds && pc.distinct ? "verified" : "failed",
                       pc.holds && pc.distinct));
  RuleResult res = decisive(RuleOutcome::Refuted, "UPM", std::move(cert));
  if (!lc.is_one()) w.note += "; P = " + lc.to_string() + " * witness polynomial";
  res.witness = std::move(w);
  return res;
}

// -------------------------------------------------------------- driver

namespace {

RuleResult run_rule(const std::string& id, const Poly& p, const StructureReport& r, const Query& q,
                    const DecideOptions& options) {
  const bool complex = q.field == FieldKind::Complex;
  if (id == "Degree1") {
    if (r.n != 1) return inapplicable("degree is not 1");
    return decisive(RuleOutcome::Proven, "UPM", {entry("deg P = 1", "1", true)});
  }
  if (id == "Remark1_2") {
    if (r.k > 1) return inapplicable("k = " + str(r.k) + " > 1");
    return decisive(RuleOutcome::Refuted, "UPE", {entry("k <= 1", str(r.k), true)});
  }
  if (id == "LiYang_deg23") {
    if (!complex) return inapplicable("field is not C");
    if (r.n != 2 && r.n != 3) return inapplicable("degree is not 2 or 3");
    return decisive(RuleOutcome::Refuted, "UPE", {entry("deg P in {2,3}", str(r.n), true)});
  }
  if (id == "ThmC") return check_quartic(p, r, q);
  if (id == "ThmA") return complex ? check_thm_A(r) : inapplicable("field is not C");
  if (id == "ThmB") return complex ? inapplicable("field is not K") : check_thm_B(r);
  if (id == "Thm3_1" || id == "Thm3_2" || id == "Thm3_3" || id == "Thm3_4")
    return check_thresholds_31_to_34(r, q, id);
  if (id == "Thm3_7") return check_thm_3_9(r, q);
  if (id == "Thm3_5") return complex ? check_thm_3_7(r, p, options) : inapplicable("field is not C");
  if (id == "Thm3_6") return complex ? check_thm_3_6(r, p, options) : inapplicable("field is not C");
  if (id == "Thm_tt8") {
    if (!complex || q.function_class != FunctionClass::Meromorphic)
      return inapplicable("only for meromorphic functions in C");
    return check_tt8(p, r);
  }
  throw InvalidArgument("unknown rule " + id);
}

bool settles(const RuleResult& res, const Query& q) {
  const bool entire = q.function_class == FunctionClass::Entire;
  if (res.outcome == RuleOutcome::Proven) return entire || res.property == "UPM";
  if (res.outcome == RuleOutcome::Refuted) return !entire || res.property == "UPE";
  return false;
}

std::string outcome_text(const RuleResult& res) {
  switch (res.outcome) {
    case RuleOutcome::Proven:
      return "proves " + res.property + " only";
    case RuleOutcome::Refuted:
      return "refutes " + res.property + " only";
    case RuleOutcome::Undecided:
      return "undecided: " + res.reason;
    case RuleOutcome::Inapplicable:
      break;
  }
  return "inapplicable: " + res.reason;
}

}  // namespace

Verdict decide(const Poly& p, const StructureReport& r, const Query& q, const DecideOptions& options) {
  Verdict v;
  v.query = q;
  v.property = q.function_class == FunctionClass::Meromorphic ? "UPM" : "UPE";
  const bool complex = q.field == FieldKind::Complex;

  std::vector<std::string> order{"Degree1", "Remark1_2"};
  if (complex && (r.n == 2 || r.n == 3)) order.push_back("LiYang_deg23");
  if (complex && r.n == 4) order.push_back("ThmC");
  if (r.is_cip) {
    order.push_back(complex ? "ThmA" : "ThmB");
  } else if (r.p_squarefree) {
    for (const char* id : complex ? std::vector<const char*>{"Thm3_4", "Thm3_2", "Thm3_7", "Thm3_5", "Thm3_6"}
                                  : std::vector<const char*>{"Thm3_3", "Thm3_1", "Thm3_7"})
      order.push_back(id);
  } else {
    v.attempts.push_back({"Thm3_1..Thm3_7", "gated: P has multiple zeros"});
  }
  if (complex && !r.is_cip) order.push_back("Thm_tt8");

  for (const auto& id : order) {
    if (id == "Degree1" && r.n != 1) continue;
    if (id == "Remark1_2" && (r.n == 1 || r.k > 1)) continue;
    if (id == "Thm_tt8" && (r.n != 5 || q.function_class != FunctionClass::Meromorphic)) continue;
    RuleResult res = run_rule(id, p, r, q, options);
    if (settles(res, q)) {
      v.status = res.outcome == RuleOutcome::Proven ? Status::Proven : Status::Refuted;
      v.theorem_id = id;
      v.certificate = std::move(res.certificate);
      if (res.property != v.property)
        v.certificate.push_back(entry(res.property == "UPM" ? "UPM implies UPE" : "not UPE implies not UPM",
                                      res.property, true));
      v.witness = std::move(res.witness);
      return v;
    }
    v.attempts.push_back({id, outcome_text(res)});
  }
  return v;
}

bool replay_certificate(const Poly& p, const StructureReport& r, const Verdict& v, const DecideOptions& options) {
  if (v.status == Status::Unknown) return decide(p, r, v.query, options).attempts == v.attempts;
  RuleResult res = run_rule(v.theorem_id, p, r, v.query, options);
  if (!settles(res, v.query)) return false;
  const Status s = res.outcome == RuleOutcome::Proven ? Status::Proven : Status::Refuted;
  if (res.property != v.property)
    res.certificate.push_back(
        entry(res.property == "UPM" ? "UPM implies UPE" : "not UPE implies not UPM", res.property, true));
  return s == v.status && res.certificate == v.certificate;
}

// ------------------------------------------------------------------ URS

URSReport urs_check(const Poly& p, const StructureReport& r, const Verdict& upm) {
  URSReport u;
  u.n = r.n;
  u.k = r.k;
  u.upm_status = upm.status;
  if (upm.query.field != FieldKind::Complex || upm.query.function_class != FunctionClass::Meromorphic)
    throw InvalidArgument("the URS check needs the UPM verdict in C for meromorphic functions");
  if (p.coeff(0).is_zero()) {
    u.reason = "constant term a0 = 0";
    u.conclusion = "not applicable";
    return u;
  }
  if (!r.p_squarefree) {
    u.reason = "P has multiple zeros";
    u.conclusion = "not applicable";
    return u;
  }
  u.applicable = true;
  const Poly shifted = p - Poly::constant(p.coeff(0));
  for (const auto& f : squarefree_decomposition(shifted))
    for (int j = 0; j < f.factor.degree(); ++j) u.m_list.push_back(f.multiplicity);
  std::sort(u.m_list.rbegin(), u.m_list.rend());
  u.p = static_cast<int>(u.m_list.size());
  const int n = u.n;
  auto coprime = [n](int m) { return std::gcd(m, n) == 1; };
  const auto& m = u.m_list;
  const bool c1 = u.p >= 4;
  const bool c2 = u.p == 3 && std::any_of(m.begin(), m.end(), [&](int x) { return x >= 2 && coprime(x); });
  const bool c3 = u.p == 3 && m[0] >= 2 && m[1] == 1 && m[2] == 1 && !coprime(m[0]) && n >= 5;
  const bool c4 = u.p == 2 && std::any_of(m.begin(), m.end(), coprime) && n >= 5;
  const bool c5 = u.p == 2 && !coprime(m[0]) && !coprime(m[1]) &&
                  n >= 2 * (std::gcd(m[0], n) + std::gcd(m[1], n)) + 1;
  u.conditions = {c1, c2, c3, c4, c5};
  const char* names[] = {"i", "ii", "iii", "iv", "v"};
  for (int j = 0; j < 5; ++j)
    if (u.conditions[static_cast<std::size_t>(j)]) {
      u.condition_hit = names[j];
      break;
    }
  if (u.p == 2) u.note = "condition (iv) read as: gcd(m_i, n) = 1 for some i and n >= 5";
  u.ursm_threshold_met = n >= 2 * u.k + 7;
  u.ursm_im_threshold_met = n >= 2 * u.k + 13;
  if (u.condition_hit.empty() || !u.ursm_threshold_met) {
    u.conclusion = "no conclusion";
  } else if (upm.status == Status::Proven) {
    u.conclusion = u.ursm_im_threshold_met ? "URSM-IM" : "URSM";
    u.cardinality = n;
  } else if (upm.status == Status::Refuted) {
    u.conclusion = "not a URSM";
  } else {
    u.conclusion = "undetermined";
  }
  return u;
}

// ------------------------------------------------------------ rendering

std::string to_string(Status s) {
  return s == Status::Proven ? "Proven" : s == Status::Refuted ? "Refuted" : "Unknown";
}
std::string to_string(FieldKind f) { return f == FieldKind::Complex ? "complex" : "padic"; }
std::string to_string(FunctionClass c) { return c == FunctionClass::Meromorphic ? "meromorphic" : "entire"; }

std::string render_verdict(const Poly& p, const Verdict& v, RenderFormat format) {
  if (format == RenderFormat::json) {
    Json cert = Json::array();
    for (const auto& c : v.certificate) cert.push_back(Json{{"condition", c.condition}, {"value", c.value}, {"ok", c.ok}});
    Json attempts = Json::array();
    for (const auto& a : v.attempts) attempts.push_back(Json{{"theorem", a.theorem}, {"outcome", a.outcome}});
    Json doc{{"schema", "verdict.v1"},
             {"polynomial", p.to_string()},
             {"field", to_string(v.query.field)},
             {"class", to_string(v.query.function_class)},
             {"property", v.property},
             {"status", to_string(v.status)},
             {"theorem", v.theorem_id},
             {"certificate", cert},
             {"attempts", attempts}};
    if (v.witness)
      doc["witness"] = Json{{"P", v.witness->p.to_string()},
                            {"f", v.witness->f.to_string()},
                            {"g", v.witness->g.to_string()},
                            {"note", v.witness->note}};
    return doc.dump(2);
  }
  std::ostringstream os;
  os << "P(z) = " << p.to_string() << '\n';
  os << v.property << " in " << (v.query.field == FieldKind::Complex ? "C" : "K") << ": " << to_string(v.status);
  if (!v.theorem_id.empty()) os << " (" << v.theorem_id << ")";
  os << '\n';
  for (const auto& c : v.certificate) os << "  [" << (c.ok ? "ok" : "--") << "] " << c.condition << ": " << c.value << '\n';
  if (!v.attempts.empty()) {
    os << "attempts\n";
    for (const auto& a : v.attempts) os << "  " << a.theorem << ": " << a.outcome << '\n';
  }
  if (v.witness) {
    os << "witness (" << v.witness->note << ")\n";
    os << "  f(u) = " << v.witness->f.to_string() << "\n  g(u) = " << v.witness->g.to_string() << '\n';
  }
  return os.str();
}

std::string render_urs(const Poly& p, const URSReport& u, RenderFormat format) {
  const char* names[] = {"i", "ii", "iii", "iv", "v"};
  if (format == RenderFormat::json) {
    Json conds = Json::object();
    for (std::size_t j = 0; j < u.conditions.size(); ++j) conds[names[j]] = static_cast<bool>(u.conditions[j]);
    Json doc{{"schema", "urs.v1"},       {"polynomial", p.to_string()},
             {"applicable", u.applicable}, {"reason", u.reason},
             {"n", u.n},                 {"k", u.k},
             {"p", u.p},                 {"m_list", u.m_list},
             {"conditions", conds},      {"condition_hit", u.condition_hit},
             {"note", u.note},           {"ursm_threshold_met", u.ursm_threshold_met},
             {"ursm_im_threshold_met", u.ursm_im_threshold_met},
             {"upm_status", to_string(u.upm_status)},
             {"conclusion", u.conclusion}, {"cardinality", u.cardinality}};
    return doc.dump(2);
  }
  std::ostringstream os;
  os << "P(z) = " << p.to_string() << '\n';
  if (!u.applicable) {
    os << "not applicable: " << u.reason << '\n';
    return os.str();
  }
  os << "n = " << u.n << ", k = " << u.k << ", p = " << u.p << ", m = " << list_text(u.m_list) << '\n';
  os << "conditions:";
  for (std::size_t j = 0; j < u.conditions.size(); ++j) os << ' ' << names[j] << '=' << (u.conditions[j] ? "yes" : "no");
  os << '\n';
  if (!u.note.empty()) os << "note: " << u.note << '\n';
  os << "n >= 2k+7: " << (u.ursm_threshold_met ? "yes" : "no") << ", n >= 2k+13: "
     << (u.ursm_im_threshold_met ? "yes" : "no") << ", UPM in C: " << to_string(u.upm_status) << '\n';
  os << "conclusion: " << u.conclusion;
  if (u.cardinality) os << " of cardinality " << u.cardinality;
  os << '\n';
  return os.str();
}

}  // namespace upcert
