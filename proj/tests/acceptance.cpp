// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "support/oracle.hpp"
#include "upcert/cli/corpus.hpp"
#include "upcert/decide.hpp"
#include "upcert/errors.hpp"
#include "upcert/identity.hpp"
#include "upcert/parse.hpp"
#include "upcert/structure.hpp"

using namespace upcert;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const Query kCM{FieldKind::Complex, FunctionClass::Meromorphic};
const Query kCE{FieldKind::Complex, FunctionClass::Entire};
const Query kKM{FieldKind::Padic, FunctionClass::Meromorphic};

std::string str(const Poly& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

Rational random_rational(std::mt19937_64& rng, int bound, bool nonzero) {
  std::uniform_int_distribution<int> num(-bound, bound);
  std::uniform_int_distribution<int> den(1, bound);
  for (;;) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    if (!nonzero || q != 0) return q;
  }
}

bool squarefree(const Poly& p) { return gcd(p, p.derivative()).degree() == 0; }

/// A(z)^e B(z) + c with A a product of distinct linear factors: every zero of A
/// is a critical point with value c.
Poly engineered(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> root(-4, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    const int e = 2 + coin(rng) * (max_degree >= 6 ? 1 : 0);
    std::vector<ExactScalar> rs{ExactScalar(root(rng)), ExactScalar(root(rng))};
    if (rs[0] == rs[1]) continue;
    const Poly a = Poly::from_roots(rs);
    const int room = max_degree - 2 * e;
    if (room < 0) continue;
    std::uniform_int_distribution<int> bdeg(0, room);
    Poly b = oracle::random_poly(rng, bdeg(rng), 5);
    Poly p = a.pow(e) * b + Poly::constant(ExactScalar(random_rational(rng, 9, true)));
    if (p.degree() >= 2) return p;
  }
}

Poly random_instance(std::mt19937_64& rng, int max_degree, bool want_squarefree) {
  std::uniform_int_distribution<int> deg(2, max_degree);
  std::uniform_int_distribution<int> pick(0, 9);
  for (;;) {
    Poly p = pick(rng) < 7 ? oracle::random_poly(rng, deg(rng)) : engineered(rng, max_degree);
    if (p.degree() < 2) continue;
    if (want_squarefree && !squarefree(p)) continue;
    return p;
  }
}

std::vector<Poly> family_instances(int count) {
  std::vector<Poly> out;
  const int shapes[][2] = {{7, 2}, {9, 2}, {10, 3}, {11, 2}, {11, 4}};
  const long as[] = {1, 2, -3, 4};
  const long cs[] = {1, -2, 5};
  for (int i = 0; static_cast<int>(out.size()) < count && i < 1000; ++i) {
    const auto& s = shapes[i % 5];
    try {
      out.push_back(parse_poly(cli::family_source(s[0], s[1], Rational(as[(i / 5) % 4]), Rational(cs[(i / 20) % 3]))));
    } catch (const InvalidArgument&) {
    }
  }
  return out;
}

// ------------------------------------------------------------------ criteria

Outcome corpus_exactness() {
  Outcome o;
  for (const char* id : {"ex4_1", "ex4_2", "ex4_3", "ex4_4", "ex4_6"}) {
    const auto& all = cli::corpus();
    const auto it = std::find_if(all.begin(), all.end(), [&](const cli::CorpusEntry& e) { return e.id == id; });
    if (it == all.end() || it->values.empty()) {
      o.fail(std::string(id) + " missing");
      continue;
    }
    const cli::EntryResult res = cli::check_entry(*it);
    if (!res.pass()) o.fail(std::string(id) + ": " + res.mismatches.front());
  }
  return o;
}

Outcome verdict_regression() {
  Outcome o;
  for (const auto& res : cli::run_corpus("", 1))
    if (!res.pass()) o.fail(res.id + ": " + (res.mismatches.empty() ? "error" : res.mismatches.front()));
  const std::pair<const char*, const char*> bands[] = {
      {"1/2366 z^8 (z-1)^5 (169 z + 8 i sqrt(35) - 107) + 1", "4 < 5/2 + 1/2*sqrt(17)"},
      {"1/3078 z^11 (z-1)^7 (162 z + i sqrt(1463) - 101) + 1", "6 < 4 + sqrt(14)"}};
  for (const auto& [src, upper] : bands) {
    const Poly p = parse_poly(src);
    const Verdict v = decide(p, build_structure(p), kCM);
    bool lower_row = false, upper_row = false;
    for (const auto& c : v.certificate) {
      if (c.condition == "q3 > (q1-1)/2" && c.ok) lower_row = true;
      if (c.value == upper && c.ok) upper_row = true;
    }
    if (v.status != Status::Proven || v.theorem_id != "Thm3_7" || !lower_row || !upper_row)
      o.fail(std::string("band rows for ") + src);
  }
  return o;
}

Outcome urs_criterion() {
  Outcome o;
  const std::tuple<const char*, const char*, int> cases[] = {
      {"1/2366 z^8 (z-1)^5 (169 z + 8 i sqrt(35) - 107) + 1", "URSM", 14},
      {"1/3078 z^11 (z-1)^7 (162 z + i sqrt(1463) - 101) + 1", "URSM-IM", 19}};
  for (const auto& [src, conclusion, card] : cases) {
    const Poly p = parse_poly(src);
    const StructureReport r = build_structure(p);
    const URSReport u = urs_check(p, r, decide(p, r, kCM));
    if (u.conclusion != conclusion || u.cardinality != card || u.condition_hit != "ii")
      o.fail(std::string(src) + " -> " + u.conclusion + " " + std::to_string(u.cardinality) + " " + u.condition_hit);
  }
  return o;
}

Outcome witness_criterion() {
  Outcome o;
  for (long a : {1L, 2L, -3L}) {
    const WitnessPair w = tt8_witness(ExactScalar(a), ExactScalar(1));
    const PairCheck c = verify_pair(w.p, w.f, w.g);
    if (!c.holds || !c.distinct || c.unreduced_numerator_degree > 45)
      o.fail("a = " + std::to_string(a) + ": degree " + std::to_string(c.unreduced_numerator_degree));
  }
  return o;
}

Outcome quartic_criterion() {
  Outcome o;
  std::mt19937_64 rng(20261018);
  int done = 0, engineered_zero = 0;
  while (done < 100) {
    const Rational a3 = random_rational(rng, 6, false);
    const Rational a2 = random_rational(rng, 6, false);
    const Rational a0 = random_rational(rng, 6, false);
    const Rational a1 = done % 2 == 0 ? random_rational(rng, 6, false) : Rational(a2 * a3 / 2 - a3 * a3 * a3 / 8);
    const Poly p{a0, a1, a2, a3, Rational(1)};
    const StructureReport r = build_structure(p);
    if (r.k < 2) continue;
    ++done;
    // I computed here from the coefficients, independently of the decide module
    const Rational I = a3 * a3 * a3 - 4 * a2 * a3 + 8 * a1;
    if ((I != 0) != r.is_cip) o.fail(str(p) + ": I vs CIP");
    const Verdict v = decide(p, r, kCE);
    if (v.theorem_id != "ThmC" || v.status != (r.is_cip ? Status::Proven : Status::Refuted))
      o.fail(str(p) + ": verdict " + v.theorem_id);
    if (I != 0) continue;
    ++engineered_zero;
    const Rational beta = (a2 - a3 * a3 / 4) / 2;
    const Rational val = a0 - (a3 * a3 - 4 * a2) * (a3 * a3 - 4 * a2) / 64;
    const Poly sq{beta, a3 / 2, Rational(1)};
    if (!(p - Poly::constant(ExactScalar(val)) == sq * sq)) o.fail(str(p) + ": not a shifted square");
    bool found = false;
    for (const auto& c : r.columns)
      if (c.value_class.members.size() == 2 && c.value_class.exact_value && *c.value_class.exact_value == ExactScalar(val))
        found = true;
    if (!found) o.fail(str(p) + ": no pair column at the shared value");
  }
  if (engineered_zero < 30) o.fail("too few I = 0 instances");
  return o;
}

Outcome remark_criterion() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::vector<Poly> polys;
  while (polys.size() < 200) polys.push_back(random_instance(rng, 8, true));
  for (const Poly& p : family_instances(20)) polys.push_back(p);
  int ncip = 0;
  for (const Poly& p : polys) {
    const StructureReport r = build_structure(p);
    const int k = squarefree_part(p.derivative()).degree();
    const bool cip = squarefree_part(critical_value_poly(p)).degree() == k;
    if (r.k != k || r.is_cip != cip) o.fail(str(p) + ": k or CIP");
    if (cip != (r.t == k && r.t_prime == k)) o.fail(str(p) + ": CIP <=> t = t' = k");
    ncip += cip ? 0 : 1;
  }
  if (ncip < 40) o.fail("too few NCIP instances: " + std::to_string(ncip));
  return o;
}

bool threshold_theorem(const std::string& id) {
  return id == "ThmA" || id == "ThmB" || id == "Thm3_1" || id == "Thm3_2" || id == "Thm3_3" || id == "Thm3_4";
}

Outcome invariance_criterion() {
  Outcome o;
  std::mt19937_64 rng(99);
  std::vector<Poly> polys = family_instances(15);
  while (polys.size() < 50) polys.push_back(random_instance(rng, 7, false));
  int compared = 0;
  for (const Poly& p : polys) {
    const Rational a = random_rational(rng, 5, true), b = random_rational(rng, 5, false);
    const Rational c = random_rational(rng, 5, true), d = random_rational(rng, 5, false);
    const Poly q = ExactScalar(c) * p.compose(Poly{b, a}) + Poly::constant(ExactScalar(d));
    const StructureReport rp = build_structure(p), rq = build_structure(q);
    if (rp.k != rq.k || rp.s != rq.s || rp.t != rq.t || rp.t_prime != rq.t_prime || rp.is_cip != rq.is_cip)
      o.fail(str(p) + ": invariants changed");
    for (const Query& query : {kCM, kKM}) {
      const Verdict vp = decide(p, rp, query), vq = decide(q, rq, query);
      if (!threshold_theorem(vp.theorem_id) && !threshold_theorem(vq.theorem_id)) continue;
      ++compared;
      if (vp.status != vq.status || vp.theorem_id != vq.theorem_id)
        o.fail(str(p) + ": " + vp.theorem_id + " vs " + vq.theorem_id);
    }
  }
  if (compared < 20) o.fail("too few threshold verdicts compared: " + std::to_string(compared));
  return o;
}

oracle::Complex midpoint(const ComplexBall& b) {
  return {oracle::to_real(b.mid_re().to_rational()), oracle::to_real(b.mid_im().to_rational())};
}

/// Oracle partition of the critical points by value, matched against the
/// certified columns.
void clustering_check(const Poly& p, Outcome& o) {
  using oracle::Real;
  const auto clusters = oracle::clustered_roots(oracle::embedded_coefficients(p.derivative()));
  const auto pc = oracle::embedded_coefficients(p);
  std::vector<oracle::Complex> values;
  for (const auto& c : clusters) values.push_back(oracle::horner(pc, c.centre));
  std::vector<int> group(values.size(), -1);
  int groups = 0;
  const Real tie("1e-40"), gap("1e-20");
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Real dist = abs(values[i] - values[j]);
      if (dist < tie) group[i] = group[j];
      else if (dist < gap) o.fail(str(p) + ": oracle cannot separate values");
    }
    if (group[i] < 0) group[i] = groups++;
  }

  const StructureReport r = build_structure(p);
  if (r.k != static_cast<int>(clusters.size())) o.fail(str(p) + ": k differs from oracle");
  if (static_cast<int>(r.columns.size()) != groups) o.fail(str(p) + ": column count differs from oracle");
  std::vector<int> used(clusters.size(), 0);
  std::map<int, int> group_of_column;
  for (std::size_t ci = 0; ci < r.columns.size(); ++ci) {
    for (const auto& m : r.columns[ci].value_class.members) {
      const oracle::Complex z = midpoint(m.root.ball);
      std::size_t best = 0;
      for (std::size_t j = 1; j < clusters.size(); ++j)
        if (abs(clusters[j].centre - z) < abs(clusters[best].centre - z)) best = j;
      if (!(abs(clusters[best].centre - z) < Real("1e-15"))) o.fail(str(p) + ": critical point not near oracle");
      if (clusters[best].multiplicity != m.q) o.fail(str(p) + ": multiplicity differs from oracle");
      ++used[best];
      auto [it, fresh] = group_of_column.emplace(static_cast<int>(ci), group[best]);
      if (!fresh && it->second != group[best]) o.fail(str(p) + ": column splits an oracle group");
    }
  }
  if (std::count(used.begin(), used.end(), 1) != static_cast<long>(used.size()))
    o.fail(str(p) + ": points do not match oracle one to one");
  std::vector<int> gs;
  for (const auto& [c, g] : group_of_column) gs.push_back(g);
  std::sort(gs.begin(), gs.end());
  if (std::adjacent_find(gs.begin(), gs.end()) != gs.end()) o.fail(str(p) + ": two columns share an oracle group");

  std::vector<int> qsums, exps;
  for (const auto& c : r.columns) qsums.push_back(c.value_class.q_sum);
  for (const auto& f : squarefree_decomposition(critical_value_poly(p)))
    for (int i = 0; i < f.factor.degree(); ++i) exps.push_back(f.multiplicity);
  std::sort(qsums.begin(), qsums.end());
  std::sort(exps.begin(), exps.end());
  if (qsums != exps) o.fail(str(p) + ": q-sums differ from the exponents of D");
}

Outcome clustering_criterion() {
  Outcome o;
  for (const auto& e : cli::corpus()) clustering_check(parse_poly(e.source), o);
  std::mt19937_64 rng(2026);
  for (int i = 0; i < 100; ++i) clustering_check(random_instance(rng, 8, false), o);
  return o;
}

Outcome family_criterion() {
  Outcome o;
  const std::tuple<int, int, int> cases[] = {{2, 7, 3}, {3, 10, 4}};
  for (const auto& [m, n, t] : cases) {
    const StructureReport r = build_structure(parse_poly(cli::family_source(n, m, Rational(2), Rational(1))));
    if (r.t != t || r.t_prime != t)
      o.fail("(m, n) = (" + std::to_string(m) + ", " + std::to_string(n) + "): t = " + std::to_string(r.t));
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {"corpus exactness", corpus_exactness, 5},
      {"verdict regression", verdict_regression, 10},
      {"URS classification", urs_criterion, 0},
      {"witness identity", witness_criterion, 0},
      {"quartic dichotomy", quartic_criterion, 0},
      {"CIP iff t = t' = k", remark_criterion, 0},
      {"affine invariance", invariance_criterion, 0},
      {"clustering oracle", clustering_criterion, 0},
      {"family t values", family_criterion, 0},
  };
  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.fail(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.fail("took " + std::to_string(secs) + " s");
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << index << ". " << c.name;
    std::cout.precision(2);
    std::cout << std::fixed << " (" << secs << " s)";
    if (!o.ok) std::cout << ": " << o.detail;
    std::cout << std::endl;
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
