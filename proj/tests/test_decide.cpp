#include "doctest.h"

#include "upcert/decide.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"

using namespace upcert;

namespace {

const char* kEx41 = "1/6 z^6 - 186/53 z^5 + 1565/53 z^4 - 6630/53 z^3 + 28967/106 z^2 - 14460/53 z + 1";
const char* kEx42 =
    "1/7 z^7 - 23105/8379 z^6 + 19279/931 z^5 - 4285/57 z^4 + 122428/931 z^3 - 253880/2793 z^2 + 1";
const char* kEx43 =
    "z^7/7 - 4071 z^6/1316 + 1277 z^5/47 - 81325 z^4/658 + 101342 z^3/329 - 540647 z^2/1316 + 90030 z/329 + 1";
const char* kEx44 = "z^6/6 - (6/5 + 2i/5) z^5 + (5/2 + 3i) z^4 - 22i/3 z^3 - (11/2 - 6i) z^2 + 6z";
const char* kEx46 =
    "1/6 z^6 + (-11/20 + 1/4 i sqrt(19/5)) z^5 + (-9/16 - i sqrt(95)/16) z^4 + (11/3 - i sqrt(95)/3) z^3 + "
    "(-7/2 + i sqrt(95)/2) z^2 + 1";
const char* kEx47P1 = "1/2366 z^8 (z-1)^5 (169 z + 8 i sqrt(35) - 107) + 1";
const char* kEx47P2 = "1/3078 z^11 (z-1)^7 (162 z + i sqrt(1463) - 101) + 1";

constexpr Query kCM{FieldKind::Complex, FunctionClass::Meromorphic};
constexpr Query kCE{FieldKind::Complex, FunctionClass::Entire};
constexpr Query kKM{FieldKind::Padic, FunctionClass::Meromorphic};
constexpr Query kKE{FieldKind::Padic, FunctionClass::Entire};

struct Analyzed {
  Poly p;
  StructureReport r;
};

Analyzed analyze(const char* src) {
  Poly p = parse_poly(src);
  StructureReport r = build_structure(p);
  return {p, r};
}

Verdict run(const Analyzed& a, const Query& q) { return decide(a.p, a.r, q); }

bool all_ok(const Verdict& v) {
  for (const auto& c : v.certificate)
    if (!c.ok) return false;
  return !v.certificate.empty();
}

}  // namespace

TEST_CASE("threshold theorems on the printed examples") {
  const Analyzed e41 = analyze(kEx41);
  Verdict v = run(e41, kKM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_3");
  CHECK(all_ok(v));

  const Analyzed e42 = analyze(kEx42);
  v = run(e42, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_4");
  v = run(e42, kKM);
  CHECK(v.theorem_id == "Thm3_3");

  const Analyzed e44 = analyze(kEx44);
  v = run(e44, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_4");
}

TEST_CASE("three-column rule: Ex4.3 via the inequality, Ex4.4 via t' >= 4") {
  const Analyzed e43 = analyze(kEx43);
  const Verdict v = run(e43, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_5");
  CHECK(all_ok(v));
  REQUIRE(v.attempts.size() == 3);
  CHECK(v.attempts[0].theorem == "Thm3_4");

  const Analyzed e44 = analyze(kEx44);
  const RuleResult res = check_thm_3_7(e44.r, e44.p);
  CHECK(res.outcome == RuleOutcome::Proven);
  CHECK(res.certificate.back().condition == "(iii) NCIP with t' >= 4");
}

TEST_CASE("three-column rule needs a multiple zero among the chosen points") {
  const Analyzed e41 = analyze(kEx41);
  const RuleResult res = check_thm_3_7(e41.r, e41.p);
  CHECK(res.outcome == RuleOutcome::Inapplicable);
  CHECK(res.reason.find("max(q1,q2,q3) = 1 < 2") != std::string::npos);
}

TEST_CASE("simple-point rule proves Ex4.6") {
  const Analyzed e46 = analyze(kEx46);
  const Verdict v = run(e46, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_6");
  CHECK(all_ok(v));
}

TEST_CASE("simple-point rule also covers Ex4.1 over C") {
  const Analyzed e41 = analyze(kEx41);
  const Verdict v = run(e41, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_6");
  CHECK(all_ok(v));
}

TEST_CASE("band rule on Ex4.7") {
  const Analyzed p1 = analyze(kEx47P1);
  Verdict v = run(p1, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_7");
  CHECK(v.certificate.back().value == "4 < 5/2 + 1/2*sqrt(17)");
  v = run(p1, kKM);
  CHECK(v.theorem_id == "Thm3_7");

  const Analyzed p2 = analyze(kEx47P2);
  v = run(p2, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "Thm3_7");
  CHECK(v.certificate.back().value == "6 < 4 + sqrt(14)");
}

TEST_CASE("band arithmetic") {
  CHECK(band_upper_text(6) == "2 + sqrt(2)");
  CHECK(compare_with_band_upper(6, 3) < 0);
  CHECK(compare_with_band_upper(6, 4) > 0);
  CHECK(compare_with_band_upper(7, 4) < 0);
  CHECK(compare_with_band_upper(7, 5) > 0);
  CHECK(compare_with_band_upper(10, 7) < 0);
  CHECK(compare_with_band_upper(10, 8) > 0);
  // D = 1 at q1 = 5: U = 2 exactly
  CHECK(compare_with_band_upper(5, 2) == 0);
  CHECK(band_upper_text(5) == "2");
}

TEST_CASE("k <= 1 is refuted for every query") {
  const Analyzed a = analyze("z^7");
  for (const Query& q : {kCM, kCE, kKM, kKE}) {
    const Verdict v = run(a, q);
    CHECK(v.status == Status::Refuted);
    CHECK(v.theorem_id == "Remark1_2");
  }
  const Analyzed b = analyze("3(z - 1/2)^5 + 7");
  CHECK(run(b, kKE).theorem_id == "Remark1_2");
}

TEST_CASE("degree one and low degrees") {
  const Analyzed lin = analyze("2z + 5");
  CHECK(run(lin, kCM).status == Status::Proven);
  CHECK(run(lin, kKE).theorem_id == "Degree1");
  const Analyzed cubic = analyze("z^3 - 3z");
  Verdict v = run(cubic, kCM);
  CHECK(v.status == Status::Refuted);
  CHECK(v.theorem_id == "LiYang_deg23");
  CHECK(run(cubic, kCE).status == Status::Refuted);
  // padic: CIP with k = 2 and q = (1,1)
  v = run(cubic, kKM);
  CHECK(v.status == Status::Refuted);
  CHECK(v.theorem_id == "ThmB");
}

TEST_CASE("quartics") {
  const Analyzed pos = analyze("z^4 + z");
  Verdict v = run(pos, kCE);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "ThmC");
  CHECK(v.certificate[2].value == "1");
  v = run(pos, kCM);
  CHECK(v.status == Status::Refuted);
  CHECK(v.theorem_id == "ThmC");

  const Analyzed neg = analyze("z^4 - 2z^2");
  v = run(neg, kCE);
  CHECK(v.status == Status::Refuted);
  CHECK(v.certificate.back().value == "-1");

  // scaling by the leading coefficient and a general a3
  const Analyzed gen = analyze("3z^4 + 6z^3 - 9z^2 + z - 2");
  const ExactScalar a3 = 2, a2 = -3, a1 = Rational(1, 3);
  const bool nonzero = !(a3 * a3 * a3 / ExactScalar(8) - a2 * a3 / ExactScalar(2) + a1).is_zero();
  CHECK((run(gen, kCE).status == Status::Proven) == nonzero);
}

TEST_CASE("theorem A and B as complete rules") {
  // P' = z^2 (z-1)(z-2): CIP, q = (2,1,1)
  const Analyzed a = analyze("z^5/5 - 3z^4/4 + 2z^3/3 + 1");
  REQUIRE(a.r.is_cip);
  Verdict v = run(a, kCM);
  CHECK(v.status == Status::Proven);
  CHECK(v.theorem_id == "ThmA");
  CHECK(v.certificate.back().value == "5 > 4");
  CHECK(run(a, kKM).theorem_id == "ThmB");

  // k = 2 with q = (1,3): P' = z^3 (z-1)
  const Analyzed b = analyze("z^5/5 - z^4/4");
  REQUIRE(b.r.is_cip);
  REQUIRE(b.r.k == 2);
  v = run(b, kKM);
  CHECK(v.status == Status::Refuted);
  CHECK(v.theorem_id == "ThmB");
  // refuting UPM does not settle UPE
  CHECK(run(b, kKE).status == Status::Unknown);

  // k = 2 with q = (2,2): P' = z^2 (z-1)^2
  const Analyzed c = analyze("z^5/5 - z^4/2 + z^3/3");
  REQUIRE(c.r.is_cip);
  CHECK(run(c, kKM).status == Status::Proven);
}

TEST_CASE("quintic rule refutes with a verified witness") {
  const Analyzed a = analyze("z^5 + 2z^4 + z^3 + 1");
  Verdict v = run(a, kCM);
  CHECK(v.status == Status::Refuted);
  CHECK(v.theorem_id == "Thm_tt8");
  REQUIRE(v.witness.has_value());
  const PairCheck pc = verify_pair(v.witness->p, v.witness->f, v.witness->g);
  CHECK(pc.holds);
  CHECK(pc.distinct);
  CHECK(v.witness->p == a.p);

  // same shape scaled: the witness is for the monic polynomial
  const Analyzed b = analyze("2z^5 + 4z^4 + 2z^3 + 3");
  v = run(b, kCM);
  CHECK(v.theorem_id == "Thm_tt8");
  REQUIRE(v.witness.has_value());
  CHECK(ExactScalar(2) * v.witness->p == b.p);

  // shape mismatch
  CHECK(check_tt8(parse_poly("z^5 + z^2 + 1"), build_structure(parse_poly("z^5 + z^2 + 1"))).outcome ==
        RuleOutcome::Inapplicable);
  // entire queries are not settled by a UPM refutation
  CHECK(run(a, kCE).status != Status::Refuted);
}

TEST_CASE("monotonicity between the two function classes") {
  for (const char* src : {kEx41, kEx42, kEx43, kEx47P1, "z^4 + z", "z^4 - 2z^2", "z^5 + 2z^4 + z^3 + 1",
                          "z^5/5 - z^4/4", "z^7 + 2z^5 + z^3 + 1"}) {
    const Analyzed a = analyze(src);
    for (FieldKind f : {FieldKind::Complex, FieldKind::Padic}) {
      const Verdict m = run(a, {f, FunctionClass::Meromorphic});
      const Verdict e = run(a, {f, FunctionClass::Entire});
      const std::string source = src;
      CAPTURE(source);
      if (m.status == Status::Proven) CHECK(e.status == Status::Proven);
      if (e.status == Status::Refuted) CHECK(m.status == Status::Refuted);
    }
  }
}

TEST_CASE("certificates replay") {
  for (const char* src : {kEx41, kEx43, kEx46, kEx47P1, "z^4 + z", "z^5 + 2z^4 + z^3 + 1", "z^5/5 - z^4/4"}) {
    const Analyzed a = analyze(src);
    for (const Query& q : {kCM, kCE, kKM, kKE}) {
      const Verdict v = run(a, q);
      const std::string source = src;
      CAPTURE(source);
      CHECK(replay_certificate(a.p, a.r, v));
      Verdict tampered = v;
      if (!tampered.certificate.empty()) {
        tampered.certificate[0].value += "x";
        CHECK_FALSE(replay_certificate(a.p, a.r, tampered));
      }
    }
  }
}

TEST_CASE("multiple zeros gate the sufficient rules") {
  // NCIP with a double zero: P = z^2 (z-1)^2 (z-2)^2 has P(0)=P(1)=P(2)
  const Analyzed a = analyze("z^2 (z-1)^2 (z-2)^2");
  REQUIRE_FALSE(a.r.p_squarefree);
  const Verdict v = run(a, kCM);
  CHECK(v.status == Status::Unknown);
  bool gated = false;
  for (const auto& at : v.attempts) gated = gated || at.outcome.find("gated") != std::string::npos;
  CHECK(gated);
}

TEST_CASE("unique range sets") {
  const Analyzed p1 = analyze(kEx47P1);
  URSReport u = urs_check(p1.p, p1.r, run(p1, kCM));
  CHECK(u.applicable);
  CHECK(u.p == 3);
  CHECK(u.m_list == std::vector<int>{8, 5, 1});
  CHECK(u.condition_hit == "ii");
  CHECK(u.ursm_threshold_met);
  CHECK_FALSE(u.ursm_im_threshold_met);
  CHECK(u.conclusion == "URSM");
  CHECK(u.cardinality == 14);

  const Analyzed p2 = analyze(kEx47P2);
  u = urs_check(p2.p, p2.r, run(p2, kCM));
  CHECK(u.m_list == std::vector<int>{11, 7, 1});
  CHECK(u.condition_hit == "ii");
  CHECK(u.ursm_im_threshold_met);
  CHECK(u.conclusion == "URSM-IM");
  CHECK(u.cardinality == 19);

  const Analyzed z0 = analyze(kEx44);  // constant term 0
  u = urs_check(z0.p, z0.r, run(z0, kCM));
  CHECK_FALSE(u.applicable);
  CHECK(u.reason == "constant term a0 = 0");

  const Analyzed one = analyze("z^9 + 1");  // p = 1
  u = urs_check(one.p, one.r, run(one, kCM));
  CHECK(u.condition_hit.empty());
  CHECK(u.conclusion == "no conclusion");

  CHECK_THROWS_AS(urs_check(p1.p, p1.r, run(p1, kKM)), InvalidArgument);
}

TEST_CASE("verdict rendering") {
  const Analyzed a = analyze("z^4 + z");
  const Verdict v = run(a, kCE);
  const std::string text = render_verdict(a.p, v, RenderFormat::text);
  CHECK(text.find("UPE in C: Proven (ThmC)") != std::string::npos);
  const std::string json = render_verdict(a.p, v, RenderFormat::json);
  CHECK(json.find("\"schema\": \"verdict.v1\"") != std::string::npos);
  CHECK(render_verdict(a.p, run(a, kCE), RenderFormat::json) == json);
}
