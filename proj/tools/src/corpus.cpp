#include "upcert/cli/corpus.hpp"

#include <atomic>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"

namespace upcert::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr Query kCM{FieldKind::Complex, FunctionClass::Meromorphic};
constexpr Query kCE{FieldKind::Complex, FunctionClass::Entire};
constexpr Query kKM{FieldKind::Padic, FunctionClass::Meromorphic};

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> c;
  c.push_back({"ex4_1",
               "1/6 z^6 - 186/53 z^5 + 1565/53 z^4 - 6630/53 z^3 + 28967/106 z^2 - 14460/53 z + 1",
               6, 5, 3, 3, false,
               {{"1", "-15497/159"},
                {"241/53", "-5030097474637/66493083387"},
                {"3", "-3979/53"},
                {"4", "-12041/159"},
                {"5", "-12041/159"}},
               {{kKM, Status::Proven, "Thm3_3", ""}, {kCM, Status::Proven, "Thm3_6", ""}},
               std::nullopt});
  c.push_back({"ex4_2",
               "1/7 z^7 - 23105/8379 z^6 + 19279/931 z^5 - 4285/57 z^4 + 122428/931 z^3 - 253880/2793 z^2 + 1",
               7, 6, 4, 4, false,
               {{"0", "1"},
                {"1", "-129701/8379"},
                {"2", "-10691/1197"},
                {"12694/2793", "-858908850511840736130799715/27842988283701433932953997"},
                {"4", "-263621/8379"},
                {"5", "-263621/8379"}},
               {{kCM, Status::Proven, "Thm3_4", ""}, {kKM, Status::Proven, "Thm3_3", ""}},
               std::nullopt});
  c.push_back({"ex4_3",
               "z^7/7 - 4071 z^6/1316 + 1277 z^5/47 - 81325 z^4/658 + 101342 z^3/329 - 540647 z^2/1316 + "
               "90030 z/329 + 1",
               7, 5, 3, 3, false,
               {{"1", "23845/329"},
                {"3001/658", "66183058741702202837617/747668856695865052928"},
                {"3", "4223/47"},
                {"4", "4147/47"},
                {"5", "4147/47"}},
               {{kCM, Status::Proven, "Thm3_5", ""}},
               std::nullopt});
  c.push_back({"ex4_4",
               "z^6/6 - (6/5 + 2i/5) z^5 + (5/2 + 3i) z^4 - 22i/3 z^3 - (11/2 - 6i) z^2 + 6z",
               6, 4, 3, 4, false,
               {{"i", "9/10 + 9/5*i"}, {"3", "9/10 + 9/5*i"}, {"1", "59/30 + 19/15*i"}, {"2", "34/15 + 8/15*i"}},
               {{kCM, Status::Proven, "Thm3_4", ""}},
               std::nullopt});
  c.push_back({"ex4_5", family_source(11, 4, 2, 1), 11, 9, 5, 5, false, {{"0", "1"}},
               {{kCM, Status::Proven, "Thm3_4", ""}, {kKM, Status::Proven, "Thm3_3", ""}}, std::nullopt});
  c.push_back({"ex4_6",
               "1/6 z^6 + (-11/20 + 1/4 i sqrt(19/5)) z^5 + (-9/16 - i sqrt(95)/16) z^4 + "
               "(11/3 - i sqrt(95)/3) z^3 + (-7/2 + i sqrt(95)/2) z^2 + 1",
               6, 5, 3, 3, false,
               {{"0", "1"}, {"-2", "-346/15 + 31/15*i*sqrt(95)"}, {"7/4 - 1/4*i*sqrt(95)", "-346/15 + 31/15*i*sqrt(95)"}},
               {{kCM, Status::Proven, "Thm3_6", ""}},
               std::nullopt});
  c.push_back({"ex4_7_p1", "1/2366 z^8 (z-1)^5 (169 z + 8 i sqrt(35) - 107) + 1", 14, 3, 2, 3, false,
               {{"0", "1"}, {"1", "1"}},
               {{kCM, Status::Proven, "Thm3_7", "4 < 5/2 + 1/2*sqrt(17)"}, {kKM, Status::Proven, "Thm3_7", ""}},
               ExpectedURS{"URSM", 14, "ii"}});
  c.push_back({"ex4_7_p2", "1/3078 z^11 (z-1)^7 (162 z + i sqrt(1463) - 101) + 1", 19, 3, 2, 3, false,
               {{"0", "1"}, {"1", "1"}},
               {{kCM, Status::Proven, "Thm3_7", "6 < 4 + sqrt(14)"}},
               ExpectedURS{"URSM-IM", 19, "ii"}});
  c.push_back({"tt7_pos", "z^4 + z", 4, 3, 3, 3, true, {},
               {{kCE, Status::Proven, "ThmC", ""}, {kCM, Status::Refuted, "ThmC", ""}}, std::nullopt});
  c.push_back({"tt7_neg", "z^4 - 2z^2", 4, 3, 1, 1, false, {{"1", "-1"}, {"-1", "-1"}, {"0", "0"}},
               {{kCE, Status::Refuted, "ThmC", "-1"}}, std::nullopt});
  c.push_back({"tt8_w", "z^5 + 2z^4 + z^3 + 1", 5, 3, 2, 3, false,
               {{"0", "1"}, {"-1", "1"}, {"-3/5", "3017/3125"}},
               {{kCM, Status::Refuted, "Thm_tt8", ""}}, std::nullopt});
  c.push_back({"family_m2_n7", family_source(7, 2, 2, 1), 7, 5, 3, 3, false, {{"0", "1"}},
               {{kCM, Status::Proven, "Thm3_5", ""}, {kKM, Status::Proven, "Thm3_3", ""}}, std::nullopt});
  c.push_back({"family_m3_n10", family_source(10, 3, 2, 1), 10, 7, 4, 4, false, {{"0", "1"}, {"-1", "1"}},
               {{kCM, Status::Proven, "Thm3_4", ""}}, std::nullopt});
  return c;
}

const Column* column_of(const StructureReport& r, const ExactScalar& x) {
  for (const auto& col : r.columns)
    for (const auto& m : col.value_class.members)
      if (m.root.exact_value && *m.root.exact_value == x) return &col;
  return nullptr;
}

}  // namespace

std::string family_source(int n, int m, const Rational& a, const Rational& c) {
  if (m <= 0 || n <= 0 || std::gcd(m, n) != 1) throw InvalidArgument("family needs gcd(m, n) = 1");
  if (n < 2 * m + 3) throw InvalidArgument("family needs n >= 2m + 3");
  if (a == 0) throw InvalidArgument("family needs a != 0");
  const Rational b = a * a / 4;
  const std::string src = "z^" + std::to_string(n) + " + (" + to_string(a) + ") z^" + std::to_string(n - m) + " + (" +
                          to_string(b) + ") z^" + std::to_string(n - 2 * m) + " + (" + to_string(c) + ")";
  const Poly p = parse_poly(src);
  if (gcd(p, p.derivative()).degree() > 0) throw InvalidArgument("family member " + src + " has a multiple zero");
  return src;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

EntryResult check_entry(const CorpusEntry& e, const PrecisionConfig& config) {
  EntryResult res;
  res.id = e.id;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) res.mismatches.push_back(what);
  };
  const Poly p = parse_poly(e.source);
  const StructureReport r = build_structure(p, config);
  expect(r.n == e.n, "n = " + std::to_string(r.n) + ", expected " + std::to_string(e.n));
  expect(r.k == e.k, "k = " + std::to_string(r.k) + ", expected " + std::to_string(e.k));
  expect(r.t == e.t, "t = " + std::to_string(r.t) + ", expected " + std::to_string(e.t));
  expect(r.t_prime == e.t_prime, "t' = " + std::to_string(r.t_prime) + ", expected " + std::to_string(e.t_prime));
  expect(r.is_cip == e.is_cip, std::string("CIP flag ") + (r.is_cip ? "CIP" : "NCIP"));
  expect(r.certification == Certification::Certified, "structure is not certified");
  for (const auto& v : e.values) {
    const Column* col = column_of(r, parse_scalar(v.point, p.field()));
    if (!col) {
      res.mismatches.push_back("critical point " + v.point + " not found");
      continue;
    }
    const ExactScalar want = parse_scalar(v.value, p.field());
    expect(col->value_class.exact_value && *col->value_class.exact_value == want,
           "P(" + v.point + ") = " +
               (col->value_class.exact_value ? col->value_class.exact_value->to_string() : "inexact") +
               ", expected " + v.value);
  }
  Json verdicts = Json::array();
  for (const auto& ev : e.verdicts) {
    const Verdict v = decide(p, r, ev.query, {config});
    const std::string tag = to_string(ev.query.field) + "/" + to_string(ev.query.function_class);
    expect(v.status == ev.status && v.theorem_id == ev.theorem,
           tag + ": " + to_string(v.status) + "(" + v.theorem_id + "), expected " + to_string(ev.status) + "(" +
               ev.theorem + ")");
    if (!ev.last_value.empty())
      expect(!v.certificate.empty() && v.certificate.back().value == ev.last_value,
             tag + ": last certificate value differs from " + ev.last_value);
    if (v.witness) {
      const PairCheck pc = verify_pair(v.witness->p, v.witness->f, v.witness->g);
      expect(pc.holds && pc.distinct, tag + ": witness does not verify");
    }
    expect(replay_certificate(p, r, v, {config}), tag + ": certificate replay differs");
    verdicts.push_back(Json::parse(render_verdict(p, v, RenderFormat::json)));
    if (e.urs && ev.query.field == FieldKind::Complex && ev.query.function_class == FunctionClass::Meromorphic) {
      const URSReport u = urs_check(p, r, v);
      expect(u.conclusion == e.urs->conclusion && u.cardinality == e.urs->cardinality &&
                 u.condition_hit == e.urs->condition,
             "URS: " + u.conclusion + " " + std::to_string(u.cardinality) + " (" + u.condition_hit + ")");
      verdicts.push_back(Json::parse(render_urs(p, u, RenderFormat::json)));
    }
  }
  const Json doc{{"id", e.id},
                 {"pass", res.pass()},
                 {"mismatches", res.mismatches},
                 {"structure", Json::parse(render_tables(r, RenderFormat::json))},
                 {"verdicts", verdicts}};
  res.document = doc.dump(2);
  return res;
}

std::vector<EntryResult> run_corpus(const std::string& filter, int jobs, const PrecisionConfig& config) {
  std::vector<const CorpusEntry*> selected;
  for (const auto& e : corpus())
    if (e.id.find(filter) != std::string::npos) selected.push_back(&e);
  std::vector<EntryResult> results(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      try {
        results[i] = check_entry(*selected[i], config);
      } catch (const std::exception& ex) {
        results[i].id = selected[i]->id;
        results[i].mismatches.push_back(std::string("error: ") + ex.what());
        results[i].document = Json{{"id", selected[i]->id}, {"pass", false}, {"error", ex.what()}}.dump(2);
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(selected.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < n; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace upcert::cli
