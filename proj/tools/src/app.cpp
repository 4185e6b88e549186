#include "upcert/cli/app.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "upcert/cli/corpus.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"

namespace upcert::cli {

namespace {

struct Options {
  std::string input;
  std::string file;
  std::string format = "text";
  long precision = 128;
  long max_precision = 8192;
  std::string field = "complex";
  std::string fclass = "meromorphic";
  std::string poly;
  std::string f;
  std::string g;
  std::string filter;
  int jobs = 1;
};

std::string read_input(const Options& o) {
  if (!o.file.empty()) {
    std::ifstream in(o.file);
    if (!in) throw InvalidArgument("cannot read " + o.file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  if (o.input.empty()) throw InvalidArgument("no polynomial given");
  return o.input;
}

PrecisionConfig precision(const Options& o) {
  if (o.precision < 32 || o.max_precision < o.precision)
    throw InvalidArgument("need 32 <= --precision <= --max-precision");
  return {o.precision, o.max_precision};
}

RenderFormat format(const Options& o) { return o.format == "json" ? RenderFormat::json : RenderFormat::text; }

Query query(const Options& o) {
  return {o.field == "padic" ? FieldKind::Padic : FieldKind::Complex,
          o.fclass == "entire" ? FunctionClass::Entire : FunctionClass::Meromorphic};
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Poly p = parse_poly(read_input(o));
  out << render_tables(build_structure(p, precision(o)), format(o));
  if (format(o) == RenderFormat::json) out << '\n';
  return kExitOk;
}

int cmd_decide(const Options& o, std::ostream& out) {
  const PrecisionConfig cfg = precision(o);
  const Poly p = parse_poly(read_input(o));
  const Verdict v = decide(p, build_structure(p, cfg), query(o), {cfg});
  out << render_verdict(p, v, format(o));
  if (format(o) == RenderFormat::json) out << '\n';
  return v.status == Status::Unknown ? kExitUndecided : kExitOk;
}

int cmd_urs(const Options& o, std::ostream& out) {
  const PrecisionConfig cfg = precision(o);
  const Poly p = parse_poly(read_input(o));
  const StructureReport r = build_structure(p, cfg);
  const URSReport u = urs_check(p, r, decide(p, r, {FieldKind::Complex, FunctionClass::Meromorphic}, {cfg}));
  out << render_urs(p, u, format(o));
  if (format(o) == RenderFormat::json) out << '\n';
  const bool decided = u.conclusion == "URSM" || u.conclusion == "URSM-IM" || u.conclusion == "not a URSM";
  return decided ? kExitOk : kExitUndecided;
}

RationalFunction promoted(const RationalFunction& r, const FieldPtr& f) {
  return {r.num().promoted(f), r.den().promoted(f)};
}

int cmd_verify_pair(const Options& o, std::ostream& out) {
  Poly p = parse_poly(o.poly);
  const std::vector<std::string> texts{o.f, o.g};
  const ParsedExpressions fg = parse_expressions(texts, "u");
  const FieldPtr field = common_field(p.field(), fg.field);
  p = p.promoted(field);
  const RationalFunction f = promoted(fg.values[0], field), g = promoted(fg.values[1], field);
  const PairCheck c = verify_pair(p, f, g);
  if (format(o) == RenderFormat::json) {
    out << nlohmann::ordered_json{{"schema", "pair.v1"},
                                  {"polynomial", p.to_string()},
                                  {"f", f.to_string()},
                                  {"g", g.to_string()},
                                  {"holds", c.holds},
                                  {"distinct", c.distinct},
                                  {"unreduced_numerator_degree", c.unreduced_numerator_degree}}
               .dump(2)
        << '\n';
  } else {
    out << "P(z) = " << p.to_string() << "\nf(u) = " << f.to_string() << "\ng(u) = " << g.to_string()
        << "\nP(f) = P(g): " << (c.holds ? "yes" : "no") << "\nf != g: " << (c.distinct ? "yes" : "no")
        << "\nunreduced numerator degree: " << c.unreduced_numerator_degree << '\n';
  }
  return c.holds && c.distinct ? kExitOk : kExitUndecided;
}

int cmd_corpus(const Options& o, std::ostream& out) {
  const std::vector<EntryResult> results = run_corpus(o.filter, o.jobs, precision(o));
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.pass() ? 1 : 0;
  if (format(o) == RenderFormat::json) {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& r : results) entries.push_back(nlohmann::ordered_json::parse(r.document));
    out << nlohmann::ordered_json{{"schema", "corpus.v1"},
                                  {"entries", entries},
                                  {"passed", passed},
                                  {"total", results.size()}}
               .dump(2)
        << '\n';
  } else {
    for (const auto& r : results) {
      out << (r.pass() ? "PASS " : "FAIL ") << r.id << '\n';
      for (const auto& m : r.mismatches) out << "     " << m << '\n';
    }
    out << passed << "/" << results.size() << " entries pass\n";
  }
  if (results.empty()) return kExitUndecided;
  return passed == results.size() ? kExitOk : kExitInternal;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Certified analysis of uniqueness polynomials", "upcert"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* c, bool input) {
    if (input) {
      c->add_option("input", o.input, "polynomial in z");
      c->add_option("--file", o.file, "read the polynomial from a file");
    }
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    c->add_option("--precision", o.precision, "starting precision in bits");
    c->add_option("--max-precision", o.max_precision, "precision ceiling in bits");
  };
  CLI::App* analyze = app.add_subcommand("analyze", "critical-value tables and t, t'");
  common(analyze, true);
  CLI::App* dec = app.add_subcommand("decide", "uniqueness verdict with certificate");
  common(dec, true);
  dec->add_option("--field", o.field, "complex or padic")->check(CLI::IsMember({"complex", "padic"}));
  dec->add_option("--class", o.fclass, "meromorphic or entire")->check(CLI::IsMember({"meromorphic", "entire"}));
  CLI::App* urs = app.add_subcommand("urs", "unique range set check");
  common(urs, true);
  CLI::App* pair = app.add_subcommand("verify-pair", "check P(f) = P(g) for rational functions in u");
  common(pair, false);
  pair->add_option("--poly", o.poly, "polynomial in z")->required();
  pair->add_option("--f", o.f, "rational function in u")->required();
  pair->add_option("--g", o.g, "rational function in u")->required();
  CLI::App* corp = app.add_subcommand("corpus", "run the embedded regression corpus");
  common(corp, false);
  corp->add_option("--filter", o.filter, "only entries whose id contains this text");
  corp->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  try {
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (dec->parsed()) return cmd_decide(o, out);
    if (urs->parsed()) return cmd_urs(o, out);
    if (pair->parsed()) return cmd_verify_pair(o, out);
    return cmd_corpus(o, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvalidArgument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const FieldMismatch& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const DivisionByZero& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitInput;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << '\n';
    return kExitPrecision;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace upcert::cli
