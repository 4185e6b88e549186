#include "upcert/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "json_util.hpp"
#include "upcert/errors.hpp"
#include "upcert/parse.hpp"

namespace upcert {

namespace {

using detail::Json;

Rational pow2_inverse(long bits) {
  Rational r(1);
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(bits));
  return r;
}

void evaluate_value(const Poly& p, CriticalPoint& c, long prec) {
  if (c.root.exact_value) {
    if (!c.exact_value) c.exact_value = p.eval(*c.root.exact_value);
    c.value_ball = c.exact_value->embed(prec);
  } else {
    c.value_ball = p.eval(c.root.ball.with_precision(std::max(prec, c.root.ball.precision())));
  }
}

// Connected components of the overlap graph, as lists of point indices in
// order of first appearance.
std::vector<std::vector<std::size_t>> overlap_components(const std::vector<CriticalPoint>& pts) {
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b)
      if (pts[a].value_ball.overlaps(pts[b].value_ball)) parent[find(a)] = find(b);
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    const std::size_t r = find(a);
    auto [it, fresh] = slot.emplace(r, out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(a);
  }
  return out;
}

// Lexicographic (Re, Im) order. When the real parts cannot be separated
// within a few refinements (conjugate pairs have equal real parts), the
// imaginary parts decide.
int lex_sign(const RootEnclosure& a, const RootEnclosure& b, const PrecisionConfig& config) {
  const long start = std::max({config.start_bits, a.ball.precision(), b.ball.precision()});
  const PrecisionConfig ordering{start, std::min(config.max_bits, 4 * start)};
  switch (certified_compare(a, b, ordering)) {
    case LexOrder::LessLex: return -1;
    case LexOrder::GreaterLex: return 1;
    case LexOrder::Equal: return 0;
    case LexOrder::Unknown: break;
  }
  RootEnclosure x = a, y = b;
  for (long prec = start; prec <= config.max_bits; prec *= 2) {
    const int im = x.ball.compare_im(y.ball);
    if (im != 0) return im;
    x = refine(x, pow2_inverse(prec), {prec, config.max_bits});
    y = refine(y, pow2_inverse(prec), {prec, config.max_bits});
  }
  throw PrecisionExhausted("canonical ordering of critical points did not resolve");
}

template <typename T, typename Less>
void insertion_sort(std::vector<T>& v, Less less) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    for (std::size_t j = i; j > 0 && less(v[j], v[j - 1]); --j) std::swap(v[j], v[j - 1]);
  }
}

std::vector<int> exponent_multiset(const Poly& d) {
  std::vector<int> out;
  for (const auto& f : squarefree_decomposition(d))
    for (int j = 0; j < f.factor.degree(); ++j) out.push_back(f.multiplicity);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<ValueClass> cluster_critical_values(const Poly& p, std::vector<CriticalPoint> points, const Poly& d,
                                                const PrecisionConfig& config) {
  const std::vector<int> exponents = exponent_multiset(d);
  const std::size_t expected = exponents.size();

  long prec = config.start_bits;
  for (const auto& c : points) prec = std::max(prec, c.root.ball.precision());
  std::vector<std::vector<std::size_t>> comps;
  while (true) {
    for (auto& c : points) evaluate_value(p, c, prec);
    comps = overlap_components(points);
    if (comps.size() == expected) break;
    if (comps.size() > expected)
      throw InternalError("more critical-value clusters than distinct roots of D(y)");
    prec *= 2;
    if (prec > config.max_bits)
      throw PrecisionExhausted("critical values not separated at " + std::to_string(config.max_bits) + " bits");
    for (auto& c : points)
      if (!c.root.exact_value) c.root = refine(c.root, pow2_inverse(prec - 16), {prec, config.max_bits});
  }

  std::vector<ValueClass> classes;
  std::vector<int> sums;
  for (const auto& comp : comps) {
    ValueClass vc;
    for (std::size_t idx : comp) {
      vc.members.push_back(points[idx]);
      vc.q_sum += points[idx].q;
      if (!vc.exact_value && points[idx].exact_value) vc.exact_value = points[idx].exact_value;
    }
    vc.class_value = vc.members.front().value_ball;
    sums.push_back(vc.q_sum);
    classes.push_back(std::move(vc));
  }
  std::sort(sums.begin(), sums.end());
  if (sums != exponents) throw InternalError("column q-sums disagree with the exponents of D(y)");

  // Exact values from linear factors of D for classes without an exact member.
  for (const auto& f : squarefree_decomposition(d)) {
    if (f.factor.degree() != 1) continue;
    const ExactScalar v = -f.factor.coeff(0) / f.factor.coeff(1);
    for (auto& vc : classes) {
      if (vc.exact_value || vc.q_sum != f.multiplicity) continue;
      if (vc.class_value.overlaps(v.embed(vc.class_value.precision()))) {
        vc.exact_value = v;
        break;
      }
    }
  }
  for (auto& vc : classes) {
    if (!vc.exact_value) continue;
    for (auto& m : vc.members) m.exact_value = vc.exact_value;
    vc.class_value = vc.exact_value->embed(vc.class_value.precision());
  }
  return classes;
}

ColumnDerived compute_h_sets(const ValueClass& c) {
  ColumnDerived out;
  std::map<int, int> count;
  for (const auto& m : c.members) ++count[m.q];
  int max_repeated = 0;
  for (const auto& [q, n] : count) {
    if (n == 1) out.A.push_back(q);
    else max_repeated = std::max(max_repeated, q);
  }
  std::sort(out.A.rbegin(), out.A.rend());
  for (std::size_t j = 0; j < c.members.size(); ++j)
    if (count[c.members[j].q] == 1) out.B.push_back(j);
  for (int q : out.A)
    if (q > max_repeated) out.A_H1.push_back(q);
  out.n_i = static_cast<int>(out.A_H1.size());
  if (!out.A_H1.empty()) {
    const int q1 = out.A_H1.front();
    for (int q : out.A_H1)
      if (q1 + 1 < 2 * (q + 1)) out.A_H2.push_back(q);
  }
  for (std::size_t j = 0; j < c.members.size(); ++j)
    if (std::find(out.A_H2.begin(), out.A_H2.end(), c.members[j].q) != out.A_H2.end()) out.B_H2.push_back(j);
  return out;
}

StructureReport build_structure(const Poly& p, const PrecisionConfig& config) {
  if (p.degree() < 1) throw InvalidArgument("the polynomial must be nonconstant");
  StructureReport r;
  r.poly = p;
  r.n = p.degree();
  r.precision_used = config.start_bits;
  const Poly dp = p.derivative();
  r.p_squarefree = gcd(p, dp).degree() == 0;
  if (r.n == 1) return r;

  const IsolationResult iso = isolate_roots(dp, pow2_inverse(config.start_bits / 2), config);
  std::vector<CriticalPoint> points;
  for (const auto& e : iso.enclosures) {
    CriticalPoint c;
    c.root = e;
    c.q = e.multiplicity;
    points.push_back(std::move(c));
  }
  const Poly d = critical_value_poly(p);
  std::vector<ValueClass> classes = cluster_critical_values(p, std::move(points), d, {iso.precision_used, config.max_bits});

  for (auto& vc : classes) {
    insertion_sort(vc.members, [&](const CriticalPoint& a, const CriticalPoint& b) {
      return lex_sign(a.root, b.root, config) < 0;
    });
    r.precision_used = std::max(r.precision_used, vc.class_value.precision());
  }
  insertion_sort(classes, [&](const ValueClass& a, const ValueClass& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return lex_sign(a.members.front().root, b.members.front().root, config) < 0;
  });

  r.k = static_cast<int>(iso.enclosures.size());
  for (const auto& vc : classes) r.s = std::max(r.s, static_cast<int>(vc.members.size()));
  for (auto& vc : classes) {
    for (std::size_t j = 0; j < vc.members.size(); ++j) vc.members[j].row = r.s - static_cast<int>(j);
    Column col{vc, compute_h_sets(vc)};
    r.columns.push_back(std::move(col));
  }
  r.row_sizes.assign(static_cast<std::size_t>(r.s), 0);
  for (const auto& col : r.columns)
    for (const auto& m : col.value_class.members) ++r.row_sizes[static_cast<std::size_t>(m.row - 1)];

  r.is_cip = true;
  for (const auto& col : r.columns) {
    if (col.value_class.members.size() > 1) r.is_cip = false;
    if (!col.derived.B_H2.empty()) ++r.t;
    r.t_prime += static_cast<int>(col.derived.B_H2.size());
  }
  if (r.is_cip != (r.t == r.t_prime && r.t_prime == r.k))
    throw InternalError("CIP flag disagrees with the t = t' = k criterion");
  return r;
}

std::vector<std::vector<int>> column_q_lists(const StructureReport& r) {
  std::vector<std::vector<int>> out;
  for (const auto& col : r.columns) {
    std::vector<int> qs;
    for (const auto& m : col.value_class.members) qs.push_back(m.q);
    std::sort(qs.rbegin(), qs.rend());
    out.push_back(qs);
  }
  return out;
}

// ---------------------------------------------------------------- rendering

namespace {

std::string point_text(const CriticalPoint& c) {
  if (c.root.exact_value) return c.root.exact_value->to_string();
  return "~" + c.root.ball.to_string(10).substr(0, c.root.ball.to_string(10).find(" +/-"));
}

std::string set_text(const std::vector<int>& v, bool ordered) {
  std::string s = ordered ? "(" : "{";
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? ", " : "") + std::to_string(v[j]);
  return s + (ordered ? ")" : "}");
}

std::string table(const StructureReport& r, bool points) {
  // cells[row][col]
  std::vector<std::vector<std::string>> cells(static_cast<std::size_t>(r.s),
                                              std::vector<std::string>(r.columns.size(), "."));
  for (std::size_t c = 0; c < r.columns.size(); ++c)
    for (const auto& m : r.columns[c].value_class.members)
      cells[static_cast<std::size_t>(m.row - 1)][c] = points ? point_text(m) : std::to_string(m.q);
  std::vector<std::size_t> width(r.columns.size(), 1);
  for (const auto& row : cells)
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  std::ostringstream os;
  for (std::size_t l = 0; l < cells.size(); ++l) {
    os << "  S" << (l + 1) << " |";
    for (std::size_t c = 0; c < cells[l].size(); ++c)
      os << ' ' << cells[l][c] << std::string(width[c] - cells[l][c].size(), ' ') << " |";
    os << '\n';
  }
  return os.str();
}

Json member_json(const CriticalPoint& m) {
  Json root{{"ball", detail::ball_to_json(m.root.ball)}, {"multiplicity", m.root.multiplicity}};
  if (m.root.exact_value) root["exact"] = m.root.exact_value->to_string();
  return Json{{"root", root}, {"q", m.q}, {"row", m.row}, {"value_ball", detail::ball_to_json(m.value_ball)}};
}

Json indices_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

std::string render_json(const StructureReport& r) {
  Json columns = Json::array();
  for (const auto& col : r.columns) {
    const ValueClass& vc = col.value_class;
    Json value{{"ball", detail::ball_to_json(vc.class_value)}};
    if (vc.exact_value) value["exact"] = vc.exact_value->to_string();
    Json members = Json::array();
    for (const auto& m : vc.members) members.push_back(member_json(m));
    columns.push_back(Json{{"value", value},
                           {"q_sum", vc.q_sum},
                           {"members", members},
                           {"A", col.derived.A},
                           {"B", indices_json(col.derived.B)},
                           {"A_H1", col.derived.A_H1},
                           {"A_H2", col.derived.A_H2},
                           {"B_H2", indices_json(col.derived.B_H2)}});
  }
  Json doc{{"schema", "structure.v1"},
           {"polynomial", r.poly.to_string()},
           {"field", detail::field_to_json(r.poly.field())},
           {"degree", r.n},
           {"derivative_index", r.k},
           {"s", r.s},
           {"rows", r.row_sizes},
           {"columns", columns},
           {"t", r.t},
           {"t_prime", r.t_prime},
           {"is_cip", r.is_cip},
           {"p_squarefree", r.p_squarefree},
           {"certification", r.certification == Certification::Certified ? "Certified" : "UncertifiedNumeric"},
           {"precision_bits", r.precision_used}};
  return doc.dump(2);
}

std::string render_text(const StructureReport& r) {
  std::ostringstream os;
  os << "P(z) = " << r.poly.to_string() << '\n';
  os << "field " << r.poly.field()->describe() << ", degree n = " << r.n << ", derivative index k = " << r.k
     << ", s = " << r.s << '\n';
  if (r.k > 0) {
    os << "\nTable 1 (critical points)\n" << table(r, true);
    os << "\nTable 2 (multiplicities)\n" << table(r, false);
    os << "\nColumns\n";
    for (std::size_t c = 0; c < r.columns.size(); ++c) {
      const auto& col = r.columns[c];
      std::vector<int> bh2;
      for (auto j : col.derived.B_H2) bh2.push_back(col.value_class.members[j].q);
      os << "  C" << (c + 1) << ": value "
         << (col.value_class.exact_value ? col.value_class.exact_value->to_string()
                                         : "~" + col.value_class.class_value.to_string(10))
         << "; q-sum " << col.value_class.q_sum << "; A = " << set_text(col.derived.A, false)
         << "; A(H1) = " << set_text(col.derived.A_H1, true) << "; A(H2) = " << set_text(col.derived.A_H2, false)
         << "; |B(H2)| = " << col.derived.B_H2.size() << '\n';
    }
  }
  os << "\nt = " << r.t << ", t' = " << r.t_prime << ", " << (r.is_cip ? "CIP" : "NCIP")
     << ", P squarefree: " << (r.p_squarefree ? "yes" : "no") << ", certification: "
     << (r.certification == Certification::Certified ? "certified" : "uncertified") << '\n';
  return os.str();
}

}  // namespace

std::string render_tables(const StructureReport& r, RenderFormat format) {
  return format == RenderFormat::json ? render_json(r) : render_text(r);
}

StructureReport parse_structure_json(const std::string& document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed structure document: ") + e.what(), 0);
  }
  try {
    if (doc.at("schema") != "structure.v1") throw ParseError("unsupported schema", 0);
    const FieldPtr field = detail::field_from_json(doc.at("field"));
    StructureReport r;
    r.poly = parse_poly_in(doc.at("polynomial").get<std::string>(), field);
    r.n = doc.at("degree");
    r.k = doc.at("derivative_index");
    r.s = doc.at("s");
    r.row_sizes = doc.at("rows").get<std::vector<int>>();
    r.t = doc.at("t");
    r.t_prime = doc.at("t_prime");
    r.is_cip = doc.at("is_cip");
    r.p_squarefree = doc.at("p_squarefree");
    r.certification =
        doc.at("certification") == "Certified" ? Certification::Certified : Certification::UncertifiedNumeric;
    r.precision_used = doc.at("precision_bits");
    for (const auto& cj : doc.at("columns")) {
      Column col;
      ValueClass& vc = col.value_class;
      vc.class_value = detail::ball_from_json(cj.at("value").at("ball"));
      if (cj.at("value").contains("exact")) vc.exact_value = parse_scalar(cj.at("value").at("exact").get<std::string>(), field);
      vc.q_sum = cj.at("q_sum");
      for (const auto& mj : cj.at("members")) {
        CriticalPoint m;
        m.q = mj.at("q");
        m.row = mj.at("row");
        m.value_ball = detail::ball_from_json(mj.at("value_ball"));
        m.root.ball = detail::ball_from_json(mj.at("root").at("ball"));
        m.root.multiplicity = mj.at("root").at("multiplicity");
        if (mj.at("root").contains("exact"))
          m.root.exact_value = parse_scalar(mj.at("root").at("exact").get<std::string>(), field);
        m.exact_value = vc.exact_value;
        vc.members.push_back(std::move(m));
      }
      col.derived.A = cj.at("A").get<std::vector<int>>();
      col.derived.B = cj.at("B").get<std::vector<std::size_t>>();
      col.derived.A_H1 = cj.at("A_H1").get<std::vector<int>>();
      col.derived.A_H2 = cj.at("A_H2").get<std::vector<int>>();
      col.derived.B_H2 = cj.at("B_H2").get<std::vector<std::size_t>>();
      col.derived.n_i = static_cast<int>(col.derived.A_H1.size());
      r.columns.push_back(std::move(col));
    }
    return r;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed structure document: ") + e.what(), 0);
  }
}

namespace {
bool same_optional(const std::optional<ExactScalar>& a, const std::optional<ExactScalar>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a || *a == *b;
}
}  // namespace

bool same_report(const StructureReport& a, const StructureReport& b) {
  if (!(a.poly == b.poly) || a.n != b.n || a.k != b.k || a.s != b.s || a.row_sizes != b.row_sizes || a.t != b.t ||
      a.t_prime != b.t_prime || a.is_cip != b.is_cip || a.p_squarefree != b.p_squarefree ||
      a.certification != b.certification || a.precision_used != b.precision_used ||
      a.columns.size() != b.columns.size())
    return false;
  for (std::size_t c = 0; c < a.columns.size(); ++c) {
    const auto &x = a.columns[c], &y = b.columns[c];
    const auto &dx = x.derived, &dy = y.derived;
    if (dx.A != dy.A || dx.B != dy.B || dx.A_H1 != dy.A_H1 || dx.A_H2 != dy.A_H2 || dx.B_H2 != dy.B_H2 ||
        dx.n_i != dy.n_i)
      return false;
    const auto &vx = x.value_class, &vy = y.value_class;
    if (vx.q_sum != vy.q_sum || !same_optional(vx.exact_value, vy.exact_value) ||
        !detail::same_ball(vx.class_value, vy.class_value) || vx.members.size() != vy.members.size())
      return false;
    for (std::size_t j = 0; j < vx.members.size(); ++j) {
      const auto &mx = vx.members[j], &my = vy.members[j];
      if (mx.q != my.q || mx.row != my.row || mx.root.multiplicity != my.root.multiplicity ||
          !same_optional(mx.root.exact_value, my.root.exact_value) || !same_optional(mx.exact_value, my.exact_value) ||
          !detail::same_ball(mx.root.ball, my.root.ball) || !detail::same_ball(mx.value_ball, my.value_ball))
        return false;
    }
  }
  return true;
}

}  // namespace upcert
