#include "upcert/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "upcert/errors.hpp"

namespace upcert {

namespace {

// ---------------------------------------------------------------- lexing

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '.' || s[j] == 'e' || s[j] == 'E'))
        throw ParseError("floating-point literals are not accepted", j);
      out.push_back({Tok::number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    Tok t;
    switch (c) {
      case '+': t = Tok::plus; break;
      case '-': t = Tok::minus; break;
      case '*': t = Tok::star; break;
      case '/': t = Tok::slash; break;
      case '^': t = Tok::caret; break;
      case '(': t = Tok::lparen; break;
      case ')': t = Tok::rparen; break;
      case '.': throw ParseError("floating-point literals are not accepted", i);
      default: throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
    out.push_back({t, std::string(1, c), i});
    ++i;
  }
  out.push_back({Tok::end, "", s.size()});
  return out;
}

// ---------------------------------------------------------------- syntax tree

struct Node {
  enum Kind { num, var, imag, sqrt, neg, add, sub, mul, div, pow } kind;
  Integer value;
  unsigned exponent = 0;
  std::unique_ptr<Node> a, b;
  std::size_t pos = 0;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind k, std::size_t pos, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_unique<Node>();
  n->kind = k;
  n->pos = pos;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::string var) : toks_(std::move(toks)), var_(std::move(var)) {}

  NodePtr parse() {
    NodePtr e = expr();
    if (peek().kind != Tok::end) throw ParseError("unexpected token '" + peek().text + "'", peek().pos);
    return e;
  }

 private:
  const Token& peek() const { return toks_[at_]; }
  const Token& next() { return toks_[at_++]; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Token& op = next();
      NodePtr rhs = term();
      lhs = make(op.kind == Tok::plus ? Node::add : Node::sub, op.pos, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (true) {
      const Tok k = peek().kind;
      if (k == Tok::star || k == Tok::slash) {
        const Token& op = next();
        NodePtr rhs = factor();
        lhs = make(k == Tok::star ? Node::mul : Node::div, op.pos, std::move(lhs), std::move(rhs));
      } else if (k == Tok::number || k == Tok::ident || k == Tok::lparen) {
        const std::size_t pos = peek().pos;
        NodePtr rhs = factor();
        lhs = make(Node::mul, pos, std::move(lhs), std::move(rhs));
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    if (peek().kind == Tok::minus) {
      const std::size_t pos = next().pos;
      return make(Node::neg, pos, factor());
    }
    if (peek().kind == Tok::plus) {
      next();
      return factor();
    }
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (peek().kind == Tok::caret) {
      const std::size_t pos = next().pos;
      if (peek().kind != Tok::number) throw ParseError("exponent must be a nonnegative integer literal", peek().pos);
      const Token& e = next();
      if (e.text.size() > 4 || std::stoul(e.text) > 4096) throw ParseError("exponent too large", e.pos);
      NodePtr p = make(Node::pow, pos, std::move(base));
      p->exponent = static_cast<unsigned>(std::stoul(e.text));
      return p;
    }
    return base;
  }

  NodePtr primary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::number: {
        NodePtr n = make(Node::num, t.pos);
        n->value = Integer(t.text);
        return n;
      }
      case Tok::ident: {
        if (t.text == var_) return make(Node::var, t.pos);
        if (t.text == "i") return make(Node::imag, t.pos);
        if (t.text == "sqrt") {
          if (next().kind != Tok::lparen) throw ParseError("expected '(' after sqrt", t.pos);
          NodePtr arg = expr();
          if (next().kind != Tok::rparen) throw ParseError("expected ')'", t.pos);
          return make(Node::sqrt, t.pos, std::move(arg));
        }
        throw ParseError("unknown identifier '" + t.text + "'", t.pos);
      }
      case Tok::lparen: {
        NodePtr e = expr();
        if (peek().kind != Tok::rparen) throw ParseError("expected ')'", peek().pos);
        next();
        return e;
      }
      default:
        throw ParseError(t.kind == Tok::end ? "unexpected end of input" : "unexpected token '" + t.text + "'",
                         t.pos);
    }
  }

  std::vector<Token> toks_;
  std::string var_;
  std::size_t at_ = 0;
};

// ---------------------------------------------------------------- radicals

Rational constant_value(const Node& n) {
  switch (n.kind) {
    case Node::num: return Rational(n.value);
    case Node::neg: return -constant_value(*n.a);
    case Node::add: return constant_value(*n.a) + constant_value(*n.b);
    case Node::sub: return constant_value(*n.a) - constant_value(*n.b);
    case Node::mul: return constant_value(*n.a) * constant_value(*n.b);
    case Node::div: {
      const Rational d = constant_value(*n.b);
      if (d == 0) throw ParseError("division by zero", n.pos);
      return constant_value(*n.a) / d;
    }
    case Node::pow: {
      Rational base = constant_value(*n.a);
      Rational r(1);
      for (unsigned k = 0; k < n.exponent; ++k) r *= base;
      return r;
    }
    default:
      throw ParseError("sqrt argument must be a rational constant", n.pos);
  }
}

/// n = square * kernel with kernel squarefree; odd-exponent primes returned.
struct Kernel {
  Integer square_root;       // s with n = s^2 * kernel
  Integer kernel;            // squarefree
  std::set<Integer> primes;  // primes dividing the kernel
};

Kernel squarefree_kernel(Integer n, std::size_t pos) {
  Kernel k{Integer(1), Integer(1), {}};
  for (unsigned long p = 2; p <= 1000000UL && Integer(p) * Integer(p) <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    for (unsigned j = 0; j < e / 2; ++j) k.square_root *= p;
    if (e % 2) {
      k.kernel *= p;
      k.primes.insert(Integer(p));
    }
  }
  if (n > 1) {
    // Every remaining prime factor exceeds 10^6; with n < 10^18 there are at
    // most two of them, so n is either prime, a product of two primes or a square.
    if (n >= Integer("1000000000000000000") && mpz_probab_prime_p(n.get_mpz_t(), 30) == 0 &&
        mpz_perfect_square_p(n.get_mpz_t()) == 0)
      throw ParseError("radicand too large to factor", pos);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    if (r * r == n) {
      k.square_root *= r;
    } else {
      k.kernel *= n;
      k.primes.insert(n);  // treated as a single squarefree label
    }
  }
  return k;
}

/// F2-independent squarefree generators. A kernel is a set of prime labels
/// (-1 stands for i); rows are kept in echelon form keyed by their largest label.
class RadicalBasis {
 public:
  using Labels = std::set<Integer>;

  RadicalBasis() = default;
  explicit RadicalBasis(const std::vector<Integer>& generators) {
    for (const auto& g : generators) add(g);
  }

  const std::vector<Integer>& generators() const { return gens_; }

  bool add(const Integer& g) {
    const unsigned bit = 1u << gens_.size();
    auto [rest, mask] = eliminate(labels(g));
    if (rest.empty()) return false;
    gens_.push_back(g);
    const Integer pivot = *rest.rbegin();
    rows_.emplace(pivot, std::make_pair(std::move(rest), mask ^ bit));
    return true;
  }

  /// Mask of generators whose product is the kernel times a square.
  std::optional<unsigned> reduce(const Labels& target) const {
    auto [rest, mask] = eliminate(target);
    if (!rest.empty()) return std::nullopt;
    return mask;
  }

  static Labels labels(const Integer& g) {
    if (g == -1) return {Integer(-1)};
    Labels out;
    Integer n = g;
    if (n < 0) {
      out.insert(Integer(-1));
      n = -n;
    }
    for (const auto& p : squarefree_kernel(n, 0).primes) out.insert(p);
    return out;
  }

 private:
  std::pair<Labels, unsigned> eliminate(Labels target) const {
    unsigned mask = 0;
    while (!target.empty()) {
      auto it = rows_.find(*target.rbegin());
      if (it == rows_.end()) break;
      for (const auto& l : it->second.first) {
        if (!target.erase(l)) target.insert(l);
      }
      mask ^= it->second.second;
    }
    return {std::move(target), mask};
  }

  std::vector<Integer> gens_;
  std::map<Integer, std::pair<Labels, unsigned>> rows_;
};

void collect_radicals(const Node& n, bool& uses_i, std::set<Integer>& kernels) {
  if (n.kind == Node::imag) uses_i = true;
  if (n.kind == Node::sqrt) {
    const Rational q = constant_value(*n.a);
    if (q <= 0) throw ParseError("sqrt argument must be positive", n.pos);
    const Kernel k = squarefree_kernel(q.get_num() * q.get_den(), n.pos);
    if (k.kernel != 1) kernels.insert(k.kernel);
    return;
  }
  if (n.a) collect_radicals(*n.a, uses_i, kernels);
  if (n.b) collect_radicals(*n.b, uses_i, kernels);
}

// ---------------------------------------------------------------- evaluation

class Evaluator {
 public:
  Evaluator(FieldPtr field, const RadicalBasis& basis) : field_(std::move(field)), basis_(basis) {}

  RationalFunction eval(const Node& n) const {
    switch (n.kind) {
      case Node::num: return constant(ExactScalar(field_, Rational(n.value)));
      case Node::var: return RationalFunction(Poly::variable(field_));
      case Node::imag: return constant(radical(Integer(-1), n.pos));
      case Node::sqrt: {
        const Rational q = constant_value(*n.a);
        const Kernel k = squarefree_kernel(q.get_num() * q.get_den(), n.pos);
        // sqrt(p/d) = s/d * sqrt(kernel)
        const Rational scale = Rational(k.square_root) / Rational(q.get_den());
        if (k.kernel == 1) return constant(ExactScalar(field_, scale));
        return constant(ExactScalar(field_, scale) * radical(k.kernel, n.pos));
      }
      case Node::neg: return -eval(*n.a);
      case Node::add: return eval(*n.a) + eval(*n.b);
      case Node::sub: return eval(*n.a) - eval(*n.b);
      case Node::mul: return eval(*n.a) * eval(*n.b);
      case Node::div: {
        RationalFunction d = eval(*n.b);
        if (d.is_zero()) throw ParseError("division by zero", n.pos);
        return eval(*n.a) / d;
      }
      case Node::pow: return eval(*n.a).pow(n.exponent);
    }
    throw InternalError("unreachable parse node");
  }

 private:
  RationalFunction constant(const ExactScalar& c) const { return RationalFunction(Poly::constant(c)); }

  // sqrt(kernel) for squarefree kernel (or i for -1) inside the field.
  ExactScalar radical(const Integer& kernel, std::size_t pos) const {
    const auto mask = basis_.reduce(RadicalBasis::labels(kernel));
    if (!mask) throw ParseError("radical sqrt(" + kernel.get_str() + ") is not in " + field_->describe(), pos);
    // prod_{j in mask} g_j = kernel * t^2
    Integer prod(1);
    const auto& gens = field_->generators();
    for (std::size_t j = 0; j < gens.size(); ++j)
      if (*mask & (1u << j)) prod *= gens[j];
    const Rational ratio = Rational(prod) / Rational(kernel);
    Integer num = ratio.get_num(), den = ratio.get_den(), rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    if (rn * rn != num || rd * rd != den) throw InternalError("radical reduction is not a square");
    const Rational t(rn, rd);
    NumberField::Coords display(static_cast<std::size_t>(field_->degree()), Rational(0));
    display[*mask] = 1 / t;
    return ExactScalar(field_, field_->from_display(display));
  }

  FieldPtr field_;
  const RadicalBasis& basis_;
};

FieldPtr build_field(bool uses_i, const std::set<Integer>& kernels, RadicalBasis& basis) {
  if (uses_i) basis.add(Integer(-1));
  for (const auto& k : kernels) basis.add(k);
  return NumberField::multiquadratic(basis.generators());
}

std::vector<NodePtr> parse_trees(std::span<const std::string> texts, const std::string& var) {
  std::vector<NodePtr> trees;
  for (const auto& t : texts) trees.push_back(Parser(lex(t), var).parse());
  return trees;
}

Poly require_poly(const RationalFunction& r) {
  if (!r.is_polynomial()) throw ParseError("expression is not a polynomial (division by a non-constant)", 0);
  return r.den().leading().inverse() * r.num();
}

}  // namespace

ParsedExpressions parse_expressions(std::span<const std::string> texts, const std::string& var) {
  std::vector<NodePtr> trees = parse_trees(texts, var);
  bool uses_i = false;
  std::set<Integer> kernels;
  for (const auto& t : trees) collect_radicals(*t, uses_i, kernels);
  RadicalBasis basis;
  FieldPtr field = build_field(uses_i, kernels, basis);
  Evaluator ev(field, basis);
  ParsedExpressions out{field, {}};
  for (const auto& t : trees) {
    RationalFunction r = ev.eval(*t);
    out.values.emplace_back(r.num().promoted(field), r.den().promoted(field));
  }
  return out;
}

Poly parse_poly(std::string_view text, const std::string& var) {
  const std::string s(text);
  return parse_polys(std::span<const std::string>(&s, 1), var).front();
}

std::vector<Poly> parse_polys(std::span<const std::string> texts, const std::string& var) {
  ParsedExpressions parsed = parse_expressions(texts, var);
  std::vector<Poly> out;
  for (const auto& r : parsed.values) out.push_back(require_poly(r).promoted(parsed.field));
  return out;
}

RationalFunction parse_rational_function(std::string_view text, const std::string& var) {
  const std::string s(text);
  return parse_expressions(std::span<const std::string>(&s, 1), var).values.front();
}

Poly parse_poly_in(std::string_view text, const FieldPtr& field, const std::string& var) {
  NodePtr tree = Parser(lex(text), var).parse();
  RadicalBasis basis(field->generators());
  Evaluator ev(field, basis);
  return require_poly(ev.eval(*tree)).promoted(field);
}

ExactScalar parse_scalar(std::string_view text, const FieldPtr& field) {
  const Poly p = parse_poly_in(text, field, "\x01");
  if (p.degree() > 0) throw ParseError("expected a constant", 0);
  return p.is_zero() ? ExactScalar(field, Rational(0)) : p.coeff(0).promoted(field);
}

}  // namespace upcert
