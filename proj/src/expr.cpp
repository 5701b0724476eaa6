#include "eqgen/expr.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <numbers>
#include <numeric>

namespace eqgen {

namespace {

constexpr std::array<OpInfo, 33> kOps = {{
    {Op::Add, "+", 2, OpFamily::Additive},
    {Op::Mul, "*", 2, OpFamily::Multiplicative},
    {Op::Pow, "pow", 2, OpFamily::Power},
    {Op::Sub, "-", 2, OpFamily::Additive},
    {Op::Div, "/", 2, OpFamily::Multiplicative},
    {Op::Neg, "neg", 1, OpFamily::Negation},
    {Op::Sin, "sin", 1, OpFamily::Trig},
    {Op::Cos, "cos", 1, OpFamily::Trig},
    {Op::Tan, "tan", 1, OpFamily::Trig},
    {Op::Cot, "cot", 1, OpFamily::Trig},
    {Op::Sec, "sec", 1, OpFamily::Trig},
    {Op::Csc, "csc", 1, OpFamily::Trig},
    {Op::Asin, "asin", 1, OpFamily::InverseTrig},
    {Op::Acos, "acos", 1, OpFamily::InverseTrig},
    {Op::Atan, "atan", 1, OpFamily::InverseTrig},
    {Op::Acot, "acot", 1, OpFamily::InverseTrig},
    {Op::Asec, "asec", 1, OpFamily::InverseTrig},
    {Op::Acsc, "acsc", 1, OpFamily::InverseTrig},
    {Op::Sinh, "sinh", 1, OpFamily::Hyperbolic},
    {Op::Cosh, "cosh", 1, OpFamily::Hyperbolic},
    {Op::Tanh, "tanh", 1, OpFamily::Hyperbolic},
    {Op::Coth, "coth", 1, OpFamily::Hyperbolic},
    {Op::Sech, "sech", 1, OpFamily::Hyperbolic},
    {Op::Csch, "csch", 1, OpFamily::Hyperbolic},
    {Op::Asinh, "asinh", 1, OpFamily::InverseHyperbolic},
    {Op::Acosh, "acosh", 1, OpFamily::InverseHyperbolic},
    {Op::Atanh, "atanh", 1, OpFamily::InverseHyperbolic},
    {Op::Acoth, "acoth", 1, OpFamily::InverseHyperbolic},
    {Op::Asech, "asech", 1, OpFamily::InverseHyperbolic},
    {Op::Acsch, "acsch", 1, OpFamily::InverseHyperbolic},
    {Op::Exp, "exp", 1, OpFamily::ExpLog},
    {Op::Log, "log", 1, OpFamily::ExpLog},
    {Op::Sqrt, "sqrt", 1, OpFamily::Root},
}};

constexpr std::array<Op, 5> kBinaryOps = {Op::Add, Op::Mul, Op::Pow, Op::Sub, Op::Div};

constexpr std::array<Op, 28> kUnaryOps = {
    Op::Neg,   Op::Sin,   Op::Cos,   Op::Tan,   Op::Cot,   Op::Sec,   Op::Csc,
    Op::Asin,  Op::Acos,  Op::Atan,  Op::Acot,  Op::Asec,  Op::Acsc,  Op::Sinh,
    Op::Cosh,  Op::Tanh,  Op::Coth,  Op::Sech,  Op::Csch,  Op::Asinh, Op::Acosh,
    Op::Atanh, Op::Acoth, Op::Asech, Op::Acsch, Op::Exp,   Op::Log,   Op::Sqrt,
};

constexpr std::array<int, 7> kNamedIntegers = {-1, 0, 1, 2, 3, 4, 10};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t symbol_hash(const Symbol& s) {
  switch (s.kind()) {
    case SymbolKind::Constant:
      return mix(mix(1, static_cast<std::size_t>(s.constant().kind())),
                 static_cast<std::size_t>(s.constant().raw()));
    case SymbolKind::Variable:
      return mix(2, static_cast<std::size_t>(s.var()));
    default:
      return mix(3, static_cast<std::size_t>(s.op()));
  }
}

}  // namespace

std::string_view var_name(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::Y: return "y";
    case Var::Z: return "z";
  }
  return "?";
}

const OpInfo& op_info(Op op) { return kOps[static_cast<std::size_t>(op)]; }
std::span<const OpInfo> all_ops() { return kOps; }
std::span<const Op> binary_ops() { return kBinaryOps; }
std::span<const Op> unary_ops() { return kUnaryOps; }

bool is_transcendental(Op op) {
  switch (op_info(op).family) {
    case OpFamily::Trig:
    case OpFamily::InverseTrig:
    case OpFamily::Hyperbolic:
    case OpFamily::InverseHyperbolic:
    case OpFamily::ExpLog:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Constant / Symbol

bool Constant::is_named_integer(int value) {
  return std::find(kNamedIntegers.begin(), kNamedIntegers.end(), value) != kNamedIntegers.end();
}

Constant Constant::integer(int value) {
  if (!is_named_integer(value)) {
    throw std::invalid_argument("integer constant " + std::to_string(value) + " is not in the grammar");
  }
  return Constant(Kind::Integer, value);
}

Constant Constant::decimal(int scaled) {
  if (scaled < -314 || scaled > 314) {
    throw std::invalid_argument("decimal constant " + std::to_string(scaled) + "/100 outside [-3.14, 3.14]");
  }
  return Constant(Kind::Decimal, scaled);
}

double Constant::value() const {
  switch (kind_) {
    case Kind::Integer: return raw_;
    case Kind::Pi: return std::numbers::pi;
    case Kind::Half: return 0.5;
    case Kind::Decimal: return raw_ / 100.0;
  }
  return 0.0;
}

bool Constant::is_integral() const {
  switch (kind_) {
    case Kind::Integer: return true;
    case Kind::Decimal: return raw_ % 100 == 0;
    default: return false;
  }
}

SymbolKind Symbol::kind() const {
  if (is_constant()) return SymbolKind::Constant;
  if (is_variable()) return SymbolKind::Variable;
  return op_info(op()).arity == 1 ? SymbolKind::Unary : SymbolKind::Binary;
}

int Symbol::arity() const { return is_op() ? op_info(op()).arity : 0; }

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(Symbol symbol, std::vector<Expr> children) {
  if (static_cast<int>(children.size()) != symbol.arity()) {
    throw std::invalid_argument("arity mismatch: symbol expects " + std::to_string(symbol.arity()) +
                                " children, got " + std::to_string(children.size()));
  }
  std::size_t size = 1;
  int depth = 0;
  std::size_t h = symbol_hash(symbol);
  for (const auto& c : children) {
    size += c.size();
    depth = std::max(depth, c.depth() + 1);
    h = mix(h, c.hash());
  }
  node_ = std::make_shared<const ExprNode>(ExprNode{symbol, std::move(children), size, depth, h});
}

Expr::Expr() : Expr(Symbol(Constant::integer(0)), {}) {}

Expr Expr::unary(Op op, Expr arg) { return Expr(Symbol(op), {std::move(arg)}); }

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  return Expr(Symbol(op), {std::move(lhs), std::move(rhs)});
}

const Symbol& Expr::symbol() const { return node_->symbol; }
std::span<const Expr> Expr::children() const { return node_->children; }
std::size_t Expr::size() const { return node_->size; }
int Expr::depth() const { return node_->depth; }
std::size_t Expr::hash() const { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size()) return false;
  if (!(a.symbol() == b.symbol())) return false;
  auto ca = a.children();
  auto cb = b.children();
  return std::equal(ca.begin(), ca.end(), cb.begin(), cb.end());
}

Path Path::child(std::uint32_t i) const {
  Path p = *this;
  p.indices.push_back(i);
  return p;
}

std::string to_string(const Path& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.indices.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.indices[i]);
  }
  return s + "]";
}

std::string_view side_name(Side s) { return s == Side::Lhs ? "lhs" : "rhs"; }

Equation Equation::with_side(Side s, Expr e) const {
  return s == Side::Lhs ? Equation{std::move(e), rhs} : Equation{lhs, std::move(e)};
}

ParseError::ParseError(Kind kind, std::size_t position, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(position)), kind_(kind), position_(position) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Type { Open, Close, Atom, End } type;
  std::string_view text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    if (pos_ >= text_.size()) return {Token::Type::End, {}, pos_};
    const std::size_t start = pos_;
    if (text_[pos_] == '(') { ++pos_; return {Token::Type::Open, text_.substr(start, 1), start}; }
    if (text_[pos_] == ')') { ++pos_; return {Token::Type::Close, text_.substr(start, 1), start}; }
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' && text_[pos_] != ')') ++pos_;
    return {Token::Type::Atom, text_.substr(start, pos_ - start), start};
  }

  Token peek() {
    const std::size_t saved = pos_;
    Token t = next();
    pos_ = saved;
    return t;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string>* warnings) : lexer_(text), warnings_(warnings) {}

  Expr parse_expr() {
    Token t = lexer_.next();
    switch (t.type) {
      case Token::Type::Atom: return parse_atom(t);
      case Token::Type::Open: return parse_compound(t);
      case Token::Type::Close: throw ParseError(ParseError::Kind::Syntax, t.pos, "unexpected ')'");
      case Token::Type::End: break;
    }
    throw ParseError(ParseError::Kind::Syntax, t.pos, "unexpected end of input");
  }

  Token next() { return lexer_.next(); }
  Token peek() { return lexer_.peek(); }

  void expect_end() {
    Token t = lexer_.next();
    if (t.type != Token::Type::End) {
      throw ParseError(ParseError::Kind::Syntax, t.pos, "trailing input '" + std::string(t.text) + "'");
    }
  }

  void expect_close() {
    Token t = lexer_.next();
    if (t.type != Token::Type::Close) {
      throw ParseError(ParseError::Kind::Syntax, t.pos, "expected ')'");
    }
  }

 private:
  void warn(std::string msg) {
    if (warnings_) warnings_->push_back(std::move(msg));
  }

  Expr parse_atom(const Token& t) {
    const std::string_view s = t.text;
    if (s == "x") return Expr::variable(Var::X);
    if (s == "y") return Expr::variable(Var::Y);
    if (s == "z") return Expr::variable(Var::Z);
    if (s == "\xce\xb8") {  // θ
      warn("'θ' read as x");
      return Expr::variable(Var::X);
    }
    if (s == "pi") return Expr::constant(Constant::pi());
    if (auto v = parse_int(s)) {
      if (!Constant::is_named_integer(*v)) {
        throw ParseError(ParseError::Kind::ConstantRange, t.pos, "integer constant '" + std::string(s) + "' not in grammar");
      }
      return Expr::integer(*v);
    }
    if (lookup_op(s)) {
      throw ParseError(ParseError::Kind::Arity, t.pos, "operator '" + std::string(s) + "' used without arguments");
    }
    throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown symbol '" + std::string(s) + "'");
  }

  std::optional<Op> lookup_op(std::string_view s) {
    for (const auto& info : kOps) {
      if (info.token == s) return info.op;
    }
    if (s == "scsh") {
      warn("'scsh' read as csch");
      return Op::Csch;
    }
    return std::nullopt;
  }

  Expr parse_compound(const Token& open) {
    Token head = lexer_.next();
    if (head.type != Token::Type::Atom) {
      throw ParseError(ParseError::Kind::Syntax, head.pos, "expected operator after '('");
    }
    if (head.text == "const") return parse_rational(head);
    if (head.text == "dec") return parse_decimal(head);
    const auto op = lookup_op(head.text);
    if (!op) {
      throw ParseError(ParseError::Kind::UnknownSymbol, head.pos, "unknown operator '" + std::string(head.text) + "'");
    }
    std::vector<Expr> children;
    while (true) {
      Token t = lexer_.peek();
      if (t.type == Token::Type::Close) {
        lexer_.next();
        break;
      }
      if (t.type == Token::Type::End) {
        throw ParseError(ParseError::Kind::Syntax, open.pos, "unbalanced '('");
      }
      children.push_back(parse_expr());
    }
    const int arity = op_info(*op).arity;
    if (static_cast<int>(children.size()) != arity) {
      throw ParseError(ParseError::Kind::Arity, head.pos,
                       "'" + std::string(head.text) + "' expects " + std::to_string(arity) + " argument(s), got " +
                           std::to_string(children.size()));
    }
    return Expr(Symbol(*op), std::move(children));
  }

  Expr parse_rational(const Token& head) {
    Token t = lexer_.next();
    if (t.type != Token::Type::Atom) throw ParseError(ParseError::Kind::Syntax, t.pos, "expected a/b after 'const'");
    const auto slash = t.text.find('/');
    if (slash == std::string_view::npos) {
      throw ParseError(ParseError::Kind::Syntax, t.pos, "expected a/b after 'const'");
    }
    const auto num = parse_int(t.text.substr(0, slash));
    const auto den = parse_int(t.text.substr(slash + 1));
    if (!num || !den || *den == 0) throw ParseError(ParseError::Kind::Syntax, t.pos, "malformed rational");
    const int g = std::gcd(*num, *den);
    int n = *num / g;
    int d = *den / g;
    if (d < 0) { n = -n; d = -d; }
    expect_close();
    if (n == 1 && d == 2) return Expr::constant(Constant::half());
    throw ParseError(ParseError::Kind::ConstantRange, head.pos,
                     "rational constant " + std::string(t.text) + " not in grammar (only 1/2)");
  }

  Expr parse_decimal(const Token& head) {
    Token t = lexer_.next();
    const auto v = t.type == Token::Type::Atom ? parse_int(t.text) : std::nullopt;
    if (!v) throw ParseError(ParseError::Kind::Syntax, t.pos, "expected scaled integer after 'dec'");
    if (*v < -314 || *v > 314) {
      throw ParseError(ParseError::Kind::ConstantRange, t.pos,
                       "decimal constant " + std::string(t.text) + "/100 outside [-3.14, 3.14]");
    }
    expect_close();
    (void)head;
    return Expr::constant(Constant::decimal(*v));
  }

  Lexer lexer_;
  std::vector<std::string>* warnings_;
};

void render_into(const Expr& e, std::string& out) {
  const Symbol& s = e.symbol();
  switch (s.kind()) {
    case SymbolKind::Variable:
      out += var_name(s.var());
      return;
    case SymbolKind::Constant: {
      const Constant& c = s.constant();
      switch (c.kind()) {
        case Constant::Kind::Integer: out += std::to_string(c.raw()); return;
        case Constant::Kind::Pi: out += "pi"; return;
        case Constant::Kind::Half: out += "(const 1/2)"; return;
        case Constant::Kind::Decimal: out += "(dec " + std::to_string(c.raw()) + ")"; return;
      }
      return;
    }
    default:
      out += '(';
      out += op_info(s.op()).token;
      for (const auto& c : e.children()) {
        out += ' ';
        render_into(c, out);
      }
      out += ')';
  }
}

}  // namespace

Expr parse_expr(std::string_view text, std::vector<std::string>* warnings) {
  Parser p(text, warnings);
  Expr e = p.parse_expr();
  p.expect_end();
  return e;
}

Equation parse_equation(std::string_view text, std::vector<std::string>* warnings) {
  Parser p(text, warnings);
  Token open = p.next();
  if (open.type != Token::Type::Open) throw ParseError(ParseError::Kind::Syntax, open.pos, "expected '(='");
  Token eq = p.next();
  if (eq.type != Token::Type::Atom || eq.text != "=") {
    throw ParseError(ParseError::Kind::Syntax, eq.pos, "expected '=' at equation root");
  }
  Expr lhs = p.parse_expr();
  Expr rhs = p.parse_expr();
  p.expect_close();
  p.expect_end();
  return {std::move(lhs), std::move(rhs)};
}

std::string render(const Expr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

std::string render(const Equation& eq) { return "(= " + render(eq.lhs) + " " + render(eq.rhs) + ")"; }

// ---------------------------------------------------------------------------
// Structure

std::size_t VarSet::count() const { return static_cast<std::size_t>(std::popcount(bits_)); }

std::vector<Var> VarSet::to_vector() const {
  std::vector<Var> out;
  for (Var v : kAllVars) {
    if (contains(v)) out.push_back(v);
  }
  return out;
}

namespace {
void collect_vars(const Expr& e, VarSet& out) {
  if (e.symbol().is_variable()) out.insert(e.symbol().var());
  for (const auto& c : e.children()) collect_vars(c, out);
}

void collect_positions(const Expr& e, Path& path, std::vector<Position>& out) {
  out.push_back({path, e});
  const auto children = e.children();
  for (std::uint32_t i = 0; i < children.size(); ++i) {
    path.indices.push_back(i);
    collect_positions(children[i], path, out);
    path.indices.pop_back();
  }
}

Expr replace_from(const Expr& e, const Path& p, std::size_t level, Expr sub) {
  if (level == p.indices.size()) return sub;
  const auto idx = p.indices[level];
  const auto children = e.children();
  if (idx >= children.size()) throw std::out_of_range("invalid path " + to_string(p));
  std::vector<Expr> next(children.begin(), children.end());
  next[idx] = replace_from(children[idx], p, level + 1, std::move(sub));
  return Expr(e.symbol(), std::move(next));
}
}  // namespace

VarSet free_variables(const Expr& e) {
  VarSet vs;
  collect_vars(e, vs);
  return vs;
}

VarSet free_variables(const Equation& eq) { return free_variables(eq.lhs).united(free_variables(eq.rhs)); }

std::vector<Position> positions(const Expr& e) {
  std::vector<Position> out;
  out.reserve(e.size());
  Path path;
  collect_positions(e, path, out);
  return out;
}

bool is_valid_path(const Expr& e, const Path& p) {
  const Expr* cur = &e;
  for (auto idx : p.indices) {
    if (idx >= cur->children().size()) return false;
    cur = &cur->child(idx);
  }
  return true;
}

const Expr& subterm_at(const Expr& e, const Path& p) {
  const Expr* cur = &e;
  for (auto idx : p.indices) {
    if (idx >= cur->children().size()) throw std::out_of_range("invalid path " + to_string(p));
    cur = &cur->child(idx);
  }
  return *cur;
}

Expr replace_at(const Expr& e, const Path& p, Expr sub) { return replace_from(e, p, 0, std::move(sub)); }

bool contains_subterm(const Expr& haystack, const Expr& needle) {
  if (haystack.size() < needle.size()) return false;
  if (haystack == needle) return true;
  for (const auto& c : haystack.children()) {
    if (contains_subterm(c, needle)) return true;
  }
  return false;
}

}  // namespace eqgen
