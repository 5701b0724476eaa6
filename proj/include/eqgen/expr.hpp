#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace eqgen {

enum class Var : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline constexpr Var kAllVars[] = {Var::X, Var::Y, Var::Z};
inline constexpr std::size_t kVarCount = 3;

std::string_view var_name(Var v);

// Binary operators first, then unary. The order is the canonical order used
// by the operator tables and the random generators.
enum class Op : std::uint8_t {
  Add, Mul, Pow, Sub, Div,
  Neg,
  Sin, Cos, Tan, Cot, Sec, Csc,
  Asin, Acos, Atan, Acot, Asec, Acsc,
  Sinh, Cosh, Tanh, Coth, Sech, Csch,
  Asinh, Acosh, Atanh, Acoth, Asech, Acsch,
  Exp, Log, Sqrt,
};

enum class OpFamily : std::uint8_t {
  Additive,        // + -
  Multiplicative,  // * /
  Power,           // pow
  Negation,
  Trig,
  InverseTrig,
  Hyperbolic,
  InverseHyperbolic,
  ExpLog,          // exp log
  Root,            // sqrt
};

struct OpInfo {
  Op op;
  std::string_view token;
  int arity;
  OpFamily family;
};

const OpInfo& op_info(Op op);
std::span<const OpInfo> all_ops();
std::span<const Op> binary_ops();
std::span<const Op> unary_ops();

/// Trig, inverse trig, hyperbolic, inverse hyperbolic, exp and log.
/// neg and sqrt are not transcendental.
bool is_transcendental(Op op);

/// A grammar constant. Integers are restricted to the named set
/// {-1, 0, 1, 2, 3, 4, 10}; decimals are stored as value x 100 in
/// [-314, 314]; Half is the exact rational 1/2 and is distinct from (dec 50).
class Constant {
 public:
  enum class Kind : std::uint8_t { Integer, Pi, Half, Decimal };

  static Constant integer(int value);
  static Constant pi() { return Constant(Kind::Pi, 0); }
  static Constant half() { return Constant(Kind::Half, 0); }
  static Constant decimal(int scaled);

  static bool is_named_integer(int value);

  Kind kind() const { return kind_; }
  /// Integer value, or the scaled value for decimals. Zero otherwise.
  int raw() const { return raw_; }
  double value() const;
  /// True when the exact value is an integer.
  bool is_integral() const;

  friend bool operator==(const Constant&, const Constant&) = default;
  friend auto operator<=>(const Constant&, const Constant&) = default;

 private:
  Constant(Kind k, int raw) : kind_(k), raw_(raw) {}
  Kind kind_;
  int raw_;
};

enum class SymbolKind : std::uint8_t { Constant, Variable, Unary, Binary };

class Symbol {
 public:
  Symbol(Constant c) : value_(c) {}  // NOLINT(google-explicit-constructor)
  Symbol(Var v) : value_(v) {}       // NOLINT(google-explicit-constructor)
  Symbol(Op op) : value_(op) {}      // NOLINT(google-explicit-constructor)

  SymbolKind kind() const;
  int arity() const;

  bool is_constant() const { return std::holds_alternative<Constant>(value_); }
  bool is_variable() const { return std::holds_alternative<Var>(value_); }
  bool is_op() const { return std::holds_alternative<Op>(value_); }

  const Constant& constant() const { return std::get<Constant>(value_); }
  Var var() const { return std::get<Var>(value_); }
  Op op() const { return std::get<Op>(value_); }

  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  std::variant<Constant, Var, Op> value_;
};

struct ExprNode;

/// Immutable expression tree with shared structure. Copies are cheap and
/// equality is structural.
class Expr {
 public:
  /// Throws std::invalid_argument when the child count does not match the
  /// symbol's arity.
  Expr(Symbol symbol, std::vector<Expr> children);
  /// The constant 0.
  Expr();

  static Expr constant(Constant c) { return Expr(Symbol(c), {}); }
  static Expr integer(int v) { return constant(Constant::integer(v)); }
  static Expr variable(Var v) { return Expr(Symbol(v), {}); }
  static Expr unary(Op op, Expr arg);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  const Symbol& symbol() const;
  std::span<const Expr> children() const;
  const Expr& child(std::size_t i) const { return children()[i]; }
  bool is_leaf() const { return children().empty(); }

  /// Node count.
  std::size_t size() const;
  /// Leaves have depth 0.
  int depth() const;
  std::size_t hash() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Symbol symbol;
  std::vector<Expr> children;
  std::size_t size;
  int depth;
  std::size_t hash;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

/// Child indices from the root.
struct Path {
  std::vector<std::uint32_t> indices;

  bool empty() const { return indices.empty(); }
  std::size_t length() const { return indices.size(); }
  Path child(std::uint32_t i) const;
  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;
};

std::string to_string(const Path& p);

enum class Side : std::uint8_t { Lhs = 0, Rhs = 1 };
inline constexpr Side kSides[] = {Side::Lhs, Side::Rhs};
std::string_view side_name(Side s);

struct Equation {
  Expr lhs;
  Expr rhs;

  const Expr& side(Side s) const { return s == Side::Lhs ? lhs : rhs; }
  Equation with_side(Side s, Expr e) const;
  Equation swapped() const { return {rhs, lhs}; }
  std::size_t size() const { return lhs.size() + rhs.size(); }
  friend bool operator==(const Equation&, const Equation&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, UnknownSymbol, Arity, ConstantRange };
  ParseError(Kind kind, std::size_t position, const std::string& what);
  Kind kind() const { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

/// Parses one expression in the canonical prefix grammar. "θ" is accepted as
/// an alias for x and "scsh" as a misspelling of csch; each alias use
/// appends a message to `warnings` when it is non-null.
Expr parse_expr(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Parses "(= lhs rhs)".
Equation parse_equation(std::string_view text, std::vector<std::string>* warnings = nullptr);

std::string render(const Expr& e);
std::string render(const Equation& eq);

/// Bitmask-backed set of variables.
class VarSet {
 public:
  void insert(Var v) { bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(v)); }
  bool contains(Var v) const { return (bits_ >> static_cast<unsigned>(v)) & 1u; }
  bool empty() const { return bits_ == 0; }
  std::size_t count() const;
  VarSet united(VarSet o) const { VarSet r; r.bits_ = bits_ | o.bits_; return r; }
  std::vector<Var> to_vector() const;
  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  std::uint8_t bits_ = 0;
};

VarSet free_variables(const Expr& e);
VarSet free_variables(const Equation& eq);

struct Position {
  Path path;
  Expr expr;
};

/// Pre-order; the first entry is (empty path, e).
std::vector<Position> positions(const Expr& e);

bool is_valid_path(const Expr& e, const Path& p);
/// Throws std::out_of_range for an invalid path.
const Expr& subterm_at(const Expr& e, const Path& p);
/// Throws std::out_of_range for an invalid path.
Expr replace_at(const Expr& e, const Path& p, Expr sub);

bool contains_subterm(const Expr& haystack, const Expr& needle);

}  // namespace eqgen
