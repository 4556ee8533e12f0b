#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace semisym {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class UndeclaredIdentifierError : public std::runtime_error {
 public:
  explicit UndeclaredIdentifierError(const std::string& name)
      : std::runtime_error("undeclared identifier '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Raised by eval() when a sub-expression leaves the real domain
/// (log of non-positive, division by zero, sqrt of negative, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpr)
      : std::runtime_error(what + " in '" + subexpr + "'"),
        subexpr_(std::move(subexpr)) {}
  const std::string& subexpression() const { return subexpr_; }

 private:
  std::string subexpr_;
};

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

enum class NodeKind { Constant, Coordinate, Parameter, Neg, Add, Sub, Mul, Div, Pow, Call };

/// Names visible to an expression: the four (or fewer) chart coordinates and
/// the named parameters. Coordinates and parameters are referenced by index.
class Scope {
 public:
  Scope() = default;
  Scope(std::vector<std::string> coords, std::vector<std::string> params);

  const std::vector<std::string>& coordinates() const { return coords_; }
  const std::vector<std::string>& parameters() const { return params_; }

  /// -1 when not a coordinate.
  int coordinate_index(std::string_view name) const;
  int parameter_index(std::string_view name) const;

 private:
  std::vector<std::string> coords_;
  std::vector<std::string> params_;
};

/// Values for every coordinate and parameter of a Scope, aligned by index.
class Bindings {
 public:
  Bindings() = default;
  Bindings(std::vector<double> coords, std::vector<double> params);

  /// Builds bindings from a name map; every name of the scope must be bound
  /// exactly once and no foreign names may appear.
  static Bindings from_map(const Scope& scope, const std::map<std::string, double>& values);

  std::span<const double> coordinates() const { return coords_; }
  std::span<const double> parameters() const { return params_; }
  double coordinate(std::size_t i) const { return coords_.at(i); }
  double parameter(std::size_t i) const { return params_.at(i); }
  void set_coordinate(std::size_t i, double v) { coords_.at(i) = v; }

 private:
  std::vector<double> coords_;
  std::vector<double> params_;
};

struct Node;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  Expr() = default;  // the constant 0
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static Expr constant(double v);
  static Expr coordinate(int index, std::string name);
  static Expr parameter(int index, std::string name);

  // Smart constructors. They fold constants and drop the identities
  // x+0, x-0, x*1, x*0, x/1, x^1, x^0.
  static Expr neg(const Expr& a);
  static Expr add(const Expr& a, const Expr& b);
  static Expr sub(const Expr& a, const Expr& b);
  static Expr mul(const Expr& a, const Expr& b);
  static Expr div(const Expr& a, const Expr& b);
  static Expr pow(const Expr& a, const Expr& b);
  static Expr call(Func f, const Expr& a);

  NodeKind kind() const;
  const Node& node() const;
  bool is_constant() const { return kind() == NodeKind::Constant; }
  bool is_constant(double v) const;
  double constant_value() const;

  /// Number of nodes reachable from the root (shared sub-trees counted each time).
  std::size_t size() const;

  friend Expr operator+(const Expr& a, const Expr& b) { return add(a, b); }
  friend Expr operator-(const Expr& a, const Expr& b) { return sub(a, b); }
  friend Expr operator*(const Expr& a, const Expr& b) { return mul(a, b); }
  friend Expr operator/(const Expr& a, const Expr& b) { return div(a, b); }
  friend Expr operator-(const Expr& a) { return neg(a); }

 private:
  std::shared_ptr<const Node> node_;
};

struct Node {
  NodeKind kind = NodeKind::Constant;
  double value = 0.0;  // Constant
  int index = -1;      // Coordinate / Parameter
  std::string name;    // Coordinate / Parameter
  Func func = Func::Sin;
  Expr lhs;
  Expr rhs;
};

std::string_view func_name(Func f);

/// Parses text following the grammar
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := ('-')? power
///   power  := atom ('^' factor)?
///   atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'
/// The identifier `pi` is a built-in constant unless the scope shadows it.
Expr parse_expr(std::string_view text, const Scope& scope);

/// Exact partial derivative with respect to coordinate `coord`.
/// Throws std::invalid_argument for derivatives of abs().
Expr differentiate(const Expr& e, int coord);

/// Convenience overload resolving the coordinate by name.
Expr differentiate(const Expr& e, const Scope& scope, std::string_view coord);

double eval(const Expr& e, const Bindings& b);

/// Fully parenthesised where needed; parse(print(e)) reproduces e's values.
std::string print(const Expr& e);

}  // namespace semisym
