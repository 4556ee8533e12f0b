#include "semisym/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace semisym {

// --- Scope / Bindings -------------------------------------------------------

Scope::Scope(std::vector<std::string> coords, std::vector<std::string> params)
    : coords_(std::move(coords)), params_(std::move(params)) {}

int Scope::coordinate_index(std::string_view name) const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i] == name) return static_cast<int>(i);
  return -1;
}

int Scope::parameter_index(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i] == name) return static_cast<int>(i);
  return -1;
}

Bindings::Bindings(std::vector<double> coords, std::vector<double> params)
    : coords_(std::move(coords)), params_(std::move(params)) {}

Bindings Bindings::from_map(const Scope& scope, const std::map<std::string, double>& values) {
  std::vector<double> c(scope.coordinates().size());
  std::vector<double> p(scope.parameters().size());
  std::size_t used = 0;
  auto take = [&](const std::string& name) {
    auto it = values.find(name);
    if (it == values.end()) throw std::invalid_argument("unbound name '" + name + "'");
    if (!std::isfinite(it->second))
      throw std::invalid_argument("non-finite value for '" + name + "'");
    ++used;
    return it->second;
  };
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = take(scope.coordinates()[i]);
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = take(scope.parameters()[i]);
  if (used != values.size()) {
    for (const auto& [name, v] : values)
      if (scope.coordinate_index(name) < 0 && scope.parameter_index(name) < 0)
        throw std::invalid_argument("binding for undeclared name '" + name + "'");
  }
  return Bindings(std::move(c), std::move(p));
}

// --- construction -------------------------------------------------------------

namespace {

std::shared_ptr<Node> make(NodeKind k) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  return n;
}

Expr binary(NodeKind k, const Expr& a, const Expr& b) {
  auto n = make(k);
  n->lhs = a;
  n->rhs = b;
  return Expr(std::move(n));
}

double apply(Func f, double x) {
  switch (f) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: return std::tan(x);
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Tanh: return std::tanh(x);
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Abs: return std::abs(x);
  }
  return 0.0;
}

bool in_domain(Func f, double x) {
  if (f == Func::Log) return x > 0.0;
  if (f == Func::Sqrt) return x >= 0.0;
  return true;
}

bool pow_in_domain(double a, double b) {
  if (a == 0.0 && b < 0.0) return false;
  if (a < 0.0 && b != std::trunc(b)) return false;
  return true;
}

}  // namespace

const Node& Expr::node() const {
  static const Node zero{};
  return node_ ? *node_ : zero;
}

Expr Expr::constant(double v) {
  auto n = make(NodeKind::Constant);
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::coordinate(int index, std::string name) {
  auto n = make(NodeKind::Coordinate);
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::parameter(int index, std::string name) {
  auto n = make(NodeKind::Parameter);
  n->index = index;
  n->name = std::move(name);
  return Expr(std::move(n));
}

NodeKind Expr::kind() const { return node().kind; }
bool Expr::is_constant(double v) const { return is_constant() && node().value == v; }
double Expr::constant_value() const { return node().value; }

std::size_t Expr::size() const {
  std::size_t n = 1;
  switch (kind()) {
    case NodeKind::Neg:
    case NodeKind::Call: n += node().lhs.size(); break;
    case NodeKind::Add:
    case NodeKind::Sub:
    case NodeKind::Mul:
    case NodeKind::Div:
    case NodeKind::Pow: n += node().lhs.size() + node().rhs.size(); break;
    default: break;
  }
  return n;
}

Expr Expr::neg(const Expr& a) {
  if (a.is_constant()) return constant(-a.constant_value());
  if (a.kind() == NodeKind::Neg) return a.node().lhs;
  auto n = make(NodeKind::Neg);
  n->lhs = a;
  return Expr(std::move(n));
}

Expr Expr::add(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() + b.constant_value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.kind() == NodeKind::Neg) return sub(a, b.node().lhs);
  return binary(NodeKind::Add, a, b);
}

Expr Expr::sub(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() - b.constant_value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return neg(b);
  if (b.kind() == NodeKind::Neg) return add(a, b.node().lhs);
  return binary(NodeKind::Sub, a, b);
}

Expr Expr::mul(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return constant(a.constant_value() * b.constant_value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return constant(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return neg(b);
  if (b.is_constant(-1.0)) return neg(a);
  return binary(NodeKind::Mul, a, b);
}

Expr Expr::div(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0)
    return constant(a.constant_value() / b.constant_value());
  if (a.is_constant(0.0) && !b.is_constant(0.0)) return constant(0.0);
  if (b.is_constant(1.0)) return a;
  return binary(NodeKind::Div, a, b);
}

Expr Expr::pow(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() &&
      pow_in_domain(a.constant_value(), b.constant_value()))
    return constant(std::pow(a.constant_value(), b.constant_value()));
  if (b.is_constant(1.0)) return a;
  if (b.is_constant(0.0)) return constant(1.0);
  return binary(NodeKind::Pow, a, b);
}

Expr Expr::call(Func f, const Expr& a) {
  if (a.is_constant() && in_domain(f, a.constant_value()))
    return constant(apply(f, a.constant_value()));
  auto n = make(NodeKind::Call);
  n->func = f;
  n->lhs = a;
  return Expr(std::move(n));
}

std::string_view func_name(Func f) {
  switch (f) {
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sinh: return "sinh";
    case Func::Cosh: return "cosh";
    case Func::Tanh: return "tanh";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Sqrt: return "sqrt";
    case Func::Abs: return "abs";
  }
  return "?";
}

// --- parser -------------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Scope& scope) : text_(text), scope_(scope) {}

  Expr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected character", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::add(lhs, term());
      else if (accept('-'))
        lhs = Expr::sub(lhs, term());
      else
        return lhs;
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = Expr::mul(lhs, factor());
      else if (accept('/'))
        lhs = Expr::div(lhs, factor());
      else
        return lhs;
    }
  }

  Expr factor() {
    if (accept('-')) return Expr::neg(power());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (accept('^')) return Expr::pow(base, factor());
    return base;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Expr number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || ptr != text_.data() + pos_) throw ParseError("malformed number", start);
    return Expr::constant(v);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      static const std::pair<std::string_view, Func> kFuncs[] = {
          {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan},   {"sinh", Func::Sinh},
          {"cosh", Func::Cosh}, {"tanh", Func::Tanh}, {"exp", Func::Exp},   {"log", Func::Log},
          {"sqrt", Func::Sqrt}, {"abs", Func::Abs}};
      for (const auto& [fname, f] : kFuncs) {
        if (fname == name) {
          ++pos_;
          Expr arg = expr();
          if (!accept(')')) throw ParseError("expected ')'", pos_);
          return Expr::call(f, arg);
        }
      }
      throw ParseError("unknown function '" + name + "'", start);
    }
    if (int i = scope_.coordinate_index(name); i >= 0) return Expr::coordinate(i, name);
    if (int i = scope_.parameter_index(name); i >= 0) return Expr::parameter(i, name);
    if (name == "pi") return Expr::constant(std::numbers::pi);
    throw UndeclaredIdentifierError(name);
  }

  std::string_view text_;
  const Scope& scope_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const Scope& scope) { return Parser(text, scope).parse(); }

// --- differentiation ----------------------------------------------------------

Expr differentiate(const Expr& e, int coord) {
  const Node& n = e.node();
  auto d = [coord](const Expr& x) { return differentiate(x, coord); };
  switch (n.kind) {
    case NodeKind::Constant:
    case NodeKind::Parameter: return Expr::constant(0.0);
    case NodeKind::Coordinate: return Expr::constant(n.index == coord ? 1.0 : 0.0);
    case NodeKind::Neg: return Expr::neg(d(n.lhs));
    case NodeKind::Add: return d(n.lhs) + d(n.rhs);
    case NodeKind::Sub: return d(n.lhs) - d(n.rhs);
    case NodeKind::Mul: return d(n.lhs) * n.rhs + n.lhs * d(n.rhs);
    case NodeKind::Div: {
      Expr da = d(n.lhs);
      Expr db = d(n.rhs);
      if (db.is_constant(0.0)) return da / n.rhs;
      return (da * n.rhs - n.lhs * db) / Expr::pow(n.rhs, Expr::constant(2.0));
    }
    case NodeKind::Pow: {
      const Expr& a = n.lhs;
      const Expr& b = n.rhs;
      Expr da = d(a);
      Expr db = d(b);
      if (db.is_constant(0.0)) {
        if (b.is_constant())
          return Expr::constant(b.constant_value()) *
                 Expr::pow(a, Expr::constant(b.constant_value() - 1.0)) * da;
        return b * Expr::pow(a, b - Expr::constant(1.0)) * da;
      }
      return e * (db * Expr::call(Func::Log, a) + b * da / a);
    }
    case NodeKind::Call: {
      const Expr& a = n.lhs;
      Expr da = d(a);
      if (da.is_constant(0.0)) return Expr::constant(0.0);
      switch (n.func) {
        case Func::Sin: return Expr::call(Func::Cos, a) * da;
        case Func::Cos: return -(Expr::call(Func::Sin, a) * da);
        case Func::Tan:
          return da / Expr::pow(Expr::call(Func::Cos, a), Expr::constant(2.0));
        case Func::Sinh: return Expr::call(Func::Cosh, a) * da;
        case Func::Cosh: return Expr::call(Func::Sinh, a) * da;
        case Func::Tanh:
          return (Expr::constant(1.0) - Expr::pow(e, Expr::constant(2.0))) * da;
        case Func::Exp: return e * da;
        case Func::Log: return da / a;
        case Func::Sqrt: return da / (Expr::constant(2.0) * e);
        case Func::Abs:
          throw std::invalid_argument("derivative of abs() is not supported: '" + print(e) + "'");
      }
      break;
    }
  }
  return Expr::constant(0.0);
}

Expr differentiate(const Expr& e, const Scope& scope, std::string_view coord) {
  int i = scope.coordinate_index(coord);
  if (i < 0) throw UndeclaredIdentifierError(std::string(coord));
  return differentiate(e, i);
}

// --- evaluation ---------------------------------------------------------------

double eval(const Expr& e, const Bindings& b) {
  const Node& n = e.node();
  switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Coordinate: return b.coordinate(static_cast<std::size_t>(n.index));
    case NodeKind::Parameter: return b.parameter(static_cast<std::size_t>(n.index));
    case NodeKind::Neg: return -eval(n.lhs, b);
    case NodeKind::Add: return eval(n.lhs, b) + eval(n.rhs, b);
    case NodeKind::Sub: return eval(n.lhs, b) - eval(n.rhs, b);
    case NodeKind::Mul: return eval(n.lhs, b) * eval(n.rhs, b);
    case NodeKind::Div: {
      double den = eval(n.rhs, b);
      if (den == 0.0) throw DomainError("division by zero", print(e));
      return eval(n.lhs, b) / den;
    }
    case NodeKind::Pow: {
      double x = eval(n.lhs, b);
      double y = eval(n.rhs, b);
      if (!pow_in_domain(x, y)) throw DomainError("power outside real domain", print(e));
      if (y == 2.0) return x * x;
      return std::pow(x, y);
    }
    case NodeKind::Call: {
      double x = eval(n.lhs, b);
      if (!in_domain(n.func, x)) {
        throw DomainError(n.func == Func::Log ? "log of non-positive value"
                                              : "sqrt of negative value",
                          print(e));
      }
      return apply(n.func, x);
    }
  }
  return 0.0;
}

// --- printing -----------------------------------------------------------------

namespace {

int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string print_prec(const Expr& e, int min_prec) {
  const Node& n = e.node();
  std::string s;
  int p = precedence(n.kind);
  switch (n.kind) {
    case NodeKind::Constant:
      s = format_number(n.value);
      if (n.value < 0) p = 3;  // prints like a negation
      break;
    case NodeKind::Coordinate:
    case NodeKind::Parameter: s = n.name; break;
    case NodeKind::Neg: s = "-" + print_prec(n.lhs, 4); break;
    case NodeKind::Add: s = print_prec(n.lhs, 1) + " + " + print_prec(n.rhs, 2); break;
    case NodeKind::Sub: s = print_prec(n.lhs, 1) + " - " + print_prec(n.rhs, 2); break;
    case NodeKind::Mul: s = print_prec(n.lhs, 2) + "*" + print_prec(n.rhs, 3); break;
    case NodeKind::Div: s = print_prec(n.lhs, 2) + "/" + print_prec(n.rhs, 3); break;
    case NodeKind::Pow: s = print_prec(n.lhs, 5) + "^" + print_prec(n.rhs, 3); break;
    case NodeKind::Call:
      s = std::string(func_name(n.func)) + "(" + print_prec(n.lhs, 0) + ")";
      break;
  }
  if (p < min_prec) return "(" + s + ")";
  return s;
}

}  // namespace

std::string print(const Expr& e) { return print_prec(e, 0); }

}  // namespace semisym
