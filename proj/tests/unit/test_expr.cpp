#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "semisym/expr.hpp"
#include "semisym/jet.hpp"

using namespace semisym;

namespace {

const Scope kScope({"t", "r", "theta", "phi"}, {"M", "a"});

double central_difference(const Expr& e, Bindings b, std::size_t coord, double h = 1e-5) {
  const double x = b.coordinate(coord);
  b.set_coordinate(coord, x + h);
  const double up = eval(e, b);
  b.set_coordinate(coord, x - h);
  const double down = eval(e, b);
  return (up - down) / (2 * h);
}

}  // namespace

TEST(Expr, ParsesPrecedenceAndPower) {
  const Bindings b({1, 2, 3, 4}, {0.5, 2});
  EXPECT_DOUBLE_EQ(eval(parse_expr("1 + 2*3", kScope), b), 7);
  EXPECT_DOUBLE_EQ(eval(parse_expr("-r^2", kScope), b), -4);
  EXPECT_DOUBLE_EQ(eval(parse_expr("2^3^2", kScope), b), 512);
  EXPECT_DOUBLE_EQ(eval(parse_expr("r/2/2", kScope), b), 0.5);
  EXPECT_DOUBLE_EQ(eval(parse_expr("(1 - 2*M/r)", kScope), b), 0.5);
  EXPECT_NEAR(eval(parse_expr("cos(pi)", kScope), b), -1.0, 1e-15);
}

TEST(Expr, ParameterShadowsPi) {
  const Scope s({"x"}, {"pi"});
  EXPECT_DOUBLE_EQ(eval(parse_expr("pi", s), Bindings({0}, {3})), 3);
}

TEST(Expr, ReportsUndeclaredIdentifier) {
  try {
    parse_expr("r + q", kScope);
    FAIL();
  } catch (const UndeclaredIdentifierError& e) {
    EXPECT_EQ(e.name(), "q");
  }
}

TEST(Expr, ReportsSyntaxErrorOffset) {
  EXPECT_THROW(parse_expr("r + * 2", kScope), ParseError);
  EXPECT_THROW(parse_expr("sin(r", kScope), ParseError);
  EXPECT_THROW(parse_expr("", kScope), ParseError);
  try {
    parse_expr("r +", kScope);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 3U);
  }
}

TEST(Expr, DomainErrorsNameTheSubexpression) {
  const Bindings b({1, -2, 3, 4}, {0.5, 2});
  EXPECT_THROW(eval(parse_expr("log(r)", kScope), b), DomainError);
  EXPECT_THROW(eval(parse_expr("sqrt(r)", kScope), b), DomainError);
  EXPECT_THROW(eval(parse_expr("1/(r+2)", kScope), b), DomainError);
  try {
    eval(parse_expr("t + log(r)", kScope), b);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(e.subexpression().find("log"), std::string::npos);
  }
}

TEST(Expr, SmartConstructorsFoldIdentities) {
  const Expr r = parse_expr("r", kScope);
  EXPECT_EQ((r + Expr::constant(0)).kind(), NodeKind::Coordinate);
  EXPECT_EQ((r * Expr::constant(1)).kind(), NodeKind::Coordinate);
  EXPECT_TRUE((r * Expr::constant(0)).is_constant(0));
  EXPECT_TRUE((Expr::constant(2) * Expr::constant(3)).is_constant(6));
  EXPECT_TRUE(differentiate(parse_expr("M*a", kScope), 1).is_constant(0));
}

TEST(Expr, DerivativesMatchFiniteDifferences) {
  const char* sources[] = {
      "1 - 2*M/r",
      "r^2*sin(theta)^2",
      "exp(-t*r)*cosh(phi)",
      "sqrt(r^2 + a^2*cos(theta)^2)",
      "log(r)*tan(theta/3) + tanh(t)",
      "r^a",
      "(t + r)^(theta/4)",
      "1/(1 + phi^2)"};
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.6, 1.4);
  for (const char* src : sources) {
    const Expr e = parse_expr(src, kScope);
    for (int trial = 0; trial < 5; ++trial) {
      const Bindings b({u(rng), 2 * u(rng), u(rng), u(rng)}, {0.5, 1.5});
      for (int c = 0; c < 4; ++c) {
        const double exact = eval(differentiate(e, c), b);
        const double fd = central_difference(e, b, static_cast<std::size_t>(c));
        EXPECT_NEAR(exact, fd, 1e-7 * std::max(1.0, std::abs(fd))) << src << " d/dx" << c;
      }
    }
  }
}

TEST(Expr, DerivativeOfAbsThrows) {
  EXPECT_THROW(differentiate(parse_expr("abs(r)", kScope), 1), std::invalid_argument);
}

TEST(Expr, PrintRoundTripsValues) {
  const char* sources[] = {"-(r - t)^2", "r - (t - theta)", "r/(t/phi)", "2^(-r)", "-r^2",
                           "sin(-t)*M", "a - -r"};
  const Bindings b({0.3, 1.7, 0.9, -0.4}, {0.5, 2});
  for (const char* src : sources) {
    const Expr e = parse_expr(src, kScope);
    const Expr again = parse_expr(print(e), kScope);
    EXPECT_DOUBLE_EQ(eval(e, b), eval(again, b)) << src << " -> " << print(e);
  }
}

TEST(Expr, BindingsFromMapRejectsMissingAndForeignNames) {
  const Scope s({"x", "y"}, {"k"});
  EXPECT_NO_THROW(Bindings::from_map(s, {{"x", 1}, {"y", 2}, {"k", 3}}));
  EXPECT_ANY_THROW(Bindings::from_map(s, {{"x", 1}, {"k", 3}}));
  EXPECT_ANY_THROW(Bindings::from_map(s, {{"x", 1}, {"y", 2}, {"k", 3}, {"z", 0}}));
}

TEST(Jet, CountsAndMonomialIndexRoundTrip) {
  EXPECT_EQ(Jet::count(0), 1U);
  EXPECT_EQ(Jet::count(1), 5U);
  EXPECT_EQ(Jet::count(4), Jet::kCapacity);
  for (std::size_t i = 0; i < Jet::kCapacity; ++i) EXPECT_EQ(Jet::index_of(Jet::monomial(i)), i);
}

TEST(Jet, ProductMatchesPolynomialProduct) {
  // (1 + x) (1 - x) = 1 - x^2
  Jet a(4), b(4);
  a[0] = 1;
  a[Jet::index_of({1, 0, 0, 0})] = 1;
  b[0] = 1;
  b[Jet::index_of({1, 0, 0, 0})] = -1;
  const Jet c = a * b;
  EXPECT_DOUBLE_EQ(c[0], 1);
  EXPECT_DOUBLE_EQ(c[Jet::index_of({1, 0, 0, 0})], 0);
  EXPECT_DOUBLE_EQ(c[Jet::index_of({2, 0, 0, 0})], -1);
}

TEST(Jet, DerivativeLowersOrder) {
  // f = x^2 y, df/dx = 2 x y
  Jet f(3);
  f[Jet::index_of({2, 1, 0, 0})] = 1;
  const Jet d = f.derivative(0);
  EXPECT_EQ(d.order(), 2);
  EXPECT_DOUBLE_EQ(d[Jet::index_of({1, 1, 0, 0})], 2);
  EXPECT_DOUBLE_EQ(f.derivative_at_point(0), 0);
}
