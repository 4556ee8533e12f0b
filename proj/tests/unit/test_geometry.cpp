#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "semisym/geometry.hpp"
#include "test_support.hpp"

using namespace semisym;
using semisym::testing::corpus;
using semisym::testing::point;

namespace {

Eigen::Matrix4d metric_at(const MetricField& m, const SamplePoint& p) {
  Eigen::Matrix4d g;
  const Bindings b = m.bindings(p);
  for (int a = 0; a < kDim; ++a)
    for (int c = 0; c < kDim; ++c) g(a, c) = eval(m.g(a, c), b);
  return g;
}

SamplePoint shifted(SamplePoint p, int coord, double h) {
  p.coords[static_cast<std::size_t>(coord)] += h;
  return p;
}

/// Christoffel symbols from central differences of the metric expressions.
double fd_christoffel(const MetricField& m, const SamplePoint& p, int a, int b, int c) {
  const double h = 1e-5;
  std::array<Eigen::Matrix4d, kDim> dg;
  for (int e = 0; e < kDim; ++e)
    dg[static_cast<std::size_t>(e)] = (metric_at(m, shifted(p, e, h)) - metric_at(m, shifted(p, e, -h))) / (2 * h);
  const Eigen::Matrix4d ginv = metric_at(m, p).inverse();
  double s = 0;
  for (int d = 0; d < kDim; ++d)
    s += 0.5 * ginv(a, d) *
         (dg[static_cast<std::size_t>(b)](d, c) + dg[static_cast<std::size_t>(c)](d, b) - dg[static_cast<std::size_t>(d)](b, c));
  return s;
}

}  // namespace

TEST(Geometry, ChristoffelMatchesFiniteDifferences) {
  for (const char* name : {"schwarzschild", "nariai", "ppwave_quadratic_u", "product2x2"}) {
    const MetricFile f = corpus(name);
    for (const auto& p : f.field.points()) {
      const TensorValue gamma = christoffel(f.field, p);
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b)
          for (int c = 0; c < kDim; ++c)
            EXPECT_NEAR(gamma.at({a, b, c}).real(), fd_christoffel(f.field, p, a, b, c), 1e-7)
                << name << " " << p.name << " G^" << a << "_" << b << c;
    }
  }
}

TEST(Geometry, RiemannMatchesFiniteDifferencesOfChristoffel) {
  const MetricFile f = corpus("schwarzschild");
  const SamplePoint& p = point(f, "p2");
  const double h = 1e-4;
  std::array<TensorValue, kDim> dgamma;
  for (int e = 0; e < kDim; ++e) {
    dgamma[static_cast<std::size_t>(e)] = christoffel(f.field, shifted(p, e, h));
    dgamma[static_cast<std::size_t>(e)] -= christoffel(f.field, shifted(p, e, -h));
    dgamma[static_cast<std::size_t>(e)] *= 1.0 / (2 * h);
  }
  const TensorValue gamma = christoffel(f.field, p);
  const Curvature c = curvature(f.field, p);
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int cc = 0; cc < kDim; ++cc)
        for (int d = 0; d < kDim; ++d) {
          // g_ae R^e_bcd from differenced Christoffel symbols.
          double oracle = 0;
          for (int e = 0; e < kDim; ++e) {
            double re = dgamma[static_cast<std::size_t>(cc)].at({e, d, b}).real() -
                        dgamma[static_cast<std::size_t>(d)].at({e, cc, b}).real();
            for (int q = 0; q < kDim; ++q)
              re += gamma.at({e, cc, q}).real() * gamma.at({q, d, b}).real() -
                    gamma.at({e, d, q}).real() * gamma.at({q, cc, b}).real();
            oracle += c.metric.at({a, e}).real() * kRiemannSign * re;
          }
          EXPECT_NEAR(c.riemann.at({a, b, cc, d}).real(), oracle, 1e-7);
        }
}

TEST(Geometry, RiemannAlgebraicSymmetries) {
  for (const char* name : {"schwarzschild", "product2x2", "ppwave_linear"}) {
    const MetricFile f = corpus(name);
    const Curvature c = curvature(f.field, f.field.points().front());
    const double s = c.riemann.max_abs();
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        for (int cc = 0; cc < kDim; ++cc)
          for (int d = 0; d < kDim; ++d) {
            const Complex r = c.riemann.at({a, b, cc, d});
            EXPECT_NEAR(std::abs(r + c.riemann.at({b, a, cc, d})), 0, 1e-13 * s);
            EXPECT_NEAR(std::abs(r + c.riemann.at({a, b, d, cc})), 0, 1e-13 * s);
            EXPECT_NEAR(std::abs(r - c.riemann.at({cc, d, a, b})), 0, 1e-13 * s);
            EXPECT_NEAR(std::abs(r + c.riemann.at({a, cc, d, b}) + c.riemann.at({a, d, b, cc})), 0, 1e-13 * s);
          }
  }
}

TEST(Geometry, SchwarzschildIsVacuumWithKnownKretschmann) {
  const MetricFile f = corpus("schwarzschild");
  for (const auto& p : f.field.points()) {
    const Curvature c = curvature(f.field, p);
    const double r = p.coords[1];
    EXPECT_LT(c.ricci.max_abs(), 1e-13);
    const TensorValue up = raise_index(raise_index(raise_index(raise_index(c.riemann, 0, c.inverse_metric), 1,
                                                               c.inverse_metric),
                                                   2, c.inverse_metric),
                                       3, c.inverse_metric);
    Complex k = 0;
    for (std::size_t i = 0; i < up.size(); ++i) k += up[i] * c.riemann[i];
    EXPECT_NEAR(k.real(), 48.0 / std::pow(r, 6), 1e-12) << p.name;
    EXPECT_LT(max_abs_difference(c.weyl, c.riemann), 1e-13);
  }
}

TEST(Geometry, NariaiScalarCurvatureIsFourK) {
  const MetricFile f = corpus("nariai");
  for (const auto& p : f.field.points()) EXPECT_NEAR(curvature(f.field, p).scalar, 2.0, 1e-12);
}

TEST(Geometry, WeylIsTraceFree) {
  for (const char* name : {"nariai", "product2x2", "ppwave_quadratic_u"}) {
    const MetricFile f = corpus(name);
    for (const auto& p : f.field.points()) {
      const Curvature c = curvature(f.field, p);
      for (int b = 0; b < kDim; ++b)
        for (int d = 0; d < kDim; ++d) {
          Complex tr = 0;
          for (int a = 0; a < kDim; ++a)
            for (int cc = 0; cc < kDim; ++cc) tr += c.inverse_metric.at({a, cc}) * c.weyl.at({a, b, cc, d});
          EXPECT_LT(std::abs(tr), 1e-12 * std::max(1.0, c.riemann.max_abs()));
        }
    }
  }
}

TEST(Geometry, InverseMetricJetInvertsMetricJet) {
  const MetricFile f = corpus("schwarzschild");
  const LocalGeometry geo(f.field, point(f, "p3"), 4);
  for (int a = 0; a < kDim; ++a)
    for (int c = 0; c < kDim; ++c) {
      Jet prod(4);
      for (int b = 0; b < kDim; ++b)
        prod.add_product(geo.metric()[static_cast<std::size_t>(a * kDim + b)],
                         geo.inverse_metric()[static_cast<std::size_t>(b * kDim + c)]);
      for (std::size_t i = 0; i < Jet::count(4); ++i)
        EXPECT_NEAR(prod[i], (i == 0 && a == c) ? 1.0 : 0.0, 1e-12);
    }
}

TEST(Geometry, CommutatorActionMatchesDirectSecondDerivatives) {
  const MetricFile f = corpus("schwarzschild");
  const LocalGeometry geo(f.field, point(f, "p1"), 4);
  const TensorValue mixed = riemann_mixed(geo.riemann().value(), geo.inverse_metric().value());
  const TensorValue algebraic = commutator_action(mixed, geo.ricci().value());
  EXPECT_LT(algebraic.max_abs(), 1e-12);
  const TensorValue direct = antisymmetrized_second_derivative(geo, geo.riemann());
  const TensorValue via_identity = commutator_action(mixed, geo.riemann().value());
  EXPECT_LT(max_abs_difference(direct, via_identity), 1e-10 * via_identity.max_abs());
  EXPECT_GT(via_identity.max_abs(), 1e-3);
}

TEST(Geometry, RejectsDegenerateAndWrongSignatureMetrics) {
  TensorValue g = TensorValue::all_down(2);
  g.at({0, 0}) = 1;
  g.at({1, 1}) = -1;
  g.at({2, 2}) = -1;
  EXPECT_THROW(check_lorentzian(g, "test"), DegenerateMetricError);
  g.at({3, 3}) = 1;
  EXPECT_THROW(check_lorentzian(g, "test"), DegenerateMetricError);
  g.at({3, 3}) = -1;
  EXPECT_NO_THROW(check_lorentzian(g, "test"));
}
