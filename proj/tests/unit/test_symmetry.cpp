#include <gtest/gtest.h>

#include "semisym/np.hpp"
#include "semisym/symmetry.hpp"
#include "test_support.hpp"

using namespace semisym;
using semisym::testing::corpus;
using semisym::testing::point;

namespace {

struct Expected {
  const char* metric;
  Verdict semi, conformal, ricci, second_order;
};

const Expected kExpected[] = {
    {"schwarzschild", Verdict::Fails, Verdict::Fails, Verdict::Holds, Verdict::Fails},
    {"nariai", Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Holds},
    {"product2x2", Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Fails},
    {"ppwave_linear", Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Holds},
    {"ppwave_quadratic_u", Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Fails},
    {"bertotti_robinson", Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Holds},
};

}  // namespace

TEST(Symmetry, ToleranceDeadBand) {
  const Tolerance t;
  EXPECT_EQ(t.judge(1e-10, 1.0), Verdict::Holds);
  EXPECT_EQ(t.judge(5e-9, 1.0), Verdict::Indeterminate);
  EXPECT_EQ(t.judge(1e-8, 1.0), Verdict::Fails);
  EXPECT_EQ(t.judge(0.0, 0.0), Verdict::Holds);
}

TEST(Symmetry, CorpusVerdicts) {
  for (const auto& e : kExpected) {
    const MetricFile f = corpus(e.metric);
    for (const auto& p : f.field.points()) {
      const LocalGeometry geo(f.field, p, 4);
      EXPECT_EQ(semi_symmetry_residual(geo).verdict, e.semi) << e.metric << " " << p.name;
      EXPECT_EQ(conformal_semi_symmetry_residual(geo).verdict, e.conformal) << e.metric << " " << p.name;
      EXPECT_EQ(ricci_semi_symmetry_residual(geo).verdict, e.ricci) << e.metric << " " << p.name;
      EXPECT_EQ(second_order_symmetry_residual(geo).verdict, e.second_order) << e.metric << " " << p.name;
    }
  }
}

TEST(Symmetry, LocallySymmetricProductsAndWaves) {
  for (const char* name : {"nariai", "bertotti_robinson"}) {
    const MetricFile f = corpus(name);
    for (const auto& p : f.field.points())
      EXPECT_EQ(locally_symmetric_residual(LocalGeometry(f.field, p, 4)).verdict, Verdict::Holds) << name;
  }
  const MetricFile s = corpus("schwarzschild");
  EXPECT_EQ(locally_symmetric_residual(LocalGeometry(s.field, point(s, "p1"), 4)).verdict, Verdict::Fails);
}

TEST(Symmetry, CommutatorAndDirectRoutesAgree) {
  for (const auto& e : kExpected) {
    const MetricFile f = corpus(e.metric);
    for (const auto& p : f.field.points()) {
      const LocalGeometry geo(f.field, p, 4);
      const double scale = std::max(1.0, geo.riemann().value().max_abs());
      for (const char* cond : {"semi", "conformal", "ricci"})
        EXPECT_LE(commutator_route_difference(geo, cond), 1e-7 * scale * scale) << e.metric << " " << cond;
      const SymmetryOptions opt{Tolerance{}, true};
      const ResidualReport r = semi_symmetry_residual(geo, opt);
      ASSERT_TRUE(r.route_difference.has_value());
      EXPECT_EQ(*r.route_difference, commutator_route_difference(geo, "semi"));
    }
  }
}

TEST(Symmetry, PrincipalNullDirectionsOfProductsAreRecurrent) {
  for (const char* name : {"nariai", "product2x2"}) {
    const MetricFile f = corpus(name);
    for (const auto& p : f.field.points()) {
      const LocalGeometry geo(f.field, p, 4);
      EXPECT_EQ(recurrence_check(geo, NullLeg::K).verdict, Verdict::Holds) << name << " " << p.name;
      EXPECT_EQ(recurrence_check(geo, NullLeg::L).verdict, Verdict::Holds) << name << " " << p.name;
      EXPECT_EQ(decomposability_check(geo).verdict, Verdict::Holds) << name << " " << p.name;
    }
  }
}

// The Kinnersley k has rho = -1/r, so it is geodesic but not recurrent.
TEST(Symmetry, SchwarzschildKinnersleyLegIsNotRecurrent) {
  const MetricFile f = corpus("schwarzschild");
  for (const auto& p : f.field.points()) {
    const LocalGeometry geo(f.field, p, 4);
    EXPECT_EQ(recurrence_check(geo, NullLeg::K).verdict, Verdict::Fails) << p.name;
    EXPECT_EQ(decomposability_check(geo).verdict, Verdict::Fails) << p.name;
    const SpinCoefficients s = spin_coefficients(geo);
    EXPECT_NEAR(s.rho.real(), -1.0 / p.coords[1], 1e-12);
    EXPECT_NEAR(std::abs(s.kappa), 0.0, 1e-12);
  }
}

TEST(Symmetry, PpWavesCarryCovariantlyConstantNullVector) {
  for (const char* name : {"ppwave_linear", "ppwave_quadratic_u"}) {
    const MetricFile f = corpus(name);
    for (const auto& p : f.field.points())
      EXPECT_EQ(constant_null_vector_check(LocalGeometry(f.field, p, 4)).verdict, Verdict::Holds) << name;
  }
  const MetricFile n = corpus("nariai");
  EXPECT_EQ(constant_null_vector_check(LocalGeometry(n.field, point(n, "p2"), 4)).verdict, Verdict::Fails);
}
