#include <gtest/gtest.h>

#include "ifpn/operators.hpp"
#include "support.hpp"

using namespace ifpn;

TEST(Operators, Examples) {
  EXPECT_EQ(builtin_operator("identity(2)")(Point{1.0, -3.0}), (Point{1.0, -3.0}));
  EXPECT_EQ(builtin_operator("zero(2)")(Point{1.0, -3.0}), (Point{0.0, 0.0}));
  EXPECT_EQ(builtin_operator("scaling(1,2)")(Point{1.5}), Point{3.0});
  EXPECT_EQ(builtin_operator("coordinate_projection(3,2)")(Point{1.0, 2.0, 3.0}), (Point{0.0, 2.0, 0.0}));
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  EXPECT_DOUBLE_EQ(cubic(Point{1.0})[0], 0.5);
  EXPECT_DOUBLE_EQ(cubic(Point{2.0})[0], 8.0 / 3.0);
  EXPECT_EQ(cubic(Point{0.0})[0], 0.0);
  EXPECT_FALSE(cubic.declared_linear);
  EXPECT_EQ(cubic.domain, GridDomain::NonNegative);
}

TEST(Operators, Errors) {
  EXPECT_THROW(builtin_operator("cubic_ratio")(Point{-1.0}), DomainError);
  EXPECT_THROW(cubic_ratio_value(-1e-12), DomainError);
  EXPECT_THROW(builtin_operator("rotation(2)"), UnknownName);
  EXPECT_THROW(builtin_operator("identity(0)"), InvalidParameter);
  EXPECT_THROW(builtin_operator("identity(1.5)"), InvalidParameter);
  EXPECT_THROW(builtin_operator("coordinate_projection(2,3)"), InvalidParameter);
  EXPECT_THROW(builtin_operator("coordinate_projection(2,0)"), InvalidParameter);
  EXPECT_THROW(builtin_operator("scaling(1)"), InvalidParameter);
  EXPECT_THROW(builtin_operator("identity(2)")(Point{1.0}), DimensionMismatch);
}

TEST(Operators, CubicRatioIsIncreasing) {
  testing_support::Gen gen(5);
  for (int i = 0; i < 500; ++i) {
    double a = gen.magnitude(), b = gen.magnitude();
    if (a > b) std::swap(a, b);
    EXPECT_LE(cubic_ratio_value(a), cubic_ratio_value(b));
    EXPECT_NEAR(cubic_ratio_value(a), a * a * a / (1.0 + a), 1e-15 * std::max(1.0, a * a));
  }
}

TEST(Operators, OperatorGridRespectsDomain) {
  const SampleGrid g = operator_grid(builtin_operator("cubic_ratio"));
  EXPECT_EQ(g.domain, GridDomain::NonNegative);
  for (const Point& p : g.points) EXPECT_TRUE(p.nonnegative());
  EXPECT_NE(std::find(g.points.begin(), g.points.end(), Point{1.0}), g.points.end());
  for (double c : g.scalars) EXPECT_GE(c, 0.0);
}

TEST(Linearity, DeclaredLinearBuiltinsHold) {
  for (const char* name : {"identity(1)", "identity(3)", "zero(2)", "scaling(1,2)", "scaling(2,-0.5)",
                           "coordinate_projection(2,1)", "coordinate_projection(3,3)"}) {
    const OperatorSpec op = builtin_operator(name);
    EXPECT_TRUE(op.declared_linear) << name;
    EXPECT_TRUE(check_linearity(op, operator_grid(op)).is(Verdict::Holds)) << name;
  }
}

TEST(Linearity, CubicRatioIsRefutedAndReplays) {
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  const DecisionOutcome o = check_linearity(cubic, operator_grid(cubic));
  ASSERT_TRUE(o.is(Verdict::Refuted));
  EXPECT_EQ(o.witness->tag, "additivity");
  EXPECT_TRUE(replay_linearity_witness(cubic, *o.witness, 1e-9));

  Witness at_one("additivity");
  at_one.with("x", Point{1.0}).with("y", Point{1.0}).with("c", 1.0);
  EXPECT_TRUE(replay_linearity_witness(cubic, at_one, 1e-9));
  EXPECT_FALSE(replay_linearity_witness(builtin_operator("scaling(1,2)"), at_one, 1e-9));
}

TEST(Linearity, ShiftIsRefutedOnHomogeneityOrAdditivity) {
  OperatorSpec shift{"shift", 1, 1, [](const Point& x) { return Point{x[0] + 1.0}; }, false};
  const DecisionOutcome o = check_linearity(shift, default_grid(1));
  ASSERT_TRUE(o.is(Verdict::Refuted));
  EXPECT_TRUE(replay_linearity_witness(shift, *o.witness, 1e-9));
}

TEST(LinearityProperty, RandomScalingsAreLinear) {
  testing_support::Gen gen(9);
  for (int i = 0; i < 20; ++i) {
    const double lambda = gen.signed_value();
    const OperatorSpec op{"s", 2, 2, [lambda](const Point& x) { return lambda * x; }, true};
    EXPECT_TRUE(check_linearity(op, default_grid(2)).is(Verdict::Holds)) << lambda;
  }
}
