#include <gtest/gtest.h>

#include "ifpn/classify.hpp"
#include "support.hpp"

using namespace ifpn;

namespace {

const IfpnPair kAbs = standard_ifpn(builtin_pseudo_norm("abs", 1));

struct Case {
  OperatorSpec op;
  IfpnPair fd, fc;
  ClassifierConfig cfg;
};

Case on_abs(const char* op, double x0 = 0.0) {
  OperatorSpec T = builtin_operator(op);
  return {T, kAbs, kAbs, default_classifier_config(T, Point{x0})};
}

PropertyReport run(Property p, const Case& s) { return check_property(p, s.op, s.fd, s.fc, s.cfg); }

OperatorSpec step_operator() {
  return {"step", 1, 1, [](const Point& x) { return Point{x[0] >= 1.0 ? 1.0 : 0.0}; }, false};
}

}  // namespace

TEST(Properties, NamesRoundTrip) {
  for (Property p : kAllProperties) {
    EXPECT_EQ(parse_property(cli_name(p)), p);
    EXPECT_EQ(parse_property(to_string(p)), p);
  }
  EXPECT_THROW(parse_property("continuity"), UnknownName);
  EXPECT_TRUE(has_certificate(Property::WeakIFC));
  EXPECT_FALSE(has_certificate(Property::StrongIFB));
}

TEST(SearchOrder, DeltaStartsAtEpsThenHalves) {
  const auto order = detail::delta_search_order(1.0, default_delta_candidates());
  ASSERT_GE(order.size(), 3u);
  EXPECT_EQ(order[0], 1.0);
  EXPECT_EQ(order[1], 0.5);
  EXPECT_EQ(order[2], 0.25);
  const auto beta = detail::beta_search_order(0.3, {0.9, 0.1, 0.3, 0.5});
  EXPECT_EQ(beta, (std::vector<double>{0.3, 0.1, 0.5, 0.9}));
}

TEST(ClassifierConfig, Validation) {
  Case s = on_abs("identity(1)");
  EXPECT_NO_THROW(s.cfg.validate());
  ClassifierConfig bad = s.cfg;
  bad.alpha_grid = {1.0};
  EXPECT_THROW(bad.validate(), InvalidParameter);
  bad = s.cfg;
  bad.delta_candidates = {0.1, 1.0};
  EXPECT_THROW(bad.validate(), InvalidParameter);
  bad = s.cfg;
  bad.point_of_interest = Point{0.0, 0.0};
  EXPECT_THROW(bad.validate(), DimensionMismatch);
  const IfpnPair e2 = standard_ifpn(builtin_pseudo_norm("euclidean", 2));
  EXPECT_THROW(check_strong_ifb(s.op, e2, kAbs, s.cfg), DimensionMismatch);
}

TEST(ClassificationGrid, ContainsShellsAroundPointAndStaysInDomain) {
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  const SampleGrid g = classification_grid(cubic, Point{1.0});
  for (const Point& p : g.points) EXPECT_TRUE(p.nonnegative());
  auto has = [&](double v) { return std::find(g.points.begin(), g.points.end(), Point{v}) != g.points.end(); };
  EXPECT_TRUE(has(1.0 + 1e-7));
  EXPECT_TRUE(has(1.0 - 1e-7));
  EXPECT_TRUE(has(1e-7));
  EXPECT_FALSE(has(1e3));
  const SampleGrid far = classification_grid(cubic, Point{1.0}, {}, true);
  EXPECT_GT(far.points.size(), g.points.size());
  for (std::size_t i = 0; i < g.points.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) ASSERT_FALSE(g.points[i] == g.points[j]);
}

TEST(Classify, IdentityAndZeroSatisfyEverything) {
  for (const char* op : {"identity(1)", "zero(1)", "scaling(1,0.5)"}) {
    const Case s = on_abs(op);
    for (Property p : kAllProperties) {
      const PropertyReport r = run(p, s);
      EXPECT_TRUE(r.outcome.is(Verdict::Holds)) << op << " " << to_string(p) << " " << r.outcome.note;
      EXPECT_TRUE(replay_report(r, s.op, s.fd, s.fc, s.cfg)) << op << " " << to_string(p);
    }
  }
}

TEST(Classify, IdentityCertificatesUseDeltaEqualEps) {
  const Case s = on_abs("identity(1)");
  for (Property p : {Property::IFC, Property::WeakIFC, Property::StrongIFC}) {
    const PropertyReport r = run(p, s);
    ASSERT_FALSE(r.outcome.certificate.empty());
    for (const CertificateRow& row : r.outcome.certificate)
      EXPECT_EQ(row_value(row, "delta"), row_value(row, "eps")) << to_string(p);
    if (p == Property::IFC) {
      for (const CertificateRow& row : r.outcome.certificate) EXPECT_EQ(row_value(row, "beta"), row_value(row, "alpha"));
    }
  }
}

TEST(Classify, DoublingNeedsHalfDelta) {
  const Case s = on_abs("scaling(1,2)");
  const PropertyReport weak = run(Property::WeakIFC, s);
  ASSERT_TRUE(weak.outcome.is(Verdict::Holds));
  for (const CertificateRow& row : weak.outcome.certificate)
    EXPECT_DOUBLE_EQ(row_value(row, "delta"), 0.5 * row_value(row, "eps"));
  EXPECT_TRUE(replay_report(weak, s.op, s.fd, s.fc, s.cfg));

  const PropertyReport strong_ifb = run(Property::StrongIFB, s);
  ASSERT_TRUE(strong_ifb.outcome.is(Verdict::Refuted));
  EXPECT_EQ(strong_ifb.outcome.witness->point("x"), Point{1.0});
  EXPECT_EQ(strong_ifb.outcome.witness->scalar("t"), 1.0);
  EXPECT_TRUE(run(Property::WeakIFB, s).outcome.is(Verdict::Refuted));
  EXPECT_TRUE(run(Property::UniformIFB, s).outcome.is(Verdict::Refuted));
}

TEST(Classify, CubicRatioAtOrigin) {
  const OperatorSpec cubic = builtin_operator("cubic_ratio");
  const Case s{cubic, kAbs, kAbs, default_classifier_config(cubic, Point{0.0}, {}, true)};
  const PropertyReport weak = run(Property::WeakIFC, s);
  ASSERT_TRUE(weak.outcome.is(Verdict::Holds)) << weak.outcome.note;
  for (const CertificateRow& row : weak.outcome.certificate)
    EXPECT_LE(row_value(row, "delta"), row_value(row, "eps"));
  const PropertyReport strong = run(Property::StrongIFC, s);
  ASSERT_TRUE(strong.outcome.is(Verdict::Refuted));
  EXPECT_FALSE(strong.outcome.diagnostics.empty());
  EXPECT_FALSE(strong.outcome.candidate_witnesses.empty());
  EXPECT_TRUE(run(Property::SeqIFC, s).outcome.is(Verdict::Holds));
  for (Property p : kAllProperties) EXPECT_TRUE(replay_report(run(p, s), s.op, s.fd, s.fc, s.cfg)) << to_string(p);
}

TEST(Classify, StepOperatorIsDiscontinuousAtOne) {
  const OperatorSpec step = step_operator();
  ClassifierConfig cfg = default_classifier_config(step, Point{1.0});
  cfg.seq_suite = {{"1-1/n", [](std::uint64_t n) { return Point{1.0 - 1.0 / static_cast<double>(n)}; }, Point{1.0}}};
  cfg.seq_tail = 20000;
  const PropertyReport seq = check_seq_ifc_at(step, kAbs, kAbs, cfg);
  ASSERT_TRUE(seq.outcome.is(Verdict::Refuted)) << seq.outcome.note;
  EXPECT_EQ(seq.outcome.witness->label, "1-1/n");
  EXPECT_TRUE(replay_report(seq, step, kAbs, kAbs, cfg));

  const PropertyReport weak = check_weak_ifc_at(step, kAbs, kAbs, cfg);
  ASSERT_TRUE(weak.outcome.is(Verdict::Refuted));
  EXPECT_LT(weak.outcome.witness->point("x")[0], 1.0);
  EXPECT_TRUE(replay_report(weak, step, kAbs, kAbs, cfg));

  // Away from the jump the step operator is locally constant.
  ClassifierConfig at_half = default_classifier_config(step, Point{0.5});
  at_half.x_grid.points = {Point{0.5}, Point{0.4}, Point{0.6}, Point{0.5 + 1e-7}};
  EXPECT_TRUE(check_weak_ifc_at(step, kAbs, kAbs, at_half).outcome.is(Verdict::Holds));
}

TEST(Classify, VacuousCandidatesAreInconclusive) {
  Case s = on_abs("identity(1)");
  s.cfg.x_grid.points = {Point{0.0}};
  for (Property p : {Property::IFC, Property::WeakIFC}) {
    const PropertyReport r = run(p, s);
    EXPECT_TRUE(r.outcome.is(Verdict::Inconclusive)) << to_string(p);
    EXPECT_NE(r.outcome.note.find("vacuous"), std::string::npos);
  }
}

TEST(Classify, UniformBoundednessSkipsBracketOverflow) {
  Case s = on_abs("identity(1)");
  s.cfg.bisection.bracket_cap = 4.0;
  const PropertyReport r = run(Property::UniformIFB, s);
  EXPECT_TRUE(r.outcome.is(Verdict::Inconclusive));
  EXPECT_NE(r.outcome.resolution.find("bracket_skipped="), std::string::npos);
}

TEST(Replay, RejectsNonViolatingWitnesses) {
  const Case s = on_abs("identity(1)");
  Witness w("StrongIFB.mu");
  w.with("x", Point{1.0}).with("t", 1.0);
  EXPECT_FALSE(replay_witness(Property::StrongIFB, s.op, s.fd, s.fc, s.cfg, w));
  Witness c("WeakIFC.mu");
  c.with("x", Point{1.0}).with("x0", Point{0.0}).with("eps", 1.0).with("alpha", 0.5).with("delta", 1.0);
  EXPECT_FALSE(replay_witness(Property::WeakIFC, s.op, s.fd, s.fc, s.cfg, c));
  const Case d = on_abs("scaling(1,2)");
  EXPECT_TRUE(replay_witness(Property::WeakIFC, d.op, d.fd, d.fc, d.cfg, c));
  const CertificateRow row{{"eps", 1.0}, {"alpha", 0.5}, {"delta", 1.0}};
  EXPECT_TRUE(replay_certificate(Property::WeakIFC, s.op, s.fd, s.fc, s.cfg, row));
  EXPECT_FALSE(replay_certificate(Property::WeakIFC, d.op, d.fd, d.fc, d.cfg, row));
}

TEST(ClassifyProperty, RefutationsSurviveGridRefinement) {
  testing_support::Gen gen(21);
  const Case s = on_abs("scaling(1,2)");
  const std::size_t n = s.cfg.x_grid.points.size();
  for (int trial = 0; trial < 10; ++trial) {
    ClassifierConfig sub = s.cfg;
    sub.x_grid.points.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (gen.coin()) sub.x_grid.points.push_back(s.cfg.x_grid.points[i]);
    if (sub.x_grid.points.empty()) continue;
    for (Property p : {Property::StrongIFB, Property::WeakIFB}) {
      const PropertyReport coarse = check_property(p, s.op, s.fd, s.fc, sub);
      if (coarse.outcome.is(Verdict::Refuted)) {
        EXPECT_TRUE(replay_witness(p, s.op, s.fd, s.fc, s.cfg, *coarse.outcome.witness));
        EXPECT_TRUE(run(p, s).outcome.is(Verdict::Refuted));
      }
    }
  }
}

TEST(ClassifyProperty, StrongImpliesWeakForRandomScalings) {
  testing_support::Gen gen(33);
  for (int trial = 0; trial < 6; ++trial) {
    const double lambda = gen.signed_value() * (gen.coin() ? 1e-3 : 1.0);
    OperatorSpec T{"s", 1, 1, [lambda](const Point& x) { return lambda * x; }, true};
    ClassifierConfig cfg = default_classifier_config(T, Point{0.0});
    auto verdict = [&](Property p) { return check_property(p, T, kAbs, kAbs, cfg).outcome.verdict; };
    if (verdict(Property::StrongIFB) == Verdict::Holds) {
      EXPECT_EQ(verdict(Property::WeakIFB), Verdict::Holds) << lambda;
      EXPECT_EQ(verdict(Property::UniformIFB), Verdict::Holds) << lambda;
    }
    if (verdict(Property::StrongIFC) == Verdict::Holds) {
      EXPECT_EQ(verdict(Property::WeakIFC), Verdict::Holds) << lambda;
    }
    EXPECT_EQ(verdict(Property::StrongIFB) == Verdict::Holds, std::abs(lambda) <= 1.0) << lambda;
  }
}
