#include <gtest/gtest.h>

#include "properties.hpp"
#include "qalg/error.hpp"
#include "qalg/free_models.hpp"

namespace qalg {
namespace {

using testing::pqr;
using testing::two_point;

const Signature kTwo{{"sigma1", 2}, {"sigma2", 2}};

TEST(TermMonad, UnitPreservesDistances) {
  const TermMonadModel m(kTwo, pqr());
  EXPECT_EQ(m.distance(Term::leaf("p"), Term::leaf("r")), 3.0);
  for (const auto& law : m.closed_form_laws()) EXPECT_TRUE(law.pass) << law.law << ": " << law.detail;
}

TEST(WordMonoid, ClosedFormValues) {
  const WordMonoidModel w(two_point(1.0), 3);
  EXPECT_EQ(w.word_distance({"a", "b"}, {"a", "b"}), 0.0);
  EXPECT_EQ(w.word_distance({"a", "a", "b"}, {"a", "b", "b"}), 1.0);
  EXPECT_EQ(w.word_distance({"a", "b"}, {"a", "b", "b"}), kInfinity);
  EXPECT_THROW(w.concat({"a", "b"}, {"a", "b"}), TruncationError);
  EXPECT_EQ(w.words().size(), 1u + 2 + 4 + 8);
}

TEST(WordMonoid, TermsDenoteFlattenedWords) {
  const WordMonoidModel w(two_point(1.0), 3);
  const Term t = w.parse_element("(mul a (mul (e) b))");
  EXPECT_EQ(w.word_of(t), (Word{"a", "b"}));
  EXPECT_EQ(w.element_label(t), WordMonoidModel::label({"a", "b"}));
}

TEST(Hausdorff, ClosedFormValues) {
  const HausdorffModel h(pqr());
  EXPECT_EQ(h.hausdorff({0}, {}), kInfinity);
  EXPECT_EQ(h.hausdorff({}, {}), 0.0);
  EXPECT_EQ(h.hausdorff({0, 2}, {0, 2}), 0.0);
  EXPECT_EQ(h.hausdorff({0}, {1, 2}), 3.0);
  EXPECT_EQ(h.all_subsets().size(), 8u);
}

TEST(Hausdorff, AgreesWithBruteForceFormula) {
  const HausdorffModel h(pqr());
  const MetricSpace x = pqr();
  const auto subsets = h.all_subsets();
  for (const auto& a : subsets)
    for (const auto& b : subsets) {
      Distance d = 0.0;
      if (a.empty() != b.empty()) d = kInfinity;
      for (std::size_t i : a) {
        Distance m = kInfinity;
        for (std::size_t j : b) m = std::min(m, x(i, j));
        if (!b.empty()) d = std::max(d, m);
      }
      for (std::size_t j : b) {
        Distance m = kInfinity;
        for (std::size_t i : a) m = std::min(m, x(i, j));
        if (!a.empty()) d = std::max(d, m);
      }
      EXPECT_EQ(h.hausdorff(a, b), d);
    }
}

TEST(Exception, ClosedFormValues) {
  const ExceptionModel none(two_point(1.0), MetricSpace::from_table({}, {}));
  EXPECT_EQ(none.elements().size(), 2u);
  const ExceptionModel m(two_point(1.0), testing::exceptions_e12());
  EXPECT_EQ(m.distance(m.parse_element("(e1)"), m.parse_element("(e2)")), 0.4);
  EXPECT_EQ(m.distance(m.parse_element("a"), m.parse_element("(e1)")), kInfinity);
  EXPECT_EQ(m.distance(m.parse_element("a"), m.parse_element("b")), 1.0);
}

TEST(SmallSpace, ReflectsTheTruncatedMetric) {
  EXPECT_EQ(SmallSpaceModel::apply(two_point(0.2), 0.5).distance("a", "b"), 0.2);
  EXPECT_EQ(SmallSpaceModel::apply(two_point(1.0), 0.5).distance("a", "b"), 0.5);
  const MetricSpace once = SmallSpaceModel::apply(pqr(), 0.5);
  EXPECT_EQ(SmallSpaceModel::apply(once, 0.5), once);
  // eps = 0 identifies every pair at finite distance.
  EXPECT_EQ(SmallSpaceModel::apply(pqr(), 0.0).size(), 1u);
}

TEST(Action, ClosedFormValues) {
  const ActionModel m(testing::monoid_em(), two_point(1.0));
  const Term ma = m.parse_element("(m a)"), a = m.parse_element("a"), mb = m.parse_element("(m b)");
  EXPECT_NEAR(m.distance(ma, a), 0.3, 1e-12);
  EXPECT_NEAR(m.distance(ma, mb), 1.0, 1e-12);
  EXPECT_EQ(m.pair_of(m.parse_element("(m (m a))")), m.pair_of(ma));
  const Signature sig{{"mul", 2}, {"e", 0}};
  const FiniteQuantAlgebra trivial(MetricSpace::from_table({"e"}, {0}), sig, {{"mul", {0}}, {"e", {0}}});
  EXPECT_EQ(ActionModel(trivial, pqr()).elements().size(), 3u);
}

TEST(Action, RejectsNonMonoid) {
  const Signature sig{{"mul", 2}, {"e", 0}};
  const FiniteQuantAlgebra bad(two_point(1.0, "e", "m"), sig, {{"mul", {0, 0, 1, 1}}, {"e", {0}}});
  EXPECT_THROW(ActionModel(bad, pqr()), PreconditionError);
}

TEST(TwoOps, DhatValues) {
  const TwoOpsModel m(two_point(1.0), 0.5);
  auto p = [&](const char* s) { return m.parse_element(s); };
  EXPECT_EQ(m.distance(p("a"), p("b")), 1.0);
  EXPECT_EQ(m.distance(p("a"), p("(sigma1 a a)")), kInfinity);
  EXPECT_EQ(m.distance(p("(sigma1 a a)"), p("(sigma2 a a)")), 0.5);
  EXPECT_EQ(m.distance(p("(sigma1 (sigma2 a a) (sigma1 b b))"), p("(sigma1 (sigma2 b b) (sigma2 b b))")), 1.0);
}

TEST(TwoOps, EpsMustBeInsideTheOpenInterval) {
  EXPECT_THROW(TwoOpsModel(two_point(1.0), 0.0), PreconditionError);
  EXPECT_THROW(TwoOpsModel(two_point(1.0), 1.0), PreconditionError);
  EXPECT_THROW(TwoOpsModel(two_point(1.0), 1.5), PreconditionError);
}

TEST(TwoOps, DhatIsAMetricOnTheDepthTwoUniverse) {
  const TwoOpsModel m(two_point(1.0), 0.5, 2);
  const auto elems = m.elements();
  ASSERT_EQ(elems.size(), 202u);
  const std::size_t n = elems.size();
  std::vector<Distance> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = m.distance(elems[i], elems[j]);
  EXPECT_FALSE(find_metric_violation(n, t).has_value());
}

TEST(OrdinaryFree, NoEquationsGivesDstar) {
  VarietyPresentation v;
  v.name = "free-magma";
  v.signature = Signature{{"mul", 2}};
  CongruenceOracle identity{"identity", [](const Term& t) { return t; }};
  const OrdinaryFreeModel m(v, two_point(1.0), identity, 2);
  const TermUniverse u = enumerate({"a", "b"}, v.signature, 2);
  for (const Term& t : u.terms)
    for (const Term& s : u.terms) ASSERT_EQ(m.distance(t, s), dstar(t, s, two_point(1.0)));
}

TEST(OrdinaryFree, MonoidMatchesWords) {
  const OrdinaryFreeModel m(monoid_presentation(), two_point(1.0), monoid_oracle(), 3);
  EXPECT_EQ(m.distance(m.parse_element("(mul a (mul a b))"), m.parse_element("(mul a (mul b b))")), 1.0);
  EXPECT_EQ(m.distance(m.parse_element("(mul a b)"), m.parse_element("a")), kInfinity);
}

TEST(OrdinaryFree, RejectsQuantitativeEquations) {
  EXPECT_THROW(OrdinaryFreeModel(two_eps_ops_presentation(0.5), two_point(1.0), monoid_oracle(), 2),
               PreconditionError);
}

TEST(OrdinaryFree, SemilatticeDecreasesWithDepth) {
  const HausdorffModel h(pqr());
  Distance prev = kInfinity;
  for (std::size_t depth = 1; depth <= 4; ++depth) {
    const OrdinaryFreeModel m(semilattice_presentation(), pqr(), semilattice_oracle(), depth);
    const Distance d = m.distance(m.parse_element("p"), m.parse_element("(join q r)"));
    EXPECT_LE(d, prev);
    EXPECT_GE(d, 3.0 - 1e-12);
    prev = d;
  }
  EXPECT_NEAR(prev, 3.0, 1e-12);
}

TEST(OrdinaryFree, CapIsEnforced) {
  EXPECT_THROW(OrdinaryFreeModel(monoid_presentation(), two_point(1.0), monoid_oracle(), 3, 100), CapExceeded);
}

TEST(UnaryFree, NoEquationsGivesDstar) {
  VarietyPresentation v;
  v.name = "free-unary";
  v.signature = Signature{{"f", 1}};
  const UnaryFreeModel m(v, two_point(1.0), 2);
  auto p = [&](const char* s) { return m.parse_element(s); };
  EXPECT_EQ(m.distance(p("(f a)"), p("(f b)")), 1.0);
  EXPECT_EQ(m.distance(p("(f a)"), p("a")), kInfinity);
}

TEST(UnaryFree, ActionMatchesClosedForm) {
  const UnaryFreeModel m(action_presentation(testing::monoid_em()), two_point(1.0), 3);
  auto p = [&](const char* s) { return m.parse_element(s); };
  EXPECT_NEAR(m.distance(p("(m a)"), p("a")), 0.3, 1e-12);
  EXPECT_NEAR(m.distance(p("(m a)"), p("(m b)")), 1.0, 1e-12);
  EXPECT_EQ(m.elements().size(), 4u);
}

TEST(UnaryFree, RejectsBinarySymbols) {
  EXPECT_THROW(UnaryFreeModel(monoid_presentation(), two_point(1.0), 2), PreconditionError);
}

TEST(UnaryFree, NonincreasingInDepth) {
  const auto v = action_presentation(testing::monoid_em());
  const UnaryFreeModel shallow(v, two_point(1.0), 2), deep(v, two_point(1.0), 3);
  const TermUniverse u = enumerate({"a", "b"}, v.signature, 2);
  for (const Term& t : u.terms)
    for (const Term& s : u.terms) EXPECT_LE(deep.distance(t, s), shallow.distance(t, s) + 1e-12);
}

TEST(Models, DistancesAreDeterministic) {
  const auto a = testing::property_models(), b = testing::property_models();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto ea = a[k]->elements(), eb = b[k]->elements();
    ASSERT_EQ(ea.size(), eb.size());
    for (std::size_t i = 0; i < std::min<std::size_t>(ea.size(), 40); ++i) {
      ASSERT_EQ(ea[i], eb[i]);
      for (std::size_t j = 0; j < std::min<std::size_t>(ea.size(), 40); ++j)
        ASSERT_EQ(a[k]->distance(ea[i], ea[j]), b[k]->distance(eb[i], eb[j]));
    }
  }
}

}  // namespace
}  // namespace qalg
