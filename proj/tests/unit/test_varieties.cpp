#include <gtest/gtest.h>

#include "properties.hpp"
#include "qalg/algebra.hpp"
#include "qalg/entailment.hpp"
#include "qalg/error.hpp"
#include "qalg/free_models.hpp"
#include "qalg/variety.hpp"

namespace qalg {
namespace {

using testing::two_point;

FiniteQuantAlgebra semilattice2() {
  const Signature sig{{"join", 2}, {"bot", 0}};
  return FiniteQuantAlgebra(two_point(1.0, "0", "1"), sig, {{"join", {0, 1, 1, 1}}, {"bot", {0}}});
}

TEST(Nonexpanding, OnePointAlgebraPasses) {
  const Signature sig{{"f", 1}, {"mul", 2}};
  const FiniteQuantAlgebra one(MetricSpace::from_table({"o"}, {0}), sig, {{"f", {0}}, {"mul", {0}}});
  EXPECT_TRUE(check_nonexpanding(one).ok);
}

TEST(Nonexpanding, IdentityLikeUnaryPasses) {
  const Signature sig{{"f", 1}};
  EXPECT_TRUE(check_nonexpanding(FiniteQuantAlgebra(two_point(1.0, "0", "1"), sig, {{"f", {0, 1}}})).ok);
  EXPECT_TRUE(check_nonexpanding(FiniteQuantAlgebra(two_point(0.5, "0", "1"), sig, {{"f", {0, 1}}})).ok);
}

TEST(Nonexpanding, ExplicitViolatorIsWitnessed) {
  // d(p,q) = 0.2 but f sends p, q to points at distance 1.
  const MetricSpace x = MetricSpace::from_table({"p", "q", "r"}, {0, 0.2, 1, 0.2, 0, 1, 1, 1, 0});
  const Signature sig{{"f", 1}};
  const FiniteQuantAlgebra a(x, sig, {{"f", {0, 2, 2}}});
  const auto rep = check_nonexpanding(a);
  ASSERT_FALSE(rep.ok);
  EXPECT_EQ(rep.symbol, "f");
  EXPECT_EQ(rep.input, 0.2);
  EXPECT_EQ(rep.output, 1.0);
  EXPECT_EQ(rep.args1, std::vector<std::size_t>{0});
  EXPECT_EQ(rep.args2, std::vector<std::size_t>{1});
}

TEST(Satisfaction, InfiniteBoundAlwaysHolds) {
  const auto a = semilattice2();
  const QuantEquation e{parse_term("(join x0 x1)", a.signature()), Term::leaf("x0"), kInfinity};
  EXPECT_TRUE(satisfies(a, e).holds);
}

TEST(Satisfaction, SmallSpaceAlgebraSatisfiesItsEquation) {
  const MetricSpace x = SmallSpaceModel::apply(testing::pqr(), 0.5);
  const FiniteQuantAlgebra a(x, Signature{}, {});
  const auto v = small_presentation(0.5);
  EXPECT_TRUE(satisfies_all(a, v).holds);
  const FiniteQuantAlgebra big(testing::pqr(), Signature{}, {});
  const auto r = satisfies_all(big, v);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.per_equation.at(0).worst, 3.0);
}

TEST(Satisfaction, TwoUnaryOpsWitness) {
  // f(p) = p, g(p) = q with d(p, q) = 0.7.
  const Signature sig{{"f", 1}, {"g", 1}};
  const FiniteQuantAlgebra a(two_point(0.7, "p", "q"), sig, {{"f", {0, 1}}, {"g", {1, 1}}});
  const QuantEquation e{parse_term("(f x0)", sig), parse_term("(g x0)", sig), 0.5};
  const auto r = satisfies(a, e);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.worst, 0.7);
  EXPECT_EQ(r.witness, std::vector<std::size_t>{0});
}

TEST(Satisfaction, MonotoneInEps) {
  const Signature sig{{"f", 1}, {"g", 1}};
  const FiniteQuantAlgebra a(two_point(0.7, "p", "q"), sig, {{"f", {0, 1}}, {"g", {1, 1}}});
  bool seen = false;
  for (Distance eps = 0.0; eps <= 1.0; eps += 0.05) {
    const bool holds = satisfies(a, {parse_term("(f x0)", sig), parse_term("(g x0)", sig), eps}).holds;
    if (seen) {
      EXPECT_TRUE(holds);
    }
    seen = seen || holds;
  }
  EXPECT_TRUE(seen);
}

TEST(Satisfaction, MissingSymbolIsAnError) {
  const auto a = semilattice2();
  const Signature other{{"mul", 2}};
  EXPECT_THROW(satisfies(a, {parse_term("(mul x0 x1)", other), Term::leaf("x0"), 0.0}), UndefinedError);
}

TEST(Satisfaction, ClosedEquationIsAllowed) {
  const auto a = semilattice2();
  const QuantEquation e{parse_term("(join (bot) (bot))", a.signature()), parse_term("(bot)", a.signature()), 0.0};
  const auto r = satisfies(a, e);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.interpretations, 1u);
}

TEST(Varieties, EmptyEquationListPasses) {
  VarietyPresentation v;
  v.signature = Signature{{"join", 2}, {"bot", 0}};
  EXPECT_TRUE(satisfies_all(semilattice2(), v).holds);
}

TEST(Varieties, OnePointMonoidAndTwoElementSemilattice) {
  const Signature sig{{"mul", 2}, {"e", 0}};
  const FiniteQuantAlgebra one(MetricSpace::from_table({"o"}, {0}), sig, {{"mul", {0}}, {"e", {0}}});
  EXPECT_TRUE(satisfies_all(one, monoid_presentation()).holds);
  EXPECT_TRUE(satisfies_all(semilattice2(), semilattice_presentation()).holds);
  EXPECT_TRUE(satisfies_all(testing::monoid_em(), monoid_presentation()).holds);
}

TEST(Varieties, BuiltinPresentationsAreWellFormed) {
  EXPECT_NO_THROW(monoid_presentation().validate());
  EXPECT_NO_THROW(semilattice_presentation().validate());
  EXPECT_NO_THROW(two_eps_ops_presentation(0.5).validate());
  EXPECT_NO_THROW(small_presentation(0.5).validate());
  EXPECT_NO_THROW(exceptions_presentation(testing::exceptions_e12()).validate());
  EXPECT_NO_THROW(action_presentation(testing::monoid_em()).validate());
  EXPECT_TRUE(monoid_presentation().ordinary());
  EXPECT_FALSE(two_eps_ops_presentation(0.5).ordinary());
  EXPECT_TRUE(action_presentation(testing::monoid_em()).unary());
}

TEST(Entailment, EqualTermsAreAtZero) {
  const auto v = monoid_presentation();
  const Term t = parse_term("(mul a b)", v.signature);
  EXPECT_EQ(entailment_upper_bound(v, t, t, {"a", "b"}, {2}), 0.0);
}

TEST(Entailment, AssociativityIsOneRewrite) {
  const auto v = monoid_presentation();
  const Term l = parse_term("(mul (mul a b) c)", v.signature);
  const Term r = parse_term("(mul a (mul b c))", v.signature);
  EXPECT_EQ(entailment_upper_bound(v, l, r, {"a", "b", "c"}, {2}), 0.0);
}

TEST(Entailment, ActionVarietyBound) {
  const auto v = action_presentation(testing::monoid_em());
  const Term ma = parse_term("(m a)", v.signature);
  EXPECT_NEAR(entailment_upper_bound(v, ma, Term::leaf("a"), {"a"}, {3}), 0.3, 1e-12);
}

TEST(Entailment, NonincreasingInBudgetAndSymmetric) {
  const auto v = action_presentation(testing::monoid_em());
  const TermUniverse u = enumerate({"a", "b"}, v.signature, 2);
  for (std::size_t i = 0; i < u.size(); i += 3)
    for (std::size_t j = 0; j < u.size(); j += 5) {
      const Term& t = u.terms[i];
      const Term& s = u.terms[j];
      Distance prev = kInfinity;
      for (std::size_t depth = 2; depth <= 4; ++depth) {
        const Distance b = entailment_upper_bound(v, t, s, {"a", "b"}, {depth});
        EXPECT_LE(b, prev);
        EXPECT_EQ(b, entailment_upper_bound(v, s, t, {"a", "b"}, {depth}));
        prev = b;
      }
    }
}

TEST(Entailment, TriangleInequalityOnTheRewriteGraph) {
  const auto v = action_presentation(testing::monoid_em());
  const RewriteGraph g(v, enumerate({"a", "b"}, v.signature, 3));
  const auto d = g.all_pairs();
  EXPECT_FALSE(find_pseudometric_violation(g.universe().size(), d).has_value());
}

TEST(Entailment, SoundAgainstAlgebrasOfTheVariety) {
  // M acting on itself is an algebra of the action variety.
  const auto m = testing::monoid_em();
  const auto v = action_presentation(m);
  const Signature& sig = v.signature;
  std::map<std::string, std::vector<std::size_t>> tables;
  for (std::size_t k = 0; k < m.size(); ++k) {
    std::vector<std::size_t> row;
    for (std::size_t x = 0; x < m.size(); ++x) row.push_back(monoid_mul(m, k, x));
    tables[m.carrier().point(k)] = row;
  }
  const FiniteQuantAlgebra self(m.carrier(), sig, tables);
  ASSERT_TRUE(satisfies_all(self, v).holds);
  const RewriteGraph g(v, enumerate({"a"}, sig, 3));
  const auto d = g.all_pairs();
  const std::size_t n = g.universe().size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t val = 0; val < m.size(); ++val) {
        const Environment env{{"a", val}};
        const Distance actual =
            m.carrier()(evaluate(g.universe().terms[i], self, env), evaluate(g.universe().terms[j], self, env));
        ASSERT_TRUE(leq(actual, d[i * n + j]));
      }
}

TEST(Varieties, RequireQuantitativeMonoidRejectsNonMonoids) {
  const Signature sig{{"mul", 2}, {"e", 0}};
  // mul is the left projection: not unital.
  const FiniteQuantAlgebra bad(two_point(1.0, "e", "m"), sig, {{"mul", {0, 0, 1, 1}}, {"e", {0}}});
  EXPECT_THROW(require_quantitative_monoid(bad), PreconditionError);
  EXPECT_NO_THROW(require_quantitative_monoid(testing::monoid_em()));
}

}  // namespace
}  // namespace qalg
