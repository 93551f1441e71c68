#include <gtest/gtest.h>

#include <cmath>

#include "properties.hpp"
#include "qalg/colimit.hpp"
#include "qalg/error.hpp"
#include "qalg/metric_space.hpp"

namespace qalg {
namespace {

using testing::pqr;
using testing::two_point;

TEST(Distance, InfinityAbsorbsSumAndMax) {
  EXPECT_EQ(kInfinity + 3.0, kInfinity);
  EXPECT_EQ(std::max(kInfinity, 0.5), kInfinity);
  EXPECT_EQ(std::min(kInfinity, 0.5), 0.5);
  EXPECT_TRUE(leq(2.0, kInfinity));
  EXPECT_FALSE(leq(kInfinity, 2.0));
}

TEST(Distance, FormatAndParseRoundTrip) {
  EXPECT_EQ(format_distance(kInfinity), "inf");
  EXPECT_EQ(format_distance(0.5), "0.5");
  EXPECT_EQ(parse_distance("inf"), kInfinity);
  EXPECT_EQ(parse_distance(format_distance(0.1 + 0.2)), 0.1 + 0.2);
  EXPECT_THROW(parse_distance("-1"), ValidationError);
  EXPECT_THROW(parse_distance("abc"), ValidationError);
}

TEST(MetricSpace, RejectsAxiomViolations) {
  EXPECT_THROW(MetricSpace::from_table({"a", "b", "c"}, {0, 1, 3, 1, 0, 1, 3, 1, 0}), ValidationError);
  EXPECT_THROW(MetricSpace::from_table({"a", "b"}, {0, 1, 2, 0}), ValidationError);
  EXPECT_THROW(MetricSpace::from_table({"a", "b"}, {0, 0, 0, 0}), ValidationError);
  EXPECT_NO_THROW(PseudoMetricSpace::from_table({"a", "b"}, {0, 0, 0, 0}));
}

TEST(MetricSpace, TriangleViolationNamesTheTriple) {
  try {
    (void)MetricSpace::from_table({"a", "b", "c"}, {0, 1, 3, 1, 0, 1, 3, 1, 0});
    FAIL() << "expected a ValidationError";
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("a"), std::string::npos);
    EXPECT_NE(what.find("b"), std::string::npos);
    EXPECT_NE(what.find("c"), std::string::npos);
  }
}

TEST(Combinations, MaxProductOfSingletonsIsSingleton) {
  const MetricSpace one = MetricSpace::from_table({"o"}, {0});
  EXPECT_EQ(max_product(one, one).size(), 1u);
}

TEST(Combinations, MaxProductTakesComponentMax) {
  const MetricSpace p = max_product(two_point(1.0), two_point(3.0, "c", "d"));
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.distance(pair_name("a", "c"), pair_name("b", "d")), 3.0);
  const MetricSpace q = max_product(two_point(kInfinity), two_point(3.0, "c", "d"));
  EXPECT_EQ(q.distance(pair_name("a", "c"), pair_name("b", "c")), kInfinity);
}

TEST(Combinations, SumTensorAddsAndAbsorbs) {
  const MetricSpace p = sum_tensor(two_point(1.0), two_point(3.0, "c", "d"));
  EXPECT_EQ(p.distance(pair_name("a", "c"), pair_name("b", "d")), 4.0);
  const MetricSpace q = sum_tensor(two_point(kInfinity), two_point(3.0, "c", "d"));
  EXPECT_EQ(q.distance(pair_name("a", "c"), pair_name("b", "c")), kInfinity);
}

TEST(Combinations, SumTensorWithUnitIsIsometric) {
  const MetricSpace one = MetricSpace::from_table({"o"}, {0});
  const MetricSpace x = pqr();
  const MetricSpace t = sum_tensor(one, x);
  ASSERT_EQ(t.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) EXPECT_EQ(t(i, j), x(i, j));
}

TEST(Combinations, CoproductSeparatesSummands) {
  const MetricSpace a = MetricSpace::from_table({"a"}, {0});
  const MetricSpace b = MetricSpace::from_table({"b"}, {0});
  const MetricSpace parts[] = {a, b};
  const MetricSpace c = coproduct(parts);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c(0, 1), kInfinity);

  const MetricSpace single[] = {pqr()};
  const MetricSpace s = coproduct(single);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(s(i, j), pqr()(i, j));
}

TEST(Combinations, Discrete) {
  EXPECT_EQ(discrete({}).size(), 0u);
  const MetricSpace d = discrete({"a", "b"});
  EXPECT_EQ(d.distance("a", "b"), kInfinity);
  EXPECT_THROW(discrete({"a", "a"}), ValidationError);
  const MetricSpace x = two_point(1.0);
  const PointMap i = identity_carried(underlying_discrete(x), x);
  EXPECT_FALSE(find_expansion(underlying_discrete(x), x, i).has_value());
  EXPECT_TRUE(find_expansion(x, underlying_discrete(x), identity_carried(x, underlying_discrete(x))).has_value());
}

TEST(Meet, Idempotent) {
  const auto d = testing::random_pseudometric(6, 11);
  EXPECT_EQ(meet(d, d), d);
}

TEST(Meet, ChainsThroughBothArguments) {
  const auto d1 = PseudoMetricSpace::from_table({"p", "q", "r"},
                                                {0, 1, kInfinity, 1, 0, kInfinity, kInfinity, kInfinity, 0});
  const auto d2 = PseudoMetricSpace::from_table({"p", "q", "r"},
                                                {0, kInfinity, kInfinity, kInfinity, 0, 1, kInfinity, 1, 0});
  const auto m = meet(d1, d2);
  EXPECT_EQ(m.distance("p", "r"), 2.0);
  EXPECT_EQ(m.distance("p", "q"), 1.0);
}

TEST(Meet, RejectsMismatchedPoints) {
  EXPECT_THROW(meet(two_point(1.0), two_point(1.0, "a", "c")), ValidationError);
}

TEST(Meet, AgreesWithBruteForceChains) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const auto a = testing::random_pseudometric(n, seed), b = testing::random_pseudometric(n, seed + 77);
    const auto m = meet(a, b);
    const auto brute = testing::brute_force_meet(a, b);
    for (std::size_t i = 0; i < n * n; ++i) ASSERT_EQ(m.table()[i], brute[i]) << "seed " << seed;
  }
}

TEST(Reflection, MetricSpaceReflectsToItself) {
  const auto r = metric_reflection(pqr());
  EXPECT_EQ(r.space.size(), 3u);
  EXPECT_EQ(r.quotient, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Reflection, ZeroDistancePairCollapses) {
  const auto r = metric_reflection(PseudoMetricSpace::from_table({"a", "b"}, {0, 0, 0, 0}));
  EXPECT_EQ(r.space.size(), 1u);
}

TEST(Reflection, TwoClassesKeepTheirDistance) {
  const auto p = PseudoMetricSpace::from_table({"p", "q", "r", "s"},
                                               {0, 0, 2, 2, 0, 0, 2, 2, 2, 2, 0, 0, 2, 2, 0, 0});
  const auto r = metric_reflection(p);
  ASSERT_EQ(r.space.size(), 2u);
  EXPECT_EQ(r.space(0, 1), 2.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(r.space(r.quotient[i], r.quotient[j]), p(i, j));
}

TEST(Neighborhood, ThresholdsOnTwoPoints) {
  const MetricSpace x = two_point(1.0);
  EXPECT_EQ(diagonal_neighborhood(x, 0.0).pairs.size(), 2u);
  EXPECT_EQ(diagonal_neighborhood(x, 0.25).pairs.size(), 2u);
  const auto full = diagonal_neighborhood(x, 1.0);
  ASSERT_EQ(full.pairs.size(), 4u);
  for (std::size_t k = 0; k < full.pairs.size(); ++k) {
    const auto [l, r] = full.pairs[k];
    EXPECT_LE(x(l, r), 1.0);
  }
}

TEST(Colimit, ConstantChainKeepsItsDistance) {
  const auto chain = DirectedChain::identity_linked({pqr(), pqr(), pqr()});
  const auto c = chain_colimit_distance(chain, 0, "p", "r");
  EXPECT_EQ(c.values, (std::vector<Distance>{3, 3, 3}));
  EXPECT_EQ(c.infimum, 3.0);
  EXPECT_EQ(c.trend, ChainTrend::Constant);
}

TEST(Colimit, HalvingChainCollapses) {
  const auto chain = DirectedChain::scaled(two_point(1.0), 0.5, 1, 20);
  const auto c = chain_colimit_distance(chain, 0, "a", "b");
  ASSERT_EQ(c.values.size(), 20u);
  for (std::size_t n = 1; n <= 20; ++n) EXPECT_EQ(c.values[n - 1], std::ldexp(1.0, -static_cast<int>(n)));
  EXPECT_LT(c.infimum, 1e-6);
  EXPECT_EQ(c.trend, ChainTrend::Collapse);
}

TEST(Colimit, ExpandingLinkIsRejected) {
  std::vector<MetricSpace> stages = {two_point(5.0), two_point(3.0), two_point(4.0)};
  EXPECT_THROW(DirectedChain::identity_linked(std::move(stages)), ValidationError);
}

TEST(Colimit, StageOutOfRange) {
  const auto chain = DirectedChain::identity_linked({pqr()});
  EXPECT_ANY_THROW(chain_colimit_distance(chain, 3, "p", "q"));
}

TEST(Properties, RandomPseudometricsSatisfyAxioms) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = testing::random_pseudometric(3 + seed, seed);
    EXPECT_FALSE(find_pseudometric_violation(p.size(), p.table()).has_value());
  }
}

TEST(Properties, EmptySpaceIsAdmitted) {
  const MetricSpace e = MetricSpace::from_table({}, {});
  EXPECT_TRUE(e.empty());
  EXPECT_EQ(meet(e, e).size(), 0u);
  EXPECT_EQ(metric_reflection(e).space.size(), 0u);
  EXPECT_EQ(max_product(e, pqr()).size(), 0u);
}

}  // namespace
}  // namespace qalg
