#include <gtest/gtest.h>

#include "properties.hpp"
#include "qalg/finitarity.hpp"

namespace qalg {
namespace {

using testing::two_point;

// Word monoid whose one-letter words sit twice as far apart as their letters.
class StretchedWords : public WordMonoidModel {
 public:
  using WordMonoidModel::WordMonoidModel;
  std::string name() const override { return "stretched"; }
  Distance distance(const Term& t, const Term& u) const override {
    const Distance d = WordMonoidModel::distance(t, u);
    return word_of(t).size() == 1 ? 2.0 * d : d;
  }
  std::unique_ptr<FreeAlgebraModel> over(const MetricSpace& base) const override {
    return std::make_unique<StretchedWords>(base, max_len());
  }
};

const LawResult* find_law(const LawSuiteReport& r, const std::string& prefix) {
  for (const auto& l : r.laws)
    if (l.law.rfind(prefix, 0) == 0) return &l;
  return nullptr;
}

TEST(LawSuite, EveryPropertyModelPasses) {
  for (const auto& model : testing::property_models()) {
    const auto rep = monad_law_suite(*model);
    EXPECT_TRUE(rep.pass) << model->name();
    for (const auto& l : rep.laws) EXPECT_TRUE(l.pass) << model->name() << ": " << l.law << ": " << l.detail;
  }
}

TEST(LawSuite, EnrichmentBoundOnWords) {
  const WordMonoidModel w(two_point(1.0), 3);
  LawSuiteOptions opts;
  opts.target = two_point(0.7, "c", "d");
  const auto rep = monad_law_suite(w, opts);
  const LawResult* e = find_law(rep, "enrichment");
  ASSERT_NE(e, nullptr);
  EXPECT_TRUE(e->pass) << e->detail;
  EXPECT_GT(e->checked, 0u);
}

TEST(LawSuite, SmallSpaceIdempotence) {
  const SmallSpaceModel s(testing::pqr(), 0.5);
  for (const auto& l : s.closed_form_laws()) EXPECT_TRUE(l.pass) << l.law;
}

TEST(LawSuite, ExpandingUnitIsCaught) {
  const StretchedWords w(two_point(1.0), 2);
  const auto rep = monad_law_suite(w);
  EXPECT_FALSE(rep.pass);
  const LawResult* u = find_law(rep, "unit nonexpanding");
  ASSERT_NE(u, nullptr);
  EXPECT_FALSE(u->pass);
  EXPECT_FALSE(u->detail.empty());
}

TEST(Freeness, ClosedFormsHaveUniqueExtensions) {
  const MetricSpace ab = two_point(1.0);
  std::vector<std::unique_ptr<FreeAlgebraModel>> models;
  models.push_back(std::make_unique<WordMonoidModel>(ab, 3));
  models.push_back(std::make_unique<HausdorffModel>(testing::pqr()));
  models.push_back(std::make_unique<ExceptionModel>(ab, testing::exceptions_e12()));
  models.push_back(std::make_unique<SmallSpaceModel>(ab, 0.5));
  models.push_back(std::make_unique<ActionModel>(testing::monoid_em(), ab));
  for (const auto& m : models) {
    const auto algebras = sample_algebras(*m);
    ASSERT_FALSE(algebras.empty()) << m->name();
    const auto laws = freeness_spot_check(*m, algebras);
    ASSERT_FALSE(laws.empty());
    for (const auto& l : laws) EXPECT_TRUE(l.pass) << m->name() << ": " << l.law << ": " << l.detail;
  }
}

}  // namespace
}  // namespace qalg
