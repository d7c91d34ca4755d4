#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/random_sets.hpp"
#include "wcdsc/ambiguity.hpp"
#include "wcdsc/errors.hpp"

using namespace wcdsc;
using testkit::fixture_a;
using testkit::fixture_b;

namespace {

std::size_t cond(const SupportSet& s, std::size_t target, std::size_t given, const std::string& value) {
  return conditional_ambiguity(s, InformantSet{target}, InformantSet{given}, {Label(value)});
}

}  // namespace

TEST(Ambiguity, FixtureAJointAndMarginals) {
  const SupportSet a = fixture_a();
  EXPECT_EQ(ambiguity(a), 8u);
  EXPECT_EQ(information_ambiguity(a), 3u);
  EXPECT_EQ(ambiguity(project(a, InformantSet{0})), 5u);
  EXPECT_EQ(ambiguity(project(a, InformantSet{1})), 4u);
}

TEST(Ambiguity, FixtureAConditionalTables) {
  const SupportSet a = fixture_a();
  EXPECT_EQ(cond(a, 0, 1, "1"), 5u);
  for (const char* v : {"2", "3", "4"}) EXPECT_EQ(cond(a, 0, 1, v), 1u) << v;
  for (const char* v : {"1", "2", "3"}) EXPECT_EQ(cond(a, 1, 0, v), 2u) << v;
  for (const char* v : {"4", "5"}) EXPECT_EQ(cond(a, 1, 0, v), 1u) << v;
  EXPECT_EQ(max_conditional_ambiguity(a, InformantSet{0}, InformantSet{1}), 5u);
  EXPECT_EQ(max_conditional_ambiguity(a, InformantSet{1}, InformantSet{0}), 2u);
}

TEST(Ambiguity, FixtureAConditionalSetsSetwise) {
  const SupportSet a = fixture_a();
  const auto sets = conditional_sets(a, InformantSet{1}, InformantSet{0});
  // X1 = 2 (rank 1) allows X2 in {1, 3} (ranks 0 and 2).
  EXPECT_EQ(sets.at(RankKey{1}), (std::set<RankKey>{{0}, {2}}));
}

TEST(Ambiguity, FixtureAChainSums) {
  const SupportSet a = fixture_a();
  EXPECT_EQ(chain_cost(a, {0, 1}), 4u);
  EXPECT_EQ(chain_cost(a, {1, 0}), 5u);
  const ChainBound best = chain_bound(a);
  EXPECT_EQ(best.bits, 4u);
  EXPECT_EQ(best.order, (std::vector<std::size_t>{0, 1}));
}

TEST(Ambiguity, ConditionalErrors) {
  const SupportSet a = fixture_a();
  EXPECT_THROW(cond(a, 0, 1, "9"), DomainError);
  EXPECT_THROW(conditional_ambiguity(a, InformantSet{0}, InformantSet{0}, {Label("1")}), DomainError);
  EXPECT_THROW(conditional_ambiguity(a, InformantSet{}, InformantSet{1}, {Label("1")}), DomainError);
  EXPECT_EQ(max_conditional_ambiguity(a, InformantSet{0}, InformantSet{}), 5u);
}

TEST(Ambiguity, ChainBoundCap) {
  const SupportSet s = testkit::rows_of({{"0", "0", "0"}, {"1", "1", "1"}});
  EXPECT_THROW(chain_bound(s, 2), ResourceError);
}

TEST(Ambiguity, ProductDetection) {
  EXPECT_TRUE(is_product_of_marginals(testkit::pairs({{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}})));
  EXPECT_FALSE(is_product_of_marginals(fixture_a()));
  EXPECT_FALSE(is_product_of_marginals(fixture_b()));
}

TEST(Ambiguity, MeasureReportOnFixtureB) {
  const AmbiguityReport r = measure(fixture_b());
  EXPECT_EQ(r.joint_ambiguity, 10u);
  EXPECT_EQ(r.information_ambiguity, 4u);
  EXPECT_EQ(r.marginal_information, (std::vector<unsigned>{3, 3}));
  EXPECT_EQ(r.conditionals.size(), 10u);
  ASSERT_TRUE(r.chain_available);
  EXPECT_GE(r.chain.bits, r.information_ambiguity);
}

TEST(Properties, FixturesSatisfyEveryCheck) {
  for (const SupportSet& s : {fixture_a(), fixture_b()}) {
    const PropertyReport r = property_suite(s);
    for (const PropertyCheck& c : r.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    ASSERT_NE(r.find("intersection_lemma"), nullptr);
  }
}

// With three informants the conditional set given two values can be strictly
// smaller than the intersection of the single-value conditional sets: here
// X2 = 0 allows X1 in {0, 1} and so does X3 = 0, yet (X2, X3) = (0, 0) only
// occurs with X1 = 1.
TEST(Properties, IntersectionEqualityFailsWithThreeInformants) {
  const SupportSet s = testkit::rows_of({{"0", "0", "1"}, {"0", "1", "0"}, {"1", "0", "0"}});
  EXPECT_EQ(conditional_ambiguity(s, InformantSet{0}, InformantSet{1, 2}, {Label("0"), Label("0")}), 1u);
  EXPECT_EQ(cond(s, 0, 1, "0"), 2u);
  EXPECT_EQ(cond(s, 0, 2, "0"), 2u);
  const PropertyReport r = property_suite(s);
  EXPECT_FALSE(r.find("intersection_lemma")->passed);
  EXPECT_TRUE(r.find("intersection_containment")->passed);
  EXPECT_TRUE(r.find("mu_min_bound")->passed);
  EXPECT_TRUE(r.find("mu_hat_min_bound")->passed);
}

TEST(Properties, RandomBatteryAllButIntersectionEquality) {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 200; ++i) {
    const SupportSet s = testkit::random_support(rng);
    const PropertyReport r = property_suite(s);
    for (const PropertyCheck& c : r.checks) {
      if (c.name == "intersection_lemma") continue;
      EXPECT_TRUE(c.passed) << "set " << i << " " << c.name << ": " << c.detail;
    }
  }
}

TEST(Properties, TwoInformantSetsSatisfyIntersectionTrivially) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const SupportSet s = testkit::random_support(rng, {2, 2, 4, 16});
    EXPECT_TRUE(property_suite(s).all_passed());
  }
}
