#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "wcdsc/errors.hpp"
#include "wcdsc/support_model.hpp"

using namespace wcdsc;
using testkit::fixture_a;
using testkit::fixture_b;
using testkit::vec;

TEST(CeilLog2, IntegerBitLength) {
  EXPECT_EQ(ceil_log2(0), 0u);
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(4), 2u);
  EXPECT_EQ(ceil_log2(5), 3u);
  EXPECT_EQ(ceil_log2(8), 3u);
  EXPECT_EQ(ceil_log2(9), 4u);
  EXPECT_EQ(ceil_log2(1024), 10u);
  EXPECT_EQ(ceil_log2(1025), 11u);
  EXPECT_EQ(ceil_log2(std::uint64_t{1} << 63), 63u);
}

TEST(SupportSet, FixtureSizesAndMarginals) {
  const SupportSet a = fixture_a();
  EXPECT_EQ(a.size(), 8u);
  EXPECT_EQ(a.marginal_size(0), 5u);
  EXPECT_EQ(a.marginal_size(1), 4u);
  const SupportSet b = fixture_b();
  EXPECT_EQ(b.size(), 10u);
  EXPECT_EQ(layout(b).widths(), (std::vector<unsigned>{3, 3}));
}

TEST(SupportSet, DuplicatesAndZeroWeightsCollapse) {
  std::vector<SupportEntry> entries{{{Label("1"), Label("2")}, {}},
                                    {{Label("1"), Label("2")}, 0.5},
                                    {{Label("3"), Label("4")}, 0.0},
                                    {{Label("2"), Label("2")}, 1.0}};
  BuildStats stats;
  const SupportSet s = SupportSet::build(entries, {}, &stats);
  EXPECT_EQ(s.size(), 2u);
  EXPECT_EQ(stats.duplicates, 1u);
  EXPECT_EQ(stats.zero_weight, 1u);
  // The zero-weight entry's labels do not enter the marginals.
  EXPECT_EQ(s.marginal_size(0), 2u);
  EXPECT_EQ(s.marginal_size(1), 1u);
}

TEST(SupportSet, NumericLabelsSortNumerically) {
  const SupportSet s = testkit::pairs({{"10", "a"}, {"9", "b"}, {"2", "a"}});
  EXPECT_EQ(s.marginal(0), (std::vector<Label>{Label("2"), Label("9"), Label("10")}));
  EXPECT_EQ(s.marginal(1), (std::vector<Label>{Label("a"), Label("b")}));
}

TEST(SupportSet, DeclaredAlphabetFixesRankOrder) {
  std::vector<SupportEntry> entries{{{Label("x")}, {}}, {{Label("y")}, {}}};
  const SupportSet s = SupportSet::build(entries, {{Label("y"), Label("x")}});
  EXPECT_EQ(encode(s, vec({"y"})), "0");
  EXPECT_EQ(encode(s, vec({"x"})), "1");
}

TEST(SupportSet, Errors) {
  std::vector<SupportEntry> arity{{{Label("1"), Label("2")}, {}}, {{Label("1")}, {}}};
  EXPECT_THROW(SupportSet::build(arity), ParseError);
  std::vector<SupportEntry> zero{{{Label("1")}, 0.0}};
  EXPECT_THROW(SupportSet::build(zero), DegenerateError);
  std::vector<SupportEntry> negative{{{Label("1")}, -1.0}};
  EXPECT_THROW(SupportSet::build(negative), ParseError);
  std::vector<SupportEntry> undeclared{{{Label("z")}, {}}};
  EXPECT_THROW(SupportSet::build(undeclared, {{Label("a")}}), ParseError);
}

TEST(Encoding, FixtureBTableValues) {
  const SupportSet b = fixture_b();
  EXPECT_EQ(encode(b, vec({"1", "3"})), "000010");
  EXPECT_EQ(encode(b, vec({"5", "3"})), "100010");
  EXPECT_EQ(decode(b, "011011"), vec({"4", "4"}));
  EXPECT_THROW(encode(b, vec({"1", "2"})), MembershipError);
  EXPECT_THROW(decode(b, "111111"), MembershipError);
}

TEST(Encoding, RoundTripsEveryElement) {
  for (const SupportSet& s : {fixture_a(), fixture_b()}) {
    for (std::size_t r = 0; r < s.size(); ++r) {
      const DataVector x = s.tuple(r);
      EXPECT_EQ(decode(s, encode(s, x)), x);
      EXPECT_EQ(encode(s, x).size(), layout(s).total_width());
    }
  }
}

TEST(Encoding, PackedCodeMatchesString) {
  const SupportSet b = fixture_b();
  const BitLayout l = layout(b);
  for (std::size_t r = 0; r < b.size(); ++r) {
    const std::string bits = encode(b, b.tuple(r));
    const std::uint64_t packed = packed_code(b, l, r);
    for (std::size_t j = 0; j < bits.size(); ++j) EXPECT_EQ(bits[j] == '1', (packed >> j & 1u) == 1u);
  }
}

TEST(Layout, LocateSkipsZeroWidthInformants) {
  const BitLayout l({2, 0, 3});
  EXPECT_EQ(l.total_width(), 5u);
  EXPECT_EQ(l.locate(1).informant, 0u);
  EXPECT_EQ(l.locate(2).informant, 2u);
  EXPECT_EQ(l.locate(2).local_bit, 0u);
  EXPECT_EQ(l.locate(4).local_bit, 2u);
}

TEST(Project, MarginalsOfFixtureA) {
  const SupportSet a = fixture_a();
  const SupportSet x2 = project(a, InformantSet{1});
  EXPECT_EQ(x2.size(), 4u);
  const SupportSet swapped = project(a, InformantSet{0, 1});
  EXPECT_EQ(swapped, a);
}

TEST(Condition, FixtureBFirstBit) {
  const SupportSet b = fixture_b();
  BitAssignment facts;
  facts.set(1, false);
  const SupportSet c = condition(b, facts);
  EXPECT_EQ(c.size(), 5u);
  facts.set(4, true);
  EXPECT_EQ(condition(b, facts).size(), 3u);
  EXPECT_THROW(facts.set(4, false), DomainError);
  BitAssignment out_of_range;
  out_of_range.set(6, true);
  EXPECT_THROW(condition(b, out_of_range), DomainError);
}

TEST(Condition, EmptyResultIsRepresentable) {
  const SupportSet b = fixture_b();
  BitAssignment facts;
  facts.set(0, true);  // only (5,3)
  facts.set(3, true);  // only (3,5)
  EXPECT_TRUE(condition(b, facts).empty());
}

TEST(DefinedBits, FullSetAndSingleton) {
  const SupportSet b = fixture_b();
  const auto d = defined_bits(b);
  EXPECT_TRUE(d.defined.empty());
  EXPECT_EQ(d.undefined.size(), 6u);
  const SupportSet one = b.filter([](std::size_t r) { return r == 1; });
  // Filtering re-ranks the marginals, so a singleton has an empty layout.
  EXPECT_EQ(layout(one).total_width(), 0u);
  const auto d1 = defined_bits(one);
  EXPECT_TRUE(d1.defined.empty());
  EXPECT_TRUE(d1.undefined.empty());
}

TEST(Extension, FixtureBSecondExtension) {
  const SupportSet b2 = k_extension(fixture_b(), 2);
  EXPECT_EQ(b2.size(), 100u);
  EXPECT_EQ(layout(b2).widths(), (std::vector<unsigned>{5, 5}));
  DataVector x;
  x.values = {Label::tuple({"1", "1"}), Label::tuple({"1", "3"})};
  EXPECT_EQ(encode(b2, x), "0000000010");
  EXPECT_EQ(x.str(), "((1,1),(1,3))");
}

TEST(Extension, SizesAndIdentity) {
  const SupportSet a = fixture_a();
  EXPECT_EQ(k_extension(a, 1), a);
  EXPECT_EQ(k_extension(a, 2).size(), 64u);
  EXPECT_EQ(k_extension(a, 3).size(), 512u);
  EXPECT_THROW(k_extension(a, 0), DomainError);
  EXPECT_THROW(k_extension(a, 3, 500), ResourceError);
}
