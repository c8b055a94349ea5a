#include <gtest/gtest.h>

#include <limits>
#include <set>

#include "wreathlab/sampling.hpp"
#include "wreathlab/wreathlab.hpp"

using namespace wreathlab;

namespace {

Element perm(const GroupPtr& g, const std::string& cycles) { return parse_element(*g, "[" + cycles + "]"); }

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: nothing thrown
}

}  // namespace

TEST(GroupMul, CyclicAddition) {
  auto c5 = Group::cyclic(5);
  EXPECT_EQ(c5->mul(Element::fin(3), Element::fin(4)), Element::fin(2));
}

TEST(GroupMul, IntegerInversePair) {
  auto z = Group::integers();
  EXPECT_EQ(z->mul(Element::integer(7), Element::integer(-7)), Element::integer(0));
}

TEST(GroupMul, A5CycleTimesInverse) {
  auto a5 = named_permutation_group("A5");
  const Element s = perm(a5, "(1 2 3 4 5)");
  EXPECT_TRUE(a5->is_identity(a5->mul(s, a5->inv(s))));
}

TEST(GroupMul, DomainMismatch) {
  auto z = Group::integers();
  auto c5 = Group::cyclic(5);
  EXPECT_EQ(code_of([&] { z->mul(Element::fin(1), Element::integer(2)); }), ErrorCode::DomainMismatch);
  EXPECT_EQ(code_of([&] { c5->mul(Element::integer(1), Element::fin(2)); }), ErrorCode::DomainMismatch);
  EXPECT_EQ(code_of([&] { c5->inv(Element::fin(7)); }), ErrorCode::DomainMismatch);
}

TEST(GroupMul, IntegerOverflowIsReported) {
  auto z = Group::integers();
  const auto big = std::numeric_limits<std::int64_t>::max();
  EXPECT_EQ(code_of([&] { z->mul(Element::integer(big), Element::integer(1)); }), ErrorCode::Overflow);
  EXPECT_EQ(code_of([&] { z->inv(Element::integer(std::numeric_limits<std::int64_t>::min())); }),
            ErrorCode::Overflow);
}

TEST(GroupInv, Examples) {
  EXPECT_EQ(Group::integers()->inv(Element::integer(3)), Element::integer(-3));
  EXPECT_EQ(Group::cyclic(5)->inv(Element::fin(2)), Element::fin(3));
  auto zc2 = Group::direct_sum(Group::integers(), Group::cyclic(2));
  EXPECT_EQ(zc2->inv(Element::pair(Element::integer(4), Element::fin(1))),
            Element::pair(Element::integer(-4), Element::fin(1)));
}

TEST(Enumerate, SmallGroups) {
  const auto c3 = Group::cyclic(3)->enumerate();
  ASSERT_EQ(c3.size(), 3u);
  EXPECT_EQ(c3[0], Element::fin(0));
  EXPECT_EQ(c3[2], Element::fin(2));
  EXPECT_EQ(Group::direct_sum(Group::cyclic(2), Group::cyclic(2))->enumerate().size(), 4u);
  auto a5 = named_permutation_group("A5");
  const auto all = a5->enumerate();
  EXPECT_EQ(all.size(), 60u);
  EXPECT_TRUE(a5->is_identity(all.front()));
  EXPECT_EQ(std::set<Element>(all.begin(), all.end()).size(), 60u);
}

TEST(Enumerate, NamedGroupOrders) {
  EXPECT_EQ(*named_permutation_group("A5")->finite_order(), 60u);
  EXPECT_EQ(*named_permutation_group("S4")->finite_order(), 24u);
  EXPECT_EQ(*named_permutation_group("S3")->finite_order(), 6u);
  EXPECT_EQ(*named_permutation_group("V4")->finite_order(), 4u);
}

TEST(Enumerate, FiniteWreath) {
  auto w = Group::wreath(Group::cyclic(2), Group::cyclic(2));
  EXPECT_EQ(*w->finite_order(), 8u);
  const auto all = w->enumerate();
  ASSERT_EQ(all.size(), 8u);
  EXPECT_TRUE(w->is_identity(all.front()));
  for (const Element& x : all) EXPECT_TRUE(w->contains(x));
}

TEST(Enumerate, InfiniteGroupThrows) {
  EXPECT_EQ(code_of([] { Group::integers()->enumerate(); }), ErrorCode::InfiniteGroup);
  EXPECT_EQ(code_of([] { Group::direct_sum(Group::integers(), Group::cyclic(2))->enumerate(); }),
            ErrorCode::InfiniteGroup);
}

TEST(AllElementsGenerators, Counts) {
  EXPECT_EQ(all_elements_generating_set(*Group::cyclic(2)).size(), 1u);
  EXPECT_EQ(all_elements_generating_set(*Group::cyclic(2))[0].element, Element::fin(1));
  EXPECT_EQ(all_elements_generating_set(*Group::cyclic(60)).size(), 59u);
  EXPECT_EQ(all_elements_generating_set(*named_permutation_group("A5")).size(), 59u);
}

TEST(AllElementsGenerators, Errors) {
  EXPECT_EQ(code_of([] { all_elements_generating_set(*Group::integers()); }), ErrorCode::InfiniteGroup);
  EXPECT_EQ(code_of([] { all_elements_generating_set(*Group::cyclic(1)); }), ErrorCode::TrivialGroup);
}

TEST(GeneratingSet, ValidateRejectsBadSets) {
  auto z = Group::integers();
  GeneratingSet not_symmetric({{"+1", Element::integer(1)}});
  EXPECT_THROW(not_symmetric.validate(*z), Error);
  GeneratingSet with_identity({{"+1", Element::integer(1)}, {"-1", Element::integer(-1)}, {"e", Element::integer(0)}});
  EXPECT_THROW(with_identity.validate(*z), Error);
  EXPECT_NO_THROW(default_generating_set(*z).validate(*z));
}

TEST(Permutation, CycleNotationRoundTrip) {
  auto s4 = named_permutation_group("S4");
  for (const Element& x : s4->enumerate()) {
    const std::string text = s4->format(x);
    EXPECT_EQ(parse_element(*s4, text), x) << text;
  }
  EXPECT_EQ(s4->format(s4->identity()), "#0[()]");
}

TEST(Permutation, NotInGroup) {
  auto a5 = named_permutation_group("A5");
  EXPECT_EQ(code_of([&] { perm(a5, "(1 2)"); }), ErrorCode::DomainMismatch);
}

TEST(Exponent, NamedGroups) {
  EXPECT_EQ(named_permutation_group("A5")->exponent(), 30u);
  EXPECT_EQ(named_permutation_group("S4")->exponent(), 12u);
  EXPECT_EQ(Group::cyclic(60)->exponent(), 60u);
  // Oracle: lcm of element orders found by repeated multiplication.
  auto a5 = named_permutation_group("A5");
  std::uint64_t lcm = 1;
  for (const Element& x : a5->enumerate()) {
    std::uint64_t n = 1;
    for (Element y = x; !a5->is_identity(y); y = a5->mul(y, x)) ++n;
    lcm = std::lcm(lcm, n);
  }
  EXPECT_EQ(lcm, 30u);
}

class AxiomTest : public ::testing::TestWithParam<std::string> {};

TEST_P(AxiomTest, AssociativityIdentityInverse) {
  auto g = parse_group(GetParam());
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const Element x = random_element(*g, rng);
    const Element y = random_element(*g, rng);
    const Element z = random_element(*g, rng);
    ASSERT_TRUE(g->contains(x));
    EXPECT_EQ(g->mul(g->mul(x, y), z), g->mul(x, g->mul(y, z)));
    EXPECT_EQ(g->mul(g->identity(), x), x);
    EXPECT_EQ(g->mul(x, g->identity()), x);
    EXPECT_TRUE(g->is_identity(g->mul(x, g->inv(x))));
    EXPECT_TRUE(g->is_identity(g->mul(g->inv(x), x)));
    EXPECT_EQ(g->inv(g->inv(x)), x);
  }
}

INSTANTIATE_TEST_SUITE_P(Groups, AxiomTest,
                         ::testing::Values("Z", "cyclic(60)", "A5", "S4", "sum(Z, A5)", "wreath(Z, Z)",
                                           "wreath(Z, sum(Z, A5))", "wreath(S3, cyclic(2))",
                                           "wreath(sum(Z, Z), S3)", "wreath(Z, wreath(Z, cyclic(3)))"));

TEST(ElementEncoding, RoundTripAndOrder) {
  auto g = parse_group("wreath(Z, sum(Z, A5))");
  Rng rng(5);
  std::vector<Element> xs;
  for (int i = 0; i < 300; ++i) {
    const Element x = random_element(*g, rng);
    EXPECT_EQ(Element::decode(x.encode()), x);
    xs.push_back(x);
  }
  // Strong ordering: antisymmetric, consistent with equality, transitive on sorted data.
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    EXPECT_TRUE(xs[i - 1] <= xs[i]);
    EXPECT_EQ(xs[i - 1] == xs[i], !(xs[i - 1] < xs[i]));
    EXPECT_EQ((xs[i - 1] == xs[i]), (xs[i - 1].encode() == xs[i].encode()));
  }
}

TEST(ElementEncoding, RejectsTruncatedInput) {
  const std::string bytes = Element::pair(Element::integer(3), Element::fin(1)).encode();
  EXPECT_THROW(Element::decode(bytes.substr(0, bytes.size() - 1)), Error);
}

TEST(Pow, MatchesRepeatedProducts) {
  auto g = parse_group("wreath(Z, S3)");
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const Element x = random_element(*g, rng);
    Element acc = g->identity();
    for (std::uint64_t n = 0; n < 9; ++n) {
      EXPECT_EQ(g->pow(x, n), acc);
      acc = g->mul(acc, x);
    }
  }
}
