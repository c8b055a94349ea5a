#include <gtest/gtest.h>

#include "wreathlab/oracle.hpp"
#include "wreathlab/sampling.hpp"
#include "wreathlab/wreathlab.hpp"

using namespace wreathlab;

namespace {

Element el(const Group& g, const std::string& text) { return parse_element(g, text); }

}  // namespace

TEST(WreathMul, ZwrZSquare) {
  auto w = parse_group("wreath(Z, Z)");
  const Element g = el(*w, "(1, {0: 1})");
  EXPECT_EQ(w->mul(g, g), el(*w, "(2, {0: 1, 1: 1})"));
  EXPECT_EQ(oracle::naive_wreath_mul_over_z(*w, g, g), el(*w, "(2, {0: 1, 1: 1})"));
}

TEST(WreathMul, IdentityOnLeft) {
  auto w = parse_group("wreath(Z, sum(Z, A5))");
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const Element g = random_element(*w, rng);
    EXPECT_EQ(wreath_mul(*w, w->identity(), g), g);
  }
}

TEST(WreathMul, LampSelfInverse) {
  auto w = parse_group("wreath(Z, cyclic(2))");
  const Element g = el(*w, "(0, {0: 1})");
  EXPECT_EQ(w->mul(g, g), el(*w, "(0, {})"));
}

TEST(WreathMul, AgreesWithPointwiseEvaluator) {
  for (const char* expr : {"wreath(Z, cyclic(2))", "wreath(Z, S3)", "wreath(Z, sum(Z, cyclic(3)))"}) {
    auto w = parse_group(expr);
    Rng rng(21);
    for (int i = 0; i < 400; ++i) {
      const Element a = random_element(*w, rng, {5, 11});
      const Element b = random_element(*w, rng, {5, 11});
      ASSERT_EQ(wreath_mul(*w, a, b), oracle::naive_wreath_mul_over_z(*w, a, b)) << expr;
    }
  }
}

TEST(WreathMul, DomainMismatch) {
  auto w = parse_group("wreath(Z, cyclic(2))");
  auto z = Group::integers();
  EXPECT_THROW(wreath_mul(*z, Element::integer(1), Element::integer(2)), Error);
  EXPECT_THROW(wreath_mul(*w, Element::integer(1), w->identity()), Error);
  // Lamp value from the wrong group.
  const Element bad = Element::wreath_from_flat({Element::integer(0), Element::integer(0), Element::integer(5)});
  EXPECT_FALSE(w->contains(bad));
  EXPECT_THROW(w->check_member(bad), Error);
}

TEST(WreathInv, Examples) {
  auto zz = parse_group("wreath(Z, Z)");
  const Element g = el(*zz, "(1, {0: 1})");
  EXPECT_EQ(wreath_inv(*zz, g), el(*zz, "(-1, {-1: -1})"));
  EXPECT_TRUE(zz->is_identity(zz->mul(g, wreath_inv(*zz, g))));
  EXPECT_EQ(wreath_inv(*zz, zz->identity()), zz->identity());

  auto za5 = parse_group("wreath(Z, A5)");
  const Element s = el(*za5, "(0, {2: [(1 2 3)]})");
  EXPECT_EQ(wreath_inv(*za5, s), el(*za5, "(0, {2: [(1 3 2)]})"));
}

TEST(WreathInv, NonAbelianWalker) {
  auto w = parse_group("wreath(S3, cyclic(2))");
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const Element x = random_element(*w, rng);
    const Element y = random_element(*w, rng);
    EXPECT_TRUE(w->is_identity(w->mul(x, wreath_inv(*w, x))));
    EXPECT_EQ(w->inv(w->mul(x, y)), w->mul(w->inv(y), w->inv(x)));
  }
  EXPECT_EQ(*w->finite_order(), 6u * 64u);
}

TEST(MakeDelta, Examples) {
  auto zz = parse_group("wreath(Z, Z)");
  EXPECT_TRUE(make_delta(*zz, Element::integer(0)).empty());
  const SupportMap one = make_delta(*zz, Element::integer(1));
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.lamps()[0].position, Element::integer(0));
  EXPECT_EQ(one.lamps()[0].value, Element::integer(1));

  auto za5 = parse_group("wreath(Z, A5)");
  const Element c = parse_element(*za5->lamp(), "[(1 2 3)]");
  EXPECT_EQ(make_wreath_element(*za5, Element::integer(0), make_delta(*za5, c)), el(*za5, "(0, {0: [(1 2 3)]})"));
  EXPECT_THROW(make_delta(*za5, Element::integer(1)), Error);
}

TEST(SupportMap, RejectsDuplicatesAndDropsIdentity) {
  auto w = parse_group("wreath(Z, cyclic(3))");
  EXPECT_THROW(SupportMap::from_entries(*w, {{Element::integer(1), Element::fin(1)}, {Element::integer(1), Element::fin(2)}}),
               Error);
  const SupportMap m =
      SupportMap::from_entries(*w, {{Element::integer(3), Element::fin(1)}, {Element::integer(-2), Element::fin(0)}});
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.at(*w, Element::integer(3)), Element::fin(1));
  EXPECT_EQ(m.at(*w, Element::integer(-2)), Element::fin(0));
}

TEST(StandardGenerators, Counts) {
  auto zz = parse_group("wreath(Z, Z)");
  const GeneratingSet s = default_generating_set(*zz);
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NO_THROW(s.validate(*zz));
  std::set<Element> expected = {el(*zz, "(1, {})"), el(*zz, "(-1, {})"), el(*zz, "(0, {0: 1})"),
                                el(*zz, "(0, {0: -1})")};
  std::set<Element> got;
  for (const Generator& g : s.entries()) got.insert(g.element);
  EXPECT_EQ(got, expected);

  EXPECT_EQ(default_generating_set(*parse_group("wreath(Z, cyclic(2))")).size(), 3u);
  auto h = parse_group("wreath(Z, sum(Z, A5))");
  const GeneratingSet sh = default_generating_set(*h, GeneratorStyle::AllFiniteLeaves);
  EXPECT_EQ(sh.size(), 63u);
  EXPECT_NO_THROW(sh.validate(*h));
}

TEST(StandardGenerators, DomainMismatch) {
  auto w = parse_group("wreath(Z, cyclic(2))");
  const GeneratingSet wrong = default_generating_set(*Group::cyclic(3));
  EXPECT_THROW(standard_generating_set(*w, wrong, default_generating_set(*w->lamp())), Error);
  EXPECT_THROW(standard_generating_set(*Group::integers(), wrong, wrong), Error);
}

TEST(GeneratorAction, WalkerAndLampFormulas) {
  for (const char* expr : {"wreath(Z, A5)", "wreath(Z, sum(Z, A5))", "wreath(S3, cyclic(3))"}) {
    auto w = parse_group(expr);
    const GeneratingSet gens_c = default_generating_set(*w->acting());
    const GeneratingSet gens_a = default_generating_set(*w->lamp());
    Rng rng(33);
    for (int i = 0; i < 200; ++i) {
      const Element g = random_element(*w, rng);
      for (const Generator& c : gens_c.entries()) {
        const Element s = make_wreath_element(*w, c.element, SupportMap{});
        EXPECT_EQ(w->mul(s, g), oracle::walker_action(*w, c.element, g));
      }
      for (const Generator& a : gens_a.entries()) {
        const Element s = make_wreath_element(*w, w->acting()->identity(), make_delta(*w, a.element));
        const Element product = w->mul(s, g);
        EXPECT_EQ(product, oracle::lamp_action(*w, a.element, g));
        // Only the lamp under the walker changes.
        const SupportMap before = SupportMap::of_element(g);
        const SupportMap after = SupportMap::of_element(product);
        for (const Lamp& l : before.lamps())
          if (l.position != g.top()) EXPECT_EQ(after.at(*w, l.position), l.value);
      }
    }
  }
}

TEST(Format, SortedPositions) {
  auto w = parse_group("wreath(Z, cyclic(2))");
  const Element g = el(*w, "(0, {3: 1, -2: 1})");
  EXPECT_EQ(w->format(g), "(0, {-2: #1, 3: #1})");
  EXPECT_EQ(el(*w, w->format(g)), g);
}
