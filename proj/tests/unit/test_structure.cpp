#include <gtest/gtest.h>

#include "wreathlab/sampling.hpp"
#include "wreathlab/wreathlab.hpp"

using namespace wreathlab;

namespace {

bool is_subgroup(const Group& g, const std::vector<Element>& h) {
  const std::set<Element> members(h.begin(), h.end());
  if (!members.count(g.identity())) return false;
  for (const Element& x : h) {
    if (!members.count(g.inv(x))) return false;
    for (const Element& y : h)
      if (!members.count(g.mul(x, y))) return false;
  }
  return true;
}

void expect_exact_order(const Group& g, const Element& x, std::uint64_t n) {
  Element y = x;
  for (std::uint64_t k = 1; k < n; ++k) {
    ASSERT_FALSE(g.is_identity(y)) << g.format(x) << " has order below " << n;
    y = g.mul(y, x);
  }
  EXPECT_TRUE(g.is_identity(y)) << g.format(x);
}

}  // namespace

TEST(SubgroupClosure, Examples) {
  auto c6 = Group::cyclic(6);
  EXPECT_EQ(subgroup_closure(*c6, {}), (std::vector<Element>{Element::fin(0)}));
  EXPECT_EQ(subgroup_closure(*c6, {Element::fin(2)}),
            (std::vector<Element>{Element::fin(0), Element::fin(2), Element::fin(4)}));
  auto a5 = named_permutation_group("A5");
  std::vector<Element> gens;
  for (const Generator& s : default_generating_set(*a5).entries()) gens.push_back(s.element);
  EXPECT_EQ(subgroup_closure(*a5, gens).size(), 60u);
  EXPECT_THROW(subgroup_closure(*Group::integers(), {}), Error);
}

TEST(DerivedSeries, Examples) {
  const DerivedSeries c60 = derived_series(*Group::cyclic(60));
  EXPECT_TRUE(c60.solvable);
  EXPECT_EQ(c60.sizes(), (std::vector<std::size_t>{60, 1}));

  auto s4 = named_permutation_group("S4");
  const DerivedSeries ds4 = derived_series(*s4);
  EXPECT_TRUE(ds4.solvable);
  EXPECT_EQ(ds4.sizes(), (std::vector<std::size_t>{24, 12, 4, 1}));
  EXPECT_EQ(ds4.length, 3u);
  for (const auto& term : ds4.chain) EXPECT_TRUE(is_subgroup(*s4, term));

  auto a5 = named_permutation_group("A5");
  const DerivedSeries da5 = derived_series(*a5);
  EXPECT_FALSE(da5.solvable);
  EXPECT_EQ(da5.sizes(), (std::vector<std::size_t>{60, 60}));
  EXPECT_TRUE(is_subgroup(*a5, da5.chain[1]));

  EXPECT_TRUE(derived_series(*named_permutation_group("S3")).solvable);
  EXPECT_THROW(derived_series(*Group::integers()), Error);
}

TEST(DerivedSeries, TermsShrinkUntilStable) {
  for (const char* name : {"A5", "S4", "S3", "V4"}) {
    const DerivedSeries ds = derived_series(*named_permutation_group(name));
    for (std::size_t i = 1; i + 1 < ds.chain.size(); ++i) EXPECT_LT(ds.chain[i].size(), ds.chain[i - 1].size());
  }
}

TEST(ElementOrder, Examples) {
  auto h = parse_group("wreath(Z, sum(Z, A5))");
  EXPECT_EQ(element_order(*h, h->identity()).order, 1u);
  const OrderResult walk = element_order(*h, parse_element(*h, "(1, {})"));
  EXPECT_EQ(walk.kind, OrderResult::Kind::Infinite);
  EXPECT_NE(walk.certificate.find("top projection"), std::string::npos);
  auto g = parse_group("wreath(Z, Z)");
  EXPECT_EQ(element_order(*g, parse_element(*g, "(1, {})")).kind, OrderResult::Kind::Infinite);

  const Element sigma = parse_element(*h, "(0, {0: (0, [(1 2 3)])})");
  const OrderResult r = element_order(*h, sigma);
  ASSERT_EQ(r.kind, OrderResult::Kind::Finite);
  EXPECT_EQ(r.order, 3u);
  expect_exact_order(*h, sigma, 3);
}

TEST(ElementOrder, LampLcmAndFiniteWalker) {
  auto w = parse_group("wreath(Z, A5)");
  const Element x = parse_element(*w, "(0, {-1: [(1 2)(3 4)], 0: [(1 2 3)], 4: [(1 2 3 4 5)]})");
  EXPECT_EQ(element_order(*w, x).order, 30u);
  expect_exact_order(*w, x, 30);

  auto fw = parse_group("wreath(S3, cyclic(2))");
  for (const Element& y : fw->enumerate()) {
    const OrderResult r = element_order(*fw, y);
    ASSERT_EQ(r.kind, OrderResult::Kind::Finite);
    expect_exact_order(*fw, y, r.order);
  }
}

TEST(ElementOrder, IntegerLampIsInfinite) {
  auto g = parse_group("wreath(Z, Z)");
  const OrderResult r = element_order(*g, parse_element(*g, "(0, {3: 2})"));
  EXPECT_EQ(r.kind, OrderResult::Kind::Infinite);
}

TEST(ElementOrder, CapGivesUnknown) {
  auto c60 = Group::cyclic(60);
  EXPECT_EQ(element_order(*c60, Element::fin(1), 10).kind, OrderResult::Kind::UnknownBeyond);
  EXPECT_EQ(element_order(*c60, Element::fin(1), 60).order, 60u);
}

TEST(ElementOrder, TorsionContrast) {
  auto g = parse_group("wreath(Z, Z)");
  auto h = parse_group("wreath(Z, sum(Z, A5))");
  Rng rng(8);
  ASSERT_TRUE(verify_top_projection(*g, rng));
  ASSERT_TRUE(verify_top_projection(*h, rng));
  for (int i = 0; i < 200; ++i) {
    const Element x = random_non_identity(*g, rng);
    EXPECT_EQ(element_order(*g, x).kind, OrderResult::Kind::Infinite) << g->format(x);
  }
  // Embedded sum of copies of A5: top 0, lamps (0, d).
  const std::uint64_t exponent = named_permutation_group("A5")->exponent();
  for (int i = 0; i < 200; ++i) {
    std::vector<Lamp> lamps;
    for (std::int64_t p = -2; p <= 2; ++p)
      lamps.push_back({Element::integer(p), Element::pair(Element::integer(0), Element::fin(rng() % 60))});
    const Element x = make_wreath_element(*h, Element::integer(0), SupportMap::from_entries(*h, lamps));
    if (h->is_identity(x)) continue;
    const OrderResult r = element_order(*h, x);
    ASSERT_EQ(r.kind, OrderResult::Kind::Finite);
    EXPECT_EQ(exponent % r.order, 0u);
  }
}

TEST(ElementOrder, OrderSixtyInCyclicLamps) {
  auto h = parse_group("wreath(Z, sum(Z, cyclic(60)))");
  const Element x = parse_element(*h, "(0, {0: (0, 1)})");
  EXPECT_EQ(element_order(*h, x).order, 60u);
  expect_exact_order(*h, x, 60);
}

TEST(Projection, Examples) {
  auto a5 = named_permutation_group("A5");
  auto w = Group::wreath(Group::integers(), a5);
  const SupportMap f1 = SupportMap::of_element(parse_element(*w, "(0, {0: [(1 2 3 4 5)], 3: [(1 2 3)]})"));
  const SupportMap f2 = SupportMap::of_element(parse_element(*w, "(0, {-1: [(1 2 3 4 5)], 0: [(1 2 3)]})"));
  const ProjectionImage full = projection_surjectivity(a5, {f1, f2}, 0);
  EXPECT_TRUE(full.surjective);
  EXPECT_EQ(full.image_size, 60u);

  const ProjectionImage empty = projection_surjectivity(a5, {}, 0);
  EXPECT_FALSE(empty.surjective);
  EXPECT_EQ(empty.image_size, 1u);

  const ProjectionImage elsewhere = projection_surjectivity(a5, {f1, f2}, 7);
  EXPECT_FALSE(elsewhere.surjective);
  EXPECT_EQ(elsewhere.image_size, 1u);

  const ProjectionImage one = projection_surjectivity(a5, {f1}, 3);
  EXPECT_EQ(one.image_size, 3u);
  EXPECT_THROW(projection_surjectivity(Group::integers(), {}, 0), Error);
}
