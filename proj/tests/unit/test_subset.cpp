#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/sampling.hpp"
#include "xzsq/subset.hpp"

using namespace xzsq;

TEST(Subset, BasicsAndHex)
{
  const Group g = cyclic(10);
  Subset a = Subset::of(g, {0, 3, 9});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_TRUE(a.contains(9));
  EXPECT_EQ(a.to_hex(), "10:902");
  EXPECT_EQ(Subset::from_hex(g, a.to_hex()), a);
  a.erase(3);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_DOUBLE_EQ(a.density(), 0.2);
  EXPECT_THROW(Subset::from_hex(g, "11:902"), Error);
  EXPECT_THROW(Subset::from_hex(g, "10:zz"), Error);
}

TEST(Subset, HexRoundTripRandom)
{
  Rng rng(7);
  for (const char* d : {"cyclic(1)", "cyclic(63)", "cyclic(64)", "cyclic(65)", "symmetric(5)"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 20; ++i) {
      const Subset a = random_subset(g, 0.4, rng);
      EXPECT_EQ(Subset::from_hex(g, a.to_hex()), a);
    }
  }
}

TEST(Subset, ParseForms)
{
  const Group g = cyclic(7);
  EXPECT_EQ(parse_subset(g, "{0,1,3}"), Subset::of(g, {0, 1, 3}));
  EXPECT_EQ(parse_subset(g, "0 1 3"), Subset::of(g, {0, 1, 3}));
  EXPECT_EQ(parse_subset(g, "all"), Subset::full(g));
  EXPECT_TRUE(parse_subset(g, "none").empty());
  EXPECT_EQ(parse_subset(g, "7:b0"), Subset::of(g, {0, 1, 3}));
  EXPECT_THROW(parse_subset(g, "{0,9}"), Error);
}

TEST(Subset, GroupMismatch)
{
  const Subset a = Subset::full(cyclic(5));
  const Subset b = Subset::full(cyclic(6));
  try {
    product_set(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::GroupMismatch);
  }
}

TEST(SubsetProperty, ProductMatchesOracle)
{
  Rng rng(11);
  for (const auto& e : catalog()) {
    if (e.order > 64)
      continue;
    const Group g = load_group(e.descriptor);
    for (int i = 0; i < 10; ++i) {
      const Subset a = random_subset(g, 0.2, rng), b = random_subset(g, 0.2, rng);
      EXPECT_EQ(product_set(a, b), oracle::product(a, b)) << e.name;
      EXPECT_EQ(product_set(a, b, b), oracle::product(oracle::product(a, b), b)) << e.name;
    }
  }
}

TEST(SubsetProperty, PowersInversesConjugates)
{
  Rng rng(5);
  const Group g = load_group("S4");
  for (int i = 0; i < 30; ++i) {
    const Subset a = random_symmetric(g, 0.1, rng);
    Subset p = Subset::singleton(g, 0);
    for (std::uint64_t k = 0; k <= 5; ++k) {
      EXPECT_EQ(power_set_k(a, k), p);
      p = oracle::product(p, a);
    }
    EXPECT_EQ(inverse_set(a), a);
    const Elem x = static_cast<Elem>(rng.below(g->order()));
    const Subset c = conjugate_set(x, a);
    EXPECT_EQ(c.size(), a.size());
    EXPECT_EQ(conjugate_set(g->inv(x), c), a);
    EXPECT_EQ(translate(x, a, g->inv(x)), c);
  }
}

TEST(Subset, Predicates)
{
  const Group g = cyclic(8);
  EXPECT_TRUE(is_symmetric_neighbourhood(Subset::of(g, {0, 1, 7})));
  EXPECT_FALSE(is_symmetric_neighbourhood(Subset::of(g, {0, 1})));
  EXPECT_FALSE(is_symmetric_neighbourhood(Subset::of(g, {1, 7})));
  EXPECT_TRUE(has_distinct_squares(Subset::of(g, {0, 1, 2, 3})));
  EXPECT_FALSE(has_distinct_squares(Subset::of(g, {0, 4})));
  EXPECT_TRUE(is_subgroup(Subset::of(g, {0, 2, 4, 6})));
  EXPECT_FALSE(is_subgroup(Subset::of(g, {0, 2, 4})));
  EXPECT_EQ(generated_subgroup(Subset::of(g, {6})), Subset::of(g, {0, 2, 4, 6}));
  EXPECT_EQ(square_image(Subset::of(g, {1, 5, 3})), Subset::of(g, {2, 6}));
  EXPECT_EQ(Subset::of(g, {1, 2}).first_not_in(Subset::of(g, {1})), Elem(2));
}

TEST(SubsetProperty, DistinctSquaresSampler)
{
  Rng rng(3);
  for (const char* d : {"cyclic(31)", "dihedral(15)", "F21", "C2xD8"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 20; ++i)
      EXPECT_TRUE(has_distinct_squares(random_distinct_squares(g, 0.7, rng)));
  }
}
