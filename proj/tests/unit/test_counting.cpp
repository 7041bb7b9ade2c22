#include <gtest/gtest.h>

#include "oracles.hpp"
#include "xzsq/counting.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/sampling.hpp"

using namespace xzsq;

namespace {

// Largest solution-free subset by enumerating every subset.
std::size_t full_enumeration(const Group& g, EquationKind eq)
{
  std::size_t best = 0;
  for (std::uint64_t m = 0; m < (1ull << g->order()); ++m) {
    const Subset s = oracle::from_mask(g, m);
    if (s.size() > best && oracle::triple_loop(s, eq, true) == 0)
      best = s.size();
  }
  return best;
}

} // namespace

TEST(Counting, SpecExamples)
{
  const Group c7 = cyclic(7);
  const Subset a = Subset::of(c7, {0, 1, 3});
  const TripleCount t = count_triples(a, EquationKind::Square);
  EXPECT_EQ(t.total, oracle::triple_loop(a, EquationKind::Square));
  EXPECT_EQ(t.nontrivial, oracle::triple_loop(a, EquationKind::Square, true));
  EXPECT_EQ(t.total, 3u);
  for (const char* d : {"C12", "S3", "Q8"}) {
    const Group g = load_group(d);
    EXPECT_EQ(count_triples(Subset::full(g), EquationKind::Square).total, g->order() * g->order());
    EXPECT_EQ(count_triples(Subset::full(g), EquationKind::Invariant).total, g->order() * g->order());
  }
}

TEST(Counting, SolutionFreePredicates)
{
  const Group c5 = cyclic(5);
  EXPECT_TRUE(is_solution_free(Subset(c5), EquationKind::Square));
  EXPECT_TRUE(is_solution_free(Subset::of(c5, {3}), EquationKind::Square));
  EXPECT_TRUE(is_solution_free(Subset::of(c5, {0, 1}), EquationKind::Square));
  for (std::size_t n : {3u, 4u, 6u}) {
    const Group g = cyclic(2 * n);
    Subset odd(g);
    for (Elem x = 1; x < 2 * n; x += 2)
      odd.insert(x);
    EXPECT_FALSE(is_solution_free(odd, EquationKind::Square)) << n;
  }
}

TEST(CountingProperty, PairLoopMatchesTripleLoop)
{
  Rng rng(1);
  for (const auto& e : catalog()) {
    if (e.order > 24)
      continue;
    const Group g = load_group(e.descriptor);
    for (int i = 0; i < 10; ++i) {
      const Subset a = random_subset(g, 0.5, rng);
      for (EquationKind eq : {EquationKind::Square, EquationKind::Invariant}) {
        const TripleCount t = count_triples(a, eq);
        EXPECT_EQ(t.total, oracle::triple_loop(a, eq)) << e.name;
        EXPECT_EQ(t.nontrivial, oracle::triple_loop(a, eq, true)) << e.name;
      }
      EXPECT_EQ(count_triples(a, EquationKind::Square).total - count_triples(a, EquationKind::Square).nontrivial,
                a.size());
    }
  }
}

TEST(Counting, MaxSolutionFreeMatchesEnumeration)
{
  EXPECT_EQ(max_solution_free(cyclic(1), EquationKind::Square).best_size, 1u);
  for (const char* d : {"C4", "C7", "S3", "C2xC4", "Q8", "C10"})
    for (EquationKind eq : {EquationKind::Square, EquationKind::Invariant}) {
      const Group g = load_group(d);
      const SearchReport r = max_solution_free(g, eq);
      EXPECT_TRUE(r.exhaustive);
      EXPECT_EQ(r.best_size, full_enumeration(g, eq)) << d << " " << to_string(eq);
      EXPECT_TRUE(is_solution_free(r.best_set, eq));
    }
}

TEST(Counting, BudgetExhaustionIsReported)
{
  const SearchReport r = max_solution_free(cyclic(40), EquationKind::Square, 100);
  EXPECT_FALSE(r.exhaustive);
  EXPECT_TRUE(is_solution_free(r.best_set, EquationKind::Square));
  EXPECT_GT(r.best_size, 0u);
}

TEST(CountingProperty, InvariantEquationIsTranslationInvariant)
{
  Rng rng(5);
  for (const char* d : {"S3", "D8", "Q8", "A4", "F21"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 10; ++i) {
      const Subset a = random_subset(g, 0.5, rng);
      const Elem t = static_cast<Elem>(rng.below(g->order()));
      const auto base = count_triples(a, EquationKind::Invariant).total;
      EXPECT_EQ(count_triples(translate(t, a, 0), EquationKind::Invariant).total, base);
      EXPECT_EQ(count_triples(translate(0, a, t), EquationKind::Invariant).total, base);
    }
  }
}

TEST(CountingProperty, AbelianEquationsCoincide)
{
  Rng rng(6);
  for (const char* d : {"C12", "C2xC4", "C3xC3"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 10; ++i) {
      const Subset a = random_subset(g, 0.5, rng);
      EXPECT_EQ(count_triples(a, EquationKind::Square).total, count_triples(a, EquationKind::Invariant).total);
    }
  }
}

TEST(Counting, BestCosetTranslate)
{
  const Group g = dihedral(4);
  const Subset rot = generated_subgroup(Subset::of(g, {1}));
  EXPECT_EQ(best_coset_translate(rot, rot).size, 4u);
  EXPECT_EQ(best_coset_translate(rot, rot).t, 0u);
  EXPECT_EQ(best_coset_translate(Subset::full(g), rot).size, 4u);
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const Subset a = random_subset(g, 0.5, rng);
    const CosetTranslate c = best_coset_translate(a, rot);
    std::size_t best = 0;
    for (Elem t = 0; t < 8; ++t)
      best = std::max(best, (translate(t, rot, 0) & a).size());
    EXPECT_EQ(c.size, best);
  }
  EXPECT_THROW(best_coset_translate(Subset::full(g), Subset::of(g, {0, 1})), Error);
}

TEST(Counting, LargestAbelianSubgroup)
{
  EXPECT_EQ(largest_abelian_subgroup(cyclic(12)).size(), 12u);
  const Subset s3 = largest_abelian_subgroup(symmetric(3));
  EXPECT_EQ(s3.size(), 3u);
  EXPECT_TRUE(is_subgroup(s3));
  EXPECT_EQ(largest_abelian_subgroup(quaternion8()).size(), 4u);
  EXPECT_EQ(largest_abelian_subgroup(symmetric(4)).size(), 4u);
  EXPECT_EQ(largest_abelian_subgroup(load_group("A4")).size(), 4u);
  EXPECT_EQ(largest_abelian_subgroup(load_group("C3xS3")).size(), 9u);
  EXPECT_EQ(largest_abelian_subgroup(symmetric(5)).size(), 6u);
  EXPECT_THROW(largest_abelian_subgroup(symmetric(5), 100), Error);
}
