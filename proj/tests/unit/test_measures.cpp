#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/measures.hpp"
#include "xzsq/sampling.hpp"

using namespace xzsq;

TEST(Measures, ConstructorsAndMass)
{
  const Group g = cyclic(6);
  const Subset a = Subset::of(g, {1, 2, 5});
  const MeasureVec mu = uniform_measure(a);
  EXPECT_NEAR(mu.total(), 1.0, 1e-15);
  EXPECT_NEAR(mu.mass(Subset::of(g, {1, 2})), 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(mu.non_negative());
  EXPECT_THROW(uniform_measure(Subset(g)), Error);
  EXPECT_EQ(support(mu), a);
  EXPECT_EQ(point_mass(g, 4)[4], 1.0);
}

TEST(MeasuresProperty, ConvolutionsMatchOracle)
{
  Rng rng(21);
  for (const char* d : {"S3", "Q8", "D10", "C12", "A4"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 20; ++i) {
      const FunctionVec f = oracle::random_function(g, rng);
      const MeasureVec mu = oracle::random_measure(g, rng);
      const auto fm = oracle::conv_fm(f, mu);
      const auto mf = oracle::conv_mf(mu, f);
      const FunctionVec a = convolve(f, mu), b = convolve(mu, f);
      for (Elem x = 0; x < g->order(); ++x) {
        EXPECT_NEAR(a[x], fm[x], 1e-9);
        EXPECT_NEAR(b[x], mf[x], 1e-9);
      }
      const Subset s = random_subset(g, 0.5, rng);
      if (!s.empty()) {
        const FunctionVec c = convolve(f, uniform_measure(s));
        const FunctionVec d2 = convolve(uniform_measure(s), f);
        for (Elem x = 0; x < g->order(); ++x) {
          EXPECT_NEAR(convolve_at(f, s, x), c[x], 1e-12);
          EXPECT_NEAR(convolve_at(s, f, x), d2[x], 1e-12);
        }
      }
    }
  }
}

TEST(MeasuresProperty, AdjointIdentity)
{
  Rng rng(4);
  for (const char* d : {"S4", "D12", "C3xQ8"}) {
    const Group g = load_group(d);
    for (int i = 0; i < 30; ++i) {
      const FunctionVec f = oracle::random_function(g, rng);
      const MeasureVec mu = oracle::random_measure(g, rng), nu = oracle::random_measure(g, rng);
      EXPECT_NEAR(pair(nu, convolve(f, mu)), pair(mu, convolve(tilde(f), nu)), 1e-9);
    }
  }
}

TEST(MeasuresProperty, SupportOfConvolution)
{
  Rng rng(8);
  const Group g = load_group("D16");
  for (int i = 0; i < 50; ++i) {
    const Subset a = random_subset(g, 0.15, rng), b = random_subset(g, 0.15, rng);
    if (a.empty() || b.empty())
      continue;
    EXPECT_EQ(support(convolve(uniform_measure(a), uniform_measure(b))), oracle::product(a, b));
  }
}

TEST(Measures, ActionConventions)
{
  const Group g = load_group("S3");
  Rng rng(2);
  const FunctionVec f = oracle::random_function(g, rng);
  const MeasureVec mu = oracle::random_measure(g, rng);
  for (Elem x = 0; x < 6; ++x)
    for (Elem y = 0; y < 6; ++y) {
      EXPECT_EQ(act_left(x, f)[y], f[g->mul(g->inv(x), y)]);
      EXPECT_EQ(act_right(x, f)[y], f[g->mul(y, x)]);
      EXPECT_NEAR(act_left_measure(x, mu).mass(Subset::singleton(g, y)), mu[g->mul(x, y)], 1e-15);
      EXPECT_NEAR(act_right_measure(x, mu).mass(Subset::singleton(g, y)), mu[g->mul(y, x)], 1e-15);
    }
  // f * mu(x) = <rho_x(mu), f~>
  const FunctionVec c = convolve(f, mu);
  for (Elem x = 0; x < 6; ++x)
    EXPECT_NEAR(c[x], pair(act_right_measure(x, mu), tilde(f)), 1e-12);
}

TEST(Measures, Norms)
{
  const Group g = cyclic(4);
  FunctionVec f(g);
  f.values = {1, -2, 0, 3};
  const MeasureVec mu = uniform_measure(Subset::full(g));
  EXPECT_NEAR(lp_norm(f, mu, 1), 1.5, 1e-15);
  EXPECT_NEAR(lp_norm(f, mu, 2), std::sqrt(14.0 / 4.0), 1e-15);
  EXPECT_EQ(lp_norm(f, mu, kInfinity), 3.0);
  EXPECT_EQ(lp_norm(f, uniform_measure(Subset::of(g, {0, 2})), kInfinity), 1.0);
  EXPECT_NEAR(inner_product(f, f, mu), 14.0 / 4.0, 1e-15);
  MeasureVec neg(g);
  neg.weights = {1, -1, 0, 0};
  EXPECT_THROW(lp_norm(f, neg, 2), Error);
  EXPECT_THROW(lp_norm(f, mu, 0.5), Error);
  EXPECT_NEAR(tv_distance(point_mass(g, 0), point_mass(g, 1)), 2.0, 1e-15);
}

TEST(Measures, Csv)
{
  const Group g = cyclic(2);
  FunctionVec f(g);
  f.values = {0.5, 1};
  EXPECT_EQ(to_csv(f), "element,value\n0,0.5\n1,1\n");
  EXPECT_EQ(to_csv(point_mass(g, 1)), "element,weight\n0,0\n1,1\n");
}
