#include <gtest/gtest.h>

#include "xzsq/config.hpp"
#include "xzsq/errors.hpp"

using namespace xzsq;

TEST(Config, Defaults)
{
  const RunConfig c;
  EXPECT_DOUBLE_EQ(c.c, 0.125);
  EXPECT_DOUBLE_EQ(c.c_prime, 1.0 / 1024);
  EXPECT_DOUBLE_EQ(c.c_slack, 4);
  EXPECT_DOUBLE_EQ(c.c_inc, 1.0 / 32);
  EXPECT_DOUBLE_EQ(c.tolerance, 1e-9);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, ParseAndRoundTrip)
{
  const RunConfig c = parse_config("# constants\nc = 1/4\nc' = 1/2048\nseed=42\nmode=montecarlo\nc_count=0.75\n");
  EXPECT_DOUBLE_EQ(c.c, 0.25);
  EXPECT_DOUBLE_EQ(c.c_prime, 1.0 / 2048);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.mode, SamplerMode::MonteCarlo);
  EXPECT_DOUBLE_EQ(c.c_count, 0.75);
  const RunConfig d = parse_config(format_config(c));
  EXPECT_EQ(format_config(d), format_config(c));
}

TEST(Config, Errors)
{
  EXPECT_THROW(parse_config("bogus=1\n"), Error);
  EXPECT_THROW(parse_config("c=abc\n"), Error);
  EXPECT_THROW(parse_config("c=-1\n").validate(), Error);
  RunConfig c;
  c.tolerance = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(Config, SamplerSalting)
{
  const RunConfig c;
  EXPECT_NE(c.sampler(0.1, 2, 0).seed, c.sampler(0.1, 2, 1).seed);
  EXPECT_EQ(c.sampler(0.1, 2, 3).seed, c.sampler(0.1, 2, 3).seed);
  EXPECT_EQ(c.sampler(0.1, 2, 0).k, c.tuple_length);
}
