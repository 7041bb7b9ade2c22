#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "xzsq/abelian.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/increment.hpp"
#include "xzsq/outcome_check.hpp"
#include "xzsq/sampling.hpp"

using namespace xzsq;

namespace {

Subset sg(const Group& g, Elem gen)
{
  return generated_subgroup(Subset::of(g, {gen}));
}

MultiplicativeSystem chain(const Group&, std::initializer_list<Subset> c, double eps = 0.0)
{
  MultiplicativeSystem sys = subgroup_chain_system(std::vector<Subset>(c));
  sys.epsilon = eps;
  return sys;
}

Errc code_of(const std::function<void()>& f)
{
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

// max over Z of |A cap zB| / |B| by direct counting.
double argmax_value(const Subset& a, const Subset& z, const Subset& b, bool right)
{
  const auto& g = a.table();
  double best = -1;
  z.for_each([&](Elem x) {
    std::size_t n = 0;
    b.for_each([&](Elem y) { n += a.contains(right ? g.mul(x, y) : g.mul(y, x)); });
    best = std::max(best, double(n) / b.size());
  });
  return best;
}

void expect_checked(const IncrementOutcome& o)
{
  const OutcomeCheckReport r = check_outcome(o);
  EXPECT_TRUE(r.ok) << (r.mismatches.empty() ? "" : r.mismatches.front());
  EXPECT_GT(r.keys_checked, 0u);
}

} // namespace

TEST(L2Increment, FullSetFailsHypothesis)
{
  const Group g = cyclic(32);
  const auto sys = chain(g, {Subset::full(g), sg(g, 4)});
  EXPECT_EQ(code_of([&] { l2_increment_right(sys, Subset::full(g), 0, 0.1); }), Errc::HypothesisNotMet);
  EXPECT_EQ(code_of([&] { l2_increment_left(sys, Subset::full(g), 0, 0.1); }), Errc::HypothesisNotMet);
}

TEST(L2Increment, UnionOfCosetsReachesOne)
{
  const Group g = cyclic(32);
  const Subset h = sg(g, 4);
  const auto sys = chain(g, {Subset::full(g), h});
  const Subset a = h | translate(1, h, 0);
  const IncrementOutcome o = l2_increment_right(sys, a, 0, 1.0);
  EXPECT_EQ(o.kind, OutcomeKind::RightIncrement);
  EXPECT_DOUBLE_EQ(o.measured.at("value"), 1.0);
  EXPECT_TRUE(a.contains(*o.z));
  expect_checked(o);
}

TEST(L2IncrementProperty, BohrSystemArgmax)
{
  Rng rng(31);
  const Group g = cyclic(32);
  const auto bs = bohr_system({g, {{1}}, 0.9}, 0.25).system;
  const MultiplicativeSystem sys = truncate(bs, 0, 0, bs.tail);
  int ran = 0;
  for (int i = 0; i < 40; ++i) {
    const Elem shift = static_cast<Elem>(rng.below(32));
    const Subset z = translate(shift, sys.B(0), 0);
    const Subset a = random_subset(g, 0.5, rng) & z;
    if (a.empty())
      continue;
    for (bool right : {true, false}) {
      const Subset zz = right ? z : translate(0, sys.B(0), shift);
      const Subset aa = right ? a : (random_subset(g, 0.5, rng) & zz);
      if (aa.empty())
        continue;
      const double alpha = double(aa.size()) / zz.size();
      double h = 0;
      zz.for_each([&](Elem x) {
        const double v = (right ? convolve_at(indicator(aa), sys.B(1), x)
                                : convolve_at(sys.B(1), indicator(aa), x)) - alpha;
        h += v * v;
      });
      h /= zz.size();
      const double eta = std::min(1.0, h / (alpha * alpha));
      const IncrementOutcome o = right ? l2_increment_right(sys, aa, shift, eta)
                                       : l2_increment_left(sys, aa, g->inv(shift), eta);
      EXPECT_NEAR(o.measured.at("value"), argmax_value(aa, zz, sys.B(1), right), 1e-12);
      expect_checked(o);
      ++ran;
    }
  }
  EXPECT_GT(ran, 40);
}

TEST(Equalise, ConstantConvolutionHolds)
{
  const Group g = cyclic(32);
  const Subset h = sg(g, 2);
  const Subset q = sg(g, 4);
  struct Case {
    MultiplicativeSystem b, bp;
    Subset a;
  };
  const std::vector<Case> cases = {
      {chain(g, {Subset::full(g), Subset::full(g)}), chain(g, {h, sg(g, 8)}), Subset::full(g)},
      {chain(g, {h, h}), chain(g, {q, sg(g, 8)}), h},
      {chain(g, {h, h}), chain(g, {q, sg(g, 8)}), q | translate(2, q, 0)},
  };
  for (const Case& c : cases) {
    for (bool right : {true, false}) {
      const IncrementOutcome o = right ? equalise_right(c.b, c.bp, c.a, 0, 0, 0.1)
                                       : equalise_left(c.b, c.bp, c.a, 0, 0, 0.1);
      EXPECT_EQ(o.kind, OutcomeKind::L1BoundHolds);
      EXPECT_EQ(o.measured.at("l1"), 0.0);
      expect_checked(o);
    }
  }
}

TEST(Equalise, ConcentratedSetIncrements)
{
  const Group g = cyclic(32);
  const auto sys_b = chain(g, {Subset::full(g), Subset::full(g)});
  const Subset k = sg(g, 8);
  const auto sys_bp = chain(g, {sg(g, 2), k});
  const Subset a = k | Subset::of(g, {1});
  for (bool right : {true, false}) {
    const IncrementOutcome o = right ? equalise_right(sys_b, sys_bp, a, 0, 0, 0.1)
                                     : equalise_left(sys_b, sys_bp, a, 0, 0, 0.1);
    EXPECT_EQ(o.kind, right ? OutcomeKind::RightIncrement : OutcomeKind::LeftIncrement);
    EXPECT_DOUBLE_EQ(o.measured.at("value"), argmax_value(a, Subset::full(g), k, right));
    EXPECT_DOUBLE_EQ(o.measured.at("value"), 1.0);
    expect_checked(o);
  }
}

TEST(Equalise, InclusionChecked)
{
  const Group g = cyclic(32);
  const auto sys_b = chain(g, {Subset::full(g), sg(g, 4)});
  const auto sys_bp = chain(g, {sg(g, 2), sg(g, 8)});
  EXPECT_EQ(code_of([&] { equalise_right(sys_b, sys_bp, sg(g, 2), 0, 0, 0.1); }), Errc::InclusionViolated);
}

TEST(SquareAnchor, Singleton)
{
  const Group g = cyclic(27);
  const auto sys = chain(g, {Subset::full(g), Subset::full(g)});
  const AnchorResult r = select_square_anchor(sys, Subset::of(g, {5}), Subset::of(g, {0, 1, 26}), 0, 0);
  EXPECT_EQ(r.anchor, 5u);
  EXPECT_EQ(r.hits, 1u);
  EXPECT_GE(r.square_hits, 1u);
}

TEST(SquareAnchor, SubgroupCoset)
{
  const Group g = cyclic(64);
  const Subset h = sg(g, 8);
  const auto sys = chain(g, {Subset::full(g), h});
  const Subset s = Subset::of(g, {1, 9, 17});
  const AnchorResult r = select_square_anchor(sys, s, h, 0, 0);
  EXPECT_EQ(r.hits, s.size());
}

TEST(SquareAnchorProperty, RandomBound)
{
  Rng rng(64);
  const Group g = cyclic(64);
  const auto sys = chain(g, {Subset::full(g), Subset::full(g)});
  for (int i = 0; i < 30; ++i) {
    const Subset s = random_distinct_squares(g, 0.6, rng);
    const Subset x = random_symmetric(g, 0.3, rng);
    if (s.empty())
      continue;
    const AnchorResult r = select_square_anchor(sys, s, x, 0, 0);
    // Direct double loop for the hit count of every candidate.
    const Subset x2 = oracle::product(x, x);
    std::size_t best = 0;
    s.for_each([&](Elem sp) {
      std::size_t c = 0;
      s.for_each([&](Elem t) { c += x2.contains(g->mul(g->inv(sp), t)) && x2.contains(g->mul(t, g->inv(sp))); });
      best = std::max(best, c);
    });
    EXPECT_EQ(r.hits, best);
    EXPECT_GE(double(r.hits), double(x.size() * x.size() * s.size()) / (64.0 * 64.0) - 1e-9);
  }
  EXPECT_EQ(code_of([&] { select_square_anchor(sys, Subset::of(g, {0, 32}), Subset::singleton(g, 0), 0, 0); }),
            Errc::DistinctSquaresViolated);
}

TEST(U1, SubgroupIsImmediateAnchor)
{
  const Group g = cyclic(27);
  const Subset h = sg(g, 3);
  const auto sys = chain(g, {h, h});
  const IncrementOutcome o = u1_step(sys, sys, h, h, 0, 0, 0.125);
  EXPECT_EQ(o.kind, OutcomeKind::AnchorFound);
  EXPECT_DOUBLE_EQ(o.measured.at("right_density"), 1.0);
  EXPECT_DOUBLE_EQ(o.measured.at("left_density"), 1.0);
  EXPECT_DOUBLE_EQ(o.measured.at("squares_density"), 1.0);
  expect_checked(o);
}

TEST(U1, ConcentratedSetIncrements)
{
  const Group g = cyclic(27);
  const Subset k = sg(g, 9);
  const auto sys_b = chain(g, {Subset::full(g), Subset::full(g)});
  const auto sys_bp = chain(g, {sg(g, 3), k});
  const IncrementOutcome o = u1_step(sys_b, sys_bp, k | Subset::of(g, {1}), k, 0, 0, 0.125);
  EXPECT_TRUE(o.kind == OutcomeKind::RightIncrement || o.kind == OutcomeKind::LeftIncrement);
  expect_checked(o);
}

TEST(U1Property, AnchorSquaresDensity)
{
  Rng rng(27);
  const Group g = load_group("F21");
  const auto sys = chain(g, {Subset::full(g), Subset::full(g)});
  for (int i = 0; i < 20; ++i) {
    const Subset a = random_distinct_squares(g, 0.5, rng);
    if (a.empty())
      continue;
    const IncrementOutcome o = u1_step(sys, sys, a, Subset::full(g), 0, 0, 0.125);
    ASSERT_EQ(o.kind, OutcomeKind::AnchorFound);
    const Elem an = *o.a;
    const Subset window = translate(an, Subset::full(g), an);
    EXPECT_DOUBLE_EQ(o.measured.at("squares_density"),
                     double((square_image(a) & window).size()) / window.size());
    expect_checked(o);
  }
}

TEST(U2, SubgroupFirstCase)
{
  const Group g = cyclic(24);
  const Subset h = sg(g, 2), k = sg(g, 4);
  const auto sys = chain(g, {Subset::full(g), h, k}, 1.0 / 1024);
  const IncrementOutcome o = u2_step(sys, k, Subset::full(g), Subset::full(g), h);
  EXPECT_EQ(o.kind, OutcomeKind::CountLowerBound);
  EXPECT_NEAR(o.measured.at("ip"), 1.0, 1e-12);
  expect_checked(o);
}

TEST(U2Property, InnerProductMatchesBruteForce)
{
  Rng rng(2);
  const Group g = load_group("D12");
  const Subset rot = sg(g, 1);
  const auto sys = chain(g, {Subset::full(g), rot, Subset::singleton(g, 0)}, 1.0 / 1024);
  for (int i = 0; i < 20; ++i) {
    Subset u = random_subset(g, 0.5, rng), v = random_subset(g, 0.5, rng);
    if (u.empty() || v.empty())
      continue;
    while (u.size() > v.size())
      u.erase(u.elements().back());
    while (v.size() > u.size())
      v.erase(v.elements().back());
    const IncrementOutcome o = u2_step(sys, Subset::singleton(g, 0), u, v, rot);
    std::size_t n = 0;
    u.for_each([&](Elem r) { v.for_each([&](Elem t) { n += rot.contains(g->mul(r, t)); }); });
    EXPECT_NEAR(o.measured.at("ip"), double(n) / (v.size() * rot.size()), 1e-9);
    EXPECT_EQ(count_product_triples(u, v, rot), n);
    expect_checked(o);
  }
}

TEST(U2, IncrementCase)
{
  const Group g = cyclic(31);
  const auto sys = chain(g, {Subset::full(g), Subset::full(g), Subset::full(g)}, 1.0 / 1024);
  RunConfig cfg;
  cfg.c_count = 50;
  const Subset u = Subset::of(g, {0, 1, 2, 5, 9});
  const Subset v = Subset::of(g, {0, 3, 7, 11, 20});
  const IncrementOutcome o = u2_step(sys, Subset::full(g), u, v, Subset::of(g, {0, 4, 8}), cfg);
  ASSERT_TRUE(o.kind == OutcomeKind::LeftSystemIncrement || o.kind == OutcomeKind::RightSystemIncrement);
  ASSERT_TRUE(o.system.has_value());
  EXPECT_TRUE(verify_system(*o.system).ok);
  const Subset& b0 = o.system->B(0);
  const bool left = o.kind == OutcomeKind::LeftSystemIncrement;
  EXPECT_NEAR(o.measured.at("value"), argmax_value(left ? u : v, Subset::full(g), b0, !left), 1e-12);
  expect_checked(o);
}

TEST(U2, Preconditions)
{
  const Group g = cyclic(24);
  const Subset h = sg(g, 2), k = sg(g, 4);
  const auto sys = chain(g, {Subset::full(g), h, k}, 1.0 / 1024);
  EXPECT_EQ(code_of([&] { u2_step(sys, k, Subset::full(g), Subset::full(g), Subset(g)); }), Errc::EmptySet);
  EXPECT_EQ(code_of([&] { u2_step(sys, k, Subset::of(g, {1}), Subset::of(g, {1, 2}), h); }),
            Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { u2_step(sys, k, Subset::full(g), Subset::full(g), Subset::of(g, {1})); }),
            Errc::InclusionViolated);
}

TEST(OutcomeCheck, DetectsTampering)
{
  const Group g = cyclic(32);
  const Subset h = sg(g, 4);
  const auto sys = chain(g, {Subset::full(g), h});
  const Subset a = h | Subset::of(g, {1, 2});
  IncrementOutcome o = l2_increment_right(sys, a, 0, 0.5);
  expect_checked(o);
  IncrementOutcome bad = o;
  bad.measured["value"] += 1e-6;
  EXPECT_FALSE(check_outcome(bad).ok);
  bad = o;
  bad.z = 1;
  EXPECT_FALSE(check_outcome(bad).ok);
  bad = o;
  bad.measured["unknown"] = 0;
  EXPECT_FALSE(check_outcome(bad).ok);
}
