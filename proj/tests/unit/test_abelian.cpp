#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "xzsq/abelian.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/rng.hpp"

using namespace xzsq;

namespace {

std::vector<std::int64_t> moduli(const char* d)
{
  return decompose_abelian(load_group(d)).moduli;
}

} // namespace

TEST(Abelian, InvariantFactors)
{
  EXPECT_EQ(moduli("C12"), (std::vector<std::int64_t>{12}));
  EXPECT_EQ(moduli("C2xC4"), (std::vector<std::int64_t>{2, 4}));
  EXPECT_EQ(moduli("C3xC3"), (std::vector<std::int64_t>{3, 3}));
  EXPECT_EQ(moduli("C4xC4"), (std::vector<std::int64_t>{4, 4}));
  EXPECT_EQ(moduli("C2xC2xC2"), (std::vector<std::int64_t>{2, 2, 2}));
  EXPECT_EQ(moduli("product(cyclic(2),cyclic(3))"), (std::vector<std::int64_t>{6}));
  EXPECT_TRUE(moduli("C1").empty());
  EXPECT_THROW(decompose_abelian(load_group("S3")), Error);
}

TEST(AbelianProperty, CoordinatesAreAnIsomorphism)
{
  for (const auto& e : catalog()) {
    if (!e.abelian)
      continue;
    const Group g = load_group(e.descriptor);
    const AbelianDecomposition dec = decompose_abelian(g);
    std::int64_t prod = 1;
    for (auto d : dec.moduli)
      prod *= d;
    EXPECT_EQ(static_cast<std::size_t>(prod), g->order()) << e.name;
    std::set<std::vector<std::int64_t>> seen;
    for (Elem x = 0; x < g->order(); ++x) {
      seen.insert(dec.coords[x]);
      for (Elem y = 0; y < g->order(); ++y) {
        const auto& cxy = dec.coords[g->mul(x, y)];
        for (std::size_t i = 0; i < dec.moduli.size(); ++i)
          ASSERT_EQ(cxy[i], (dec.coords[x][i] + dec.coords[y][i]) % dec.moduli[i]) << e.name;
      }
    }
    EXPECT_EQ(seen.size(), g->order()) << e.name;
  }
}

TEST(Abelian, BohrSetMatchesComplexOracle)
{
  const std::size_t n = 29;
  const Group g = cyclic(n);
  for (double width : {0.1, 0.5, 1.0, 1.7}) {
    const Subset b = bohr_set({g, {{3}, {5}}, width});
    for (Elem x = 0; x < n; ++x) {
      bool in = true;
      for (int t : {3, 5}) {
        const std::complex<double> z = std::polar(1.0, 2 * M_PI * t * x / double(n));
        in = in && std::abs(z - 1.0) <= width + 1e-12;
      }
      EXPECT_EQ(b.contains(x), in) << width << " " << x;
    }
    EXPECT_TRUE(is_symmetric_neighbourhood(b));
  }
  EXPECT_EQ(bohr_set({g, {{0}}, 0.01}), Subset::full(g));
  EXPECT_EQ(bohr_set({g, {{1}}, 2.0}), Subset::full(g));
}

TEST(AbelianProperty, BohrSystemsAreValid)
{
  Rng rng(9);
  for (const char* d : {"C31", "C64", "C4xC4", "C2xC2xC2", "product(cyclic(5),cyclic(15))"}) {
    const Group g = load_group(d);
    const AbelianDecomposition dec = decompose_abelian(g);
    for (int i = 0; i < 6; ++i) {
      BohrSpec spec{g, {}, 0.3 + 0.25 * static_cast<double>(rng.below(6))};
      for (int f = 0; f < 2; ++f) {
        std::vector<std::int64_t> t;
        for (auto m : dec.moduli)
          t.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m))));
        spec.frequencies.push_back(t);
      }
      const BohrSystemResult r = bohr_system(spec, 0.5);
      const VerificationReport rep = verify_system(r.system);
      EXPECT_TRUE(rep.ok) << d << " " << (rep.ok ? "" : rep.first_failure()->axiom);
      EXPECT_TRUE(bohr_set(spec).is_subset_of(r.system.B(0))) << d;
    }
  }
}
