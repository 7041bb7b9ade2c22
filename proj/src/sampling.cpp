#include "xzsq/sampling.hpp"

#include <numeric>
#include <vector>

namespace xzsq {

namespace {

bool coin(Rng& rng, double p)
{
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53 < p;
}

} // namespace

Subset random_subset(const Group& g, double p, Rng& rng)
{
  Subset s(g);
  for (Elem x = 0; x < g->order(); ++x)
    if (coin(rng, p))
      s.insert(x);
  return s;
}

Subset random_symmetric(const Group& g, double p, Rng& rng)
{
  Subset s = Subset::singleton(g, 0);
  for (Elem x = 1; x < g->order(); ++x) {
    const Elem xi = g->inv(x);
    if (xi < x)
      continue;
    if (coin(rng, p)) {
      s.insert(x);
      s.insert(xi);
    }
  }
  return s;
}

Subset random_distinct_squares(const Group& g, double p, Rng& rng)
{
  std::vector<Elem> order(g->order());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i)
    std::swap(order[i - 1], order[rng.below(i)]);
  Subset s(g);
  std::vector<char> used(g->order(), 0);
  for (Elem x : order) {
    const Elem q = g->sq(x);
    if (!used[q] && coin(rng, p)) {
      used[q] = 1;
      s.insert(x);
    }
  }
  return s;
}

} // namespace xzsq
