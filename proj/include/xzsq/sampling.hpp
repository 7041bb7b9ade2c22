#ifndef XZSQ_SAMPLING_HPP
#define XZSQ_SAMPLING_HPP

#include "xzsq/rng.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// Each element independently with probability p.
Subset random_subset(const Group& g, double p, Rng& rng);
/// Symmetric neighbourhood holding inverse pairs with probability p, and always 1.
Subset random_symmetric(const Group& g, double p, Rng& rng);
/// Greedy set with distinct squares; elements visited in random order, each kept with probability p.
Subset random_distinct_squares(const Group& g, double p, Rng& rng);

} // namespace xzsq

#endif // XZSQ_SAMPLING_HPP
