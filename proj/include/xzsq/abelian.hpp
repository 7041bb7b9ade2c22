#ifndef XZSQ_ABELIAN_HPP
#define XZSQ_ABELIAN_HPP

#include <cstdint>
#include <vector>

#include "xzsq/group.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// G = Z/d_1 x ... x Z/d_k with d_i > 1 and d_i | d_{i+1}.
struct AbelianDecomposition {
  std::vector<std::int64_t> moduli;
  /// coords[x][i] is the residue of element x modulo moduli[i].
  std::vector<std::vector<std::int64_t>> coords;
};

/// Invariant-factor decomposition from the Smith normal form of the relation
/// lattice of a greedy generating set. Throws NotAbelian.
AbelianDecomposition decompose_abelian(const Group& g);

/// Frequency tuples index characters: gamma_t(x) = exp(2 pi i sum_k t_k b_k(x) / d_k).
struct BohrSpec {
  Group group;
  std::vector<std::vector<std::int64_t>> frequencies;
  double width = 2.0;
};

/// |gamma_t(x) - 1| computed from the exact rational phase.
double character_distance(const AbelianDecomposition& dec, const std::vector<std::int64_t>& t, Elem x);

/// {x : |gamma(x) - 1| <= width for all gamma}; comparisons allow 1e-12.
Subset bohr_set(const BohrSpec& spec);

struct BohrSystemResult {
  MultiplicativeSystem system;
  std::size_t l = 0;
  std::size_t j = 0;
  /// True when B_{0-} came from the dilate scan, false for the shrunk fallback.
  bool minus_from_dilate = false;
};

/// Pigeonhole over l = 1, 2, ... and j < l on M_j = j Bohr(delta/l) + Bohr(delta):
/// the first (l, j) with |Bohr(delta/l) + M_j| <= (1+eps)|M_j| and a valid inner set
/// yields (Bohr(delta/l) + M_j, M_j, B_{0-}; Bohr(delta/2l)).
BohrSystemResult bohr_system(const BohrSpec& spec, double epsilon);

} // namespace xzsq

#endif // XZSQ_ABELIAN_HPP
