#ifndef XZSQ_COUNTING_HPP
#define XZSQ_COUNTING_HPP

#include <chrono>
#include <cstdint>
#include <string>

#include "xzsq/group.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// SQUARE: xz = y^2. INVARIANT: z = y x^-1 y.
enum class EquationKind { Square, Invariant };

const char* to_string(EquationKind e) noexcept;
EquationKind parse_equation(const std::string& s);

struct TripleCount {
  std::uint64_t total = 0;
  /// Triples with x != y.
  std::uint64_t nontrivial = 0;
};

/// The unique z completing (x, y).
Elem solve_z(const GroupTable& g, EquationKind eq, Elem x, Elem y) noexcept;
/// The unique x completing (y, z).
Elem solve_x(const GroupTable& g, EquationKind eq, Elem y, Elem z) noexcept;

/// Pair loop over (x, y) in A^2.
TripleCount count_triples(const Subset& a, EquationKind eq);
bool is_solution_free(const Subset& a, EquationKind eq);

struct SearchReport {
  Subset best_set;
  std::size_t best_size = 0;
  bool exhaustive = false;
  std::uint64_t nodes_explored = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Branch and bound over element ids; greedy with random restarts when the
/// node budget runs out.
SearchReport max_solution_free(const Group& g, EquationKind eq, std::uint64_t budget = 200'000'000,
                               std::uint64_t seed = 1);

struct CosetTranslate {
  Elem t = 0;
  std::size_t size = 0;
};

/// argmax over t of |tH cap A|; asserts size >= ceil(|A||H|/|G|).
CosetTranslate best_coset_translate(const Subset& a, const Subset& h);

/// Largest abelian subgroup, by extension through centralizers.
Subset largest_abelian_subgroup(const Group& g, std::size_t cap = 128);

} // namespace xzsq

#endif // XZSQ_COUNTING_HPP
