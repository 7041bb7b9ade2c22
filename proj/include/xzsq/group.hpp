#ifndef XZSQ_GROUP_HPP
#define XZSQ_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace xzsq {

/// Dense element id. Id 0 is always the identity.
using Elem = std::uint32_t;

class GroupTable;
using Group = std::shared_ptr<const GroupTable>;

/// Validation limits applied when a multiplication table is accepted.
struct GroupLimits {
  /// Orders up to this value get a full O(n^3) associativity scan.
  std::size_t full_check_cap = 512;
  /// Hard cap on the order of any table (and of permutation closures).
  std::size_t order_cap = 5040;
  /// Number of random triples checked above `full_check_cap`.
  std::size_t sampled_triples = 200000;
};

/// A finite group stored as an immutable Cayley table with precomputed
/// inverses and squares.
class GroupTable {
public:
  /// Validates `rows` (rows[a][b] = a*b) and relabels so that the identity
  /// has id 0. Throws NotLatinSquare or NonAssociative on bad input.
  static Group from_table(std::string name,
                          const std::vector<std::vector<Elem>>& rows,
                          std::string descriptor = {},
                          const GroupLimits& limits = {});

  std::size_t order() const noexcept { return n_; }

  Elem mul(Elem a, Elem b) const noexcept { return table_[std::size_t(a) * n_ + b]; }
  Elem inv(Elem a) const noexcept { return inv_[a]; }
  Elem sq(Elem a) const noexcept { return sq_[a]; }
  Elem conj(Elem g, Elem a) const noexcept { return mul(mul(g, a), inv_[g]); }
  static constexpr Elem identity() noexcept { return 0; }

  /// Row a of the table: row(a)[b] = a*b.
  const Elem* row(Elem a) const noexcept { return table_.data() + std::size_t(a) * n_; }

  bool abelian() const noexcept { return abelian_; }
  Elem element_order(Elem a) const;

  const std::string& name() const noexcept { return name_; }
  /// Canonical constructor expression (e.g. "dihedral(6)"); empty for
  /// groups loaded from an explicit table.
  const std::string& descriptor() const noexcept { return descriptor_; }

  /// FNV-1a digest of the order and the full table.
  std::uint64_t hash() const noexcept { return hash_; }
  std::string hash_hex() const;

  std::vector<std::vector<Elem>> rows() const;

private:
  GroupTable() = default;

  std::size_t n_ = 0;
  std::vector<Elem> table_;
  std::vector<Elem> inv_;
  std::vector<Elem> sq_;
  bool abelian_ = false;
  std::string name_;
  std::string descriptor_;
  std::uint64_t hash_ = 0;
};

/// True when both handles denote the same table (pointer or content).
bool same_group(const GroupTable& a, const GroupTable& b) noexcept;

// Catalog constructors. Each sets a canonical descriptor.
Group cyclic(std::size_t n);
/// Symmetries of the n-gon, order 2n. Ids: r^k -> k, s r^k -> n + k.
Group dihedral(std::size_t n);
/// Ids: 1, -1, i, -i, j, -j, k, -k.
Group quaternion8();
Group symmetric(std::size_t n);
Group alternating(std::size_t n);
Group direct_product(const Group& g, const Group& h);

/// A permutation on {0, ..., degree-1} given by its images.
using Permutation = std::vector<std::uint32_t>;

/// Closure of the generators under composition; (ab)(x) = b(a(x)).
/// Ids follow breadth-first order from the identity.
Group from_permutations(std::string name, const std::vector<Permutation>& generators,
                        std::size_t degree, std::string descriptor = {},
                        const GroupLimits& limits = {});

} // namespace xzsq

#endif // XZSQ_GROUP_HPP
