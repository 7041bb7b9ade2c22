#ifndef XZSQ_SUBSET_HPP
#define XZSQ_SUBSET_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xzsq/group.hpp"

namespace xzsq {

/// A subset of a finite group, stored as a bitset with cached cardinality.
class Subset {
public:
  Subset() = default;
  explicit Subset(Group g);

  static Subset of(Group g, std::initializer_list<Elem> elems);
  static Subset from_elements(Group g, std::span<const Elem> elems);
  static Subset full(Group g);
  static Subset singleton(Group g, Elem x);

  const Group& group() const noexcept { return group_; }
  const GroupTable& table() const noexcept { return *group_; }
  bool valid() const noexcept { return group_ != nullptr; }

  std::size_t size() const noexcept { return card_; }
  bool empty() const noexcept { return card_ == 0; }
  /// |A| / |G|
  double density() const noexcept;

  bool contains(Elem x) const noexcept { return (words_[x >> 6] >> (x & 63)) & 1u; }
  void insert(Elem x);
  void erase(Elem x);

  std::vector<Elem> elements() const;

  template <class F>
  void for_each(F&& f) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        f(static_cast<Elem>(w * 64 + b));
        bits &= bits - 1;
      }
    }
  }

  bool is_subset_of(const Subset& other) const;
  /// Smallest element of *this that is not in `other`.
  std::optional<Elem> first_not_in(const Subset& other) const;

  Subset& operator|=(const Subset& o);
  Subset& operator&=(const Subset& o);
  Subset& operator-=(const Subset& o);
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator-(Subset a, const Subset& b) { return a -= b; }
  friend bool operator==(const Subset& a, const Subset& b);

  /// "order:hex"; bit i is bit (i mod 4) of nibble i / 4, nibbles ascending.
  std::string to_hex() const;
  static Subset from_hex(Group g, std::string_view text);

  std::span<const std::uint64_t> words() const noexcept { return words_; }

private:
  void recount();

  Group group_;
  std::vector<std::uint64_t> words_;
  std::size_t card_ = 0;
};

/// Throws GroupMismatch unless both subsets live in the same group.
void check_same_group(const Subset& a, const Subset& b);

/// AB = {ab : a in A, b in B}
Subset product_set(const Subset& a, const Subset& b);
/// ABC
Subset product_set(const Subset& a, const Subset& b, const Subset& c);
/// A^k; A^0 = {1}.
Subset power_set_k(const Subset& a, std::uint64_t k);
Subset inverse_set(const Subset& a);
/// gAg^{-1}
Subset conjugate_set(Elem g, const Subset& a);
/// gAh
Subset translate(Elem g, const Subset& a, Elem h);
/// {x^2 : x in A}
Subset square_image(const Subset& a);

/// Contains the identity and is closed under inversion.
bool is_symmetric_neighbourhood(const Subset& a);
/// x -> x^2 is injective on A.
bool has_distinct_squares(const Subset& a);
bool is_subgroup(const Subset& a);
/// Subgroup generated by A.
Subset generated_subgroup(const Subset& a);

} // namespace xzsq

#endif // XZSQ_SUBSET_HPP
