#include "xzsq/subset.hpp"

#include <algorithm>
#include <cctype>

#include "xzsq/errors.hpp"

namespace xzsq {

namespace {

std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

} // namespace

Subset::Subset(Group g) : group_(std::move(g))
{
  require(group_ != nullptr, Errc::InvalidArgument, "subset needs a group");
  words_.assign(word_count(group_->order()), 0);
}

Subset Subset::of(Group g, std::initializer_list<Elem> elems)
{
  return from_elements(std::move(g), std::span<const Elem>(elems.begin(), elems.size()));
}

Subset Subset::from_elements(Group g, std::span<const Elem> elems)
{
  Subset s(std::move(g));
  for (Elem x : elems)
    s.insert(x);
  return s;
}

Subset Subset::full(Group g)
{
  Subset s(std::move(g));
  const std::size_t n = s.group_->order();
  for (std::size_t i = 0; i < n; ++i)
    s.words_[i >> 6] |= std::uint64_t(1) << (i & 63);
  s.card_ = n;
  return s;
}

Subset Subset::singleton(Group g, Elem x)
{
  Subset s(std::move(g));
  s.insert(x);
  return s;
}

double Subset::density() const noexcept
{
  return static_cast<double>(card_) / static_cast<double>(group_->order());
}

void Subset::insert(Elem x)
{
  require(x < group_->order(), Errc::InvalidArgument,
          "element " + std::to_string(x) + " out of range");
  auto& w = words_[x >> 6];
  const auto bit = std::uint64_t(1) << (x & 63);
  if (!(w & bit)) {
    w |= bit;
    ++card_;
  }
}

void Subset::erase(Elem x)
{
  require(x < group_->order(), Errc::InvalidArgument,
          "element " + std::to_string(x) + " out of range");
  auto& w = words_[x >> 6];
  const auto bit = std::uint64_t(1) << (x & 63);
  if (w & bit) {
    w &= ~bit;
    --card_;
  }
}

std::vector<Elem> Subset::elements() const
{
  std::vector<Elem> out;
  out.reserve(card_);
  for_each([&](Elem x) { out.push_back(x); });
  return out;
}

void Subset::recount()
{
  card_ = 0;
  for (auto w : words_)
    card_ += static_cast<std::size_t>(std::popcount(w));
}

bool Subset::is_subset_of(const Subset& other) const
{
  check_same_group(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i])
      return false;
  return true;
}

std::optional<Elem> Subset::first_not_in(const Subset& other) const
{
  check_same_group(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (auto d = words_[i] & ~other.words_[i])
      return static_cast<Elem>(i * 64 + std::countr_zero(d));
  return std::nullopt;
}

Subset& Subset::operator|=(const Subset& o)
{
  check_same_group(*this, o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] |= o.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator&=(const Subset& o)
{
  check_same_group(*this, o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= o.words_[i];
  recount();
  return *this;
}

Subset& Subset::operator-=(const Subset& o)
{
  check_same_group(*this, o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= ~o.words_[i];
  recount();
  return *this;
}

bool operator==(const Subset& a, const Subset& b)
{
  if (!a.valid() || !b.valid())
    return a.valid() == b.valid();
  return same_group(*a.group_, *b.group_) && a.words_ == b.words_;
}

std::string Subset::to_hex() const
{
  static const char digits[] = "0123456789abcdef";
  const std::size_t n = group_->order();
  std::string out = std::to_string(n) + ":";
  for (std::size_t nib = 0; nib * 4 < n; ++nib) {
    const auto v = (words_[nib / 16] >> ((nib % 16) * 4)) & 0xfu;
    out.push_back(digits[v]);
  }
  return out;
}

Subset Subset::from_hex(Group g, std::string_view text)
{
  Subset s(std::move(g));
  const std::size_t n = s.group_->order();
  const auto colon = text.find(':');
  require(colon != std::string_view::npos, Errc::ParseError, "hex subset needs 'order:' prefix");
  const std::string order_part(text.substr(0, colon));
  require(order_part == std::to_string(n), Errc::GroupMismatch,
          "hex subset order " + order_part + " does not match group order " + std::to_string(n));
  const auto hex = text.substr(colon + 1);
  require(hex.size() == (n + 3) / 4, Errc::ParseError, "hex subset has wrong length");
  for (std::size_t nib = 0; nib < hex.size(); ++nib) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[nib])));
    unsigned v;
    if (c >= '0' && c <= '9')
      v = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f')
      v = static_cast<unsigned>(c - 'a' + 10);
    else
      fail(Errc::ParseError, std::string("bad hex digit '") + hex[nib] + "'");
    for (unsigned b = 0; b < 4; ++b)
      if (v >> b & 1u) {
        const std::size_t i = nib * 4 + b;
        require(i < n, Errc::ParseError, "hex subset sets a bit beyond the group order");
        s.insert(static_cast<Elem>(i));
      }
  }
  return s;
}

void check_same_group(const Subset& a, const Subset& b)
{
  require(a.valid() && b.valid(), Errc::InvalidArgument, "subset without a group");
  require(same_group(a.table(), b.table()), Errc::GroupMismatch,
          "subsets belong to different groups");
}

Subset product_set(const Subset& a, const Subset& b)
{
  check_same_group(a, b);
  Subset out(a.group());
  const auto bs = b.elements();
  const auto& g = a.table();
  std::vector<std::uint64_t> acc(a.words().size());
  a.for_each([&](Elem x) {
    const Elem* row = g.row(x);
    for (Elem y : bs) {
      const Elem z = row[y];
      acc[z >> 6] |= std::uint64_t(1) << (z & 63);
    }
  });
  for (std::size_t w = 0; w < acc.size(); ++w) {
    std::uint64_t bits = acc[w];
    while (bits) {
      out.insert(static_cast<Elem>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

Subset product_set(const Subset& a, const Subset& b, const Subset& c)
{
  return product_set(product_set(a, b), c);
}

Subset power_set_k(const Subset& a, std::uint64_t k)
{
  Subset cur = Subset::singleton(a.group(), GroupTable::identity());
  for (std::uint64_t i = 0; i < k; ++i) {
    Subset next = product_set(cur, a);
    // Once A^{m+1} = A^m the sequence is constant.
    if (next == cur)
      break;
    cur = std::move(next);
  }
  return cur;
}

Subset inverse_set(const Subset& a)
{
  Subset out(a.group());
  a.for_each([&](Elem x) { out.insert(a.table().inv(x)); });
  return out;
}

Subset conjugate_set(Elem g, const Subset& a)
{
  return translate(g, a, a.table().inv(g));
}

Subset translate(Elem g, const Subset& a, Elem h)
{
  const auto& t = a.table();
  require(g < t.order() && h < t.order(), Errc::InvalidArgument, "translate element out of range");
  Subset out(a.group());
  a.for_each([&](Elem x) { out.insert(t.mul(t.mul(g, x), h)); });
  return out;
}

Subset square_image(const Subset& a)
{
  Subset out(a.group());
  a.for_each([&](Elem x) { out.insert(a.table().sq(x)); });
  return out;
}

bool is_symmetric_neighbourhood(const Subset& a)
{
  return a.contains(GroupTable::identity()) && inverse_set(a) == a;
}

bool has_distinct_squares(const Subset& a)
{
  return square_image(a).size() == a.size();
}

bool is_subgroup(const Subset& a)
{
  if (!a.contains(GroupTable::identity()))
    return false;
  return product_set(a, a) == a;
}

Subset generated_subgroup(const Subset& a)
{
  Subset cur = Subset::singleton(a.group(), GroupTable::identity());
  for (;;) {
    Subset next = product_set(cur, a) | cur;
    if (next == cur)
      return cur;
    cur = std::move(next);
  }
}

} // namespace xzsq
