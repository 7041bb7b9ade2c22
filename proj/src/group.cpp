#include "xzsq/group.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <utility>

#include "xzsq/errors.hpp"
#include "xzsq/rng.hpp"

namespace xzsq {

namespace {

std::uint64_t fnv1a(std::size_t n, const std::vector<Elem>& table)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&h](std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
      h ^= (v >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  feed(static_cast<std::uint32_t>(n));
  for (Elem e : table)
    feed(e);
  return h;
}

void check_latin(std::size_t n, const std::vector<Elem>& t)
{
  std::vector<char> seen(n);
  for (std::size_t a = 0; a < n; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t b = 0; b < n; ++b) {
      Elem v = t[a * n + b];
      if (v >= n || seen[v])
        fail(Errc::NotLatinSquare, "row " + std::to_string(a) + " is not a permutation");
      seen[v] = 1;
    }
  }
  for (std::size_t b = 0; b < n; ++b) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t a = 0; a < n; ++a) {
      Elem v = t[a * n + b];
      if (seen[v])
        fail(Errc::NotLatinSquare, "column " + std::to_string(b) + " is not a permutation");
      seen[v] = 1;
    }
  }
}

} // namespace

Group GroupTable::from_table(std::string name, const std::vector<std::vector<Elem>>& rows,
                             std::string descriptor, const GroupLimits& limits)
{
  const std::size_t n = rows.size();
  require(n >= 1, Errc::InvalidArgument, "group table must be non-empty");
  require(n <= limits.order_cap, Errc::CapExceeded,
          "order " + std::to_string(n) + " exceeds cap " + std::to_string(limits.order_cap));

  std::vector<Elem> t(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    require(rows[a].size() == n, Errc::NotLatinSquare, "table is not square");
    for (std::size_t b = 0; b < n; ++b)
      t[a * n + b] = rows[a][b];
  }
  check_latin(n, t);

  // Locate the identity and relabel it to 0 by swapping ids.
  std::size_t e = n;
  for (std::size_t c = 0; c < n && e == n; ++c) {
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      ok = t[c * n + x] == x && t[x * n + c] == x;
    if (ok)
      e = c;
  }
  require(e < n, Errc::NonAssociative, "table has no two-sided identity");
  if (e != 0) {
    std::vector<Elem> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    std::swap(relabel[0], relabel[e]);
    std::vector<Elem> u(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        u[relabel[a] * n + relabel[b]] = relabel[t[a * n + b]];
    t.swap(u);
  }

  auto g = std::shared_ptr<GroupTable>(new GroupTable());
  g->n_ = n;
  g->table_ = std::move(t);
  g->name_ = std::move(name);
  g->descriptor_ = std::move(descriptor);

  const auto& tt = g->table_;
  if (n <= limits.full_check_cap) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const Elem ab = tt[a * n + b];
        for (std::size_t c = 0; c < n; ++c)
          if (tt[ab * n + c] != tt[a * n + tt[b * n + c]])
            fail(Errc::NonAssociative, "(" + std::to_string(a) + "," + std::to_string(b) + "," +
                                           std::to_string(c) + ") violates associativity");
      }
  } else {
    SplitMix64 rng(0x9e3779b97f4a7c15ull ^ n);
    for (std::size_t s = 0; s < limits.sampled_triples; ++s) {
      const auto a = rng.below(n), b = rng.below(n), c = rng.below(n);
      if (tt[tt[a * n + b] * n + c] != tt[a * n + tt[b * n + c]])
        fail(Errc::NonAssociative, "sampled triple violates associativity");
    }
  }

  g->inv_.assign(n, 0);
  g->sq_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    g->sq_[a] = tt[a * n + a];
    for (std::size_t b = 0; b < n; ++b)
      if (tt[a * n + b] == 0) {
        g->inv_[a] = static_cast<Elem>(b);
        break;
      }
  }
  g->abelian_ = true;
  for (std::size_t a = 0; a < n && g->abelian_; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (tt[a * n + b] != tt[b * n + a]) {
        g->abelian_ = false;
        break;
      }
  g->hash_ = fnv1a(n, g->table_);
  return g;
}

Elem GroupTable::element_order(Elem a) const
{
  Elem k = 1;
  for (Elem x = a; x != 0; x = mul(x, a))
    ++k;
  return k;
}

std::string GroupTable::hash_hex() const
{
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
  return buf;
}

std::vector<std::vector<Elem>> GroupTable::rows() const
{
  std::vector<std::vector<Elem>> r(n_, std::vector<Elem>(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      r[a][b] = table_[a * n_ + b];
  return r;
}

bool same_group(const GroupTable& a, const GroupTable& b) noexcept
{
  return &a == &b || (a.order() == b.order() && a.hash() == b.hash());
}

Group cyclic(std::size_t n)
{
  require(n >= 1, Errc::InvalidArgument, "cyclic(n) needs n >= 1");
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      rows[a][b] = static_cast<Elem>((a + b) % n);
  const auto d = "cyclic(" + std::to_string(n) + ")";
  return GroupTable::from_table(d, rows, d);
}

Group dihedral(std::size_t n)
{
  require(n >= 1, Errc::InvalidArgument, "dihedral(n) needs n >= 1");
  // r^a s^x with s r = r^{-1} s; stored as id = x*n + a for the element s^x r^a.
  const std::size_t order = 2 * n;
  std::vector<std::vector<Elem>> rows(order, std::vector<Elem>(order));
  for (std::size_t p = 0; p < order; ++p)
    for (std::size_t q = 0; q < order; ++q) {
      const std::size_t x = p / n, a = p % n, y = q / n, b = q % n;
      // (s^x r^a)(s^y r^b) = s^{x+y} r^{(-1)^y a + b}
      const std::size_t rot = (y == 0) ? (a + b) % n : (n - a + b) % n;
      rows[p][q] = static_cast<Elem>(((x + y) % 2) * n + rot);
    }
  const auto d = "dihedral(" + std::to_string(n) + ")";
  return GroupTable::from_table(d, rows, d);
}

Group quaternion8()
{
  // Unit quaternions as (sign, basis) with basis 0=1, 1=i, 2=j, 3=k.
  static const int basis_mul[4][4][2] = {
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  auto id_of = [](int sign, int basis) { return static_cast<Elem>(2 * basis + (sign < 0 ? 1 : 0)); };
  std::vector<std::vector<Elem>> rows(8, std::vector<Elem>(8));
  for (int p = 0; p < 8; ++p)
    for (int q = 0; q < 8; ++q) {
      const int sp = (p % 2) ? -1 : 1, bp = p / 2, sq = (q % 2) ? -1 : 1, bq = q / 2;
      const auto& m = basis_mul[bp][bq];
      rows[p][q] = id_of(sp * sq * m[0], m[1]);
    }
  return GroupTable::from_table("quaternion8", rows, "quaternion8");
}

Group symmetric(std::size_t n)
{
  require(n >= 1 && n <= 5, Errc::InvalidArgument, "symmetric(n) supports 1 <= n <= 5");
  const auto d = "symmetric(" + std::to_string(n) + ")";
  std::vector<Permutation> gens;
  if (n >= 2) {
    Permutation swap01(n), cycle(n);
    std::iota(swap01.begin(), swap01.end(), 0);
    std::swap(swap01[0], swap01[1]);
    for (std::size_t i = 0; i < n; ++i)
      cycle[i] = static_cast<std::uint32_t>((i + 1) % n);
    gens = {swap01, cycle};
  }
  return from_permutations(d, gens, n, d);
}

Group alternating(std::size_t n)
{
  require(n >= 1 && n <= 6, Errc::InvalidArgument, "alternating(n) supports 1 <= n <= 6");
  const auto d = "alternating(" + std::to_string(n) + ")";
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    Permutation c(n);
    std::iota(c.begin(), c.end(), 0);
    c[i] = static_cast<std::uint32_t>(i + 1);
    c[i + 1] = static_cast<std::uint32_t>(i + 2);
    c[i + 2] = static_cast<std::uint32_t>(i);
    gens.push_back(c);
  }
  return from_permutations(d, gens, n, d);
}

Group direct_product(const Group& g, const Group& h)
{
  const std::size_t m = g->order(), k = h->order();
  const std::size_t n = m * k;
  require(n <= GroupLimits{}.order_cap, Errc::CapExceeded, "direct product too large");
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const auto a = g->mul(static_cast<Elem>(p / k), static_cast<Elem>(q / k));
      const auto b = h->mul(static_cast<Elem>(p % k), static_cast<Elem>(q % k));
      rows[p][q] = static_cast<Elem>(a * k + b);
    }
  std::string d;
  if (!g->descriptor().empty() && !h->descriptor().empty())
    d = "product(" + g->descriptor() + "," + h->descriptor() + ")";
  return GroupTable::from_table(g->name() + "x" + h->name(), rows, d);
}

Group from_permutations(std::string name, const std::vector<Permutation>& generators,
                        std::size_t degree, std::string descriptor, const GroupLimits& limits)
{
  for (const auto& p : generators) {
    require(p.size() == degree, Errc::InvalidArgument, "generator has wrong degree");
    std::vector<char> seen(degree);
    for (auto v : p) {
      require(v < degree && !seen[v], Errc::InvalidArgument, "generator is not a permutation");
      seen[v] = 1;
    }
  }
  auto compose = [](const Permutation& a, const Permutation& b) {
    Permutation c(a.size());
    for (std::size_t x = 0; x < a.size(); ++x)
      c[x] = b[a[x]];
    return c;
  };

  Permutation id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Permutation> elems{id};
  std::vector<std::size_t> parent{0}, via{0};
  std::map<Permutation, Elem> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t gi = 0; gi < generators.size(); ++gi) {
      auto next = compose(elems[head], generators[gi]);
      if (index.count(next))
        continue;
      require(elems.size() < limits.order_cap, Errc::ClosureTooLarge,
              "permutation closure exceeds cap " + std::to_string(limits.order_cap));
      index.emplace(next, static_cast<Elem>(elems.size()));
      elems.push_back(std::move(next));
      parent.push_back(head);
      via.push_back(gi);
    }
  }

  const std::size_t n = elems.size();
  // right[gi][a] = id(a * g_gi)
  std::vector<std::vector<Elem>> right(generators.size(), std::vector<Elem>(n));
  for (std::size_t gi = 0; gi < generators.size(); ++gi)
    for (std::size_t a = 0; a < n; ++a)
      right[gi][a] = index.at(compose(elems[a], generators[gi]));

  // Every b != 1 is parent(b) * g_via(b), so a*b = (a*parent(b)) * g_via(b).
  std::vector<std::vector<Elem>> rows(n, std::vector<Elem>(n));
  for (std::size_t a = 0; a < n; ++a) {
    rows[a][0] = static_cast<Elem>(a);
    for (std::size_t b = 1; b < n; ++b)
      rows[a][b] = right[via[b]][rows[a][parent[b]]];
  }
  return GroupTable::from_table(std::move(name), rows, std::move(descriptor), limits);
}

} // namespace xzsq
