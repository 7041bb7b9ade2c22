#include "xzsq/counting.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "xzsq/errors.hpp"
#include "xzsq/rng.hpp"

namespace xzsq {

const char* to_string(EquationKind e) noexcept
{
  return e == EquationKind::Square ? "SQUARE" : "INVARIANT";
}

EquationKind parse_equation(const std::string& s)
{
  std::string u = s;
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  if (u == "SQUARE" || u == "XZ=Y^2")
    return EquationKind::Square;
  if (u == "INVARIANT" || u == "Z=YX^-1Y")
    return EquationKind::Invariant;
  fail(Errc::ParseError, "unknown equation: " + s);
}

Elem solve_z(const GroupTable& g, EquationKind eq, Elem x, Elem y) noexcept
{
  if (eq == EquationKind::Square)
    return g.mul(g.inv(x), g.sq(y));
  return g.mul(g.mul(y, g.inv(x)), y);
}

Elem solve_x(const GroupTable& g, EquationKind eq, Elem y, Elem z) noexcept
{
  if (eq == EquationKind::Square)
    return g.mul(g.sq(y), g.inv(z));
  return g.mul(g.mul(y, g.inv(z)), y);
}

TripleCount count_triples(const Subset& a, EquationKind eq)
{
  TripleCount c;
  if (!a.valid())
    return c;
  const GroupTable& g = a.table();
  const auto el = a.elements();
  for (Elem x : el)
    for (Elem y : el)
      if (a.contains(solve_z(g, eq, x, y))) {
        ++c.total;
        if (x != y)
          ++c.nontrivial;
      }
  return c;
}

bool is_solution_free(const Subset& a, EquationKind eq)
{
  return count_triples(a, eq).nontrivial == 0;
}

namespace {

struct Search {
  const GroupTable& g;
  EquationKind eq;
  std::uint64_t budget;
  std::vector<Elem> cur;
  std::vector<char> in;
  std::vector<Elem> best;
  std::uint64_t nodes = 0;
  bool aborted = false;

  // Adding x to cur keeps it free of non-trivial solutions.
  bool compatible(Elem x) const
  {
    in_tmp(x, true);
    bool ok = true;
    auto member = [&](Elem e) { return in[e] != 0; };
    for (Elem y : cur) {
      // x in the first slot, y in the second; y in the first, x in the second.
      if (member(solve_z(g, eq, x, y)) || member(solve_z(g, eq, y, x))) {
        ok = false;
        break;
      }
      // x in the third slot; w == x is covered above.
      const Elem w = solve_x(g, eq, y, x);
      if (w != y && member(w)) {
        ok = false;
        break;
      }
    }
    in_tmp(x, false);
    return ok;
  }
  void in_tmp(Elem x, bool on) const { const_cast<std::vector<char>&>(in)[x] = on; }

  void run(Elem next)
  {
    if (aborted)
      return;
    if (++nodes > budget) {
      aborted = true;
      return;
    }
    if (cur.size() > best.size())
      best = cur;
    const std::size_t n = g.order();
    for (Elem x = next; x < n; ++x) {
      if (cur.size() + (n - x) <= best.size())
        return;
      if (!compatible(x))
        continue;
      cur.push_back(x);
      in[x] = 1;
      run(x + 1);
      in[x] = 0;
      cur.pop_back();
      if (aborted)
        return;
    }
  }
};

std::vector<Elem> greedy(const GroupTable& g, EquationKind eq, const std::vector<Elem>& order)
{
  Search s{g, eq, 0, {}, std::vector<char>(g.order(), 0), {}, 0, false};
  for (Elem x : order)
    if (s.compatible(x)) {
      s.cur.push_back(x);
      s.in[x] = 1;
    }
  return s.cur;
}

} // namespace

SearchReport max_solution_free(const Group& g, EquationKind eq, std::uint64_t budget, std::uint64_t seed)
{
  const auto t0 = std::chrono::steady_clock::now();
  const GroupTable& gt = *g;
  std::vector<Elem> ids(gt.order());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<Elem> best = greedy(gt, eq, ids);

  Search s{gt, eq, budget, {}, std::vector<char>(gt.order(), 0), best, 0, false};
  s.run(0);
  SearchReport rep;
  rep.nodes_explored = std::min(s.nodes, budget);
  rep.exhaustive = !s.aborted;
  best = s.best;
  if (s.aborted) {
    SplitMix64 rng(seed);
    for (int round = 0; round < 64; ++round) {
      std::vector<Elem> order = ids;
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
      auto cand = greedy(gt, eq, order);
      if (cand.size() > best.size())
        best = cand;
    }
  }
  std::sort(best.begin(), best.end());
  rep.best_set = Subset::from_elements(g, best);
  rep.best_size = best.size();
  rep.elapsed = std::chrono::steady_clock::now() - t0;
  return rep;
}

CosetTranslate best_coset_translate(const Subset& a, const Subset& h)
{
  check_same_group(a, h);
  require(is_subgroup(h), Errc::NotSubgroup, "best_coset_translate: H is not a subgroup");
  const GroupTable& g = a.table();
  CosetTranslate best;
  bool first = true;
  const auto he = h.elements();
  for (Elem t = 0; t < g.order(); ++t) {
    std::size_t c = 0;
    for (Elem x : he)
      c += a.contains(g.mul(t, x));
    if (first || c > best.size) {
      best = {t, c};
      first = false;
    }
  }
  const std::size_t num = a.size() * h.size();
  const std::size_t bound = (num + g.order() - 1) / g.order();
  require(best.size >= bound, Errc::BoundViolated, "best_coset_translate: averaging bound fails");
  return best;
}

Subset largest_abelian_subgroup(const Group& g, std::size_t cap)
{
  const GroupTable& gt = *g;
  require(gt.order() <= cap, Errc::CapExceeded,
          "largest_abelian_subgroup: order " + std::to_string(gt.order()) + " above cap " + std::to_string(cap));
  if (gt.abelian())
    return Subset::full(g);
  auto centralizer = [&](const Subset& h) {
    Subset c(g);
    const auto he = h.elements();
    for (Elem x = 0; x < gt.order(); ++x) {
      bool ok = true;
      for (Elem y : he)
        if (gt.mul(x, y) != gt.mul(y, x)) {
          ok = false;
          break;
        }
      if (ok)
        c.insert(x);
    }
    return c;
  };
  Subset best = Subset::singleton(g, 0);
  std::set<std::string> seen;
  std::vector<Subset> stack{best};
  seen.insert(best.to_hex());
  while (!stack.empty()) {
    Subset h = std::move(stack.back());
    stack.pop_back();
    if (h.size() > best.size())
      best = h;
    const Subset c = centralizer(h);
    if (c.size() <= best.size())
      continue;
    (c - h).for_each([&](Elem x) {
      Subset ext = h;
      ext.insert(x);
      ext = generated_subgroup(ext);
      if (seen.insert(ext.to_hex()).second)
        stack.push_back(std::move(ext));
    });
  }
  return best;
}

} // namespace xzsq
