#include "xzsq/abelian.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "xzsq/errors.hpp"

namespace xzsq {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

/// Reduces a to diagonal form by unimodular row and column operations, applying
/// the column operations to v as well.
void smith_normal_form(Matrix& a, Matrix& v)
{
  const std::size_t m = a.size();
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : a)
      std::swap(row[i], row[j]);
    for (auto& row : v)
      std::swap(row[i], row[j]);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (auto& row : a)
      row[dst] -= q * row[src];
    for (auto& row : v)
      row[dst] -= q * row[src];
  };
  for (std::size_t t = 0; t < m; ++t) {
    for (;;) {
      std::size_t bi = m, bj = m;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (a[i][j] != 0 && (bi == m || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == m)
        return;
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        const auto q = floor_div(a[i][t], a[t][t]);
        for (std::size_t j = t; j < m; ++j)
          a[i][j] -= q * a[t][j];
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        add_col(j, t, floor_div(a[t][j], a[t][t]));
        clean = clean && a[t][j] == 0;
      }
      if (!clean)
        continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < m && divisible; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < m; ++k)
              a[t][k] += a[i][k];
            divisible = false;
            break;
          }
      if (divisible)
        break;
    }
    if (a[t][t] < 0) {
      for (auto& row : a)
        row[t] = -row[t];
      for (auto& row : v)
        row[t] = -row[t];
    }
  }
}

} // namespace

AbelianDecomposition decompose_abelian(const Group& g)
{
  require(g->abelian(), Errc::NotAbelian, "character decomposition needs an abelian group");
  const auto n = static_cast<Elem>(g->order());

  // Greedy generators: repeatedly take the smallest id of maximal order outside
  // the current subgroup. rel[i] is the order of g_i modulo <g_0, ..., g_{i-1}>.
  std::vector<Elem> gens;
  std::vector<std::int64_t> rel;
  std::vector<std::vector<std::int64_t>> coords(n); // greedy coordinates
  Subset h = Subset::singleton(g, 0);
  coords[0] = {};
  while (h.size() < n) {
    Elem best = 0;
    Elem best_order = 0;
    for (Elem x = 0; x < n; ++x)
      if (!h.contains(x) && g->element_order(x) > best_order) {
        best = x;
        best_order = g->element_order(x);
      }
    std::int64_t k = 1;
    Elem p = best;
    while (!h.contains(p)) {
      p = g->mul(p, best);
      ++k;
    }
    // Extend coordinates: every element of the new subgroup is c * g_new + h0 uniquely.
    std::vector<std::vector<std::int64_t>> next(n);
    const auto old_elems = h.elements();
    Elem step = 0;
    for (std::int64_t c = 0; c < k; ++c) {
      for (Elem e : old_elems) {
        auto co = coords[e];
        co.resize(gens.size(), 0);
        co.push_back(c);
        next[g->mul(step, e)] = std::move(co);
      }
      step = g->mul(step, best);
    }
    gens.push_back(best);
    rel.push_back(k);
    coords = std::move(next);
    Subset grown(g);
    for (Elem x = 0; x < n; ++x)
      if (!coords[x].empty() || x == 0)
        grown.insert(x);
    h = std::move(grown);
  }

  const std::size_t m = gens.size();
  AbelianDecomposition dec;
  dec.coords.assign(n, {});
  if (m == 0)
    return dec;

  // Relation rows: rel_i e_i - coords(rel_i g_i).
  Matrix rel_matrix(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    Elem p = 0;
    for (std::int64_t c = 0; c < rel[i]; ++c)
      p = g->mul(p, gens[i]);
    auto co = coords[p];
    co.resize(m, 0);
    for (std::size_t j = 0; j < m; ++j)
      rel_matrix[i][j] = -co[j];
    rel_matrix[i][i] += rel[i];
  }
  Matrix v(m, std::vector<std::int64_t>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    v[i][i] = 1;
  smith_normal_form(rel_matrix, v);

  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < m; ++i)
    if (rel_matrix[i][i] > 1) {
      keep.push_back(i);
      dec.moduli.push_back(rel_matrix[i][i]);
    }
  for (Elem x = 0; x < n; ++x) {
    auto a = coords[x];
    a.resize(m, 0);
    for (std::size_t idx = 0; idx < keep.size(); ++idx) {
      const std::size_t col = keep[idx];
      std::int64_t b = 0;
      for (std::size_t r = 0; r < m; ++r)
        b += a[r] * v[r][col];
      const auto d = dec.moduli[idx];
      dec.coords[x].push_back(((b % d) + d) % d);
    }
  }
  return dec;
}

double character_distance(const AbelianDecomposition& dec, const std::vector<std::int64_t>& t, Elem x)
{
  require(t.size() == dec.moduli.size(), Errc::InvalidArgument,
          "frequency tuple has " + std::to_string(t.size()) + " entries, expected " +
              std::to_string(dec.moduli.size()));
  std::int64_t l = 1;
  for (auto d : dec.moduli)
    l = std::lcm(l, d);
  std::int64_t theta = 0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto d = dec.moduli[k];
    const auto tk = ((t[k] % d) + d) % d;
    theta = (theta + (tk * dec.coords[x][k] % d) * (l / d)) % l;
  }
  const double frac = static_cast<double>(std::min(theta, l - theta)) / static_cast<double>(l);
  return 2.0 * std::sin(M_PI * frac);
}

namespace {

constexpr double kCharTolerance = 1e-12;

Subset bohr_with(const BohrSpec& spec, const AbelianDecomposition& dec, double width)
{
  Subset s(spec.group);
  const auto n = static_cast<Elem>(spec.group->order());
  for (Elem x = 0; x < n; ++x) {
    bool in = true;
    for (const auto& t : spec.frequencies)
      if (character_distance(dec, t, x) > width + kCharTolerance) {
        in = false;
        break;
      }
    if (in)
      s.insert(x);
  }
  return s;
}

bool ratio_ok(std::size_t big, std::size_t small, double epsilon)
{
  return static_cast<double>(big) <= (1.0 + epsilon) * static_cast<double>(small) * (1.0 + 1e-12);
}

} // namespace

Subset bohr_set(const BohrSpec& spec)
{
  require(spec.group && spec.group->abelian(), Errc::NotAbelian, "Bohr sets need an abelian group");
  require(spec.width > 0 && spec.width <= 2, Errc::InvalidArgument, "Bohr width must lie in (0,2]");
  return bohr_with(spec, decompose_abelian(spec.group), spec.width);
}

BohrSystemResult bohr_system(const BohrSpec& spec, double epsilon)
{
  require(spec.group && spec.group->abelian(), Errc::NotAbelian, "Bohr systems need an abelian group");
  require(spec.width > 0 && spec.width <= 2, Errc::InvalidArgument, "Bohr width must lie in (0,2]");
  require(epsilon > 0 && epsilon <= 1, Errc::InvalidArgument, "epsilon must lie in (0,1]");
  const auto dec = decompose_abelian(spec.group);
  const Group& g = spec.group;
  const Subset base = bohr_with(spec, dec, spec.width);
  const std::size_t l_cap = 2 * g->order() + 2;

  for (std::size_t l = 1; l <= l_cap; ++l) {
    const double dl = static_cast<double>(l);
    const Subset b1 = bohr_with(spec, dec, spec.width / dl);
    const Subset tail = bohr_with(spec, dec, spec.width / (2.0 * dl));
    const Subset tail2 = product_set(tail, tail);
    // dilates[j] = M_j
    std::vector<Subset> dilates{base};
    for (std::size_t j = 0; j < l; ++j) {
      dilates.push_back(product_set(b1, dilates[j]));
      const Subset& mj = dilates[j];
      const Subset& plus = dilates[j + 1];
      if (!ratio_ok(plus.size(), mj.size(), epsilon))
        continue;

      BohrSystemResult res;
      res.l = l;
      res.j = j;
      bool found = false;
      Subset minus;
      for (std::size_t jj = j; jj-- > 0;) {
        const Subset& cand = dilates[jj];
        if (!ratio_ok(mj.size(), cand.size(), epsilon))
          break;
        if (product_set(tail2, cand).is_subset_of(mj)) {
          minus = cand;
          found = true;
          res.minus_from_dilate = true;
          break;
        }
      }
      if (!found) {
        // {b : b + t + t' in M_j for all t, t' in tail}
        minus = Subset(g);
        const auto t2 = tail2.elements();
        mj.for_each([&](Elem b) {
          for (Elem t : t2)
            if (!mj.contains(g->mul(b, t)))
              return;
          minus.insert(b);
        });
        found = ratio_ok(mj.size(), minus.size(), epsilon) && !minus.empty();
      }
      if (!found)
        continue;
      res.system.group = g;
      res.system.epsilon = epsilon;
      res.system.steps.push_back({plus, mj, minus});
      res.system.tail = tail;
      if (verify_system(res.system).ok)
        return res;
    }
  }
  fail(Errc::PigeonholeExhausted, "no dilation parameter up to " + std::to_string(l_cap) + " closes the system");
}

} // namespace xzsq
