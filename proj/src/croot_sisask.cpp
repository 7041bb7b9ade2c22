#include "xzsq/croot_sisask.hpp"

#include <algorithm>
#include <cmath>

#include "xzsq/errors.hpp"
#include "xzsq/rng.hpp"

namespace xzsq {

namespace {

constexpr double kDefectRounding = 1e-12;

FunctionVec shifted_right(const FunctionVec& f, Elem x)
{
  // rho_{x^-1}(f)(y) = f(y x^-1)
  return act_right(f.group->inv(x), f);
}

double lp_diff(const FunctionVec& a, const FunctionVec& b, const MeasureVec& mu, double p)
{
  return lp_norm(a - b, mu, p);
}

/// (1/k) sum_i rho_{z_i^-1}(f)
FunctionVec sampled_approximant(const FunctionVec& f, const std::vector<Elem>& z)
{
  FunctionVec out(f.group);
  for (Elem zi : z)
    out += shifted_right(f, zi);
  out *= 1.0 / static_cast<double>(z.size());
  return out;
}

/// Grows S^m while it stays inside the target; false as soon as it leaves.
bool power_within(const Subset& s, std::uint64_t k, const Subset& target)
{
  Subset cur = Subset::singleton(s.group(), GroupTable::identity());
  for (std::uint64_t i = 0; i < k; ++i) {
    Subset next = product_set(cur, s);
    if (!next.is_subset_of(target))
      return false;
    if (next == cur)
      break;
    cur = std::move(next);
  }
  return true;
}

Subset symmetrize_down(const Subset& s)
{
  return s & inverse_set(s);
}

Subset monte_carlo_periods(const FunctionVec& f, const Subset& x, const FunctionVec& conv,
                           const MeasureVec& mu, const SamplerConfig& cfg, double threshold,
                           const std::vector<double>& defects)
{
  const auto& g = *f.group;
  const auto xs = x.elements();
  Rng rng(cfg.seed);
  Subset out = Subset::singleton(f.group, GroupTable::identity());
  std::vector<Elem> z(cfg.k);
  for (std::size_t s = 0; s < cfg.samples; ++s) {
    for (auto& zi : z)
      zi = xs[rng.below(xs.size())];
    if (lp_diff(sampled_approximant(f, z), conv, mu, cfg.p) > threshold / 2)
      continue;
    // t with z t in X^k and the shifted tuple also a good approximant.
    for (Elem t = 0; t < g.order(); ++t) {
      if (out.contains(t))
        continue;
      std::vector<Elem> zt(z.size());
      bool inside = true;
      for (std::size_t i = 0; i < z.size() && inside; ++i) {
        zt[i] = g.mul(z[i], t);
        inside = x.contains(zt[i]);
      }
      if (!inside)
        continue;
      if (lp_diff(sampled_approximant(f, zt), conv, mu, cfg.p) > threshold / 2)
        continue;
      if (defects[t] <= threshold + kDefectRounding) {
        out.insert(t);
        out.insert(g.inv(t));
      }
    }
  }
  return out;
}

} // namespace

std::vector<double> right_period_defects(const FunctionVec& f, const Subset& x, double p)
{
  check_same_group(x, Subset(f.group));
  const auto conv = convolve(f, uniform_measure(x));
  const auto mu = uniform_measure(Subset::full(f.group));
  const auto n = static_cast<Elem>(f.group->order());
  std::vector<double> d(n);
  for (Elem t = 0; t < n; ++t)
    d[t] = lp_diff(shifted_right(conv, t), conv, mu, p);
  // The two values agree exactly in theory; take the max so the period set is symmetric.
  std::vector<double> sym(n);
  for (Elem t = 0; t < n; ++t)
    sym[t] = std::max(d[t], d[f.group->inv(t)]);
  return sym;
}

Subset almost_periods(const FunctionVec& f, const Subset& x, const SamplerConfig& cfg)
{
  require(!x.empty(), Errc::EmptySet, "almost periods need a non-empty set");
  require(cfg.eta > 0 && cfg.eta <= 1, Errc::InvalidArgument, "eta must lie in (0,1]");
  require(cfg.p >= 1, Errc::BadExponent, "p must be at least 1");
  require(cfg.k >= 1, Errc::InvalidArgument, "tuple length must be positive");
  const auto mu = uniform_measure(Subset::full(f.group));
  const double norm = lp_norm(f, mu, cfg.p);
  require(norm > 0, Errc::ZeroFunction, "almost periods of the zero function");
  const double threshold = cfg.validation_threshold.value_or(cfg.eta * norm);
  const auto defects = right_period_defects(f, x, cfg.p);

  if (cfg.mode == SamplerMode::MonteCarlo) {
    const auto conv = convolve(f, uniform_measure(x));
    return monte_carlo_periods(f, x, conv, mu, cfg, threshold, defects);
  }
  Subset t(f.group);
  for (Elem e = 0; e < defects.size(); ++e)
    if (defects[e] <= threshold + kDefectRounding)
      t.insert(e);
  return t;
}

NeighbourhoodResult bogolioubov_neighbourhood(const Subset& x, std::uint64_t k, const RunConfig& cfg)
{
  require(k >= 1, Errc::InvalidArgument, "k must be positive");
  require(!x.empty() && is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood,
          "bogolioubov_neighbourhood needs a symmetric neighbourhood of the identity");
  const Group& grp = x.group();
  const auto& g = *grp;
  const double delta = x.density();
  const double p = cfg.c_p * std::log(2.0 / delta) + 2.0;
  double eta = std::min(1.0, cfg.c_eta / static_cast<double>(k));

  const Subset x2 = product_set(x, x);
  const Subset x4 = product_set(x2, x2);
  const FunctionVec f = indicator(x2);
  const auto conv = convolve(f, uniform_measure(x));
  const auto mu = uniform_measure(Subset::full(grp));
  const double norm = lp_norm(f, mu, p);
  const auto defects = right_period_defects(f, x, p);

  // corr(t) = <rho_{t^-1}(1_{X^2} * mu_X), 1_X>_{L_2(mu_G)}
  std::vector<double> corr(g.order());
  for (Elem t = 0; t < g.order(); ++t) {
    double s = 0;
    const Elem ti = g.inv(t);
    x.for_each([&](Elem y) { s += conv[g.mul(y, ti)]; });
    corr[t] = s / static_cast<double>(g.order());
  }
  const double half = delta / 2.0;

  NeighbourhoodResult res;
  res.log = {{"k", k}, {"p", p}, {"delta", delta}, {"mode", to_string(cfg.mode)}};
  std::size_t samples = cfg.samples;
  for (std::size_t attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
    Subset t(grp);
    if (cfg.mode == SamplerMode::MonteCarlo) {
      SamplerConfig sc = cfg.sampler(eta, p, attempt);
      sc.samples = samples;
      sc.validation_threshold = eta * norm;
      t = monte_carlo_periods(f, x, conv, mu, sc, eta * norm, defects);
    } else {
      for (Elem e = 0; e < g.order(); ++e)
        if (defects[e] <= eta * norm + kDefectRounding)
          t.insert(e);
    }
    Subset s(grp);
    t.for_each([&](Elem e) {
      if (corr[e] > half && corr[g.inv(e)] > half)
        s.insert(e);
    });
    s = symmetrize_down(s);
    s.insert(GroupTable::identity());
    if (power_within(s, k, x4)) {
      res.S = std::move(s);
      res.density = res.S.density();
      res.certified = true;
      res.log["eta"] = eta;
      res.log["retries"] = attempt;
      res.log["density"] = res.density;
      res.log["periods"] = t.size();
      return res;
    }
    eta /= 2.0;
    samples *= 2;
  }
  fail(Errc::RetriesExhausted, "S^" + std::to_string(k) + " inside X^4 not certified after " +
                                   std::to_string(cfg.retry_cap) + " retries");
}

SystemResult build_system(const Subset& x, std::size_t r, double epsilon, const RunConfig& cfg)
{
  require(epsilon > 0 && epsilon <= 1, Errc::InvalidArgument, "epsilon must lie in (0,1]");
  require(!x.empty() && is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood,
          "build_system needs a symmetric neighbourhood of the identity");
  SystemResult res;
  res.log = nlohmann::json::object();
  res.log["epsilon"] = epsilon;
  res.log["r"] = r;

  auto s0 = bogolioubov_neighbourhood(x, 9, cfg);
  res.log["S0"] = s0.log;
  Subset s_i = s0.S;
  MultiplicativeSystem sys;
  sys.group = x.group();
  sys.epsilon = epsilon;
  nlohmann::json levels = nlohmann::json::array();

  for (std::size_t i = 0; i <= r; ++i) {
    const double delta_i = s_i.density();
    const double steps = std::ceil(std::log(1.0 / delta_i) / std::log1p(epsilon));
    const auto l_i = static_cast<std::uint64_t>(18.0 * (steps + 2.0));
    auto next = bogolioubov_neighbourhood(s_i, l_i, cfg);
    const Subset& s_next = next.S;
    const Subset p18 = power_set_k(s_next, 18);
    const Subset p9 = power_set_k(s_next, 9);

    const std::uint64_t j_cap = l_i / 18;
    Subset m = product_set(p18, s_i, p18);
    std::uint64_t chosen = 0;
    for (std::uint64_t j = 1; j < j_cap; ++j) {
      Subset grown = product_set(p18, m, p18);
      if (static_cast<double>(grown.size()) <= (1.0 + epsilon) * static_cast<double>(m.size()) * (1.0 + 1e-12)) {
        chosen = j;
        break;
      }
      m = std::move(grown);
    }
    require(chosen != 0, Errc::PigeonholeExhausted,
            "no j below " + std::to_string(j_cap) + " satisfies the growth bound at level " + std::to_string(i));
    Level lv;
    lv.minus = m;
    lv.mid = product_set(p9, lv.minus, p9);
    lv.plus = product_set(p9, lv.mid, p9);
    levels.push_back({{"l", l_i},
                      {"j", chosen},
                      {"delta", delta_i},
                      {"S_next", next.log},
                      {"sizes", {lv.plus.size(), lv.mid.size(), lv.minus.size()}}});
    sys.steps.push_back(std::move(lv));
    s_i = s_next;
  }
  sys.tail = power_set_k(s_i, 4);
  res.log["levels"] = levels;
  res.log["S_density"] = s_i.density();

  const Subset x4 = power_set_k(x, 4);
  require(sys.steps[0].plus.is_subset_of(x4), Errc::CertificationFailed, "B_{0+} is not inside X^4");
  require_valid(sys, "build_system");
  res.system = std::move(sys);
  res.S = std::move(s_i);
  res.certified = true;
  return res;
}

NeighbourhoodResult conjugate_intersection(const Subset& s, Elem g, Elem h, const RunConfig& cfg)
{
  auto rr = bogolioubov_neighbourhood(s, 8, cfg);
  const Subset r2 = product_set(rr.S, rr.S);
  Subset x = conjugate_set(g, r2) & conjugate_set(h, r2);
  require(is_symmetric_neighbourhood(x), Errc::CertificationFailed,
          "conjugate intersection is not a symmetric neighbourhood");
  const Subset s4 = power_set_k(s, 4);
  const Subset target = conjugate_set(g, s4) & conjugate_set(h, s4);
  require(power_set_k(x, 4).is_subset_of(target), Errc::CertificationFailed,
          "X^4 is not inside g S^4 g^-1 and h S^4 h^-1");
  NeighbourhoodResult res;
  res.S = std::move(x);
  res.density = res.S.density();
  res.certified = true;
  res.log = {{"R", rr.log}, {"g", g}, {"h", h}, {"density", res.density}};
  return res;
}

double relative_right_defect(const MultiplicativeSystem& sys, const FunctionVec& conv, Elem t, double p)
{
  return lp_diff(shifted_right(conv, t), conv, uniform_measure(sys.B(1)), p);
}

double relative_left_defect(const MultiplicativeSystem& sys, const FunctionVec& conv, Elem t, double p)
{
  return lp_diff(act_left(t, conv), conv, uniform_measure(sys.B(1)), p);
}

namespace {

enum class Side { Right, Left };

RelativePeriodsResult relative_periods(const MultiplicativeSystem& sys, const Subset& x, const FunctionVec& f,
                                       const Subset& a, const SamplerConfig& cfg, double slack, Side side)
{
  require(sys.steps.size() >= 2, Errc::PreconditionViolated, "relative periods need a 2-step system");
  require(!a.empty(), Errc::EmptySet, "relative periods need a non-empty A");
  require(is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood,
          "X must be a symmetric neighbourhood of the identity");
  require(a.is_subset_of(sys.Bminus(0)), Errc::PreconditionViolated, "A is not inside B_{0-}");
  const Subset x2 = product_set(x, x);
  const Subset x4 = product_set(x2, x2);
  const Subset x8 = product_set(x4, x4);
  require(x8.is_subset_of(sys.B(2)), Errc::PreconditionViolated, "X^8 is not inside B_2");
  const auto& g = *sys.group;

  const FunctionVec conv = side == Side::Right ? convolve(f, uniform_measure(a)) : convolve(uniform_measure(a), f);
  RelativePeriodsResult res;
  res.sup_norm = lp_norm(f, uniform_measure(sys.Bplus(0)), kInfinity);
  res.threshold = cfg.validation_threshold.value_or(cfg.eta * slack * res.sup_norm);
  res.defects.assign(g.order(), -1.0);
  Subset c(sys.group);
  x8.for_each([&](Elem t) {
    const double d = side == Side::Right ? relative_right_defect(sys, conv, t, cfg.p)
                                         : relative_left_defect(sys, conv, t, cfg.p);
    res.defects[t] = d;
    if (d <= res.threshold + kDefectRounding)
      c.insert(t);
  });

  Subset t = x2 & c & inverse_set(c);
  t.insert(GroupTable::identity());
  std::size_t pruned = 0;
  for (;;) {
    const Subset t2 = product_set(t, t);
    if (product_set(t2, t2).is_subset_of(c))
      break;
    Elem worst = 0;
    double worst_d = -1;
    t.for_each([&](Elem e) {
      if (e == GroupTable::identity())
        return;
      const double d = std::max(res.defects[e], res.defects[g.inv(e)]);
      if (d > worst_d) {
        worst_d = d;
        worst = e;
      }
    });
    require(worst_d >= 0, Errc::CertificationFailed, "relative period pruning reached the identity");
    t.erase(worst);
    t.erase(g.inv(worst));
    ++pruned;
  }

  if (cfg.mode == SamplerMode::MonteCarlo) {
    // Tuples z in A^k whose approximant is good on B_{1+}; keep t with z t also good.
    const auto as = a.elements();
    const auto mu1p = uniform_measure(sys.Bplus(1));
    Rng rng(cfg.seed);
    Subset found = Subset::singleton(sys.group, GroupTable::identity());
    std::vector<Elem> z(cfg.k);
    auto approx = [&](const std::vector<Elem>& zz) {
      FunctionVec out(f.group);
      for (Elem zi : zz)
        out += side == Side::Right ? act_right(g.inv(zi), f) : act_left(zi, f);
      out *= 1.0 / static_cast<double>(zz.size());
      return out;
    };
    const double good = cfg.eta * res.sup_norm / 8.0;
    for (std::size_t s = 0; s < cfg.samples; ++s) {
      for (auto& zi : z)
        zi = as[rng.below(as.size())];
      if (lp_diff(approx(z), conv, mu1p, cfg.p) > good)
        continue;
      x2.for_each([&](Elem tt) {
        std::vector<Elem> zt(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) {
          zt[i] = side == Side::Right ? g.mul(z[i], tt) : g.mul(tt, z[i]);
          if (!a.contains(zt[i]))
            return;
        }
        if (lp_diff(approx(zt), conv, mu1p, cfg.p) <= good)
          found.insert(tt);
      });
    }
    t = symmetrize_down(found) & t;
    t.insert(GroupTable::identity());
  }

  res.T = std::move(t);
  res.log = {{"eta", cfg.eta},
             {"p", cfg.p},
             {"slack", slack},
             {"threshold", res.threshold},
             {"candidates", c.size()},
             {"pruned_pairs", pruned},
             {"size", res.T.size()},
             {"mode", to_string(cfg.mode)},
             {"side", side == Side::Right ? "right" : "left"}};
  return res;
}

} // namespace

RelativePeriodsResult relative_almost_periods(const MultiplicativeSystem& sys, const Subset& x,
                                              const FunctionVec& f, const Subset& a,
                                              const SamplerConfig& cfg, double slack)
{
  return relative_periods(sys, x, f, a, cfg, slack, Side::Right);
}

RelativePeriodsResult left_relative_almost_periods(const MultiplicativeSystem& sys, const Subset& x,
                                                   const FunctionVec& f, const Subset& a,
                                                   const SamplerConfig& cfg, double slack)
{
  return relative_periods(sys, x, f, a, cfg, slack, Side::Left);
}

} // namespace xzsq
