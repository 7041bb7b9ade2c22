#include "xzsq/increment.hpp"

#include <algorithm>
#include <cmath>

#include "xzsq/croot_sisask.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/measures.hpp"

namespace xzsq {

namespace {

constexpr const char* kKindNames[] = {
    "L1_BOUND_HOLDS", "RIGHT_INCREMENT", "LEFT_INCREMENT", "ANCHOR_FOUND",
    "COUNT_LOWER_BOUND", "LEFT_SYSTEM_INCREMENT", "RIGHT_SYSTEM_INCREMENT",
};

// Average of 1_A over z B^-1 (right) or B^-1 z (left), i.e. mu_{zB}(A) or mu_{Bz}(A) for symmetric B.
FunctionVec density_right(const Subset& a, const Subset& b)
{
  return convolve(indicator(a), uniform_measure(b));
}

FunctionVec density_left(const Subset& a, const Subset& b)
{
  return convolve(uniform_measure(b), indicator(a));
}

struct Argmax {
  Elem z = 0;
  double value = -1.0;
};

Argmax argmax_on(const FunctionVec& f, const Subset& z)
{
  Argmax best;
  z.for_each([&](Elem x) {
    if (f[x] > best.value) {
      best.value = f[x];
      best.z = x;
    }
  });
  return best;
}

IncrementOutcome l2_increment(const MultiplicativeSystem& sys, const Subset& a, Elem t, double eta,
                              const RunConfig& cfg, bool right)
{
  require(sys.step_count() >= 1, Errc::PreconditionViolated, "l2 increment needs a system");
  check_same_group(a, sys.B(0));
  require(!a.empty(), Errc::EmptySet, "l2 increment: A is empty");
  require(eta >= 0.0 && eta <= 1.0, Errc::InvalidArgument, "l2 increment: eta must lie in [0, 1]");
  const Subset z = right ? translate(t, sys.B(0), 0) : translate(0, sys.B(0), t);
  require(a.is_subset_of(z), Errc::InclusionViolated,
          right ? "l2 increment: A not inside g B_0" : "l2 increment: A not inside B_0 h^-1");
  const Subset& b1 = sys.B(1);
  const double n = static_cast<double>(z.size());
  const double alpha = a.size() / n;
  const FunctionVec conv = right ? density_right(a, b1) : density_left(a, b1);

  double h = 0.0, ip = 0.0, lhs = 0.0;
  z.for_each([&](Elem x) {
    const double d = conv[x] - alpha;
    h += d * d;
    ip += conv[x];
    lhs += conv[x] * conv[x];
  });
  h /= n;
  ip /= n;
  lhs /= n;
  const double rhs = h + 2.0 * alpha * ip - alpha * alpha;
  require(h >= eta * alpha * alpha - cfg.tolerance, Errc::HypothesisNotMet,
          "l2 increment: ||conv - alpha 1_Z||^2 = " + std::to_string(h) + " below eta alpha^2");
  require(std::abs(lhs - rhs) <= cfg.tolerance, Errc::CertificationFailed,
          "l2 increment: norm expansion mismatch");

  const Argmax best = argmax_on(conv, z);
  const double eps = tight_epsilon(sys);
  const double bound = alpha * (1.0 + eta) - cfg.c_slack * eps;
  require(best.value >= bound - cfg.tolerance, Errc::SlackViolated,
          "l2 increment: maximum " + std::to_string(best.value) + " below " + std::to_string(bound));

  IncrementOutcome out;
  out.kind = right ? OutcomeKind::RightIncrement : OutcomeKind::LeftIncrement;
  out.z = best.z;
  out.measured = {{"alpha", alpha},   {"hypothesis", h},  {"ip", ip},          {"l2_lhs", lhs},
                  {"l2_rhs", rhs},    {"value", best.value}, {"lower_bound", bound}};
  out.context.origin = right ? "l2_right" : "l2_left";
  out.context.sets = {{"A", a}, {"Z", z}, {"B1", b1}};
  out.context.elems = {{"t", t}};
  out.context.params = {{"eta", eta}, {"epsilon", eps}, {"c_slack", cfg.c_slack}};
  return out;
}

IncrementOutcome equalise(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp, const Subset& a,
                          Elem g, Elem h, double eta, const RunConfig& cfg, bool right)
{
  require(sys_b.step_count() >= 1 && sys_bp.step_count() >= 1, Errc::PreconditionViolated,
          "equalise needs two systems");
  check_same_group(a, sys_b.B(0));
  check_same_group(a, sys_bp.B(0));
  require(!a.empty(), Errc::EmptySet, "equalise: A is empty");
  const GroupTable& gt = *sys_b.group;
  const Subset z = translate(g, sys_b.B(0), gt.inv(h));
  require(a.is_subset_of(z), Errc::InclusionViolated, "equalise: A not inside g B_0 h^-1");
  const Elem c = right ? h : g;
  require(sys_bp.B(0).is_subset_of(conjugate_set(c, sys_b.B(1))), Errc::InclusionViolated,
          right ? "equalise: B'_0 not inside h B_1 h^-1" : "equalise: B'_0 not inside g B_1 g^-1");

  const double alpha = static_cast<double>(a.size()) / z.size();
  const FunctionVec c0 = right ? density_right(a, sys_bp.B(0)) : density_left(a, sys_bp.B(0));
  double l1 = 0.0;
  a.for_each([&](Elem x) { l1 += std::abs(c0[x] - alpha); });
  l1 /= static_cast<double>(a.size());

  IncrementOutcome out;
  out.context.origin = right ? "equalise_right" : "equalise_left";
  out.context.sets = {{"A", a}, {"B0", sys_b.B(0)}, {"B0p", sys_bp.B(0)}, {"B1p", sys_bp.B(1)}};
  out.context.elems = {{"g", g}, {"h", h}};
  out.context.params = {{"eta", eta}};
  out.measured = {{"alpha", alpha}, {"l1", l1}, {"l1_bound", eta * alpha}};
  if (l1 <= eta * alpha) {
    out.kind = OutcomeKind::L1BoundHolds;
    return out;
  }

  const FunctionVec c1 = right ? density_right(a, sys_bp.B(1)) : density_left(a, sys_bp.B(1));
  double hsum = 0.0;
  z.for_each([&](Elem x) {
    const double d = c1[x] - alpha;
    hsum += d * d;
  });
  const double hyp = hsum / z.size();
  const double eta_eff = std::min(1.0, hyp / (alpha * alpha));
  const double eps = tight_epsilon(sys_b);
  const double pred = std::max(0.0, eta / 2.0 - cfg.c_slack * eps / (alpha * alpha));
  out.measured["hypothesis"] = hyp;
  out.measured["eta_eff"] = eta_eff;
  out.measured["predicted_ratio"] = std::min(1.0, pred * pred - cfg.c_slack * eps / (alpha * alpha));

  MultiplicativeSystem conj;
  conj.group = sys_b.group;
  conj.epsilon = sys_b.epsilon;
  const Elem cinv = gt.inv(c);
  conj.steps.push_back({translate(c, sys_b.Bplus(0), cinv), translate(c, sys_b.B(0), cinv),
                        translate(c, sys_b.Bminus(0), cinv)});
  conj.tail = sys_bp.B(1);
  require_valid(conj, out.context.origin);

  IncrementOutcome inner = l2_increment(conj, a, gt.mul(g, gt.inv(h)), eta_eff, cfg, right);
  out.kind = inner.kind;
  out.z = inner.z;
  out.measured["value"] = inner.measured.at("value");
  out.sub.push_back(std::move(inner));
  return out;
}

} // namespace

const char* to_string(OutcomeKind k) noexcept
{
  return kKindNames[static_cast<int>(k)];
}

OutcomeKind parse_outcome_kind(const std::string& s)
{
  for (int i = 0; i < 7; ++i)
    if (s == kKindNames[i])
      return static_cast<OutcomeKind>(i);
  fail(Errc::ParseError, "unknown outcome kind: " + s);
}

bool IncrementOutcome::is_increment() const noexcept
{
  return kind == OutcomeKind::RightIncrement || kind == OutcomeKind::LeftIncrement ||
         kind == OutcomeKind::LeftSystemIncrement || kind == OutcomeKind::RightSystemIncrement;
}

IncrementOutcome l2_increment_right(const MultiplicativeSystem& sys, const Subset& a, Elem g, double eta,
                                    const RunConfig& cfg)
{
  return l2_increment(sys, a, g, eta, cfg, true);
}

IncrementOutcome l2_increment_left(const MultiplicativeSystem& sys, const Subset& a, Elem h, double eta,
                                   const RunConfig& cfg)
{
  return l2_increment(sys, a, sys.group->inv(h), eta, cfg, false);
}

IncrementOutcome equalise_right(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp,
                                const Subset& a, Elem g, Elem h, double eta, const RunConfig& cfg)
{
  return equalise(sys_b, sys_bp, a, g, h, eta, cfg, true);
}

IncrementOutcome equalise_left(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp,
                               const Subset& a, Elem g, Elem h, double eta, const RunConfig& cfg)
{
  return equalise(sys_b, sys_bp, a, g, h, eta, cfg, false);
}

AnchorResult select_square_anchor(const MultiplicativeSystem& sys_b, const Subset& s, const Subset& x, Elem g,
                                  Elem h)
{
  check_same_group(s, x);
  require(!s.empty(), Errc::EmptySet, "anchor: S is empty");
  require(is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood, "anchor: X not symmetric");
  const GroupTable& gt = s.table();
  const Subset z = translate(g, sys_b.B(0), gt.inv(h));
  require(s.is_subset_of(z), Errc::InclusionViolated, "anchor: S not inside g B_0 h^-1");
  require(has_distinct_squares(s), Errc::DistinctSquaresViolated, "anchor: squares of S not distinct");
  require(x.is_subset_of(conjugate_set(g, sys_b.B(1))) && x.is_subset_of(conjugate_set(h, sys_b.B(1))),
          Errc::InclusionViolated, "anchor: X not inside g B_1 g^-1 and h B_1 h^-1");

  const Subset x2 = product_set(x, x);
  const auto elems = s.elements();
  AnchorResult best;
  bool first = true;
  for (Elem sp : elems) {
    const Elem spi = gt.inv(sp);
    std::size_t hits = 0;
    for (Elem t : elems)
      if (x2.contains(gt.mul(spi, t)) && x2.contains(gt.mul(t, spi)))
        ++hits;
    if (first || hits > best.hits) {
      best.anchor = sp;
      best.hits = hits;
      first = false;
    }
  }
  const double xs = static_cast<double>(x.size());
  const double b0 = static_cast<double>(sys_b.B(0).size());
  const double onep = 1.0 + sys_b.epsilon;
  const double bound = xs * xs * static_cast<double>(s.size()) / (onep * onep * b0 * b0);
  best.hits_bound = static_cast<std::size_t>(std::ceil(bound - 1e-9));
  require(best.hits >= best.hits_bound, Errc::BoundViolated,
          "anchor: " + std::to_string(best.hits) + " hits below " + std::to_string(best.hits_bound));

  const Subset window = translate(best.anchor, power_set_k(x, 4), best.anchor);
  const Subset sq = square_image(s) & window;
  best.square_hits = sq.size();
  require(best.square_hits >= best.hits, Errc::BoundViolated, "anchor: squares inside s' X^4 s' below hits");
  return best;
}

IncrementOutcome u1_step(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp, const Subset& a,
                         const Subset& x, Elem g, Elem h, double eta, const RunConfig& cfg, bool forced)
{
  check_same_group(a, x);
  const GroupTable& gt = a.table();
  require(!a.empty(), Errc::EmptySet, "u1: A is empty");
  require(has_distinct_squares(a), Errc::DistinctSquaresViolated, "u1: squares of A not distinct");
  require(is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood, "u1: X not symmetric");
  require(x.is_subset_of(sys_bp.B(1)) && power_set_k(x, 4).is_subset_of(sys_bp.B(1)), Errc::InclusionViolated,
          "u1: X^4 not inside B'_1");

  IncrementOutcome out;
  out.context.origin = "u1";
  out.context.elems = {{"g", g}, {"h", h}};
  out.context.params = {{"eta", eta}, {"epsilon", sys_b.epsilon}, {"forced", forced ? 1.0 : 0.0}};

  IncrementOutcome er = equalise_right(sys_b, sys_bp, a, g, h, eta / 4.0, cfg);
  if (er.is_increment() && !forced) {
    out.kind = er.kind;
    out.z = er.z;
    out.measured = {{"value", er.measured.at("value")}};
    out.context.sets = {{"A", a}};
    out.sub.push_back(std::move(er));
    return out;
  }
  IncrementOutcome el = equalise_left(sys_b, sys_bp, a, g, h, eta / 4.0, cfg);
  if (el.is_increment() && !forced) {
    out.kind = el.kind;
    out.z = el.z;
    out.measured = {{"value", el.measured.at("value")}};
    out.context.sets = {{"A", a}};
    out.sub.push_back(std::move(er));
    out.sub.push_back(std::move(el));
    return out;
  }

  const Subset z = translate(g, sys_b.B(0), gt.inv(h));
  const double alpha = static_cast<double>(a.size()) / z.size();
  const FunctionVec cr = density_right(a, sys_bp.B(0));
  const FunctionVec cl = density_left(a, sys_bp.B(0));
  Subset s(a.group());
  a.for_each([&](Elem y) {
    if (std::abs(cr[y] - alpha) <= eta * alpha && std::abs(cl[y] - alpha) <= eta * alpha)
      s.insert(y);
  });
  const double frac = static_cast<double>(s.size()) / a.size();
  if (!forced)
    require(frac >= 0.5, Errc::SBelowHalf, "u1: mu_A(S) = " + std::to_string(frac) + " below 1/2");
  bool fallback = false;
  if (s.empty()) {
    s = a;
    fallback = true;
  }
  const AnchorResult anc = select_square_anchor(sys_b, s, x, g, h);
  const Elem an = anc.anchor;
  const Subset& b1p = sys_bp.B(1);
  const Subset sq_window = translate(an, b1p, an);
  const double sq_dens = static_cast<double>((square_image(a) & sq_window).size()) / b1p.size();
  const double floor_dens = alpha * (1.0 - eta);
  if (!forced) {
    require(cr[an] >= floor_dens - cfg.tolerance && cl[an] >= floor_dens - cfg.tolerance, Errc::BoundViolated,
            "u1: anchor densities below alpha(1 - eta)");
  }
  require(sq_dens * b1p.size() + 0.5 >= static_cast<double>(anc.hits), Errc::BoundViolated,
          "u1: square density below the anchor count");

  out.kind = OutcomeKind::AnchorFound;
  out.a = an;
  out.S = s;
  out.measured = {{"alpha", alpha},
                  {"s_fraction", frac},
                  {"hits", static_cast<double>(anc.hits)},
                  {"hits_bound", static_cast<double>(anc.hits_bound)},
                  {"right_density", cr[an]},
                  {"left_density", cl[an]},
                  {"density_floor", floor_dens},
                  {"squares_density", sq_dens},
                  {"squares_floor", static_cast<double>(anc.hits) / b1p.size()}};
  out.context.sets = {{"A", a}, {"X", x}, {"S", s}, {"B0", sys_b.B(0)}, {"B0p", sys_bp.B(0)}, {"B1p", b1p}};
  out.context.params["s_fallback"] = fallback ? 1.0 : 0.0;
  out.sub.push_back(std::move(er));
  out.sub.push_back(std::move(el));
  return out;
}

std::size_t count_product_triples(const Subset& u, const Subset& v, const Subset& w)
{
  check_same_group(u, v);
  check_same_group(u, w);
  const GroupTable& gt = u.table();
  const auto ve = v.elements();
  std::size_t n = 0;
  u.for_each([&](Elem r) {
    const Elem* row = gt.row(r);
    for (Elem t : ve)
      n += w.contains(row[t]);
  });
  return n;
}

IncrementOutcome u2_step(const MultiplicativeSystem& sys, const Subset& x, const Subset& u, const Subset& v,
                         const Subset& w, const RunConfig& cfg, bool forced)
{
  require(sys.step_count() >= 2, Errc::PreconditionViolated, "u2 needs a 2-step system");
  check_same_group(u, sys.B(0));
  check_same_group(v, u);
  check_same_group(w, u);
  check_same_group(x, u);
  require(!w.empty(), Errc::EmptySet, "u2: W is empty (no squares of A in the anchor window)");
  require(!u.empty() && !v.empty(), Errc::EmptySet, "u2: U or V is empty");
  require(u.size() == v.size(), Errc::PreconditionViolated, "u2: U and V must have equal density");
  require(u.is_subset_of(sys.Bminus(0)) && v.is_subset_of(sys.Bminus(0)), Errc::InclusionViolated,
          "u2: U, V not inside B_{0-}");
  require(w.is_subset_of(sys.Bminus(1)), Errc::InclusionViolated, "u2: W not inside B_{1-}");
  require(is_symmetric_neighbourhood(x), Errc::NotSymmetricNeighbourhood, "u2: X not symmetric");
  require(power_set_k(x, 4).is_subset_of(sys.B(2)), Errc::InclusionViolated, "u2: X^4 not inside B_2");

  const Subset& b0 = sys.B(0);
  const Subset& b1 = sys.B(1);
  const double au = static_cast<double>(u.size()) / b0.size();
  const double av = static_cast<double>(v.size()) / b0.size();
  const double om = static_cast<double>(w.size()) / b1.size();
  const double ip = inner_product(density_right(u, v), indicator(w), uniform_measure(b1));
  const std::size_t n = count_product_triples(u, v, w);
  const double thr = cfg.c_count * au * av * om;

  IncrementOutcome out;
  out.context.origin = "u2";
  out.context.sets = {{"U", u}, {"V", v}, {"W", w}, {"B0", b0}, {"B1", b1}};
  out.context.params = {{"c_count", cfg.c_count}, {"forced", forced ? 1.0 : 0.0}};
  out.measured = {{"alpha_u", au}, {"alpha_v", av}, {"omega", om}, {"ip", ip},
                  {"threshold", thr}, {"triples", static_cast<double>(n)}};
  out.U = u;
  out.V = v;
  out.W = w;

  if (ip >= thr * (1.0 - 1e-12) || forced) {
    out.kind = OutcomeKind::CountLowerBound;
    return out;
  }

  const double eps = sys.epsilon;
  const double eps_eff = tight_epsilon(sys);
  const NeighbourhoodResult tn = bogolioubov_neighbourhood(x, 8, cfg);
  const double eta = eps * au;
  const double p = 2.0 + std::log(1.0 / om);
  const double slack = 1.0 + cfg.c_rel * eps;
  const SamplerConfig sc = cfg.sampler(eta, p, 17);

  const RelativePeriodsResult rr = relative_almost_periods(sys, tn.S, indicator(u), v, sc, slack);
  const SystemResult br = build_system(rr.T, 0, eps, cfg);
  const Subset& br0 = br.system.B(0);
  FunctionVec f = density_right(v, br0) - av * indicator(b0);

  const RelativePeriodsResult lr = left_relative_almost_periods(sys, tn.S, f, u, sc, slack);
  const SystemResult bl = build_system(lr.T, 0, eps, cfg);
  const Subset& bl0 = bl.system.B(0);
  FunctionVec gf = density_left(u, bl0) - au * indicator(b0);

  const MeasureVec mb0 = uniform_measure(b0);
  const double fn = inner_product(f, f, mb0);
  const double gn = inner_product(gf, gf, mb0);
  const double thr_u = (1.0 - cfg.c_count) * au * au - cfg.c_slack * eps_eff;
  const double thr_v = (1.0 - cfg.c_count) * av * av - cfg.c_slack * eps_eff;
  out.measured["f_norm2"] = fn;
  out.measured["g_norm2"] = gn;
  out.measured["f_threshold"] = thr_v;
  out.measured["g_threshold"] = thr_u;
  out.context.sets["BR0"] = br0;
  out.context.sets["BL0"] = bl0;
  out.context.params["c_slack"] = cfg.c_slack;
  out.context.params["epsilon"] = eps_eff;
  out.log = {{"T", tn.S.to_hex()},
             {"relative_right", rr.log},
             {"right_system", br.log},
             {"relative_left", lr.log},
             {"left_system", bl.log}};

  if (gn >= thr_u) {
    const MultiplicativeSystem s1 = truncate(sys, 0, 0, bl0);
    IncrementOutcome inner = l2_increment_left(s1, u, 0, std::min(1.0, gn / (au * au)), cfg);
    out.kind = OutcomeKind::LeftSystemIncrement;
    out.z = inner.z;
    out.system = bl.system;
    out.S = bl.S;
    out.measured["value"] = inner.measured.at("value");
    out.sub.push_back(std::move(inner));
    return out;
  }
  if (fn >= thr_v) {
    const MultiplicativeSystem s1 = truncate(sys, 0, 0, br0);
    IncrementOutcome inner = l2_increment_right(s1, v, 0, std::min(1.0, fn / (av * av)), cfg);
    out.kind = OutcomeKind::RightSystemIncrement;
    out.z = inner.z;
    out.system = br.system;
    out.S = br.S;
    out.measured["value"] = inner.measured.at("value");
    out.sub.push_back(std::move(inner));
    return out;
  }
  fail(Errc::DichotomyFailed, "u2: neither ||f||^2 nor ||g||^2 reaches its threshold");
}

} // namespace xzsq
