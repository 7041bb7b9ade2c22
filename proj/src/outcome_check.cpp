#include "xzsq/outcome_check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace xzsq {

namespace {

class Checker {
public:
  Checker(const IncrementOutcome& out, double tol, OutcomeCheckReport& rep) : out_(out), tol_(tol), rep_(rep) {}

  const Subset& set(const std::string& k) const
  {
    auto it = out_.context.sets.find(k);
    if (it == out_.context.sets.end())
      throw std::out_of_range(out_.context.origin + ": missing context set " + k);
    return it->second;
  }
  Elem elem(const std::string& k) const { return out_.context.elems.at(k); }
  double param(const std::string& k, double d = 0.0) const
  {
    auto it = out_.context.params.find(k);
    return it == out_.context.params.end() ? d : it->second;
  }

  void expect(const std::string& key, double v)
  {
    seen_.insert(key);
    auto it = out_.measured.find(key);
    if (it == out_.measured.end())
      return;
    ++rep_.keys_checked;
    if (!(std::abs(it->second - v) <= tol_ * std::max(1.0, std::abs(v))))
      mismatch(key + ": recorded " + std::to_string(it->second) + ", recomputed " + std::to_string(v));
  }
  void claim(bool cond, const std::string& what)
  {
    ++rep_.keys_checked;
    if (!cond)
      mismatch(what);
  }
  void skip(const std::string& key) { seen_.insert(key); }
  void mismatch(const std::string& what)
  {
    rep_.ok = false;
    rep_.mismatches.push_back(out_.context.origin + ": " + what);
  }
  void finish()
  {
    for (const auto& [k, v] : out_.measured)
      if (!seen_.count(k))
        mismatch("unchecked key " + k);
  }

  const IncrementOutcome& out_;
  double tol_;
  OutcomeCheckReport& rep_;
  std::set<std::string> seen_;
};

// |{b in B : A contains x b^-1}| / |B|
double right_avg(const Subset& a, const Subset& b, Elem x)
{
  const GroupTable& g = a.table();
  std::size_t n = 0;
  for (Elem y = 0; y < g.order(); ++y)
    if (b.contains(y) && a.contains(g.mul(x, g.inv(y))))
      ++n;
  return static_cast<double>(n) / b.size();
}

// |{b in B : A contains b^-1 x}| / |B|
double left_avg(const Subset& a, const Subset& b, Elem x)
{
  const GroupTable& g = a.table();
  std::size_t n = 0;
  for (Elem y = 0; y < g.order(); ++y)
    if (b.contains(y) && a.contains(g.mul(g.inv(y), x)))
      ++n;
  return static_cast<double>(n) / b.size();
}

std::size_t count_in(const Subset& a)
{
  std::size_t n = 0;
  for (Elem x = 0; x < a.table().order(); ++x)
    n += a.contains(x);
  return n;
}

void check_l2(Checker& c, bool right)
{
  const Subset& a = c.set("A");
  const Subset& z = c.set("Z");
  const Subset& b1 = c.set("B1");
  const GroupTable& g = a.table();
  const double nz = static_cast<double>(count_in(z));
  const double alpha = count_in(a) / nz;
  double h = 0, ip = 0, lhs = 0, best = -1;
  for (Elem x = 0; x < g.order(); ++x) {
    if (!z.contains(x))
      continue;
    const double v = right ? right_avg(a, b1, x) : left_avg(a, b1, x);
    h += (v - alpha) * (v - alpha);
    ip += v;
    lhs += v * v;
    best = std::max(best, v);
  }
  h /= nz;
  ip /= nz;
  lhs /= nz;
  c.expect("alpha", alpha);
  c.expect("hypothesis", h);
  c.expect("ip", ip);
  c.expect("l2_lhs", lhs);
  c.expect("l2_rhs", h + 2 * alpha * ip - alpha * alpha);
  c.claim(std::abs(lhs - (h + 2 * alpha * ip - alpha * alpha)) <= c.tol_, "norm expansion does not hold");
  const double eta = c.param("eta");
  const double bound = alpha * (1 + eta) - c.param("c_slack") * c.param("epsilon");
  c.expect("lower_bound", bound);
  c.claim(h >= eta * alpha * alpha - c.tol_, "hypothesis below eta alpha^2");
  if (c.out_.z) {
    const Elem zz = *c.out_.z;
    c.claim(z.contains(zz), "increment point outside Z");
    const double v = right ? right_avg(a, b1, zz) : left_avg(a, b1, zz);
    c.expect("value", v);
    c.claim(v >= best - c.tol_, "increment point does not attain the maximum");
    c.claim(v >= bound - c.tol_, "increment below the lower bound");
  } else {
    c.mismatch("l2 outcome without a point");
  }
}

void check_equalise(Checker& c, bool right)
{
  const Subset& a = c.set("A");
  const Subset& b0 = c.set("B0");
  const Subset& b0p = c.set("B0p");
  const Subset& b1p = c.set("B1p");
  const GroupTable& g = a.table();
  const Elem ge = c.elem("g"), he = c.elem("h");
  Subset z(a.group());
  for (Elem x = 0; x < g.order(); ++x)
    if (b0.contains(x))
      z.insert(g.mul(g.mul(ge, x), g.inv(he)));
  const double alpha = static_cast<double>(count_in(a)) / count_in(z);
  double l1 = 0;
  for (Elem x = 0; x < g.order(); ++x)
    if (a.contains(x))
      l1 += std::abs((right ? right_avg(a, b0p, x) : left_avg(a, b0p, x)) - alpha);
  l1 /= count_in(a);
  const double eta = c.param("eta");
  c.expect("alpha", alpha);
  c.expect("l1", l1);
  c.expect("l1_bound", eta * alpha);
  const bool holds = l1 <= eta * alpha;
  c.claim(holds == (c.out_.kind == OutcomeKind::L1BoundHolds), "outcome kind disagrees with the L1 test");
  if (holds)
    return;
  double h = 0;
  for (Elem x = 0; x < g.order(); ++x)
    if (z.contains(x)) {
      const double v = (right ? right_avg(a, b1p, x) : left_avg(a, b1p, x)) - alpha;
      h += v * v;
    }
  h /= count_in(z);
  c.expect("hypothesis", h);
  c.expect("eta_eff", std::min(1.0, h / (alpha * alpha)));
  c.skip("predicted_ratio");
  if (c.out_.sub.size() == 1) {
    const IncrementOutcome& in = c.out_.sub[0];
    c.claim(in.context.sets.count("Z") && in.context.sets.at("Z") == z, "inner increment uses another Z");
    c.expect("value", in.measured.count("value") ? in.measured.at("value") : -1.0);
    c.claim(in.z == c.out_.z, "inner increment point differs");
  } else {
    c.mismatch("increment without the inner l2 outcome");
  }
}

void check_u1(Checker& c)
{
  const IncrementOutcome& o = c.out_;
  if (o.kind != OutcomeKind::AnchorFound) {
    c.claim(!o.sub.empty() && o.sub.back().kind == o.kind && o.sub.back().z == o.z,
            "forwarded increment differs from the equalisation outcome");
    if (!o.sub.empty() && o.sub.back().measured.count("value"))
      c.expect("value", o.sub.back().measured.at("value"));
    return;
  }
  const Subset& a = c.set("A");
  const Subset& x = c.set("X");
  const Subset& s = c.set("S");
  const Subset& b0 = c.set("B0");
  const Subset& b0p = c.set("B0p");
  const Subset& b1p = c.set("B1p");
  const GroupTable& g = a.table();
  const double eta = c.param("eta");
  const bool forced = c.param("forced") != 0.0;
  std::size_t nz = 0;
  for (Elem y = 0; y < g.order(); ++y)
    nz += b0.contains(y);
  const double alpha = static_cast<double>(count_in(a)) / nz;
  c.expect("alpha", alpha);
  if (c.param("s_fallback") == 0.0) {
    bool same = true;
    for (Elem y = 0; y < g.order(); ++y) {
      const bool in = a.contains(y) && std::abs(right_avg(a, b0p, y) - alpha) <= eta * alpha &&
                      std::abs(left_avg(a, b0p, y) - alpha) <= eta * alpha;
      same = same && in == s.contains(y);
    }
    c.claim(same, "S differs from the two-sided density filter");
  }
  c.expect("s_fraction", static_cast<double>(count_in(s)) / count_in(a));
  if (!forced)
    c.claim(2 * count_in(s) >= count_in(a), "mu_A(S) below 1/2");
  std::vector<bool> x2(g.order(), false);
  for (Elem p = 0; p < g.order(); ++p)
    for (Elem q = 0; q < g.order(); ++q)
      if (x.contains(p) && x.contains(q))
        x2[g.mul(p, q)] = true;
  std::size_t best = 0;
  auto hits_of = [&](Elem sp) {
    std::size_t h = 0;
    for (Elem t = 0; t < g.order(); ++t)
      if (s.contains(t) && x2[g.mul(g.inv(sp), t)] && x2[g.mul(t, g.inv(sp))])
        ++h;
    return h;
  };
  for (Elem sp = 0; sp < g.order(); ++sp)
    if (s.contains(sp))
      best = std::max(best, hits_of(sp));
  const Elem an = o.a.value_or(0);
  c.claim(o.a.has_value() && s.contains(an), "anchor outside S");
  const std::size_t ha = hits_of(an);
  c.expect("hits", static_cast<double>(ha));
  c.claim(ha == best, "anchor does not maximise the hit count");
  const double xs = static_cast<double>(count_in(x));
  const double onep = 1.0 + c.param("epsilon");
  const double bound = xs * xs * count_in(s) / (onep * onep * double(nz) * double(nz));
  c.expect("hits_bound", std::ceil(bound - 1e-9));
  c.claim(double(ha) >= std::ceil(bound - 1e-9), "hit count below the bound");
  const double rd = right_avg(a, b0p, an), ld = left_avg(a, b0p, an);
  c.expect("right_density", rd);
  c.expect("left_density", ld);
  c.expect("density_floor", alpha * (1 - eta));
  if (!forced)
    c.claim(rd >= alpha * (1 - eta) - c.tol_ && ld >= alpha * (1 - eta) - c.tol_, "anchor densities too small");
  std::vector<bool> sq(g.order(), false);
  for (Elem y = 0; y < g.order(); ++y)
    if (a.contains(y))
      sq[g.mul(y, y)] = true;
  std::size_t nsq = 0, nb1 = 0;
  for (Elem b = 0; b < g.order(); ++b)
    if (b1p.contains(b)) {
      ++nb1;
      nsq += sq[g.mul(g.mul(an, b), an)];
    }
  c.expect("squares_density", static_cast<double>(nsq) / nb1);
  c.expect("squares_floor", static_cast<double>(ha) / nb1);
  c.claim(nsq >= ha, "square density below the hit count");
}

double norm2_dev(const Subset& set, const Subset& b, const Subset& b0, bool right)
{
  const GroupTable& g = set.table();
  const double al = static_cast<double>(count_in(set)) / count_in(b0);
  double s = 0;
  for (Elem x = 0; x < g.order(); ++x)
    if (b0.contains(x)) {
      const double v = (right ? right_avg(set, b, x) : left_avg(set, b, x)) - al;
      s += v * v;
    }
  return s / count_in(b0);
}

void check_u2(Checker& c)
{
  const Subset& u = c.set("U");
  const Subset& v = c.set("V");
  const Subset& w = c.set("W");
  const Subset& b0 = c.set("B0");
  const Subset& b1 = c.set("B1");
  const GroupTable& g = u.table();
  std::size_t n = 0;
  for (Elem r = 0; r < g.order(); ++r)
    for (Elem t = 0; t < g.order(); ++t)
      if (u.contains(r) && v.contains(t) && w.contains(g.mul(r, t)))
        ++n;
  const double nb0 = static_cast<double>(count_in(b0)), nb1 = static_cast<double>(count_in(b1));
  const double au = count_in(u) / nb0, av = count_in(v) / nb0, om = count_in(w) / nb1;
  const double ip = n / (count_in(v) * nb1);
  const double thr = c.param("c_count") * au * av * om;
  c.expect("alpha_u", au);
  c.expect("alpha_v", av);
  c.expect("omega", om);
  c.expect("ip", ip);
  c.expect("triples", static_cast<double>(n));
  c.expect("threshold", thr);
  const IncrementOutcome& o = c.out_;
  if (o.kind == OutcomeKind::CountLowerBound) {
    if (c.param("forced") == 0.0)
      c.claim(ip >= thr * (1 - 1e-12), "counting case below the threshold");
    return;
  }
  c.claim(ip < thr * (1 - 1e-12) || c.param("forced") != 0.0, "increment although the counting case holds");
  const double fn = norm2_dev(v, c.set("BR0"), b0, true);
  const double gn = norm2_dev(u, c.set("BL0"), b0, false);
  const double cc = c.param("c_count"), cs = c.param("c_slack"), e = c.param("epsilon");
  const double tu = (1 - cc) * au * au - cs * e, tv = (1 - cc) * av * av - cs * e;
  c.expect("f_norm2", fn);
  c.expect("g_norm2", gn);
  c.expect("f_threshold", tv);
  c.expect("g_threshold", tu);
  if (o.kind == OutcomeKind::LeftSystemIncrement)
    c.claim(gn >= tu - c.tol_, "left increment without the g bound");
  else
    c.claim(gn < tu && fn >= tv - c.tol_, "right increment without the f bound");
  if (!o.sub.empty() && o.sub[0].measured.count("value")) {
    c.expect("value", o.sub[0].measured.at("value"));
    c.claim(o.sub[0].z == o.z, "inner increment point differs");
  }
}

void check_rec(const IncrementOutcome& out, double tol, OutcomeCheckReport& rep)
{
  Checker c(out, tol, rep);
  try {
    const std::string& o = out.context.origin;
    if (o == "l2_right" || o == "l2_left")
      check_l2(c, o == "l2_right");
    else if (o == "equalise_right" || o == "equalise_left")
      check_equalise(c, o == "equalise_right");
    else if (o == "u1")
      check_u1(c);
    else if (o == "u2")
      check_u2(c);
    else
      c.mismatch("unknown origin");
    c.finish();
  } catch (const std::exception& e) {
    c.mismatch(e.what());
  }
  for (const auto& s : out.sub)
    check_rec(s, tol, rep);
}

} // namespace

OutcomeCheckReport check_outcome(const IncrementOutcome& out, double tol)
{
  OutcomeCheckReport rep;
  check_rec(out, tol, rep);
  return rep;
}

} // namespace xzsq
