#include "xzsq/certificate.hpp"

#include <cmath>
#include <set>

#include "xzsq/counting.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/outcome_check.hpp"
#include "xzsq/serialize.hpp"

namespace xzsq {

namespace {

constexpr const char* kFormat = "xzsq-certificate/1";

json step_to_json(const StepRecord& r)
{
  const IterationState& s = r.state;
  json j = {{"i", s.i},
            {"system", system_to_json(s.system)},
            {"X", s.X.to_hex()},
            {"g", s.g},
            {"h", s.h},
            {"A", s.A.to_hex()},
            {"alpha", s.alpha},
            {"delta", s.delta},
            {"epsilon", r.epsilon},
            {"forced", r.forced},
            {"Y", r.Y.to_hex()},
            {"bprime", system_to_json(r.bprime)},
            {"Sprime", r.Sprime.to_hex()},
            {"u1", outcome_to_json(r.u1)},
            {"progress_ok", r.progress_ok}};
  if (r.u2)
    j["u2"] = outcome_to_json(*r.u2);
  if (r.alpha_next)
    j["alpha_next"] = *r.alpha_next;
  if (r.alpha_claimed)
    j["alpha_claimed"] = *r.alpha_claimed;
  return j;
}

class Checks {
public:
  void add(const std::string& name, bool pass, const std::string& detail = {})
  {
    rep.checks.push_back({name, pass, detail});
    if (!pass)
      rep.ok = false;
  }
  CertCheckReport rep;
};


} // namespace

json certificate_to_json(const Certificate& c)
{
  json j;
  j["format"] = kFormat;
  j["kind"] = to_string(c.kind);
  j["group"] = group_to_json(*c.group);
  j["A"] = c.A.to_hex();
  j["config"] = config_to_json(c.config);
  j["iteration_cap"] = c.iteration_cap;
  if (c.anchor)
    j["anchor"] = *c.anchor;
  if (c.U)
    j["U"] = c.U->to_hex();
  if (c.V)
    j["V"] = c.V->to_hex();
  if (c.W)
    j["W"] = c.W->to_hex();
  j["triples_lower_bound"] = c.triples_lower_bound;
  json chain = json::array();
  for (const auto& r : c.chain)
    chain.push_back(step_to_json(r));
  j["chain"] = chain;
  return j;
}

std::string certificate_text(const Certificate& c)
{
  return certificate_to_json(c).dump(2) + "\n";
}

const CertCheck* CertCheckReport::first_failure() const
{
  for (const auto& c : checks)
    if (!c.pass)
      return &c;
  return nullptr;
}

json CertCheckReport::to_json() const
{
  json arr = json::array();
  for (const auto& c : checks)
    arr.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  json j = {{"ok", ok}, {"checks", arr}};
  if (const CertCheck* f = first_failure())
    j["first_failure"] = f->name;
  return j;
}

CertCheckReport check_certificate_text(const std::string& text, const CertCheckOptions& opt)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const std::exception& e) {
    Checks c;
    c.add("format", false, std::string("not valid JSON: ") + e.what());
    return c.rep;
  }
  return check_certificate(doc, opt);
}

CertCheckReport check_certificate(const json& doc, const CertCheckOptions& opt)
{
  Checks ck;
  std::string stage = "format";
  try {
    ck.add("format", doc.value("format", "") == kFormat, "expected " + std::string(kFormat));

    stage = "group_hash";
    const Group grp = group_from_json(doc.at("group"));
    ck.add("group_hash", true, grp->hash_hex());
    const GroupTable& g = *grp;

    stage = "config";
    const RunConfig cfg = parse_config(doc.at("config").at("text").get<std::string>());
    cfg.validate();
    ck.add("config", config_to_json(cfg) == doc.at("config"), "fields must match the embedded text");

    stage = "A";
    const Subset a = subset_from_json(grp, doc.at("A"));
    ck.add("A_distinct_squares", !a.empty() && has_distinct_squares(a));
    const double alpha0 = static_cast<double>(a.size()) / g.order();
    const double eps = cfg.c_prime * alpha0 * alpha0;
    const std::size_t cap = iteration_cap(alpha0, cfg);
    ck.add("iteration_cap", doc.at("iteration_cap").get<std::size_t>() == cap, "expected " + std::to_string(cap));

    const json& chain = doc.at("chain");
    ck.add("chain_length", !chain.empty() && chain.size() <= cap + 1,
           std::to_string(chain.size()) + " steps, cap " + std::to_string(cap));

    // Expected state of the next step, derived from the previous one.
    const Subset full = Subset::full(grp);
    MultiplicativeSystem exp_sys;
    exp_sys.group = grp;
    exp_sys.steps.push_back({full, full, full});
    exp_sys.tail = full;
    exp_sys.epsilon = eps;
    Subset exp_x = full, exp_a = a;
    Elem exp_g = 0, exp_h = 0;

    for (std::size_t i = 0; i < chain.size(); ++i) {
      const json& st = chain[i];
      const std::string p = "step " + std::to_string(i) + " ";
      stage = p + "state";
      const MultiplicativeSystem sys = system_from_json(grp, st.at("system"));
      const Subset x = subset_from_json(grp, st.at("X"));
      const Elem ge = st.at("g").get<Elem>(), he = st.at("h").get<Elem>();
      const Subset ai = subset_from_json(grp, st.at("A"));
      const Subset& b1 = sys.B(1);
      const bool same_state = st.at("i").get<std::size_t>() == i && sys.steps.size() == 1 &&
                              sys.B(0) == exp_sys.B(0) && sys.Bplus(0) == exp_sys.Bplus(0) &&
                              sys.Bminus(0) == exp_sys.Bminus(0) && sys.tail == exp_sys.tail &&
                              sys.epsilon == eps && x == exp_x && ge == exp_g && he == exp_h;
      ck.add(p + "state_transition", same_state, "system, X, g, h follow from the previous outcome");
      ck.add(p + "system_axioms", verify_system(sys).ok);
      ck.add(p + "X_inclusion", is_symmetric_neighbourhood(x) && power_set_k(x, 4).is_subset_of(b1),
             "X^4 inside B_1");
      const Subset z = translate(ge, sys.B(0), g.inv(he));
      ck.add(p + "A_i", ai == (exp_a & z), "A_i = A_{i-1} cap g B_0 h^-1");
      const double alpha = static_cast<double>(ai.size()) / z.size();
      ck.add(p + "alpha", st.at("alpha").get<double>() == alpha && st.at("epsilon").get<double>() == eps &&
                              st.at("delta").get<double>() == static_cast<double>(x.size()) / b1.size());
      const bool forced = alpha * (1.0 + cfg.c_inc) > 1.0;
      ck.add(p + "forced_flag", st.at("forced").get<bool>() == forced);

      stage = p + "neighbourhoods";
      const Subset y = subset_from_json(grp, st.at("Y"));
      const Subset x4 = power_set_k(x, 4);
      const Subset y4 = power_set_k(y, 4);
      ck.add(p + "Y_inclusion",
             is_symmetric_neighbourhood(y) && y4.is_subset_of(conjugate_set(ge, x4) & conjugate_set(he, x4)),
             "Y^4 inside g X^4 g^-1 cap h X^4 h^-1");
      const MultiplicativeSystem bp = system_from_json(grp, st.at("bprime"));
      const Subset sp = subset_from_json(grp, st.at("Sprime"));
      ck.add(p + "bprime_axioms", bp.steps.size() == 2 && verify_system(bp).ok && bp.epsilon == eps);
      ck.add(p + "bprime_inclusions",
             bp.Bplus(0).is_subset_of(y4) && is_symmetric_neighbourhood(sp) && bp.tail == power_set_k(sp, 4) &&
                 bp.B(0).is_subset_of(conjugate_set(ge, b1) & conjugate_set(he, b1)),
             "B'_{0+} inside Y^4, tail = S'^4, B'_0 inside g B_1 g^-1 cap h B_1 h^-1");

      stage = p + "u1";
      const IncrementOutcome u1 = outcome_from_json(grp, st.at("u1"));
      const OutcomeCheckReport r1 = check_outcome(u1, cfg.tolerance);
      ck.add(p + "u1_recomputation", r1.ok, r1.ok ? std::to_string(r1.keys_checked) + " values" : r1.mismatches[0]);
      const bool u1_ctx = u1.kind == OutcomeKind::AnchorFound
                              ? u1.context.sets.at("A") == ai && u1.context.sets.at("X") == sp &&
                                    u1.context.sets.at("B0") == sys.B(0) && u1.context.sets.at("B0p") == bp.B(0) &&
                                    u1.context.sets.at("B1p") == bp.Bminus(1) &&
                                    u1.context.params.at("forced") == (forced ? 1.0 : 0.0) &&
                                    u1.context.elems.at("g") == ge && u1.context.elems.at("h") == he
                              : !forced && u1.context.sets.at("A") == ai && !u1.sub.empty() &&
                                    u1.sub.back().context.sets.at("A") == ai &&
                                    u1.sub.back().context.sets.at("B0p") == bp.B(0) &&
                                    u1.sub.back().context.sets.at("B1p") == bp.Bminus(1);
      ck.add(p + "u1_context", u1_ctx, "outcome computed on this step's sets");

      double claimed = 0.0;
      bool increment = false;
      if (u1.kind == OutcomeKind::AnchorFound) {
        stage = p + "u2";
        const Elem an = *u1.a;
        Subset u, v, w;
        anchor_sets(ai, an, bp, u, v, w);
        const IncrementOutcome u2 = outcome_from_json(grp, st.at("u2"));
        const OutcomeCheckReport r2 = check_outcome(u2, cfg.tolerance);
        ck.add(p + "u2_recomputation", r2.ok,
               r2.ok ? std::to_string(r2.keys_checked) + " values" : r2.mismatches[0]);
        ck.add(p + "uvw_construction",
               u2.context.sets.at("U") == u && u2.context.sets.at("V") == v && u2.context.sets.at("W") == w &&
                   u2.context.sets.at("B0") == bp.B(0) && u2.context.sets.at("B1") == bp.B(1) &&
                   u2.context.params.at("forced") == (forced ? 1.0 : 0.0) &&
                   u2.context.params.at("c_count") == cfg.c_count,
               "U = a^-1 A_i cap B'_{0-}, V = A_i a^-1 cap B'_{0-} (trimmed), W = a^-1 sq(A_i) a^-1 cap B'_{1-}");
        if (u2.kind == OutcomeKind::CountLowerBound) {
          stage = p + "count";
          ck.add("final_step", i + 1 == chain.size() && doc.at("kind") == "TRIPLE_COUNT");
          ck.add("anchor", doc.at("anchor").get<Elem>() == an && subset_from_json(grp, doc.at("U")) == u &&
                               subset_from_json(grp, doc.at("V")) == v && subset_from_json(grp, doc.at("W")) == w);
          const Subset sq = square_image(a);
          std::set<std::pair<Elem, Elem>> images;
          std::uint64_t n = 0;
          bool pointwise = true;
          for (Elem r : u.elements())
            for (Elem t : v.elements()) {
              const Elem s = g.mul(r, t);
              if (!w.contains(s))
                continue;
              ++n;
              const Elem x1 = g.mul(an, r), x3 = g.mul(t, an), mid = g.mul(g.mul(an, s), an);
              pointwise = pointwise && a.contains(x1) && a.contains(x3) && sq.contains(mid) && g.mul(x1, x3) == mid;
              images.insert({x1, x3});
            }
          ck.add("injection", pointwise && images.size() == n,
                 "(r,s,t) -> (a r, a s a, t a) lands in A x sq(A) x A with (ar)(ta) = asa");
          const std::uint64_t claimed_n = doc.at("triples_lower_bound").get<std::uint64_t>();
          ck.add("triple_count", claimed_n == n, "claimed " + std::to_string(claimed_n) + ", counted " +
                                                    std::to_string(n));
          const TripleCount brute = count_triples(a, EquationKind::Square);
          ck.add("brute_force", claimed_n <= brute.total,
                 std::to_string(claimed_n) + " <= " + std::to_string(brute.total));
          continue;
        }
        increment = true;
        claimed = u2.measured.at("value");
        const Elem zz = *u2.z;
        if (u2.kind == OutcomeKind::LeftSystemIncrement) {
          exp_g = an;
          exp_h = g.inv(zz);
        } else {
          exp_g = zz;
          exp_h = g.inv(an);
        }
        exp_sys = *u2.system;
        exp_x = *u2.S;
        ck.add(p + "u2_system",
               verify_system(exp_sys).ok && exp_sys.tail == power_set_k(exp_x, 4) &&
                   power_set_k(exp_x, 4).is_subset_of(exp_sys.B(1)) &&
                   exp_sys.Bplus(0).is_subset_of(power_set_k(y, 4)));
      } else {
        increment = true;
        const Elem zz = *u1.z;
        if (u1.kind == OutcomeKind::RightIncrement) {
          exp_g = zz;
          exp_h = 0;
        } else {
          exp_g = 0;
          exp_h = g.inv(zz);
        }
        exp_sys = truncate(bp, 1, 1, bp.B(2));
        exp_x = sp;
        claimed = u1.measured.at("value") * static_cast<double>(bp.Bminus(1).size()) / bp.B(1).size();
      }
      if (increment) {
        stage = p + "increment";
        const Subset zn = translate(exp_g, exp_sys.B(0), g.inv(exp_h));
        exp_a = ai & zn;
        const double an = static_cast<double>(exp_a.size()) / zn.size();
        ck.add(p + "density_increment",
               st.at("alpha_next").get<double>() == an && st.at("alpha_claimed").get<double>() == claimed &&
                   an >= claimed - cfg.tolerance &&
                   st.at("progress_ok").get<bool>() == (an >= alpha * (1.0 + cfg.c_inc) - cfg.tolerance),
               "alpha_{i+1} = " + std::to_string(an) + " against " + std::to_string(claimed));
        if (i + 1 == chain.size())
          ck.add("final_step", doc.at("kind") == "INCREMENT_CHAIN_EXHAUSTED" && chain.size() == cap + 1,
                 "chain ends in an increment only when the cap is reached");
      }
    }

    if (opt.replay) {
      stage = "replay";
      const Certificate again = run_iteration(grp, a, cfg);
      ck.add("replay", certificate_to_json(again) == doc, "re-run with the embedded config");
    }
  } catch (const std::exception& e) {
    ck.add(stage, false, e.what());
  }
  return ck.rep;
}

} // namespace xzsq
