#include "xzsq/pipeline.hpp"

#include <cmath>

#include "xzsq/croot_sisask.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/outcome_check.hpp"

namespace xzsq {

namespace {

void require_checked(const IncrementOutcome& out, const RunConfig& cfg, const std::string& where)
{
  const OutcomeCheckReport rep = check_outcome(out, cfg.tolerance);
  if (!rep.ok)
    fail(Errc::CertificationFailed, where + ": " + rep.mismatches.front());
}

} // namespace

const char* to_string(CertificateKind k) noexcept
{
  return k == CertificateKind::TripleCount ? "TRIPLE_COUNT" : "INCREMENT_CHAIN_EXHAUSTED";
}

std::size_t iteration_cap(double alpha, const RunConfig& cfg)
{
  const double steps = std::ceil(std::log(1.0 / alpha) / std::log1p(cfg.c_inc) - 1e-12);
  return static_cast<std::size_t>(std::max(0.0, steps)) + cfg.iteration_guard;
}

void anchor_sets(const Subset& ai, Elem a, const MultiplicativeSystem& bprime, Subset& u, Subset& v, Subset& w)
{
  const GroupTable& g = ai.table();
  const Elem ainv = g.inv(a);
  u = translate(ainv, ai, 0) & bprime.Bminus(0);
  v = translate(0, ai, ainv) & bprime.Bminus(0);
  Subset& big = u.size() > v.size() ? u : v;
  const std::size_t target = std::min(u.size(), v.size());
  for (Elem x : big.elements()) {
    if (big.size() == target)
      break;
    big.erase(x);
  }
  w = Subset(ai.group());
  ai.for_each([&](Elem s) { w.insert(g.mul(g.mul(ainv, g.sq(s)), ainv)); });
  w &= bprime.Bminus(1);
}

Certificate run_iteration(const Group& grp, const Subset& a, const RunConfig& cfg)
{
  cfg.validate();
  require(a.valid() && a.group().get() == grp.get(), Errc::GroupMismatch, "pipeline: A from another group");
  require(!a.empty(), Errc::EmptySet, "pipeline: A is empty");
  require(has_distinct_squares(a), Errc::DistinctSquaresViolated, "pipeline: squares of A not distinct");
  const GroupTable& g = *grp;

  Certificate cert;
  cert.group = grp;
  cert.A = a;
  cert.config = cfg;
  const double alpha0 = static_cast<double>(a.size()) / g.order();
  const double eps = cfg.c_prime * alpha0 * alpha0;
  cert.iteration_cap = iteration_cap(alpha0, cfg);

  IterationState st;
  const Subset full = Subset::full(grp);
  st.system.group = grp;
  st.system.steps.push_back({full, full, full});
  st.system.tail = full;
  st.system.epsilon = eps;
  st.X = full;
  st.A = a;
  st.alpha = alpha0;
  st.delta = 1.0;

  for (std::size_t i = 0; i <= cert.iteration_cap; ++i) {
    st.i = i;
    StepRecord rec;
    rec.state = st;
    rec.epsilon = eps;
    rec.forced = st.alpha * (1.0 + cfg.c_inc) > 1.0;

    rec.Y = conjugate_intersection(st.X, st.g, st.h, cfg).S;
    SystemResult br = build_system(rec.Y, 1, eps, cfg);
    rec.bprime = br.system;
    rec.Sprime = br.S;
    const Subset& b1 = st.system.B(1);
    require(rec.bprime.B(0).is_subset_of(conjugate_set(st.g, b1) & conjugate_set(st.h, b1)),
            Errc::InclusionViolated, "pipeline: B'_0 not inside g B_1 g^-1 and h B_1 h^-1");
    const MultiplicativeSystem sys_bp = truncate(rec.bprime, 0, 0, rec.bprime.Bminus(1));

    rec.u1 = u1_step(st.system, sys_bp, st.A, rec.Sprime, st.g, st.h, cfg.c, cfg, rec.forced);
    require_checked(rec.u1, cfg, "pipeline step " + std::to_string(i) + " u1");

    IterationState next;
    double claimed = 0.0;
    if (rec.u1.kind == OutcomeKind::AnchorFound) {
      const Elem an = *rec.u1.a;
      Subset u, v, w;
      anchor_sets(st.A, an, rec.bprime, u, v, w);
      rec.u2 = u2_step(rec.bprime, rec.Sprime, u, v, w, cfg, rec.forced);
      require_checked(*rec.u2, cfg, "pipeline step " + std::to_string(i) + " u2");
      const IncrementOutcome& o = *rec.u2;
      if (o.kind == OutcomeKind::CountLowerBound) {
        cert.kind = CertificateKind::TripleCount;
        cert.anchor = an;
        cert.U = u;
        cert.V = v;
        cert.W = w;
        cert.triples_lower_bound = count_product_triples(u, v, w);
        cert.chain.push_back(std::move(rec));
        return cert;
      }
      const Elem z = *o.z;
      if (o.kind == OutcomeKind::LeftSystemIncrement) {
        next.g = an;
        next.h = g.inv(z);
      } else {
        next.g = z;
        next.h = g.inv(an);
      }
      next.system = *o.system;
      next.X = *o.S;
      claimed = o.measured.at("value");
    } else {
      const Elem z = *rec.u1.z;
      if (rec.u1.kind == OutcomeKind::RightIncrement) {
        next.g = z;
        next.h = 0;
      } else {
        next.g = 0;
        next.h = g.inv(z);
      }
      next.system = truncate(rec.bprime, 1, 1, rec.bprime.B(2));
      next.X = rec.Sprime;
      claimed = rec.u1.measured.at("value") * static_cast<double>(rec.bprime.Bminus(1).size()) /
                static_cast<double>(rec.bprime.B(1).size());
    }
    require_valid(next.system, "pipeline step " + std::to_string(i + 1) + " system");
    require(power_set_k(next.X, 4).is_subset_of(next.system.B(1)), Errc::InclusionViolated,
            "pipeline: X^4 not inside B_1 after the increment");
    const Subset z_next = translate(next.g, next.system.B(0), g.inv(next.h));
    next.A = st.A & z_next;
    next.alpha = static_cast<double>(next.A.size()) / z_next.size();
    next.delta = static_cast<double>(next.X.size()) / next.system.B(1).size();
    rec.alpha_next = next.alpha;
    rec.alpha_claimed = claimed;
    rec.progress_ok = next.alpha >= st.alpha * (1.0 + cfg.c_inc) - cfg.tolerance;
    require(next.alpha >= claimed - cfg.tolerance, Errc::SlackViolated,
            "pipeline: recomputed density " + std::to_string(next.alpha) + " below the increment value " +
                std::to_string(claimed));
    require(!next.A.empty(), Errc::EmptySet, "pipeline: increment left A_i empty");
    cert.chain.push_back(std::move(rec));
    st = std::move(next);
  }
  cert.kind = CertificateKind::IncrementChainExhausted;
  return cert;
}

} // namespace xzsq
