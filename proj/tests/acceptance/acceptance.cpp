// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "xzsq/abelian.hpp"
#include "xzsq/certificate.hpp"
#include "xzsq/counting.hpp"
#include "xzsq/croot_sisask.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/measures.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/outcome_check.hpp"
#include "xzsq/pipeline.hpp"
#include "xzsq/sampling.hpp"

using namespace xzsq;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why)
  {
    if (pass)
      detail = why;
    pass = false;
  }
};

std::vector<Group> catalog_groups(std::size_t max_order, int abelian = -1)
{
  std::vector<Group> out;
  for (const auto& e : catalog())
    if (e.order <= max_order && (abelian < 0 || e.abelian == bool(abelian)))
      out.push_back(load_group(e.descriptor));
  return out;
}

bool subset_of_product(const Subset& s, std::uint64_t k, const Subset& x4)
{
  Subset p = Subset::singleton(s.group(), 0);
  for (std::uint64_t i = 0; i < k; ++i)
    p = oracle::product(p, s);
  return p.is_subset_of(x4);
}

Subset power4(const Subset& x)
{
  const Subset x2 = oracle::product(x, x);
  return oracle::product(x2, x2);
}

Verdict counting_oracle()
{
  Verdict v;
  Rng rng(101);
  std::size_t n = 0;
  for (const Group& g : catalog_groups(24)) {
    for (EquationKind eq : {EquationKind::Square, EquationKind::Invariant})
      if (count_triples(Subset::full(g), eq).total != g->order() * g->order())
        v.fail(g->name() + " full set");
    for (int i = 0; i < 200; ++i) {
      const Subset a = random_subset(g, 0.05 + 0.9 * double(rng.below(1000)) / 1000, rng);
      for (EquationKind eq : {EquationKind::Square, EquationKind::Invariant}) {
        const TripleCount t = count_triples(a, eq);
        if (t.total != oracle::triple_loop(a, eq) || t.nontrivial != oracle::triple_loop(a, eq, true))
          v.fail(g->name() + " " + a.to_hex());
        ++n;
      }
    }
  }
  v.detail = v.pass ? std::to_string(n) + " subsets" : v.detail;
  return v;
}

Verdict solution_free_baseline()
{
  Verdict v;
  std::size_t n = 0;
  for (const Group& g : catalog_groups(24)) {
    const SearchReport r = max_solution_free(g, EquationKind::Square);
    if (!r.exhaustive) {
      v.fail(g->name() + " search not exhaustive");
      continue;
    }
    if (!has_distinct_squares(r.best_set))
      v.fail(g->name() + " squares not distinct");
    if (count_triples(r.best_set, EquationKind::Square).total != r.best_set.size())
      v.fail(g->name() + " total != |A|");
    ++n;
  }
  v.detail = v.pass ? std::to_string(n) + " groups exhaustive" : v.detail;
  return v;
}

Verdict system_axioms()
{
  Verdict v;
  Rng rng(303);
  std::size_t n = 0;
  auto check = [&](const MultiplicativeSystem& s, const std::string& what) {
    ++n;
    const VerificationReport r = verify_system(s);
    if (!r.ok)
      v.fail(what + ": " + r.first_failure()->axiom);
  };
  std::vector<Group> groups;
  for (const Group& g : catalog_groups(96))
    if (g->order() >= 6)
      groups.push_back(g);
  for (std::size_t round = 0; n < 100 || round < 2; ++round)
    for (const Group& g : groups) {
      const double eps = 0.125 + 0.375 * double(rng.below(100)) / 100;
      const Subset x = random_symmetric(g, 0.05 + 0.35 * double(rng.below(100)) / 100, rng);
      try {
        const SystemResult b = build_system(x, 1 + rng.below(2), eps);
        check(b.system, g->name() + " build_system");
        const Elem c = static_cast<Elem>(rng.below(g->order()));
        check(conjugate_system(c, b.system), g->name() + " conjugate_system");
        check(truncate(b.system, 0, 0, b.system.B(1)), g->name() + " truncate");
        if (b.system.step_count() >= 2) {
          const MultiplicativeSystem head = truncate(b.system, 0, 0, b.system.Bplus(1));
          const MultiplicativeSystem rest = truncate(b.system, 1, b.system.r(), b.system.tail);
          check(glue(head, rest), g->name() + " glue");
        }
      } catch (const Error& e) {
        v.fail(g->name() + " " + e.what());
      }
      const Subset z = generated_subgroup(Subset::singleton(g, static_cast<Elem>(rng.below(g->order()))));
      check(subgroup_chain_system({Subset::full(g), z, Subset::singleton(g, 0)}), g->name() + " subgroup_chain");
      if (g->abelian()) {
        const AbelianDecomposition dec = decompose_abelian(g);
        BohrSpec spec{g, {}, 0.5 + double(rng.below(100)) / 100};
        for (int f = 0; f < 2; ++f) {
          std::vector<std::int64_t> t;
          for (std::int64_t m : dec.moduli)
            t.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m))));
          spec.frequencies.push_back(t);
        }
        try {
          check(bohr_system(spec, 0.25 + 0.25 * double(rng.below(4)) / 4).system, g->name() + " bohr_system");
        } catch (const Error& e) {
          v.fail(g->name() + " bohr " + e.what());
        }
      }
    }
  if (v.pass)
    v.detail = std::to_string(n) + " systems";
  return v;
}

Verdict certified_inclusions()
{
  Verdict v;
  Rng rng(404);
  std::size_t bog = 0, conj = 0, nontrivial = 0;
  std::vector<Group> groups;
  for (const Group& g : catalog_groups(64))
    if (g->order() >= 8)
      groups.push_back(g);
  for (std::size_t i = 0; bog < 60; ++i) {
    const Group& g = groups[i % groups.size()];
    Subset x = random_symmetric(g, 0.3 + 0.5 * double(rng.below(100)) / 100, rng);
    if (x.density() < 0.25)
      continue;
    const std::uint64_t k = std::array<std::uint64_t, 3>{2, 3, 9}[i % 3];
    const NeighbourhoodResult r = bogolioubov_neighbourhood(x, k);
    ++bog;
    nontrivial += r.S.size() > 1;
    if (!r.certified)
      v.fail(g->name() + " bogolioubov not certified");
    else if (!subset_of_product(r.S, k, power4(x)) || !is_symmetric_neighbourhood(r.S))
      v.fail(g->name() + " uncertified success (bogolioubov)");
  }
  for (std::size_t i = 0; conj < 60; ++i) {
    const Group& g = groups[i % groups.size()];
    const Subset s = random_symmetric(g, 0.4 + 0.4 * double(rng.below(100)) / 100, rng);
    const Elem a = static_cast<Elem>(rng.below(g->order()));
    const Elem b = static_cast<Elem>(rng.below(g->order()));
    const NeighbourhoodResult r = conjugate_intersection(s, a, b);
    ++conj;
    nontrivial += r.S.size() > 1;
    const Subset s4 = power4(s);
    const Subset target = conjugate_set(a, s4) & conjugate_set(b, s4);
    if (!r.certified)
      v.fail(g->name() + " conjugate_intersection not certified");
    else if (!power4(r.S).is_subset_of(target))
      v.fail(g->name() + " uncertified success (conjugate_intersection)");
  }
  if (v.pass)
    v.detail = std::to_string(bog) + " neighbourhoods, " + std::to_string(conj) + " intersections, " +
               std::to_string(nontrivial) + " with |S| > 1";
  return v;
}

Verdict measure_identities()
{
  Verdict v;
  Rng rng(505);
  const auto groups = catalog_groups(48);
  std::size_t adj = 0, sup = 0, haar = 0;
  for (std::size_t i = 0; adj < 500; ++i) {
    const Group& g = groups[i % groups.size()];
    const FunctionVec f = oracle::random_function(g, rng);
    const MeasureVec mu = oracle::random_measure(g, rng);
    const MeasureVec nu = oracle::random_measure(g, rng);
    const double lhs = pair(nu, convolve(f, mu));
    const double rhs = pair(mu, convolve(tilde(f), nu));
    if (std::abs(lhs - rhs) > 1e-9)
      v.fail(g->name() + " adjoint");
    ++adj;
  }
  for (std::size_t i = 0; sup < 500; ++i) {
    const Group& g = groups[i % groups.size()];
    const Subset a = random_subset(g, 0.1 + 0.3 * double(rng.below(100)) / 100, rng);
    const Subset b = random_subset(g, 0.1 + 0.3 * double(rng.below(100)) / 100, rng);
    if (a.empty() || b.empty())
      continue;
    if (!(support(convolve(uniform_measure(a), uniform_measure(b))) == oracle::product(a, b)))
      v.fail(g->name() + " support");
    ++sup;
  }
  for (std::size_t i = 0; haar < 500; ++i) {
    const Group& g = groups[i % groups.size()];
    if (g->order() < 8)
      continue;
    const Subset x = random_symmetric(g, 0.5, rng);
    const MultiplicativeSystem s = build_system(x, 1, 0.25 + 0.5 * double(rng.below(100)) / 100).system;
    for (std::size_t lvl = 0; lvl < s.step_count(); ++lvl) {
      const Subset& next = s.B(lvl + 1);
      const double bound = 2 * s.epsilon / (1 + s.epsilon);
      next.for_each([&](Elem y) {
        ++haar;
        if (tv_haar_defect(s, lvl, y) > bound + 1e-9 || tv_haar_defect_left(s, lvl, y) > bound + 1e-9)
          v.fail(g->name() + " haar defect");
      });
    }
  }
  if (v.pass)
    v.detail = std::to_string(adj) + " adjoint, " + std::to_string(sup) + " support, " + std::to_string(haar) +
               " haar";
  return v;
}

std::size_t check_all_outcomes(const IncrementOutcome& o, Verdict& v, const std::string& where)
{
  const OutcomeCheckReport r = check_outcome(o, 1e-9);
  if (!r.ok)
    v.fail(where + ": " + (r.mismatches.empty() ? "" : r.mismatches.front()));
  std::size_t n = 1;
  for (const auto& s : o.sub)
    n += check_all_outcomes(s, v, where);
  return n;
}

Verdict lemma_recomputation()
{
  Verdict v;
  Rng rng(606);
  std::size_t runs = 0, outcomes = 0, increments = 0;
  const std::vector<std::string> names = {"C13", "cyclic(21)", "F21", "D10", "C27", "product(cyclic(3),cyclic(9))", "C31", "dihedral(7)"};
  for (std::size_t i = 0; runs < 24; ++i) {
    const Group g = load_group(names[i % names.size()]);
    const Subset a = random_distinct_squares(g, 0.5, rng);
    if (a.empty())
      continue;
    RunConfig cfg;
    if (i % 2)
      cfg.c_count = 50;
    cfg.seed = i;
    try {
      const Certificate c = run_iteration(g, a, cfg);
      ++runs;
      for (const auto& st : c.chain) {
        outcomes += check_all_outcomes(st.u1, v, g->name() + " u1");
        if (st.u2)
          outcomes += check_all_outcomes(*st.u2, v, g->name() + " u2");
        if (st.u1.is_increment() || (st.u2 && st.u2->is_increment()))
          ++increments;
      }
    } catch (const Error& e) {
      v.fail(g->name() + " " + e.what());
      ++runs;
    }
  }
  if (v.pass)
    v.detail = std::to_string(runs) + " runs, " + std::to_string(outcomes) + " outcomes, " +
               std::to_string(increments) + " increments";
  return v;
}

void certify(const Group& g, const Subset& a, Verdict& v, std::size_t& n)
{
  ++n;
  try {
    const Certificate c = run_iteration(g, a);
    if (c.chain.size() > c.iteration_cap + 1)
      v.fail(g->name() + " chain over cap");
    const CertCheckReport r = check_certificate(certificate_to_json(c));
    if (!r.ok) {
      v.fail(g->name() + " check: " + r.first_failure()->name);
      return;
    }
    if (c.kind == CertificateKind::TripleCount) {
      bool injection = false;
      for (const auto& ch : r.checks)
        injection |= ch.name == "injection" && ch.pass;
      if (!injection)
        v.fail(g->name() + " injection not checked");
      if (c.triples_lower_bound > count_triples(a, EquationKind::Square).total)
        v.fail(g->name() + " bound above brute force");
    }
  } catch (const Error& e) {
    v.fail(g->name() + " " + a.to_hex() + " " + e.what());
  }
}

Verdict end_to_end()
{
  Verdict v;
  std::size_t a_runs = 0, b_runs = 0, c_runs = 0;
  for (std::size_t n = 1; n <= 31; n += 2) {
    const Group g = cyclic(n);
    certify(g, Subset::full(g), v, a_runs);
  }
  std::vector<Group> sf;
  for (std::size_t n = 1; n <= 24; ++n)
    sf.push_back(cyclic(n));
  sf.push_back(quaternion8());
  for (const Group& g : sf) {
    const SearchReport r = max_solution_free(g, EquationKind::Square);
    if (!r.exhaustive)
      v.fail(g->name() + " search not exhaustive");
    certify(g, r.best_set, v, b_runs);
  }
  Rng rng(707);
  std::vector<Group> groups;
  for (const Group& g : catalog_groups(64))
    if (g->order() % 2 == 1 && g->order() >= 9)
      groups.push_back(g);
  for (std::size_t i = 0; c_runs < 20; ++i) {
    const Group& g = groups[i % groups.size()];
    const Subset a = random_distinct_squares(g, 0.3 + 0.6 * double(rng.below(100)) / 100, rng);
    if (a.density() < 0.25)
      continue;
    certify(g, a, v, c_runs);
  }
  if (v.pass)
    v.detail = std::to_string(a_runs) + "+" + std::to_string(b_runs) + "+" + std::to_string(c_runs) + " certificates";
  return v;
}

Verdict translation_invariance()
{
  Verdict v;
  Rng rng(808);
  std::size_t n = 0;
  for (const Group& g : catalog_groups(~std::size_t(0) >> 1, 0)) {
    if (g->order() > 128)
      continue;
    for (int i = 0; i < 20; ++i) {
      const Subset a = random_subset(g, 0.3, rng);
      const Elem t = static_cast<Elem>(rng.below(g->order()));
      if (count_triples(translate(t, a, 0), EquationKind::Invariant).total !=
          count_triples(a, EquationKind::Invariant).total)
        v.fail(g->name() + " left translate");
      ++n;
    }
  }
  for (const Group& g : catalog_groups(128, 1))
    for (int i = 0; i < 20; ++i) {
      const Subset a = random_subset(g, 0.3, rng);
      if (count_triples(a, EquationKind::Square).total != count_triples(a, EquationKind::Invariant).total)
        v.fail(g->name() + " abelian coincidence");
      ++n;
    }
  if (v.pass)
    v.detail = std::to_string(n) + " instances";
  return v;
}

Verdict coset_reduction()
{
  Verdict v;
  Rng rng(909);
  std::size_t n = 0;
  for (const Group& g : catalog_groups(128, 0)) {
    const Subset h = largest_abelian_subgroup(g);
    for (int i = 0; i < 100; ++i) {
      const Subset a = random_subset(g, 0.05 + 0.9 * double(rng.below(100)) / 100, rng);
      const CosetTranslate c = best_coset_translate(a, h);
      const std::size_t floor = (a.size() * h.size() + g->order() - 1) / g->order();
      if (c.size < floor || (translate(c.t, h, 0) & a).size() != c.size)
        v.fail(g->name() + " averaging bound");
      ++n;
    }
  }
  if (v.pass)
    v.detail = std::to_string(n) + " sets";
  return v;
}

Verdict replay()
{
  Verdict v;
  Rng rng(1010);
  std::size_t n = 0;
  for (const char* d : {"C13", "F21", "C27", "D10", "product(cyclic(3),cyclic(9))"}) {
    const Group g = load_group(d);
    for (SamplerMode mode : {SamplerMode::Exhaustive, SamplerMode::MonteCarlo}) {
      RunConfig cfg;
      cfg.mode = mode;
      cfg.seed = rng.below(1000);
      cfg.c_count = n % 2 ? 50 : 0.5;
      const Subset a = random_distinct_squares(g, 0.6, rng);
      const std::string first = certificate_text(run_iteration(g, a, cfg));
      const auto doc = nlohmann::json::parse(first);
      const RunConfig embedded = parse_config(doc["config"]["text"].get<std::string>());
      const Subset a2 = Subset::from_hex(g, doc["A"].get<std::string>());
      if (certificate_text(run_iteration(g, a2, embedded)) != first)
        v.fail(std::string(d) + " not byte identical");
      ++n;
    }
  }
  if (v.pass)
    v.detail = std::to_string(n) + " replays";
  return v;
}

} // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle equivalence (counting)", counting_oracle},
      {"solution-free baseline", solution_free_baseline},
      {"system axioms", system_axioms},
      {"certified inclusions", certified_inclusions},
      {"measure calculus identities", measure_identities},
      {"lemma-conclusion recomputation", lemma_recomputation},
      {"end-to-end certificates", end_to_end},
      {"translation invariance", translation_invariance},
      {"coset reduction", coset_reduction},
      {"determinism and replay", replay},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %zu %s: %s (%s; %.1f s)\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures;
}
