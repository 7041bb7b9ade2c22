#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "xzsq/abelian.hpp"
#include "xzsq/certificate.hpp"
#include "xzsq/counting.hpp"
#include "xzsq/croot_sisask.hpp"
#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"
#include "xzsq/sampling.hpp"
#include "xzsq/serialize.hpp"

using namespace xzsq;
using nlohmann::json;

namespace {

struct Common {
  std::string group = "cyclic(7)";
  std::string subset;
  std::string eq = "SQUARE";
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string config;
  std::string out;
  std::string format = "json";
};

void emit(const Common& c, const std::string& text)
{
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f)
    fail(Errc::InvalidArgument, "cannot write " + c.out);
  f << text;
}

std::string csv_row(const std::vector<std::string>& cells)
{
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i)
      s += ',';
    s += cells[i];
  }
  return s + "\n";
}

std::string num(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunConfig load_config(const Common& c)
{
  RunConfig cfg = c.config.empty() ? RunConfig{} : read_config_file(c.config);
  if (c.seed_set)
    cfg.seed = c.seed;
  cfg.validate();
  return cfg;
}

Group load_checked(const Common& c, const RunConfig& cfg)
{
  Group g = load_group(c.group);
  require(g->order() <= cfg.group_cap, Errc::CapExceeded,
          "group order " + std::to_string(g->order()) + " above group_cap " + std::to_string(cfg.group_cap));
  return g;
}

int cmd_catalog(const Common& c)
{
  if (c.format == "csv") {
    std::string s = csv_row({"name", "descriptor", "order", "abelian"});
    for (const auto& e : catalog())
      s += csv_row({e.name, "\"" + e.descriptor + "\"", std::to_string(e.order), e.abelian ? "1" : "0"});
    emit(c, s);
    return 0;
  }
  json arr = json::array();
  for (const auto& e : catalog())
    arr.push_back({{"name", e.name}, {"descriptor", e.descriptor}, {"order", e.order}, {"abelian", e.abelian}});
  emit(c, arr.dump(2) + "\n");
  return 0;
}

int cmd_count(const Common& c)
{
  const RunConfig cfg = load_config(c);
  const Group g = load_checked(c, cfg);
  const Subset a = parse_subset(g, c.subset.empty() ? "all" : c.subset);
  const EquationKind eq = parse_equation(c.eq);
  const TripleCount t = count_triples(a, eq);
  if (c.format == "csv") {
    emit(c, csv_row({"group", "order", "eq", "size", "total", "nontrivial"}) +
                csv_row({g->name(), std::to_string(g->order()), to_string(eq), std::to_string(a.size()),
                         std::to_string(t.total), std::to_string(t.nontrivial)}));
    return 0;
  }
  json j = {{"group", g->name()},
            {"order", g->order()},
            {"eq", to_string(eq)},
            {"subset", a.to_hex()},
            {"size", a.size()},
            {"total", t.total},
            {"nontrivial", t.nontrivial},
            {"solution_free", t.nontrivial == 0}};
  emit(c, j.dump(2) + "\n");
  return 0;
}

int cmd_search(const Common& c, std::uint64_t budget, bool timing)
{
  const RunConfig cfg = load_config(c);
  const Group g = load_checked(c, cfg);
  const EquationKind eq = parse_equation(c.eq);
  const SearchReport r = max_solution_free(g, eq, budget, cfg.seed);
  const double ms = std::chrono::duration<double, std::milli>(r.elapsed).count();
  if (c.format == "csv") {
    std::vector<std::string> head = {"group", "order", "eq", "max_size", "density", "exhaustive", "nodes"};
    std::vector<std::string> row = {g->name(), std::to_string(g->order()), to_string(eq),
                                    std::to_string(r.best_size), num(double(r.best_size) / g->order()),
                                    r.exhaustive ? "1" : "0", std::to_string(r.nodes_explored)};
    if (timing) {
      head.push_back("elapsed_ms");
      row.push_back(num(ms));
    }
    emit(c, csv_row(head) + csv_row(row));
    return 0;
  }
  json j = {{"group", g->name()},
            {"order", g->order()},
            {"eq", to_string(eq)},
            {"best_set", r.best_set.to_hex()},
            {"elements", r.best_set.elements()},
            {"best_size", r.best_size},
            {"density", double(r.best_size) / g->order()},
            {"exhaustive", r.exhaustive},
            {"nodes_explored", r.nodes_explored}};
  if (timing)
    j["elapsed_ms"] = ms;
  emit(c, j.dump(2) + "\n");
  return 0;
}

struct VerifyParams {
  std::uint64_t k = 3;
  std::size_t r = 1;
  double epsilon = 0.0;
  double width = 0.5;
  double density = 0.5;
  Elem g = 0;
  Elem h = 0;
};

int cmd_verify(const Common& c, const std::string& lemma, const VerifyParams& vp)
{
  const RunConfig cfg = load_config(c);
  const Group g = load_checked(c, cfg);
  Rng rng(cfg.seed);
  auto input = [&]() {
    if (!c.subset.empty())
      return parse_subset(g, c.subset);
    return random_symmetric(g, vp.density, rng);
  };
  json j = {{"lemma", lemma}, {"group", g->name()}, {"seed", cfg.seed}};
  bool ok = false;
  if (lemma == "bogolioubov") {
    const Subset x = input();
    const NeighbourhoodResult r = bogolioubov_neighbourhood(x, vp.k, cfg);
    const bool inc = power_set_k(r.S, vp.k).is_subset_of(power_set_k(x, 4));
    ok = r.certified && inc;
    j.update({{"X", x.to_hex()}, {"k", vp.k}, {"S", r.S.to_hex()}, {"density", r.density},
              {"certified", ok}, {"log", r.log}});
  } else if (lemma == "conjugate_intersection") {
    const Subset s = input();
    const NeighbourhoodResult r = conjugate_intersection(s, vp.g, vp.h, cfg);
    const Subset s4 = power_set_k(s, 4);
    ok = r.certified &&
         power_set_k(r.S, 4).is_subset_of(conjugate_set(vp.g, s4) & conjugate_set(vp.h, s4));
    j.update({{"S", s.to_hex()}, {"g", vp.g}, {"h", vp.h}, {"X", r.S.to_hex()}, {"certified", ok}, {"log", r.log}});
  } else if (lemma == "build_system") {
    const Subset x = input();
    const SystemResult r = build_system(x, vp.r, vp.epsilon, cfg);
    const VerificationReport rep = verify_system(r.system);
    ok = r.certified && rep.ok;
    j.update({{"X", x.to_hex()}, {"system", system_to_json(r.system)}, {"report", report_to_json(rep)},
              {"certified", ok}, {"log", r.log}});
  } else if (lemma == "bohr_system") {
    BohrSpec spec{g, {}, vp.width};
    const AbelianDecomposition dec = decompose_abelian(g);
    std::vector<std::int64_t> t;
    for (auto d : dec.moduli)
      t.push_back(static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(d))));
    spec.frequencies.push_back(t);
    const BohrSystemResult r = bohr_system(spec, vp.epsilon > 0 ? vp.epsilon : 0.25);
    const VerificationReport rep = verify_system(r.system);
    ok = rep.ok;
    j.update({{"frequencies", spec.frequencies}, {"width", vp.width}, {"l", r.l}, {"j", r.j},
              {"system", system_to_json(r.system)}, {"report", report_to_json(rep)}, {"certified", ok}});
  } else if (lemma == "subgroup_chain") {
    const Subset x = c.subset.empty() ? Subset::full(g) : parse_subset(g, c.subset);
    const Subset h = generated_subgroup(x);
    const MultiplicativeSystem sys = subgroup_chain_system({Subset::full(g), h, Subset::singleton(g, 0)});
    const VerificationReport rep = verify_system(sys);
    ok = rep.ok;
    j.update({{"system", system_to_json(sys)}, {"report", report_to_json(rep)}, {"certified", ok}});
  } else {
    fail(Errc::InvalidArgument, "unknown lemma: " + lemma +
                                    " (bogolioubov, conjugate_intersection, build_system, bohr_system, subgroup_chain)");
  }
  emit(c, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int cmd_pipeline(const Common& c)
{
  const RunConfig cfg = load_config(c);
  const Group g = load_checked(c, cfg);
  const Subset a = parse_subset(g, c.subset.empty() ? "all" : c.subset);
  const Certificate cert = run_iteration(g, a, cfg);
  emit(c, certificate_text(cert));
  return 0;
}

int cmd_check(const Common& c, const std::string& path, bool replay)
{
  std::ifstream f(path, std::ios::binary);
  if (!f)
    fail(Errc::InvalidArgument, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  const CertCheckReport rep = check_certificate_text(ss.str(), {replay});
  emit(c, rep.to_json().dump(2) + "\n");
  return rep.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Finite-group progression counting toolkit"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--group", c.group, "group descriptor or catalog name");
    s->add_option("--subset", c.subset, "subset: order:hex, {0,1,3}, all, none");
    s->add_option("--eq", c.eq, "SQUARE or INVARIANT");
    s->add_option("--seed", c.seed, "random seed")->each([&](const std::string&) { c.seed_set = true; });
    s->add_option("--config", c.config, "key=value constants file");
    s->add_option("--out", c.out, "output path (default stdout)");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  };

  auto* cat = app.add_subcommand("catalog", "list the built-in groups");
  add_common(cat);
  auto* cnt = app.add_subcommand("count", "count solutions in a subset");
  add_common(cnt);
  auto* sea = app.add_subcommand("search", "largest solution-free subset");
  add_common(sea);
  std::uint64_t budget = 200'000'000;
  bool timing = false;
  sea->add_option("--budget", budget, "node budget of the branch and bound");
  sea->add_flag("--timing", timing, "include elapsed time");
  auto* ver = app.add_subcommand("verify", "run and certify one construction");
  add_common(ver);
  std::string lemma;
  VerifyParams vp;
  ver->add_option("lemma", lemma, "bogolioubov | conjugate_intersection | build_system | bohr_system | subgroup_chain")
      ->required();
  ver->add_option("--k", vp.k, "power k in S^k inside X^4");
  ver->add_option("--r", vp.r, "number of steps minus one");
  ver->add_option("--epsilon", vp.epsilon, "closure parameter");
  ver->add_option("--width", vp.width, "Bohr width");
  ver->add_option("--density", vp.density, "density of the random input set");
  ver->add_option("--left", vp.g, "first conjugating element g");
  ver->add_option("--right", vp.h, "second conjugating element h");
  auto* pip = app.add_subcommand("pipeline", "run the increment iteration and emit a certificate");
  add_common(pip);
  auto* chk = app.add_subcommand("check-cert", "check a certificate");
  add_common(chk);
  std::string cert_path;
  bool no_replay = false;
  chk->add_option("certificate", cert_path, "certificate path")->required();
  chk->add_flag("--no-replay", no_replay, "skip the byte-identical re-run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*cat)
      return cmd_catalog(c);
    if (*cnt)
      return cmd_count(c);
    if (*sea)
      return cmd_search(c, budget, timing);
    if (*ver)
      return cmd_verify(c, lemma, vp);
    if (*pip)
      return cmd_pipeline(c);
    if (*chk)
      return cmd_check(c, cert_path, !no_replay);
  } catch (const Error& e) {
    json j = {{"error", to_string(e.code())}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    json j = {{"error", "Exception"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 2;
  }
  return 2;
}
