#include "xzsq/serialize.hpp"

#include "xzsq/errors.hpp"
#include "xzsq/group_io.hpp"

namespace xzsq {

json subset_to_json(const Subset& s)
{
  return s.to_hex();
}

Subset subset_from_json(const Group& g, const json& j)
{
  return Subset::from_hex(g, j.get<std::string>());
}

json system_to_json(const MultiplicativeSystem& sys)
{
  json steps = json::array();
  for (const auto& l : sys.steps)
    steps.push_back({{"plus", l.plus.to_hex()}, {"mid", l.mid.to_hex()}, {"minus", l.minus.to_hex()}});
  return {{"epsilon", sys.epsilon}, {"steps", steps}, {"tail", sys.tail.to_hex()}};
}

MultiplicativeSystem system_from_json(const Group& g, const json& j)
{
  MultiplicativeSystem sys;
  sys.group = g;
  sys.epsilon = j.at("epsilon").get<double>();
  for (const auto& l : j.at("steps"))
    sys.steps.push_back({subset_from_json(g, l.at("plus")), subset_from_json(g, l.at("mid")),
                         subset_from_json(g, l.at("minus"))});
  sys.tail = subset_from_json(g, j.at("tail"));
  return sys;
}

json report_to_json(const VerificationReport& rep)
{
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json e = {{"axiom", c.axiom}, {"pass", c.pass}, {"detail", c.detail}};
    if (c.witness)
      e["witness"] = {{"step", c.witness->step}, {"x", c.witness->x}, {"y", c.witness->y},
                      {"element", c.witness->element}};
    checks.push_back(std::move(e));
  }
  return {{"ok", rep.ok}, {"tight_epsilon", rep.tight_epsilon}, {"checks", checks}};
}

json outcome_to_json(const IncrementOutcome& out)
{
  json j;
  j["kind"] = to_string(out.kind);
  if (out.z)
    j["z"] = *out.z;
  if (out.a)
    j["a"] = *out.a;
  if (out.system)
    j["system"] = system_to_json(*out.system);
  if (out.S)
    j["S"] = out.S->to_hex();
  if (out.U)
    j["U"] = out.U->to_hex();
  if (out.V)
    j["V"] = out.V->to_hex();
  if (out.W)
    j["W"] = out.W->to_hex();
  j["measured"] = out.measured;
  json ctx;
  ctx["origin"] = out.context.origin;
  json sets = json::object();
  for (const auto& [k, v] : out.context.sets)
    sets[k] = v.to_hex();
  ctx["sets"] = sets;
  ctx["params"] = out.context.params;
  ctx["elems"] = out.context.elems;
  j["context"] = ctx;
  json sub = json::array();
  for (const auto& s : out.sub)
    sub.push_back(outcome_to_json(s));
  j["sub"] = sub;
  if (!out.log.empty())
    j["log"] = out.log;
  return j;
}

IncrementOutcome outcome_from_json(const Group& g, const json& j)
{
  IncrementOutcome out;
  out.kind = parse_outcome_kind(j.at("kind").get<std::string>());
  if (j.contains("z"))
    out.z = j["z"].get<Elem>();
  if (j.contains("a"))
    out.a = j["a"].get<Elem>();
  if (j.contains("system"))
    out.system = system_from_json(g, j["system"]);
  if (j.contains("S"))
    out.S = subset_from_json(g, j["S"]);
  if (j.contains("U"))
    out.U = subset_from_json(g, j["U"]);
  if (j.contains("V"))
    out.V = subset_from_json(g, j["V"]);
  if (j.contains("W"))
    out.W = subset_from_json(g, j["W"]);
  out.measured = j.at("measured").get<std::map<std::string, double>>();
  const json& ctx = j.at("context");
  out.context.origin = ctx.at("origin").get<std::string>();
  for (const auto& [k, v] : ctx.at("sets").items())
    out.context.sets.emplace(k, subset_from_json(g, v));
  out.context.params = ctx.at("params").get<std::map<std::string, double>>();
  out.context.elems = ctx.at("elems").get<std::map<std::string, Elem>>();
  for (const auto& s : j.at("sub"))
    out.sub.push_back(outcome_from_json(g, s));
  if (j.contains("log"))
    out.log = j["log"];
  return out;
}

json config_to_json(const RunConfig& cfg)
{
  return {{"c", cfg.c},
          {"c_prime", cfg.c_prime},
          {"c_slack", cfg.c_slack},
          {"c_inc", cfg.c_inc},
          {"c_count", cfg.c_count},
          {"c_p", cfg.c_p},
          {"c_eta", cfg.c_eta},
          {"c_rel", cfg.c_rel},
          {"retry_cap", cfg.retry_cap},
          {"iteration_guard", cfg.iteration_guard},
          {"tuple_length", cfg.tuple_length},
          {"samples", cfg.samples},
          {"mode", to_string(cfg.mode)},
          {"seed", cfg.seed},
          {"tolerance", cfg.tolerance},
          {"group_cap", cfg.group_cap},
          {"text", format_config(cfg)}};
}

json group_to_json(const GroupTable& g)
{
  json j = {{"name", g.name()}, {"descriptor", g.descriptor()}, {"order", g.order()}, {"hash", g.hash_hex()}};
  if (g.descriptor().empty())
    j["table"] = g.rows();
  return j;
}

Group group_from_json(const json& j)
{
  Group g;
  const std::string desc = j.value("descriptor", "");
  if (!desc.empty())
    g = load_group(desc);
  else
    g = GroupTable::from_table(j.at("name").get<std::string>(),
                               j.at("table").get<std::vector<std::vector<Elem>>>());
  require(g->hash_hex() == j.at("hash").get<std::string>(), Errc::CertificateInvalid,
          "group hash mismatch: table " + g->hash_hex() + ", recorded " + j.at("hash").get<std::string>());
  return g;
}

} // namespace xzsq
