#include "xzsq/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "xzsq/errors.hpp"

namespace xzsq {

namespace {

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view key, std::string_view v)
{
  const std::string s(v);
  const auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash != std::string::npos) {
      const double a = std::stod(s.substr(0, slash), &used);
      require(used == slash, Errc::ParseError, "bad number");
      const std::string rest = s.substr(slash + 1);
      const double b = std::stod(rest, &used);
      require(used == rest.size() && b != 0, Errc::ParseError, "bad number");
      return a / b;
    }
    const double a = std::stod(s, &used);
    require(used == s.size(), Errc::ParseError, "bad number");
    return a;
  } catch (const std::logic_error&) {
    fail(Errc::ParseError, "config key '" + std::string(key) + "' expects a number, got '" + s + "'");
  }
}

std::uint64_t parse_uint(std::string_view key, std::string_view v)
{
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  require(res.ec == std::errc() && res.ptr == end, Errc::ParseError,
          "config key '" + std::string(key) + "' expects a non-negative integer, got '" + std::string(v) + "'");
  return out;
}

std::string real_text(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

const char* to_string(SamplerMode m) noexcept
{
  return m == SamplerMode::Exhaustive ? "exhaustive" : "montecarlo";
}

SamplerMode parse_sampler_mode(std::string_view s)
{
  if (s == "exhaustive")
    return SamplerMode::Exhaustive;
  if (s == "montecarlo")
    return SamplerMode::MonteCarlo;
  fail(Errc::ParseError, "sampler mode must be 'exhaustive' or 'montecarlo', got '" + std::string(s) + "'");
}

void RunConfig::validate() const
{
  auto pos = [](double v, const char* name) {
    require(v > 0, Errc::InvalidArgument, std::string(name) + " must be positive");
  };
  pos(c, "c");
  pos(c_prime, "c_prime");
  pos(c_slack, "c_slack");
  pos(c_inc, "c_inc");
  pos(c_count, "c_count");
  pos(c_p, "c_p");
  pos(c_eta, "c_eta");
  pos(c_rel, "c_rel");
  pos(tolerance, "tolerance");
  require(c <= 1, Errc::InvalidArgument, "c must be at most 1");
  require(tuple_length >= 1 && samples >= 1, Errc::InvalidArgument, "tuple_length and samples must be positive");
  require(group_cap >= 1, Errc::InvalidArgument, "group_cap must be positive");
}

SamplerConfig RunConfig::sampler(double eta, double p, std::uint64_t salt) const
{
  SamplerConfig s;
  s.eta = eta;
  s.p = p;
  s.k = tuple_length;
  s.samples = samples;
  s.seed = seed ^ (0x9e3779b97f4a7c15ull * (salt + 1));
  s.mode = mode;
  return s;
}

void apply_config_entry(RunConfig& cfg, std::string_view key, std::string_view value)
{
  key = trim(key);
  value = trim(value);
  if (key == "c")
    cfg.c = parse_real(key, value);
  else if (key == "c_prime" || key == "c'")
    cfg.c_prime = parse_real(key, value);
  else if (key == "c_slack")
    cfg.c_slack = parse_real(key, value);
  else if (key == "c_inc")
    cfg.c_inc = parse_real(key, value);
  else if (key == "c_count")
    cfg.c_count = parse_real(key, value);
  else if (key == "c_p")
    cfg.c_p = parse_real(key, value);
  else if (key == "c_eta")
    cfg.c_eta = parse_real(key, value);
  else if (key == "c_rel")
    cfg.c_rel = parse_real(key, value);
  else if (key == "retry_cap")
    cfg.retry_cap = parse_uint(key, value);
  else if (key == "iteration_guard")
    cfg.iteration_guard = parse_uint(key, value);
  else if (key == "tuple_length")
    cfg.tuple_length = parse_uint(key, value);
  else if (key == "samples")
    cfg.samples = parse_uint(key, value);
  else if (key == "mode")
    cfg.mode = parse_sampler_mode(value);
  else if (key == "seed")
    cfg.seed = parse_uint(key, value);
  else if (key == "tolerance")
    cfg.tolerance = parse_real(key, value);
  else if (key == "group_cap")
    cfg.group_cap = parse_uint(key, value);
  else
    fail(Errc::ParseError, "unknown config key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base)
{
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const auto t = trim(line);
    if (t.empty())
      continue;
    const auto eq = t.find('=');
    require(eq != std::string_view::npos, Errc::ParseError,
            "config line " + std::to_string(lineno) + " is not key=value");
    apply_config_entry(base, t.substr(0, eq), t.substr(eq + 1));
  }
  base.validate();
  return base;
}

RunConfig read_config_file(const std::string& path, RunConfig base)
{
  std::ifstream in(path);
  require(static_cast<bool>(in), Errc::ParseError, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

std::string format_config(const RunConfig& cfg)
{
  std::ostringstream out;
  out << "c=" << real_text(cfg.c) << '\n'
      << "c_prime=" << real_text(cfg.c_prime) << '\n'
      << "c_slack=" << real_text(cfg.c_slack) << '\n'
      << "c_inc=" << real_text(cfg.c_inc) << '\n'
      << "c_count=" << real_text(cfg.c_count) << '\n'
      << "c_p=" << real_text(cfg.c_p) << '\n'
      << "c_eta=" << real_text(cfg.c_eta) << '\n'
      << "c_rel=" << real_text(cfg.c_rel) << '\n'
      << "retry_cap=" << cfg.retry_cap << '\n'
      << "iteration_guard=" << cfg.iteration_guard << '\n'
      << "tuple_length=" << cfg.tuple_length << '\n'
      << "samples=" << cfg.samples << '\n'
      << "mode=" << to_string(cfg.mode) << '\n'
      << "seed=" << cfg.seed << '\n'
      << "tolerance=" << real_text(cfg.tolerance) << '\n'
      << "group_cap=" << cfg.group_cap << '\n';
  return out.str();
}

} // namespace xzsq
