#include "xzsq/group_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
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

std::size_t parse_size(std::string_view s)
{
  s = trim(s);
  require(!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }),
          Errc::ParseError, "expected a non-negative integer, got '" + std::string(s) + "'");
  require(s.size() <= 9, Errc::ParseError, "integer too large: " + std::string(s));
  return static_cast<std::size_t>(std::stoull(std::string(s)));
}

/// Splits on commas that are not nested inside parentheses.
std::vector<std::string_view> split_top_level(std::string_view s)
{
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(')
      ++depth;
    else if (s[i] == ')')
      --depth;
    else if (s[i] == ',' && depth == 0) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
    require(depth >= 0, Errc::ParseError, "unbalanced parentheses");
  }
  require(depth == 0, Errc::ParseError, "unbalanced parentheses");
  parts.push_back(trim(s.substr(start)));
  return parts;
}

Group from_cycle_generators(std::string name, const std::vector<std::string_view>& gens,
                            std::string descriptor)
{
  std::size_t degree = 1;
  for (auto g : gens)
    degree = std::max(degree, max_cycle_point(g));
  std::vector<Permutation> perms;
  for (auto g : gens)
    perms.push_back(parse_cycles(g, degree));
  return from_permutations(std::move(name), perms, degree, std::move(descriptor));
}

} // namespace

std::size_t max_cycle_point(std::string_view text)
{
  std::size_t best = 0, cur = 0;
  bool in_num = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur = cur * 10 + static_cast<std::size_t>(c - '0');
      require(cur <= 255, Errc::ParseError, "permutation degree above 255");
      in_num = true;
    } else {
      if (in_num)
        best = std::max(best, cur);
      cur = 0;
      in_num = false;
    }
  }
  if (in_num)
    best = std::max(best, cur);
  return best;
}

Permutation parse_cycles(std::string_view text, std::size_t degree)
{
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  std::vector<char> used(degree);
  text = trim(text);
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    require(text[i] == '(', Errc::ParseError, "cycle notation expects '(' in '" + std::string(text) + "'");
    const auto close = text.find(')', i);
    require(close != std::string_view::npos, Errc::ParseError, "unterminated cycle");
    std::vector<std::size_t> cyc;
    std::istringstream in(std::string(text.substr(i + 1, close - i - 1)));
    std::string tok;
    while (in >> tok) {
      const auto v = parse_size(tok);
      require(v >= 1 && v <= degree, Errc::ParseError, "cycle point out of range: " + tok);
      require(!used[v - 1], Errc::ParseError, "point repeated in cycle notation: " + tok);
      used[v - 1] = 1;
      cyc.push_back(v - 1);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p[cyc[k]] = static_cast<std::uint32_t>(cyc[(k + 1) % cyc.size()]);
    i = close + 1;
  }
  return p;
}

Group load_group(std::string_view descriptor)
{
  const auto d = trim(descriptor);
  require(!d.empty(), Errc::ParseError, "empty group descriptor");
  if (d.substr(0, 5) == "file:")
    return parse_group_text([&] {
      std::ifstream in(std::string(d.substr(5)));
      require(static_cast<bool>(in), Errc::ParseError, "cannot open group file " + std::string(d.substr(5)));
      std::stringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }(), std::string(d));

  const auto open = d.find('(');
  if (open == std::string_view::npos) {
    if (d == "quaternion8" || d == "Q8")
      return quaternion8();
    for (const auto& e : catalog())
      if (e.name == d)
        return load_group(e.descriptor);
    fail(Errc::ParseError, "unknown group descriptor '" + std::string(d) + "'");
  }
  require(d.back() == ')', Errc::ParseError, "descriptor must end with ')'");
  const auto head = trim(d.substr(0, open));
  const auto body = d.substr(open + 1, d.size() - open - 2);
  if (head == "cyclic")
    return cyclic(parse_size(body));
  if (head == "dihedral")
    return dihedral(parse_size(body));
  if (head == "symmetric")
    return symmetric(parse_size(body));
  if (head == "alternating")
    return alternating(parse_size(body));
  if (head == "product") {
    const auto parts = split_top_level(body);
    require(parts.size() >= 2, Errc::ParseError, "product needs at least two factors");
    Group g = load_group(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i)
      g = direct_product(g, load_group(parts[i]));
    return g;
  }
  if (head == "perm") {
    const auto parts = split_top_level(body);
    return from_cycle_generators(std::string(d), parts, std::string(d));
  }
  fail(Errc::ParseError, "unknown group constructor '" + std::string(head) + "'");
}

Group parse_group_text(std::string_view text, std::string descriptor)
{
  std::vector<std::string> lines;
  {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      const auto t = trim(line);
      if (t.empty() || t.front() == '#')
        continue;
      lines.emplace_back(t);
    }
  }
  require(!lines.empty(), Errc::ParseError, "group file is empty");
  std::istringstream header(lines[0]);
  std::string kw, name, order_text;
  header >> kw >> name >> order_text;
  require(kw == "group" && !name.empty() && !order_text.empty(), Errc::ParseError,
          "group file must start with 'group <name> <order>'");
  const auto order = parse_size(order_text);
  require(order >= 1, Errc::ParseError, "group order must be positive");
  require(lines.size() >= 2, Errc::ParseError, "group file needs a 'table' or 'perm' section");

  if (lines[1] == "table") {
    require(lines.size() == order + 2, Errc::ParseError,
            "table section needs exactly " + std::to_string(order) + " rows");
    std::vector<std::vector<Elem>> rows(order);
    for (std::size_t a = 0; a < order; ++a) {
      std::istringstream in(lines[a + 2]);
      std::string tok;
      while (in >> tok) {
        const auto v = parse_size(tok);
        require(v < order, Errc::NotLatinSquare, "table entry out of range: " + tok);
        rows[a].push_back(static_cast<Elem>(v));
      }
      require(rows[a].size() == order, Errc::NotLatinSquare,
              "row " + std::to_string(a) + " has " + std::to_string(rows[a].size()) + " entries");
    }
    return GroupTable::from_table(name, rows, std::move(descriptor));
  }
  if (lines[1] == "perm") {
    std::vector<std::string_view> gens;
    for (std::size_t i = 2; i < lines.size(); ++i)
      gens.emplace_back(lines[i]);
    auto g = from_cycle_generators(name, gens, std::move(descriptor));
    require(g->order() == order, Errc::ParseError,
            "generators produce a group of order " + std::to_string(g->order()) + ", header says " +
                std::to_string(order));
    return g;
  }
  fail(Errc::ParseError, "expected 'table' or 'perm' after the header");
}

Group read_group_file(const std::string& path)
{
  return load_group("file:" + path);
}

std::string format_group_table(const GroupTable& g)
{
  std::ostringstream out;
  std::string name = g.name();
  std::replace_if(name.begin(), name.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }, '_');
  out << "group " << name << ' ' << g.order() << "\ntable\n";
  for (Elem a = 0; a < g.order(); ++a) {
    for (Elem b = 0; b < g.order(); ++b)
      out << (b ? " " : "") << g.mul(a, b);
    out << '\n';
  }
  return out.str();
}

const std::vector<CatalogEntry>& catalog()
{
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<std::pair<std::string, std::string>> spec;
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 23, 24, 25, 27, 29, 31, 32, 64})
      spec.emplace_back("C" + std::to_string(n), "cyclic(" + std::to_string(n) + ")");
    spec.emplace_back("C2xC2", "product(cyclic(2),cyclic(2))");
    spec.emplace_back("C2xC4", "product(cyclic(2),cyclic(4))");
    spec.emplace_back("C3xC3", "product(cyclic(3),cyclic(3))");
    spec.emplace_back("C2xC2xC2", "product(cyclic(2),cyclic(2),cyclic(2))");
    spec.emplace_back("C4xC4", "product(cyclic(4),cyclic(4))");
    for (int n : {3, 4, 5, 6, 8, 12})
      spec.emplace_back("D" + std::to_string(2 * n), "dihedral(" + std::to_string(n) + ")");
    spec.emplace_back("Q8", "quaternion8");
    spec.emplace_back("S3", "symmetric(3)");
    spec.emplace_back("S4", "symmetric(4)");
    spec.emplace_back("S5", "symmetric(5)");
    spec.emplace_back("A4", "alternating(4)");
    spec.emplace_back("C3xQ8", "product(cyclic(3),quaternion8)");
    spec.emplace_back("C2xD8", "product(cyclic(2),dihedral(4))");
    spec.emplace_back("C3xS3", "product(cyclic(3),symmetric(3))");
    spec.emplace_back("F21", "perm((1 2 3 4 5 6 7),(2 3 5)(4 7 6))");
    std::vector<CatalogEntry> out;
    for (auto& [name, d] : spec) {
      auto g = load_group(d);
      out.push_back({name, d, g->order(), g->abelian()});
    }
    return out;
  }();
  return entries;
}

Subset parse_subset(const Group& g, std::string_view text)
{
  const auto t = trim(text);
  if (t == "all")
    return Subset::full(g);
  if (t == "none" || t == "{}")
    return Subset(g);
  if (t.find(':') != std::string_view::npos)
    return Subset::from_hex(g, t);
  Subset s(g);
  std::string cleaned(t);
  for (char& c : cleaned)
    if (c == '{' || c == '}' || c == ',' || c == '[' || c == ']')
      c = ' ';
  std::istringstream in(cleaned);
  std::string tok;
  while (in >> tok) {
    const auto v = parse_size(tok);
    require(v < g->order(), Errc::InvalidArgument, "element " + tok + " out of range");
    s.insert(static_cast<Elem>(v));
  }
  return s;
}

} // namespace xzsq
