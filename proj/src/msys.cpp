#include "xzsq/msys.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xzsq/errors.hpp"
#include "xzsq/measures.hpp"

namespace xzsq {

namespace {

constexpr double kRatioRounding = 1e-12;

std::string label(const char* base, std::size_t i, const char* suffix = "")
{
  return std::string(base) + "_" + std::to_string(i) + suffix;
}

/// Finds x, y in T with e = y * b * x for some b in B; used only to report witnesses.
std::optional<Witness> product_witness(const Subset& t, const Subset& b, Elem e, std::size_t step)
{
  const auto& g = t.table();
  for (Elem y : t.elements())
    for (Elem x : t.elements())
      if (b.contains(g.mul(g.mul(g.inv(y), e), g.inv(x))))
        return Witness{step, x, y, e};
  return std::nullopt;
}

/// Finds x, y in T with e not in y * B * x.
std::optional<Witness> coverage_witness(const Subset& t, const Subset& b, Elem e, std::size_t step)
{
  const auto& g = t.table();
  for (Elem y : t.elements())
    for (Elem x : t.elements())
      if (!b.contains(g.mul(g.mul(g.inv(y), e), g.inv(x))))
        return Witness{step, x, y, e};
  return std::nullopt;
}

} // namespace

const Subset& MultiplicativeSystem::B(std::size_t i) const
{
  if (i == steps.size())
    return tail;
  return steps.at(i).mid;
}

const AxiomCheck* VerificationReport::first_failure() const
{
  for (const auto& c : checks)
    if (!c.pass)
      return &c;
  return nullptr;
}

double tight_epsilon(const MultiplicativeSystem& sys)
{
  double worst = 1.0;
  for (const auto& lv : sys.steps) {
    if (lv.mid.empty() || lv.minus.empty())
      return kInfinity;
    worst = std::max(worst, static_cast<double>(lv.plus.size()) / static_cast<double>(lv.mid.size()));
    worst = std::max(worst, static_cast<double>(lv.mid.size()) / static_cast<double>(lv.minus.size()));
  }
  return worst - 1.0;
}

VerificationReport verify_system(const MultiplicativeSystem& sys)
{
  return verify_system(sys, sys.epsilon);
}

VerificationReport verify_system(const MultiplicativeSystem& sys, double epsilon)
{
  VerificationReport rep;
  auto add = [&rep](AxiomCheck c) {
    rep.ok = rep.ok && c.pass;
    rep.checks.push_back(std::move(c));
  };

  if (sys.steps.empty() || !sys.group) {
    add({"structure", false, "system has no levels", std::nullopt});
    return rep;
  }
  {
    AxiomCheck c{"epsilon_range", epsilon >= 0 && epsilon <= 1, "", std::nullopt};
    if (!c.pass)
      c.detail = "epsilon outside [0,1]";
    add(c);
  }

  // Ordered chain B_{0+}, B_0, B_{0-}, ..., B_{r+1}.
  std::vector<std::pair<std::string, const Subset*>> chain;
  for (std::size_t i = 0; i < sys.steps.size(); ++i) {
    chain.emplace_back(label("B", i, "+"), &sys.steps[i].plus);
    chain.emplace_back(label("B", i), &sys.steps[i].mid);
    chain.emplace_back(label("B", i, "-"), &sys.steps[i].minus);
  }
  chain.emplace_back(label("B", sys.steps.size()), &sys.tail);

  for (const auto& [name, s] : chain) {
    if (!s->valid() || !same_group(s->table(), *sys.group)) {
      add({"group", false, name + " is not a subset of the system's group", std::nullopt});
      return rep;
    }
  }

  for (const auto& [name, s] : chain) {
    AxiomCheck c{"symmetric:" + name, true, "", std::nullopt};
    if (!s->contains(GroupTable::identity())) {
      c.pass = false;
      c.detail = name + " does not contain the identity";
    } else if (auto bad = s->first_not_in(inverse_set(*s))) {
      c.pass = false;
      c.detail = name + " is not closed under inversion";
      c.witness = Witness{0, *bad, 0, *bad};
    }
    add(c);
  }

  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& [outer_name, outer] = chain[k];
    const auto& [inner_name, inner] = chain[k + 1];
    AxiomCheck c{"nesting:" + inner_name + "<=" + outer_name, true, "", std::nullopt};
    if (auto bad = inner->first_not_in(*outer)) {
      c.pass = false;
      c.detail = "element " + std::to_string(*bad) + " of " + inner_name + " is not in " + outer_name;
      c.witness = Witness{k / 3, 0, 0, *bad};
    }
    add(c);
  }

  for (std::size_t i = 0; i < sys.steps.size(); ++i) {
    const auto& lv = sys.steps[i];
    const Subset& next = sys.B(i + 1);
    const Subset next_inv = inverse_set(next);

    // y B_i x inside B_{i+} for all x, y in B_{i+1}  <=>  B_{i+1} B_i B_{i+1} inside B_{i+}.
    {
      AxiomCheck c{"closure_upper:" + std::to_string(i), true, "", std::nullopt};
      const Subset prod = product_set(next, lv.mid, next);
      if (auto bad = prod.first_not_in(lv.plus)) {
        c.pass = false;
        c.witness = product_witness(next, lv.mid, *bad, i);
        std::ostringstream os;
        os << "y B_" << i << " x contains " << *bad << " outside B_" << i << "+";
        if (c.witness)
          os << " (x=" << c.witness->x << ", y=" << c.witness->y << ")";
        c.detail = os.str();
      }
      add(c);
    }
    // B_{i-} inside y B_i x for all x, y  <=>  B_{i+1}^-1 B_{i-} B_{i+1}^-1 inside B_i.
    {
      AxiomCheck c{"closure_lower:" + std::to_string(i), true, "", std::nullopt};
      const Subset prod = product_set(next_inv, lv.minus, next_inv);
      if (prod.first_not_in(lv.mid)) {
        c.pass = false;
        std::optional<Witness> w;
        lv.minus.for_each([&](Elem e) {
          if (!w)
            w = coverage_witness(next, lv.mid, e, i);
        });
        c.witness = w;
        std::ostringstream os;
        os << "B_" << i << "- is not covered by every y B_" << i << " x";
        if (w)
          os << " (element " << w->element << ", x=" << w->x << ", y=" << w->y << ")";
        c.detail = os.str();
      }
      add(c);
    }
    {
      AxiomCheck c{"cardinality:" + std::to_string(i), true, "", std::nullopt};
      const double p = static_cast<double>(lv.plus.size());
      const double m = static_cast<double>(lv.mid.size());
      const double n = static_cast<double>(lv.minus.size());
      const double f = (1.0 + epsilon) * (1.0 + kRatioRounding);
      if (!(p <= f * m) || !(m <= f * n)) {
        c.pass = false;
        std::ostringstream os;
        os << "|B_" << i << "+|=" << lv.plus.size() << ", |B_" << i << "|=" << lv.mid.size() << ", |B_" << i
           << "-|=" << lv.minus.size() << " exceed ratio 1+" << epsilon;
        c.detail = os.str();
      }
      add(c);
    }
  }
  rep.tight_epsilon = tight_epsilon(sys);
  return rep;
}

void require_valid(const MultiplicativeSystem& sys, const std::string& context)
{
  const auto rep = verify_system(sys);
  if (const auto* bad = rep.first_failure())
    fail(Errc::CertificationFailed, context + ": " + bad->axiom + " " + bad->detail);
}

MultiplicativeSystem truncate(const MultiplicativeSystem& sys, std::size_t l, std::size_t m,
                              const Subset& bstar)
{
  require(l <= m && m < sys.steps.size(), Errc::BadIndices,
          "truncate needs 0 <= l <= m <= r, got l=" + std::to_string(l) + ", m=" + std::to_string(m));
  check_same_group(bstar, sys.tail);
  require(is_symmetric_neighbourhood(bstar), Errc::TailNotSymmetric,
          "new tail is not a symmetric neighbourhood of the identity");
  require(bstar.is_subset_of(sys.B(m + 1)), Errc::TailNotContained,
          "new tail is not contained in B_" + std::to_string(m + 1));
  MultiplicativeSystem out;
  out.group = sys.group;
  out.epsilon = sys.epsilon;
  out.steps.assign(sys.steps.begin() + static_cast<std::ptrdiff_t>(l),
                   sys.steps.begin() + static_cast<std::ptrdiff_t>(m + 1));
  out.tail = bstar;
  return out;
}

MultiplicativeSystem glue(const MultiplicativeSystem& sys, const MultiplicativeSystem& sys2)
{
  check_same_group(sys.tail, sys2.tail);
  require(!sys2.steps.empty(), Errc::InvalidArgument, "cannot glue an empty system");
  require(sys2.steps[0].plus.is_subset_of(sys.tail), Errc::GlueConditionViolated,
          "B'_{0+} is not contained in B_{r+1}");
  MultiplicativeSystem out = sys;
  out.steps.insert(out.steps.end(), sys2.steps.begin(), sys2.steps.end());
  out.tail = sys2.tail;
  out.epsilon = std::max(sys.epsilon, sys2.epsilon);
  return out;
}

MultiplicativeSystem conjugate_system(Elem g, const MultiplicativeSystem& sys)
{
  MultiplicativeSystem out;
  out.group = sys.group;
  out.epsilon = sys.epsilon;
  for (const auto& lv : sys.steps)
    out.steps.push_back({conjugate_set(g, lv.plus), conjugate_set(g, lv.mid), conjugate_set(g, lv.minus)});
  out.tail = conjugate_set(g, sys.tail);
  return out;
}

MultiplicativeSystem subgroup_chain_system(const std::vector<Subset>& chain)
{
  require(chain.size() >= 2, Errc::InvalidArgument, "a subgroup chain needs at least two subgroups");
  for (std::size_t i = 0; i < chain.size(); ++i) {
    check_same_group(chain[0], chain[i]);
    require(is_subgroup(chain[i]), Errc::NotSubgroup, "chain entry " + std::to_string(i) + " is not a subgroup");
    if (i > 0)
      require(chain[i].is_subset_of(chain[i - 1]), Errc::NotNested,
              "chain entry " + std::to_string(i) + " is not inside entry " + std::to_string(i - 1));
  }
  MultiplicativeSystem out;
  out.group = chain[0].group();
  out.epsilon = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    out.steps.push_back({chain[i], chain[i], chain[i]});
  out.tail = chain.back();
  return out;
}

MultiplicativeSystem trivial_action_system(const Subset& a)
{
  require(is_symmetric_neighbourhood(a), Errc::NotSymmetricNeighbourhood,
          "trivial action set needs a symmetric neighbourhood of the identity");
  MultiplicativeSystem out;
  out.group = a.group();
  out.epsilon = 0.0;
  out.steps.push_back({a, a, a});
  out.tail = Subset::singleton(a.group(), GroupTable::identity());
  return out;
}

namespace {

void check_defect_args(const MultiplicativeSystem& sys, std::size_t i, Elem x)
{
  require(i < sys.steps.size(), Errc::StepOutOfRange, "step index " + std::to_string(i) + " out of range");
  require(x < sys.group->order() && sys.B(i + 1).contains(x), Errc::NotInNextLevel,
          "element " + std::to_string(x) + " is not in B_" + std::to_string(i + 1));
}

} // namespace

double tv_haar_defect(const MultiplicativeSystem& sys, std::size_t i, Elem x)
{
  check_defect_args(sys, i, x);
  const auto mu = uniform_measure(sys.B(i));
  return tv_distance(act_right_measure(sys.group->inv(x), mu), mu);
}

double tv_haar_defect_left(const MultiplicativeSystem& sys, std::size_t i, Elem x)
{
  check_defect_args(sys, i, x);
  const auto mu = uniform_measure(sys.B(i));
  return tv_distance(act_left_measure(x, mu), mu);
}

double haar_defect_bound(const MultiplicativeSystem& sys, std::size_t i)
{
  require(i < sys.steps.size(), Errc::StepOutOfRange, "step index " + std::to_string(i) + " out of range");
  return 2.0 - 2.0 * static_cast<double>(sys.steps[i].minus.size()) / static_cast<double>(sys.steps[i].mid.size());
}

} // namespace xzsq
