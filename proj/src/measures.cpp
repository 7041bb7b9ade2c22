#include "xzsq/measures.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "xzsq/errors.hpp"

namespace xzsq {

namespace {

void check_same(const Group& a, const Group& b)
{
  require(a && b, Errc::InvalidArgument, "function or measure without a group");
  require(same_group(*a, *b), Errc::GroupMismatch, "operands belong to different groups");
}

std::string format_double(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

} // namespace

FunctionVec& FunctionVec::operator+=(const FunctionVec& o)
{
  check_same(group, o.group);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] += o.values[i];
  return *this;
}

FunctionVec& FunctionVec::operator-=(const FunctionVec& o)
{
  check_same(group, o.group);
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] -= o.values[i];
  return *this;
}

FunctionVec& FunctionVec::operator*=(double c)
{
  for (auto& v : values)
    v *= c;
  return *this;
}

double MeasureVec::total() const
{
  double t = 0;
  for (double w : weights)
    t += std::abs(w);
  return t;
}

double MeasureVec::mass(const Subset& a) const
{
  check_same(group, a.group());
  double m = 0;
  a.for_each([&](Elem x) { m += weights[x]; });
  return m;
}

bool MeasureVec::non_negative() const
{
  for (double w : weights)
    if (w < 0)
      return false;
  return true;
}

FunctionVec indicator(const Subset& a)
{
  FunctionVec f(a.group());
  a.for_each([&](Elem x) { f[x] = 1.0; });
  return f;
}

FunctionVec constant_function(const Group& g, double c)
{
  FunctionVec f(g);
  for (auto& v : f.values)
    v = c;
  return f;
}

MeasureVec uniform_measure(const Subset& a)
{
  require(!a.empty(), Errc::EmptySet, "uniform measure of the empty set");
  MeasureVec mu(a.group());
  const double w = 1.0 / static_cast<double>(a.size());
  a.for_each([&](Elem x) { mu[x] = w; });
  return mu;
}

MeasureVec point_mass(const Group& g, Elem x)
{
  require(x < g->order(), Errc::InvalidArgument, "point mass outside the group");
  MeasureVec mu(g);
  mu[x] = 1.0;
  return mu;
}

MeasureVec as_measure(const FunctionVec& f)
{
  MeasureVec mu(f.group);
  mu.weights = f.values;
  return mu;
}

FunctionVec convolve(const FunctionVec& f, const MeasureVec& mu)
{
  check_same(f.group, mu.group);
  const auto& g = *f.group;
  const auto n = static_cast<Elem>(g.order());
  FunctionVec out(f.group);
  for (Elem y = 0; y < n; ++y) {
    const double w = mu.weights[y];
    if (w == 0)
      continue;
    const Elem yi = g.inv(y);
    for (Elem x = 0; x < n; ++x)
      out.values[x] += f.values[g.mul(x, yi)] * w;
  }
  return out;
}

FunctionVec convolve(const MeasureVec& mu, const FunctionVec& f)
{
  check_same(f.group, mu.group);
  const auto& g = *f.group;
  const auto n = static_cast<Elem>(g.order());
  FunctionVec out(f.group);
  for (Elem y = 0; y < n; ++y) {
    const double w = mu.weights[y];
    if (w == 0)
      continue;
    const Elem* row = g.row(g.inv(y));
    for (Elem x = 0; x < n; ++x)
      out.values[x] += f.values[row[x]] * w;
  }
  return out;
}

MeasureVec convolve(const MeasureVec& mu, const MeasureVec& nu)
{
  check_same(mu.group, nu.group);
  const auto& g = *mu.group;
  const auto n = static_cast<Elem>(g.order());
  MeasureVec out(mu.group);
  for (Elem x = 0; x < n; ++x) {
    if (mu.weights[x] == 0)
      continue;
    const Elem* row = g.row(x);
    for (Elem y = 0; y < n; ++y)
      if (nu.weights[y] != 0)
        out.weights[row[y]] += mu.weights[x] * nu.weights[y];
  }
  return out;
}

double convolve_at(const FunctionVec& f, const Subset& a, Elem x)
{
  check_same(f.group, a.group());
  require(!a.empty(), Errc::EmptySet, "convolution with the empty set");
  const auto& g = *f.group;
  double s = 0;
  a.for_each([&](Elem y) { s += f.values[g.mul(x, g.inv(y))]; });
  return s / static_cast<double>(a.size());
}

double convolve_at(const Subset& a, const FunctionVec& f, Elem x)
{
  check_same(f.group, a.group());
  require(!a.empty(), Errc::EmptySet, "convolution with the empty set");
  const auto& g = *f.group;
  double s = 0;
  a.for_each([&](Elem y) { s += f.values[g.mul(g.inv(y), x)]; });
  return s / static_cast<double>(a.size());
}

double lp_norm(const FunctionVec& f, const MeasureVec& mu, double p)
{
  check_same(f.group, mu.group);
  require(mu.non_negative(), Errc::NegativeMeasure, "L_p norm needs a non-negative measure");
  require(p >= 1 || std::isinf(p), Errc::BadExponent, "L_p norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0;
    for (std::size_t x = 0; x < f.size(); ++x)
      if (mu.weights[x] > 0)
        m = std::max(m, std::abs(f.values[x]));
    return m;
  }
  double s = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    if (mu.weights[x] > 0)
      s += std::pow(std::abs(f.values[x]), p) * mu.weights[x];
  return std::pow(s, 1.0 / p);
}

double inner_product(const FunctionVec& f, const FunctionVec& g, const MeasureVec& mu)
{
  check_same(f.group, g.group);
  check_same(f.group, mu.group);
  require(mu.non_negative(), Errc::NegativeMeasure, "inner product needs a non-negative measure");
  double s = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    s += f.values[x] * g.values[x] * mu.weights[x];
  return s;
}

double pair(const MeasureVec& mu, const FunctionVec& f)
{
  check_same(f.group, mu.group);
  double s = 0;
  for (std::size_t x = 0; x < f.size(); ++x)
    s += f.values[x] * mu.weights[x];
  return s;
}

FunctionVec act_left(Elem x, const FunctionVec& f)
{
  const auto& g = *f.group;
  const Elem* row = g.row(g.inv(x));
  FunctionVec out(f.group);
  for (Elem y = 0; y < g.order(); ++y)
    out.values[y] = f.values[row[y]];
  return out;
}

FunctionVec act_right(Elem x, const FunctionVec& f)
{
  const auto& g = *f.group;
  FunctionVec out(f.group);
  for (Elem y = 0; y < g.order(); ++y)
    out.values[y] = f.values[g.mul(y, x)];
  return out;
}

MeasureVec act_left_measure(Elem x, const MeasureVec& mu)
{
  const auto& g = *mu.group;
  const Elem* row = g.row(x);
  MeasureVec out(mu.group);
  for (Elem y = 0; y < g.order(); ++y)
    out.weights[y] = mu.weights[row[y]];
  return out;
}

MeasureVec act_right_measure(Elem x, const MeasureVec& mu)
{
  const auto& g = *mu.group;
  MeasureVec out(mu.group);
  for (Elem y = 0; y < g.order(); ++y)
    out.weights[y] = mu.weights[g.mul(y, x)];
  return out;
}

FunctionVec tilde(const FunctionVec& f)
{
  FunctionVec out(f.group);
  for (Elem y = 0; y < f.size(); ++y)
    out.values[y] = f.values[f.group->inv(y)];
  return out;
}

MeasureVec tilde(const MeasureVec& mu)
{
  MeasureVec out(mu.group);
  for (Elem y = 0; y < mu.weights.size(); ++y)
    out.weights[y] = mu.weights[mu.group->inv(y)];
  return out;
}

double tv_distance(const MeasureVec& mu, const MeasureVec& nu)
{
  check_same(mu.group, nu.group);
  double s = 0;
  for (std::size_t x = 0; x < mu.weights.size(); ++x)
    s += std::abs(mu.weights[x] - nu.weights[x]);
  return s;
}

Subset support(const MeasureVec& mu)
{
  Subset s(mu.group);
  for (Elem x = 0; x < mu.weights.size(); ++x)
    if (mu.weights[x] != 0)
      s.insert(x);
  return s;
}

std::string to_csv(const FunctionVec& f)
{
  std::ostringstream out;
  out << "element,value\n";
  for (std::size_t x = 0; x < f.size(); ++x)
    out << x << ',' << format_double(f.values[x]) << '\n';
  return out.str();
}

std::string to_csv(const MeasureVec& mu)
{
  std::ostringstream out;
  out << "element,weight\n";
  for (std::size_t x = 0; x < mu.weights.size(); ++x)
    out << x << ',' << format_double(mu.weights[x]) << '\n';
  return out.str();
}

} // namespace xzsq
