#ifndef XZSQ_MEASURES_HPP
#define XZSQ_MEASURES_HPP

#include <limits>
#include <string>
#include <vector>

#include "xzsq/group.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// Real-valued function on G indexed by element id.
struct FunctionVec {
  Group group;
  std::vector<double> values;

  FunctionVec() = default;
  explicit FunctionVec(Group g) : group(std::move(g)), values(group->order(), 0.0) {}

  double operator[](Elem x) const { return values[x]; }
  double& operator[](Elem x) { return values[x]; }
  std::size_t size() const noexcept { return values.size(); }

  FunctionVec& operator+=(const FunctionVec& o);
  FunctionVec& operator-=(const FunctionVec& o);
  FunctionVec& operator*=(double c);
  friend FunctionVec operator+(FunctionVec a, const FunctionVec& b) { return a += b; }
  friend FunctionVec operator-(FunctionVec a, const FunctionVec& b) { return a -= b; }
  friend FunctionVec operator*(double c, FunctionVec a) { return a *= c; }
};

/// Real-valued (signed) measure on G. weights[x] = mu({x}).
struct MeasureVec {
  Group group;
  std::vector<double> weights;

  MeasureVec() = default;
  explicit MeasureVec(Group g) : group(std::move(g)), weights(group->order(), 0.0) {}

  double operator[](Elem x) const { return weights[x]; }
  double& operator[](Elem x) { return weights[x]; }
  /// Total variation sum |weights|.
  double total() const;
  /// mu(A)
  double mass(const Subset& a) const;
  bool non_negative() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

FunctionVec indicator(const Subset& a);
FunctionVec constant_function(const Group& g, double c);
MeasureVec uniform_measure(const Subset& a);
MeasureVec point_mass(const Group& g, Elem x);
/// The measure with density f against counting measure.
MeasureVec as_measure(const FunctionVec& f);

/// f*mu(x) = sum_y f(x y^-1) mu(y)
FunctionVec convolve(const FunctionVec& f, const MeasureVec& mu);
/// mu*f(x) = sum_y f(y^-1 x) mu(y)
FunctionVec convolve(const MeasureVec& mu, const FunctionVec& f);
/// Pushforward of mu x nu under multiplication.
MeasureVec convolve(const MeasureVec& mu, const MeasureVec& nu);

/// Single value f*mu_A(x), the average of f on xA^-1.
double convolve_at(const FunctionVec& f, const Subset& a, Elem x);
/// Single value mu_A*f(x), the average of f on A^-1 x.
double convolve_at(const Subset& a, const FunctionVec& f, Elem x);

/// ||f||_{L_p(mu)} for non-negative mu; p >= 1 or kInfinity (sup over supp mu).
double lp_norm(const FunctionVec& f, const MeasureVec& mu, double p);
/// <f, g>_{L_2(mu)}
double inner_product(const FunctionVec& f, const FunctionVec& g, const MeasureVec& mu);
/// <f, mu> = <mu, f> = integral of f against mu (real scalars).
double pair(const MeasureVec& mu, const FunctionVec& f);

/// lambda_x(f)(y) = f(x^-1 y)
FunctionVec act_left(Elem x, const FunctionVec& f);
/// rho_x(f)(y) = f(y x)
FunctionVec act_right(Elem x, const FunctionVec& f);
/// lambda_x(mu)(A) = mu(xA)
MeasureVec act_left_measure(Elem x, const MeasureVec& mu);
/// rho_x(mu)(A) = mu(Ax)
MeasureVec act_right_measure(Elem x, const MeasureVec& mu);
/// f~(x) = f(x^-1)
FunctionVec tilde(const FunctionVec& f);
MeasureVec tilde(const MeasureVec& mu);

/// Total variation norm ||mu - nu||.
double tv_distance(const MeasureVec& mu, const MeasureVec& nu);

/// Subset where the measure is non-zero.
Subset support(const MeasureVec& mu);

/// "element,value" rows with a header line.
std::string to_csv(const FunctionVec& f);
std::string to_csv(const MeasureVec& mu);

} // namespace xzsq

#endif // XZSQ_MEASURES_HPP
