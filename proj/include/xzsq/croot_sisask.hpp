#ifndef XZSQ_CROOT_SISASK_HPP
#define XZSQ_CROOT_SISASK_HPP

#include "json.hpp"

#include "xzsq/config.hpp"
#include "xzsq/measures.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// ||rho_{x^-1}(F) - F||_{L_p(mu_G)} for every x, with F = f * mu_X.
std::vector<double> right_period_defects(const FunctionVec& f, const Subset& x, double p);

/// All x with ||rho_{x^-1}(f*mu_X) - f*mu_X||_{L_p(mu_G)} <= threshold (exhaustive), or the
/// verified periods obtained from sampled approximants (Monte-Carlo).
Subset almost_periods(const FunctionVec& f, const Subset& x, const SamplerConfig& cfg);

struct NeighbourhoodResult {
  Subset S;
  double density = 0.0;
  bool certified = false;
  nlohmann::json log;
};

/// Symmetric neighbourhood S with S^k inside X^4, certified by exact products.
NeighbourhoodResult bogolioubov_neighbourhood(const Subset& x, std::uint64_t k, const RunConfig& cfg = {});

struct SystemResult {
  MultiplicativeSystem system;
  Subset S;
  bool certified = false;
  nlohmann::json log;
};

/// (r+1)-step epsilon-closed system with B_{0+} inside X^4 and tail S^4.
SystemResult build_system(const Subset& x, std::size_t r, double epsilon, const RunConfig& cfg = {});

/// X with X^4 inside g S^4 g^-1 and h S^4 h^-1.
NeighbourhoodResult conjugate_intersection(const Subset& s, Elem g, Elem h, const RunConfig& cfg = {});

struct RelativePeriodsResult {
  Subset T;
  /// Defect of every element of X^8 that was evaluated (indexed by id, negative if skipped).
  std::vector<double> defects;
  double threshold = 0.0;
  double sup_norm = 0.0;
  nlohmann::json log;
};

/// ||rho_{t^-1}(f*mu_A) - f*mu_A||_{L_p(mu_{B_1})}
double relative_right_defect(const MultiplicativeSystem& sys, const FunctionVec& conv, Elem t, double p);
/// ||lambda_t(mu_A*f) - mu_A*f||_{L_p(mu_{B_1})}
double relative_left_defect(const MultiplicativeSystem& sys, const FunctionVec& conv, Elem t, double p);

/// Symmetric T inside X^2 with every t in T^4 within eta * slack * ||f||_{L_inf(mu_{B_{0+}})}.
RelativePeriodsResult relative_almost_periods(const MultiplicativeSystem& sys, const Subset& x,
                                              const FunctionVec& f, const Subset& a,
                                              const SamplerConfig& cfg, double slack);
/// Left-hand version, for lambda_t(mu_A * f).
RelativePeriodsResult left_relative_almost_periods(const MultiplicativeSystem& sys, const Subset& x,
                                                   const FunctionVec& f, const Subset& a,
                                                   const SamplerConfig& cfg, double slack);

} // namespace xzsq

#endif // XZSQ_CROOT_SISASK_HPP
