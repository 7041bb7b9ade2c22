#ifndef XZSQ_MSYS_HPP
#define XZSQ_MSYS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "xzsq/group.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

/// One level (B_{i+}, B_i, B_{i-}) of a multiplicative system.
struct Level {
  Subset plus;
  Subset mid;
  Subset minus;
};

/// (B_{0+}, B_0, B_{0-}; ...; B_{r+}, B_r, B_{r-}; B_{r+1}) with closure parameter epsilon.
struct MultiplicativeSystem {
  Group group;
  std::vector<Level> steps;
  Subset tail;
  double epsilon = 0.0;

  std::size_t r() const noexcept { return steps.size() - 1; }
  std::size_t step_count() const noexcept { return steps.size(); }

  /// B_i, with B_{r+1} the tail.
  const Subset& B(std::size_t i) const;
  const Subset& Bplus(std::size_t i) const { return steps.at(i).plus; }
  const Subset& Bminus(std::size_t i) const { return steps.at(i).minus; }
};

struct Witness {
  std::size_t step = 0;
  Elem x = 0;
  Elem y = 0;
  Elem element = 0;
};

struct AxiomCheck {
  std::string axiom;
  bool pass = true;
  std::string detail;
  std::optional<Witness> witness;
};

struct VerificationReport {
  bool ok = true;
  std::vector<AxiomCheck> checks;
  /// Smallest epsilon for which the cardinality estimates hold.
  double tight_epsilon = 0.0;

  const AxiomCheck* first_failure() const;
};

/// Checks every axiom exactly; the cardinality ratios allow 1e-12 relative rounding.
VerificationReport verify_system(const MultiplicativeSystem& sys);
/// Same as verify_system but at the given epsilon.
VerificationReport verify_system(const MultiplicativeSystem& sys, double epsilon);

/// max_i max(|B_{i+}|/|B_i|, |B_i|/|B_{i-}|) - 1.
double tight_epsilon(const MultiplicativeSystem& sys);

/// Throws CertificationFailed with the first failing axiom.
void require_valid(const MultiplicativeSystem& sys, const std::string& context);

/// (B_{l+}, B_l, B_{l-}; ...; B_{m+}, B_m, B_{m-}; Bstar)
MultiplicativeSystem truncate(const MultiplicativeSystem& sys, std::size_t l, std::size_t m,
                              const Subset& bstar);
/// Concatenation; requires sys2's B_{0+} inside sys's tail. Epsilon is the max of the two.
MultiplicativeSystem glue(const MultiplicativeSystem& sys, const MultiplicativeSystem& sys2);
/// Componentwise g B g^-1.
MultiplicativeSystem conjugate_system(Elem g, const MultiplicativeSystem& sys);
/// (H_0, H_0, H_0; ...; H_r, H_r, H_r; H_{r+1}) for a descending chain of subgroups.
MultiplicativeSystem subgroup_chain_system(const std::vector<Subset>& chain);
/// (A, A, A; {1}) for a symmetric neighbourhood A.
MultiplicativeSystem trivial_action_system(const Subset& a);

/// ||rho_{x^-1}(mu_{B_i}) - mu_{B_i}|| for x in B_{i+1}.
double tv_haar_defect(const MultiplicativeSystem& sys, std::size_t i, Elem x);
/// ||lambda_x(mu_{B_i}) - mu_{B_i}|| for x in B_{i+1}.
double tv_haar_defect_left(const MultiplicativeSystem& sys, std::size_t i, Elem x);
/// 2 - 2|B_{i-}|/|B_i|, an upper bound for both defects.
double haar_defect_bound(const MultiplicativeSystem& sys, std::size_t i);

} // namespace xzsq

#endif // XZSQ_MSYS_HPP
