#ifndef XZSQ_PIPELINE_HPP
#define XZSQ_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "xzsq/config.hpp"
#include "xzsq/increment.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

struct IterationState {
  std::size_t i = 0;
  /// B^(i), a 1-step system.
  MultiplicativeSystem system;
  /// X_i with X_i^4 inside B_1^(i).
  Subset X;
  Elem g = 0;
  Elem h = 0;
  /// A cap g B_0 h^-1 (intersected along the chain).
  Subset A;
  double alpha = 0.0;
  /// |X_i| / |B_1^(i)|
  double delta = 0.0;
};

struct StepRecord {
  IterationState state;
  double epsilon = 0.0;
  /// alpha_i (1 + c_inc) > 1: increments are skipped and the counting case is taken.
  bool forced = false;
  Subset Y;
  /// The 2-step system built on Y and its neighbourhood S with S^4 = B'_2.
  MultiplicativeSystem bprime;
  Subset Sprime;
  IncrementOutcome u1;
  std::optional<IncrementOutcome> u2;
  /// Filled when the step ends in an increment.
  std::optional<double> alpha_next;
  std::optional<double> alpha_claimed;
  bool progress_ok = true;
};

enum class CertificateKind { TripleCount, IncrementChainExhausted };

const char* to_string(CertificateKind k) noexcept;

struct Certificate {
  CertificateKind kind = CertificateKind::TripleCount;
  Group group;
  Subset A;
  RunConfig config;
  std::size_t iteration_cap = 0;
  std::optional<Elem> anchor;
  std::optional<Subset> U, V, W;
  std::uint64_t triples_lower_bound = 0;
  std::vector<StepRecord> chain;
};

/// ceil(log(1/alpha)/log(1+c_inc)) + iteration_guard
std::size_t iteration_cap(double alpha, const RunConfig& cfg);

/// Runs the density increment iteration from (G, G, G; G) until the counting case holds or the cap is hit.
/// Every outcome is recomputed by check_outcome before it is accepted.
Certificate run_iteration(const Group& g, const Subset& a, const RunConfig& cfg = {});

/// U, V, W from A_i, the anchor and the 2-step system (equal sizes by trimming ascending ids).
void anchor_sets(const Subset& ai, Elem a, const MultiplicativeSystem& bprime, Subset& u, Subset& v, Subset& w);

} // namespace xzsq

#endif // XZSQ_PIPELINE_HPP
