#ifndef XZSQ_INCREMENT_HPP
#define XZSQ_INCREMENT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "xzsq/config.hpp"
#include "xzsq/msys.hpp"
#include "xzsq/subset.hpp"

namespace xzsq {

enum class OutcomeKind {
  L1BoundHolds,
  RightIncrement,
  LeftIncrement,
  AnchorFound,
  CountLowerBound,
  LeftSystemIncrement,
  RightSystemIncrement,
};

const char* to_string(OutcomeKind k) noexcept;
OutcomeKind parse_outcome_kind(const std::string& s);

/// The sets and parameters an outcome was computed from, so that it can be
/// recomputed without the original systems.
struct OutcomeContext {
  /// l2_right, l2_left, equalise_right, equalise_left, u1, u2
  std::string origin;
  std::map<std::string, Subset> sets;
  std::map<std::string, double> params;
  std::map<std::string, Elem> elems;
};

struct IncrementOutcome {
  OutcomeKind kind = OutcomeKind::L1BoundHolds;
  std::optional<Elem> z;
  std::optional<Elem> a;
  /// New system and neighbourhood carried by the system increments.
  std::optional<MultiplicativeSystem> system;
  std::optional<Subset> S;
  std::optional<Subset> U, V, W;
  std::map<std::string, double> measured;
  OutcomeContext context;
  /// Outcomes of the lemmas this one was derived from.
  std::vector<IncrementOutcome> sub;
  /// Construction traces (relative periods, systems).
  nlohmann::json log = nlohmann::json::object();

  bool is_increment() const noexcept;
};

struct AnchorResult {
  Elem anchor = 0;
  std::size_t hits = 0;
  std::size_t hits_bound = 0;
  std::size_t square_hits = 0;
};

/// z maximising 1_A * mu_{B_1} over Z = g B_0, with the lower bound alpha(1+eta) - c_slack eps.
IncrementOutcome l2_increment_right(const MultiplicativeSystem& sys, const Subset& a, Elem g, double eta,
                                    const RunConfig& cfg = {});
/// z maximising mu_{B_1} * 1_A over Z = B_0 h^-1.
IncrementOutcome l2_increment_left(const MultiplicativeSystem& sys, const Subset& a, Elem h, double eta,
                                   const RunConfig& cfg = {});

/// L1(mu_A) test of 1_A * mu_{B'_0} against alpha on Z = g B_0 h^-1, else a right increment.
IncrementOutcome equalise_right(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp,
                                const Subset& a, Elem g, Elem h, double eta, const RunConfig& cfg = {});
/// Mirror image for mu_{B'_0} * 1_A, requiring B'_0 inside g B_1 g^-1.
IncrementOutcome equalise_left(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp,
                               const Subset& a, Elem g, Elem h, double eta, const RunConfig& cfg = {});

/// s' in S maximising #{s in S : s'^-1 s in X^2 and s s'^-1 in X^2}.
AnchorResult select_square_anchor(const MultiplicativeSystem& sys_b, const Subset& s, const Subset& x, Elem g,
                                  Elem h);

/// Equalise on both sides at eta/4, then anchor selection.
/// `forced` skips increments and the half-density assertion (saturated density).
IncrementOutcome u1_step(const MultiplicativeSystem& sys_b, const MultiplicativeSystem& sys_bp, const Subset& a,
                         const Subset& x, Elem g, Elem h, double eta, const RunConfig& cfg = {},
                         bool forced = false);

/// Counting case or a system increment for U or V on a 2-step system.
IncrementOutcome u2_step(const MultiplicativeSystem& sys, const Subset& x, const Subset& u, const Subset& v,
                         const Subset& w, const RunConfig& cfg = {}, bool forced = false);

/// #{(r, t) in U x V : r t in W}
std::size_t count_product_triples(const Subset& u, const Subset& v, const Subset& w);

} // namespace xzsq

#endif // XZSQ_INCREMENT_HPP
