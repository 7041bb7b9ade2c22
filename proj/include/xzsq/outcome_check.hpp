#ifndef XZSQ_OUTCOME_CHECK_HPP
#define XZSQ_OUTCOME_CHECK_HPP

#include <string>
#include <vector>

#include "xzsq/increment.hpp"

namespace xzsq {

struct OutcomeCheckReport {
  bool ok = true;
  std::size_t keys_checked = 0;
  std::vector<std::string> mismatches;
};

/// Recomputes every measured value of an outcome (and its sub-outcomes) by direct
/// loops over the group table, independently of the measures module.
OutcomeCheckReport check_outcome(const IncrementOutcome& out, double tol = 1e-9);

} // namespace xzsq

#endif // XZSQ_OUTCOME_CHECK_HPP
