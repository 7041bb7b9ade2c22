#ifndef XZSQ_ERRORS_HPP
#define XZSQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace xzsq {

/// Every failure the library reports carries one of these codes.
enum class Errc {
  InvalidArgument,
  ParseError,
  NonAssociative,
  NotLatinSquare,
  ClosureTooLarge,
  CapExceeded,
  GroupMismatch,
  EmptySet,
  NegativeMeasure,
  BadExponent,
  StepOutOfRange,
  NotInNextLevel,
  BadIndices,
  TailNotContained,
  TailNotSymmetric,
  GlueConditionViolated,
  NotAbelian,
  NotSubgroup,
  NotNested,
  PigeonholeExhausted,
  ZeroFunction,
  NotSymmetricNeighbourhood,
  RetriesExhausted,
  CertificationFailed,
  PreconditionViolated,
  HypothesisNotMet,
  SlackViolated,
  InclusionViolated,
  DistinctSquaresViolated,
  BoundViolated,
  SBelowHalf,
  DichotomyFailed,
  IterationCapExceeded,
  CertificateInvalid,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

inline void require(bool cond, Errc code, const std::string& what)
{
  if (!cond)
    fail(code, what);
}

} // namespace xzsq

#endif // XZSQ_ERRORS_HPP
