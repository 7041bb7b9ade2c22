#include "xzsq/errors.hpp"

namespace xzsq {

const char* to_string(Errc code) noexcept
{
  switch (code) {
  case Errc::InvalidArgument: return "InvalidArgument";
  case Errc::ParseError: return "ParseError";
  case Errc::NonAssociative: return "NonAssociative";
  case Errc::NotLatinSquare: return "NotLatinSquare";
  case Errc::ClosureTooLarge: return "ClosureTooLarge";
  case Errc::CapExceeded: return "CapExceeded";
  case Errc::GroupMismatch: return "GroupMismatch";
  case Errc::EmptySet: return "EmptySet";
  case Errc::NegativeMeasure: return "NegativeMeasure";
  case Errc::BadExponent: return "BadExponent";
  case Errc::StepOutOfRange: return "StepOutOfRange";
  case Errc::NotInNextLevel: return "NotInNextLevel";
  case Errc::BadIndices: return "BadIndices";
  case Errc::TailNotContained: return "TailNotContained";
  case Errc::TailNotSymmetric: return "TailNotSymmetric";
  case Errc::GlueConditionViolated: return "GlueConditionViolated";
  case Errc::NotAbelian: return "NotAbelian";
  case Errc::NotSubgroup: return "NotSubgroup";
  case Errc::NotNested: return "NotNested";
  case Errc::PigeonholeExhausted: return "PigeonholeExhausted";
  case Errc::ZeroFunction: return "ZeroFunction";
  case Errc::NotSymmetricNeighbourhood: return "NotSymmetricNeighbourhood";
  case Errc::RetriesExhausted: return "RetriesExhausted";
  case Errc::CertificationFailed: return "CertificationFailed";
  case Errc::PreconditionViolated: return "PreconditionViolated";
  case Errc::HypothesisNotMet: return "HypothesisNotMet";
  case Errc::SlackViolated: return "SlackViolated";
  case Errc::InclusionViolated: return "InclusionViolated";
  case Errc::DistinctSquaresViolated: return "DistinctSquaresViolated";
  case Errc::BoundViolated: return "BoundViolated";
  case Errc::SBelowHalf: return "SBelowHalf";
  case Errc::DichotomyFailed: return "DichotomyFailed";
  case Errc::IterationCapExceeded: return "IterationCapExceeded";
  case Errc::CertificateInvalid: return "CertificateInvalid";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what),
    code_(code)
{}

void fail(Errc code, const std::string& what)
{
  throw Error(code, what);
}

} // namespace xzsq
