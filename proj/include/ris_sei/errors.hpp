#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ris_sei {

enum class ErrorKind {
  MissingKey,
  OutOfRange,
  MalformedDocument,
  LengthMismatch,
  EmptyBlock,
  DomainError,
  DegenerateDistribution,
  NegativeVariance,
  InsufficientTrials,
  UnknownExperiment,
  BadMagic,
  TruncatedPayload,
  UnreadablePath,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `subject()` names the offending key,
/// file or quantity when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string subject, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& subject() const noexcept { return subject_; }

 private:
  ErrorKind kind_;
  std::string subject_;
};

}  // namespace ris_sei
