#include "ris_sei/errors.hpp"

namespace ris_sei {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingKey: return "MissingKey";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::MalformedDocument: return "MalformedDocument";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyBlock: return "EmptyBlock";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorKind::NegativeVariance: return "NegativeVariance";
    case ErrorKind::InsufficientTrials: return "InsufficientTrials";
    case ErrorKind::UnknownExperiment: return "UnknownExperiment";
    case ErrorKind::BadMagic: return "BadMagic";
    case ErrorKind::TruncatedPayload: return "TruncatedPayload";
    case ErrorKind::UnreadablePath: return "UnreadablePath";
  }
  return "Unknown";
}

namespace {
std::string compose(ErrorKind kind, const std::string& subject, const std::string& detail) {
  std::string msg(to_string(kind));
  if (!subject.empty()) msg += " [" + subject + "]";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}
}  // namespace

Error::Error(ErrorKind kind, std::string subject, const std::string& detail)
    : std::runtime_error(compose(kind, subject, detail)), kind_(kind), subject_(std::move(subject)) {}

}  // namespace ris_sei
