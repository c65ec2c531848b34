#include "lr/error.hpp"

#include <sstream>

namespace lr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::UsageMismatch: return "UsageMismatch";
    case ErrorKind::MissingAnnotation: return "MissingAnnotation";
    case ErrorKind::ScopeError: return "ScopeError";
    case ErrorKind::NoMeet: return "NoMeet";
    case ErrorKind::BoundUsageError: return "BoundUsageError";
    case ErrorKind::EnvUsageError: return "EnvUsageError";
    case ErrorKind::EnvActMismatch: return "EnvActMismatch";
    case ErrorKind::RenUsageError: return "RenUsageError";
    case ErrorKind::SingleSubstUsageError: return "SingleSubstUsageError";
    case ErrorKind::NonDillType: return "NonDillType";
    case ErrorKind::ForbiddenBang: return "ForbiddenBang";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::RuleMismatch: return "RuleMismatch";
    case ErrorKind::ZoneSplitError: return "ZoneSplitError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnknownSemiring: return "UnknownSemiring";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Defect: return "Defect";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message) {
  std::string out(to_string(kind));
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, std::string message)
    : std::runtime_error(compose(kind, message)),
      kind_(kind),
      detail_(std::move(message)) {}

std::string Error::report() const {
  std::ostringstream os;
  os << to_string(kind_) << ": " << detail_;
  if (!rule.empty()) os << " [rule " << rule << "]";
  if (!path.empty() || !rule.empty()) {
    os << " [path /";
    for (std::size_t i = 0; i < path.size(); ++i) {
      if (i) os << '/';
      os << path[i];
    }
    os << "]";
  }
  if (!lhs.empty() || !rhs.empty()) os << " [" << lhs << " <| " << rhs << "]";
  if (coordinate) os << " [coordinate " << *coordinate << "]";
  return os.str();
}

void fail(ErrorKind kind, std::string message) {
  throw Error(kind, std::move(message));
}

}  // namespace lr
