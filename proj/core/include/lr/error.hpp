#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lr {

enum class ErrorKind {
  TypeMismatch,
  UsageMismatch,
  MissingAnnotation,
  ScopeError,
  NoMeet,
  BoundUsageError,
  EnvUsageError,
  EnvActMismatch,
  RenUsageError,
  SingleSubstUsageError,
  NonDillType,
  ForbiddenBang,
  HypothesisFailed,
  RuleMismatch,
  ZoneSplitError,
  DimensionMismatch,
  IndexOutOfRange,
  UnknownSemiring,
  ParseError,
  Defect,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Usage failures additionally carry the
/// rule, the path of child indices from the root, the two sides of the failed
/// inequality and the first failing coordinate.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

  std::string rule;
  std::vector<std::size_t> path;
  std::string lhs;
  std::string rhs;
  std::optional<std::size_t> coordinate;

  /// One-line rendering with all populated diagnostic fields.
  std::string report() const;

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] void fail(ErrorKind kind, std::string message);

}  // namespace lr
