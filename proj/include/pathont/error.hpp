#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pathont {

enum class ErrorCode {
  InvalidIri,
  XmlSyntax,
  UnsupportedRdfConstruct,
  UnresolvableBase,
  TurtleSyntax,
  UndefinedPrefix,
  GraphSealed,
  DanglingReference,
  ReferenceKindMismatch,
  DuplicateSourceKey,
  CounterOverflow,
  RegistryConflict,
  NonNumericPmid,
  PreconditionViolation,
  InvalidImportSpec,
  SeedNotFound,
  TopUnreachable,
  CycleDetected,
  QuerySyntax,
  UnsupportedFeature,
  CostGuard,
  GraphMismatch,
  TermNotFound,
  Io,
};

std::string_view to_string(ErrorCode code);

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Every failure raised by the library. `code()` identifies the failure
/// class; `position()` is set for errors tied to a location in some input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<SourcePos> pos = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourcePos>& position() const noexcept { return pos_; }
  // Message without the "Code: " prefix and position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::optional<SourcePos> pos_;
  std::string detail_;
};

}  // namespace pathont
