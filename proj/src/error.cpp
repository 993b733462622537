#include "pathont/error.hpp"

namespace pathont {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidIri: return "InvalidIri";
    case ErrorCode::XmlSyntax: return "XmlSyntax";
    case ErrorCode::UnsupportedRdfConstruct: return "UnsupportedRdfConstruct";
    case ErrorCode::UnresolvableBase: return "UnresolvableBase";
    case ErrorCode::TurtleSyntax: return "TurtleSyntax";
    case ErrorCode::UndefinedPrefix: return "UndefinedPrefix";
    case ErrorCode::GraphSealed: return "GraphSealed";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::ReferenceKindMismatch: return "ReferenceKindMismatch";
    case ErrorCode::DuplicateSourceKey: return "DuplicateSourceKey";
    case ErrorCode::CounterOverflow: return "CounterOverflow";
    case ErrorCode::RegistryConflict: return "RegistryConflict";
    case ErrorCode::NonNumericPmid: return "NonNumericPmid";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::InvalidImportSpec: return "InvalidImportSpec";
    case ErrorCode::SeedNotFound: return "SeedNotFound";
    case ErrorCode::TopUnreachable: return "TopUnreachable";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::QuerySyntax: return "QuerySyntax";
    case ErrorCode::UnsupportedFeature: return "UnsupportedFeature";
    case ErrorCode::CostGuard: return "CostGuard";
    case ErrorCode::GraphMismatch: return "GraphMismatch";
    case ErrorCode::TermNotFound: return "TermNotFound";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message,
                           const std::optional<SourcePos>& pos) {
  std::string out(to_string(code));
  out += ": ";
  out += message;
  if (pos) {
    out += " (line " + std::to_string(pos->line);
    if (pos->column != 0) out += ", column " + std::to_string(pos->column);
    out += ")";
  }
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<SourcePos> pos)
    : std::runtime_error(format_message(code, message, pos)),
      code_(code),
      pos_(pos),
      detail_(message) {}

}  // namespace pathont
