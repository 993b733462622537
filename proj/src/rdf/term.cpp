#include "pathont/rdf/term.hpp"

#include <cctype>
#include <cstdio>

#include "pathont/error.hpp"

namespace pathont::rdf {

bool Iri::has_scheme(std::string_view text) {
  if (text.empty() || !std::isalpha(static_cast<unsigned char>(text[0]))) {
    return false;
  }
  for (std::size_t i = 1; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c == ':') return true;
    if (!std::isalnum(c) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (value_.empty()) throw Error(ErrorCode::InvalidIri, "empty IRI");
  if (!has_scheme(value_)) {
    throw Error(ErrorCode::InvalidIri, "IRI has no scheme: " + value_);
  }
}

Term Term::iri(std::string value) {
  return Term(TermKind::Iri, std::move(value), {}, {});
}

Term Term::blank(std::string label) {
  return Term(TermKind::Blank, std::move(label), {}, {});
}

Term Term::literal(std::string lexical, std::string datatype,
                   std::string language) {
  if (!datatype.empty() && !language.empty()) {
    throw Error(ErrorCode::PreconditionViolation,
                "literal cannot carry both a datatype and a language tag");
  }
  return Term(TermKind::Literal, std::move(lexical), std::move(datatype),
              std::move(language));
}

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char ch : text) {
    switch (ch) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20 || ch == 0x7f) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X",
                        static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Iri: return "<" + value_ + ">";
    case TermKind::Blank: return "_:" + value_;
    case TermKind::Literal: {
      std::string out = "\"" + escape_literal(value_) + "\"";
      if (!language_.empty()) out += "@" + language_;
      if (!datatype_.empty()) out += "^^<" + datatype_ + ">";
      return out;
    }
  }
  return {};
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::size_t h = std::hash<std::string>{}(t.value());
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::size_t>(t.kind()));
  if (!t.datatype().empty()) mix(std::hash<std::string>{}(t.datatype()));
  if (!t.language().empty()) mix(std::hash<std::string>{}(t.language()));
  return h;
}

std::string local_name(std::string_view iri) {
  if (const auto hash = iri.rfind('#'); hash != std::string_view::npos) {
    return std::string(iri.substr(hash + 1));
  }
  if (const auto slash = iri.rfind('/'); slash != std::string_view::npos) {
    return std::string(iri.substr(slash + 1));
  }
  return std::string(iri);
}

}  // namespace pathont::rdf
