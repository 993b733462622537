#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

namespace pathont::rdf {

// Absolute IRI. Equality is byte equality of the text.
class Iri {
 public:
  explicit Iri(std::string value);

  const std::string& str() const noexcept { return value_; }

  auto operator<=>(const Iri&) const = default;
  bool operator==(const Iri&) const = default;

  // True when `text` starts with an RFC 3986 scheme ("http:", "urn:", ...).
  static bool has_scheme(std::string_view text);

 private:
  std::string value_;
};

enum class TermKind : unsigned char { Iri = 0, Blank = 1, Literal = 2 };

/// One RDF node: an IRI, a blank node (label without the "_:" prefix) or a
/// literal. Literals carry either a datatype or a language tag, never both.
/// Terms order by kind, then text, then datatype, then language.
class Term {
 public:
  Term() = default;

  static Term iri(std::string value);
  static Term iri(const Iri& value) { return iri(value.str()); }
  static Term blank(std::string label);
  static Term literal(std::string lexical, std::string datatype = {},
                      std::string language = {});

  TermKind kind() const noexcept { return kind_; }
  bool is_iri() const noexcept { return kind_ == TermKind::Iri; }
  bool is_blank() const noexcept { return kind_ == TermKind::Blank; }
  bool is_literal() const noexcept { return kind_ == TermKind::Literal; }

  // IRI text, blank label, or literal lexical form.
  const std::string& value() const noexcept { return value_; }
  const std::string& datatype() const noexcept { return datatype_; }
  const std::string& language() const noexcept { return language_; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;

  // N-Triples style rendering; used in messages and TSV output.
  std::string to_string() const;

 private:
  Term(TermKind kind, std::string value, std::string datatype,
       std::string language)
      : kind_(kind),
        value_(std::move(value)),
        datatype_(std::move(datatype)),
        language_(std::move(language)) {}

  TermKind kind_ = TermKind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// Escapes for a quoted literal body: backslash, quote, and control chars.
std::string escape_literal(std::string_view text);

// Fragment after '#', else the segment after the last '/', else the text.
std::string local_name(std::string_view iri);

}  // namespace pathont::rdf
