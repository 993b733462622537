#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pathont/rdf/graph.hpp"

namespace pathont::rdf {

struct TurtleOptions {
  // Base for relative IRI references when the document has no @base.
  std::string base = "file:///";
};

/// Parses the Turtle subset used for ontology extracts: @prefix/@base (and
/// the SPARQL-style PREFIX/BASE), `a`, predicate lists, object lists,
/// quoted/long literals with language tags or datatypes, numeric and boolean
/// shorthand, and labelled blank nodes. Collections and `[ ]` are rejected.
/// Errors: TurtleSyntax and UndefinedPrefix, both with line/column.
Graph parse_turtle(std::string_view input, const TurtleOptions& options = {});

/// Prefixes written in the header of every serialization, sorted by name.
const std::vector<std::pair<std::string, std::string>>& canonical_prefixes();

/// Canonical Turtle: fixed prefix header, subjects grouped and sorted,
/// predicates sorted, objects sorted by kind then text. Equal graphs give
/// identical bytes.
std::string serialize_turtle(const Graph& g);

// Resolves a relative reference against `base` (fragment and path-relative
// forms only; dot segments are kept verbatim).
std::string resolve_iri(std::string_view base, std::string_view ref);

}  // namespace pathont::rdf
