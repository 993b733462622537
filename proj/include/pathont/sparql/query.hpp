#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pathont/rdf/graph.hpp"
#include "pathont/rdf/term.hpp"

namespace pathont::sparql {

using rdf::Iri;
using rdf::Term;

// Variable name without the leading '?'. Blank nodes in a pattern become
// variables named "_:label" that cannot be projected.
struct Var {
  std::string name;
  auto operator<=>(const Var&) const = default;
};

using Slot = std::variant<Var, Term>;

struct TriplePattern {
  Slot subject;
  Slot predicate;
  Slot object;
};

struct QueryAst {
  std::vector<std::string> select_vars;
  bool distinct = false;
  std::optional<Iri> from_graph;
  std::vector<TriplePattern> patterns;
  std::optional<std::size_t> limit;
  // Prefixes in scope, defaults included.
  std::map<std::string, std::string> prefixes;
};

// rdf, rdfs, owl, xsd and obo are predeclared.
const std::map<std::string, std::string>& default_prefixes();

/// SELECT [DISTINCT] vars|* [FROM <g>] [WHERE] { BGP } [LIMIT n].
/// Select variables may be separated by commas or whitespace.
/// QuerySyntax carries line/column; UnsupportedFeature names the construct;
/// a pattern list whose every position is a distinct variable raises CostGuard.
QueryAst parse_query(std::string_view text);

struct ResultTable {
  std::vector<std::string> header;
  std::vector<std::vector<Term>> rows;
};

inline const std::string kDefaultGraphIri = "http://purl.obolibrary.org/obo/merged/HINO";

struct EvalOptions {
  // IRI the store answers FROM for; a different FROM raises GraphMismatch.
  std::string graph_iri = kDefaultGraphIri;
  // Upper bound on returned rows, applied after LIMIT.
  std::optional<std::size_t> row_cap;
};

/// Natural join of the pattern matches, projected, deduplicated under
/// DISTINCT, sorted by cell text and cut at LIMIT. `g` must be sealed.
ResultTable evaluate(const QueryAst& q, const rdf::Graph& g, const EvalOptions& opts = {});

// Join order the evaluator uses: indexes into q.patterns.
std::vector<std::size_t> plan(const QueryAst& q, const rdf::Graph& g);

// Row order used by evaluate.
bool row_less(const std::vector<Term>& a, const std::vector<Term>& b);

// W3C SPARQL 1.1 results formats.
std::string to_json(const ResultTable& t);
std::string to_tsv(const ResultTable& t);

}  // namespace pathont::sparql
