#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pathont/rdf/graph.hpp"

namespace pathont::service {

using rdf::Iri;
using rdf::Term;

struct TermPage {
  Iri iri;
  std::string label;
  // One chain per upward path, each running root -> ... -> iri.
  std::vector<std::vector<Iri>> hierarchy_path;
  bool hierarchy_truncated = false;
  // Named superclasses by label, then "property some Filler" lines.
  std::vector<std::string> asserted_axioms;
  // (class using this term as a filler, rendered axiom)
  std::vector<std::pair<Iri, std::string>> used_by;
  std::vector<std::string> xrefs;
  std::vector<std::string> citations;
  // Label of every IRI appearing above, for navigation.
  std::map<Iri, std::string> labels;
  // The triples the Turtle rendering describes.
  rdf::Graph neighborhood;
};

struct TermPageOptions {
  std::size_t max_paths = 256;
};

// True when `t` carries one of the four declaration types.
bool is_declared(const rdf::Graph& g, const Iri& t);

// rdfs:label (smallest when several), else the local name.
std::string display_label(const rdf::Graph& g, const Term& t);

// Triples with `t` as subject or object, the blank-node structure hanging
// off them (restrictions in either direction, including the class that
// owns a restriction mentioning `t`), and the labels of every IRI named.
rdf::Graph term_neighborhood(const rdf::Graph& g, const Iri& t);

// Throws TermNotFound when `t` is not declared.
TermPage build_term_page(const rdf::Graph& g, const Iri& t,
                         const TermPageOptions& opts = {});

std::string to_json(const TermPage& page);
std::string to_turtle(const TermPage& page);

}  // namespace pathont::service
