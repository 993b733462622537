#pragma once

#include <set>
#include <string>
#include <vector>

#include "pathont/mapper/ontology.hpp"
#include "pathont/rdf/graph.hpp"

namespace pathont::mapper {

struct LintReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// No rdf:type edge points at a declared class, no owl:NamedIndividual, and no
// declared object property is used as a predicate.
LintReport lint_classes_only(const rdf::Graph& g);

// Every owl:someValuesFrom filler is declared as a class in `g` or listed in
// `external`.
LintReport lint_filler_closure(const rdf::Graph& g, const std::set<Iri>& external = {});

// Document-level form: every axiom target is a declared class or external,
// and every class has a non-empty label.
LintReport lint_document(const OntologyDocument& doc, const std::set<Iri>& external);

}  // namespace pathont::mapper
