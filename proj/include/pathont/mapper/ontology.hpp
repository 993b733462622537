#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathont/rdf/graph.hpp"
#include "pathont/rdf/term.hpp"

namespace pathont::mapper {

using rdf::Iri;

enum class AxiomKind { SubClassOfNamed, SubClassOfSomeValuesFrom };

struct ClassAxiom {
  Iri subject;
  AxiomKind kind = AxiomKind::SubClassOfNamed;
  // Set only for SubClassOfSomeValuesFrom.
  std::optional<Iri> property;
  Iri target;

  static ClassAxiom named(Iri sub, Iri super);
  static ClassAxiom some(Iri sub, Iri property, Iri filler);

  auto operator<=>(const ClassAxiom&) const = default;
};

struct Annotation {
  Iri property;
  std::string value;

  auto operator<=>(const Annotation&) const = default;
};

/// Classes-only output of a conversion.
struct OntologyDocument {
  // Declared class -> its single label.
  std::map<Iri, std::string> classes;
  std::set<ClassAxiom> axioms;
  std::map<Iri, std::set<Annotation>> annotations;
  // Property -> label.
  std::map<Iri, std::string> object_properties;
  std::map<Iri, std::string> annotation_properties;

  bool empty() const { return classes.empty() && axioms.empty(); }

  // Restrictions become blank nodes labelled from a hash of the axiom, so the
  // same axiom always yields the same node and repeated merges collapse.
  rdf::Graph to_graph() const;
};

// Blank-node label used for a restriction axiom.
std::string restriction_label(const ClassAxiom& axiom);

}  // namespace pathont::mapper
