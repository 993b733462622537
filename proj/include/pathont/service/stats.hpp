#pragma once

#include <compare>
#include <cstddef>
#include <string>

#include "pathont/rdf/graph.hpp"

namespace pathont::service {

struct OntologyStats {
  std::size_t class_count = 0;
  std::size_t object_property_count = 0;
  std::size_t datatype_property_count = 0;
  std::size_t annotation_property_count = 0;

  auto operator<=>(const OntologyStats&) const = default;

  std::string to_json() const;
  // Four "name: count" lines, as printed by `pathont stats`.
  std::string to_text() const;
};

// Counts distinct IRIs typed owl:Class, owl:ObjectProperty,
// owl:DatatypeProperty and owl:AnnotationProperty. Anonymous classes
// (restrictions, blank-node class expressions) are not counted.
OntologyStats compute_stats(const rdf::Graph& g);

}  // namespace pathont::service
