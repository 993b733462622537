#pragma once

#include <string>
#include <string_view>

#include "pathont/rdf/graph.hpp"

namespace pathont::rdf {

struct RdfXmlOptions {
  // Base used when the document carries no xml:base. Empty means relative
  // references are an UnresolvableBase error.
  std::string base;
  // Accept rdf:parseType="Resource" and "Collection" (as emitted by OWL
  // serializers). BioPAX input never needs them, so the default rejects
  // every rdf:parseType with UnsupportedRdfConstruct.
  bool allow_parse_type = false;
  // Blank node labels are prefix + a counter in document order.
  std::string blank_prefix = "b";
};

/// Parses the RDF/XML profile written by BioPAX exporters: rdf:about,
/// rdf:ID, rdf:nodeID, rdf:resource, rdf:datatype, xml:lang, xml:base,
/// typed node elements, property attributes and nested node elements.
/// Errors: XmlSyntax, UnsupportedRdfConstruct (with line), UnresolvableBase.
Graph parse_rdf_xml(std::string_view input, const RdfXmlOptions& options = {});

}  // namespace pathont::rdf
