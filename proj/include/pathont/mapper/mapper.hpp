#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pathont/biopax/document.hpp"
#include "pathont/biopax/reader.hpp"
#include "pathont/mapper/id_registry.hpp"
#include "pathont/mapper/ontology.hpp"

namespace pathont::mapper {

struct MapperOptions {
  // File stem of the BioPAX input; first half of every source key.
  std::string source_id = "source";
  // Link pathways to their organism with occurs_in instead of located_in.
  bool organism_occurs_in = false;
};

struct Fallback {
  std::string kind;    // "label", "organism", "location"
  std::string source;  // source IRI
  std::string detail;

  auto operator<=>(const Fallback&) const = default;
};

struct ConversionReport {
  std::string source_id;
  std::size_t classes_declared = 0;
  std::size_t classes_minted = 0;
  std::map<std::string, std::size_t> axioms_by_kind;
  // Restriction count keyed by property label.
  std::map<std::string, std::size_t> restrictions_by_property;
  std::size_t external_terms = 0;
  std::size_t citations_simplified = 0;
  std::vector<Fallback> fallbacks;
  // Source keys of pathways with participants from another organism.
  std::vector<std::string> mixed_organism_pathways;
  std::map<std::string, std::size_t> skipped_types;
  std::vector<std::string> warnings;

  std::string to_json() const;
};

struct Conversion {
  OntologyDocument ontology;
  // External IRIs used as filler or superclass, to be imported.
  std::set<Iri> import_requests;
  ConversionReport report;
};

std::string source_key(std::string_view source_id, const Iri& id);

// All-or-nothing: on error the registry is left untouched.
Conversion convert(const biopax::BioPaxDocument& doc, IdRegistry& reg,
                   const MapperOptions& opts = {});

Iri route_superclass(const biopax::PathwayRec& p, std::optional<long> organism_taxon);
Iri route_superclass(const biopax::BioPaxEntity& e);

// NCBITaxon class when the taxon is known, otherwise the registry's mint for
// the BioSource (second member false).
std::pair<Iri, bool> map_species(const biopax::BioSourceRec& b, IdRegistry& reg,
                                 std::string_view source_id);

// located_in restriction for `owner`. A location without a GO accession gets
// a minted filler (second member false).
std::pair<ClassAxiom, bool> map_location(const Iri& owner, const biopax::LocationRec& l,
                                         IdRegistry& reg, std::string_view source_id);

// (citation property, "PMID:n"). Raises NonNumericPmid for a bad accession and
// PreconditionViolation for non-publication xrefs.
std::pair<Iri, std::string> simplify_citation(const biopax::XrefRec& x);

// Newline-delimited IRI list.
std::string import_requests_text(const std::set<Iri>& requests);

}  // namespace pathont::mapper
