#pragma once

#include <optional>
#include <string>

#include "pathont/biopax/document.hpp"
#include "pathont/rdf/graph.hpp"

namespace pathont::biopax {

/// Lifts a parsed BioPAX Level 3 graph into typed records.
///
/// Resources typed with a BioPAX class outside the allowlist are counted in
/// `skipped_types`. A reference to a resource that has no rdf:type at all
/// raises DanglingReference (the message names the referencing triple); a
/// reference into the wrong registry raises ReferenceKindMismatch.
/// References to skipped resources are dropped with a warning. Pathways
/// without a display name fall back to their local id with a warning.
BioPaxDocument extract_document(const rdf::Graph& g);

// Taxon number from the BioSource cross-reference, if any.
std::optional<long> taxon_of(const BioSourceRec& rec);

// Two-column TSV of the skipped-type report, sorted by type IRI.
std::string skipped_report_tsv(const BioPaxDocument& doc);

}  // namespace pathont::biopax
