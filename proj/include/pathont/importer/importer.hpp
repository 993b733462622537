#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pathont/rdf/graph.hpp"
#include "pathont/rdf/term.hpp"

namespace pathont::importer {

using rdf::Iri;

enum class IntermediatePolicy { AllIntermediates, NoIntermediates };

struct ImportSpec {
  std::set<Iri> seeds;
  Iri top;
  IntermediatePolicy policy = IntermediatePolicy::AllIntermediates;
  // Copied for every included term. Empty means rdfs:label only.
  std::vector<Iri> annotation_properties;
};

struct ImportModule {
  rdf::Graph graph;
  std::set<Iri> included_terms;
  // Included terms without a label, and similar non-fatal findings.
  std::vector<std::string> warnings;
};

/// Hierarchy closure of `spec.seeds` under `spec.top` in `source`. Only
/// rdfs:subClassOf edges between named classes are followed.
///
/// AllIntermediates keeps every term on some seed-to-top path and all
/// subClassOf edges among them. NoIntermediates keeps only seeds and top,
/// linked by the transitive reduction of source reachability.
///
/// Raises SeedNotFound, TopUnreachable, CycleDetected, or InvalidImportSpec
/// (empty seeds, top among seeds).
ImportModule extract_closure(const rdf::Graph& source, const ImportSpec& spec);

struct MergeResult {
  rdf::Graph graph;
  // One entry per dropped conflicting label.
  std::vector<std::string> warnings;
};

// Triple-set union. A module label for an IRI that already has a different
// label is dropped (first wins).
MergeResult merge(const rdf::Graph& base, const std::vector<ImportModule>& modules);
MergeResult merge(const rdf::Graph& base, const std::vector<rdf::Graph>& graphs);

// key = value spec file.
struct ImportSpecFile {
  std::filesystem::path source;
  Iri top;
  IntermediatePolicy policy = IntermediatePolicy::AllIntermediates;
  std::optional<std::string> seed_prefix;
  std::vector<Iri> annotation_properties;
};

// Relative source paths resolve against `base_dir`.
ImportSpecFile parse_spec_file(std::string_view text, const std::filesystem::path& base_dir);

// Newline-delimited IRI list; blank lines and '#' comments ignored.
std::set<Iri> parse_seed_list(std::string_view text);

// Seeds that carry `prefix` (all if none), minus the top itself.
std::set<Iri> select_seeds(const std::set<Iri>& requested, const std::optional<std::string>& prefix,
                           const Iri& top);

}  // namespace pathont::importer
