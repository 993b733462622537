#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathont/rdf/term.hpp"

namespace pathont::biopax {

using rdf::Iri;

inline constexpr std::string_view kNamespace = "http://www.biopax.org/release/biopax-level3.owl#";

enum class EntityKind {
  Pathway,
  BiochemicalReaction,
  OtherInteraction,
  Protein,
  Complex,
  SmallMolecule,
  Dna,
  Rna,
  PhysicalEntityOther,
};

std::string_view to_string(EntityKind kind);
bool is_interaction(EntityKind kind);
bool is_physical(EntityKind kind);

enum class XrefKind { Unification, Publication, Relationship };

struct XrefRec {
  std::string database;
  std::string accession;
  XrefKind xref_kind = XrefKind::Unification;

  auto operator<=>(const XrefRec&) const = default;
};

struct BioSourceRec {
  Iri id;
  std::string name;
  // NCBI taxonomy id, digits only.
  std::optional<std::string> taxon_xref;
};

struct LocationRec {
  Iri id;
  std::string term;
  // GO accession without the "GO:" prefix, exactly 7 digits.
  std::optional<std::string> go_xref;
};

enum class ParticipantRole { Left, Right, Participant, Controller, Cofactor, Product, Template };

struct ParticipantLink {
  Iri entity;
  ParticipantRole role = ParticipantRole::Participant;
  // Stoichiometric coefficient as written in the source; carried, not modeled.
  std::optional<std::string> stoichiometry;
};

// Interactions and physical entities.
struct BioPaxEntity {
  Iri id;
  EntityKind kind = EntityKind::PhysicalEntityOther;
  // BioPAX class local name, e.g. "Catalysis".
  std::string type_name;
  std::optional<std::string> display_name;
  std::optional<Iri> organism;
  std::optional<Iri> cellular_location;
  std::vector<XrefRec> xrefs;
  // Complex members.
  std::vector<Iri> components;
  std::vector<ParticipantLink> participants;
  // Control interactions: the controlled interaction or pathway.
  std::vector<Iri> controlled;
};

struct PathwayRec {
  Iri id;
  std::string display_name;
  // True when display_name fell back to the local id.
  bool display_name_fallback = false;
  std::optional<Iri> organism;
  std::vector<Iri> step_order;
  std::vector<Iri> components;
  std::vector<XrefRec> xrefs;
};

struct PathwayStepRec {
  Iri id;
  std::vector<Iri> step_processes;
  std::vector<Iri> next_steps;
};

struct EntityReferenceRec {
  Iri id;
  std::string type_name;
  std::optional<std::string> name;
  std::optional<Iri> organism;
  std::vector<XrefRec> xrefs;
};

struct StoichiometryRec {
  Iri id;
  std::optional<Iri> physical_entity;
  std::string coefficient;
};

/// Typed view of one BioPAX Level 3 graph. Each recognized resource sits in
/// exactly one registry; every reference in a record is a key of some
/// registry.
struct BioPaxDocument {
  std::map<Iri, PathwayRec> pathways;
  std::map<Iri, BioPaxEntity> interactions;
  std::map<Iri, BioPaxEntity> physical_entities;
  std::map<Iri, PathwayStepRec> steps;
  std::map<Iri, BioSourceRec> biosources;
  std::map<Iri, LocationRec> locations;
  std::map<Iri, XrefRec> xrefs;
  std::map<Iri, EntityReferenceRec> entity_references;
  std::map<Iri, StoichiometryRec> stoichiometries;
  // Sequence sites, intervals and locations: type name only.
  std::map<Iri, std::string> sequence_features;

  // BioPAX types outside the allowlist: type IRI -> resource count.
  std::map<std::string, std::size_t> skipped_types;
  std::vector<std::string> warnings;

  std::size_t registry_size() const;
  std::size_t skipped_count() const;
  bool empty() const { return registry_size() == 0; }
};

}  // namespace pathont::biopax
