#pragma once

#include <string>
#include <string_view>

#include "pathont/rdf/vocab.hpp"

// Backbone identifiers the converter aligns against.
namespace pathont::mapper::known {

inline std::string obo(std::string_view local) {
  return std::string(rdf::vocab::kObo) + std::string(local);
}

// BFO
inline const std::string kEntity = obo("BFO_0000001");
inline const std::string kContinuant = obo("BFO_0000002");
inline const std::string kOccurrent = obo("BFO_0000003");
inline const std::string kIndependentContinuant = obo("BFO_0000004");
inline const std::string kMaterialEntity = obo("BFO_0000040");
inline const std::string kProcess = obo("BFO_0000015");

// INO
inline const std::string kInteraction = obo("INO_0000002");
inline const std::string kInteractionNetwork = obo("INO_0000003");
inline const std::string kPathway = obo("INO_0000004");
inline const std::string kHumanMolecularPathway = obo("INO_0000021");

// Relations
inline const std::string kHasPart = obo("BFO_0000051");
inline const std::string kLocatedIn = obo("RO_0001025");
inline const std::string kPrecedes = obo("BFO_0000063");
inline const std::string kOccursIn = obo("BFO_0000066");
inline const std::string kPathwayOrder = std::string(rdf::vocab::kPathont) + "pathwayOrder";

// Annotation properties
inline const std::string kHasDbXref = std::string(rdf::vocab::kOboInOwl) + "hasDbXref";
inline const std::string kCitation = std::string(rdf::vocab::kDcTerms) + "bibliographicCitation";

// Material anchors
inline const std::string kProtein = obo("PR_000000001");
inline const std::string kComplex = obo("GO_0032991");
inline const std::string kChemicalEntity = obo("CHEBI_24431");
inline const std::string kDna = obo("CHEBI_16991");
inline const std::string kRna = obo("CHEBI_33697");
inline const std::string kCellularComponent = obo("GO_0005575");

// Artifact-local holders
inline const std::string kPathwayStep = std::string(rdf::vocab::kPathont) + "PathwayStep";
inline const std::string kUnresolvedOrganism =
    std::string(rdf::vocab::kPathont) + "UnresolvedOrganism";

// Prefixes for rewritten external references.
inline const std::string kNcbiTaxonPrefix = obo("NCBITaxon_");
inline const std::string kGoPrefix = obo("GO_");
inline const std::string kChebiPrefix = obo("CHEBI_");
inline const std::string kPrPrefix = obo("PR_");
inline const std::string kHinoPrefix = obo("HINO_");

}  // namespace pathont::mapper::known
