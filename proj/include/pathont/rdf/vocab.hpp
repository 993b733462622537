#pragma once

#include <string>
#include <string_view>

// Core W3C vocabulary used across the pipeline.
namespace pathont::rdf::vocab {

inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kXml = "http://www.w3.org/XML/1998/namespace";
inline constexpr std::string_view kObo = "http://purl.obolibrary.org/obo/";
inline constexpr std::string_view kOboInOwl = "http://www.geneontology.org/formats/oboInOwl#";
inline constexpr std::string_view kDcTerms = "http://purl.org/dc/terms/";
// Namespace for terms minted by this toolkit itself (not OBO-registered).
inline constexpr std::string_view kPathont = "http://purl.org/pathont/";

inline std::string rdf(std::string_view local) { return std::string(kRdf) + std::string(local); }
inline std::string rdfs(std::string_view local) { return std::string(kRdfs) + std::string(local); }
inline std::string owl(std::string_view local) { return std::string(kOwl) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }

inline const std::string kType = rdf("type");
inline const std::string kFirst = rdf("first");
inline const std::string kRest = rdf("rest");
inline const std::string kNil = rdf("nil");
inline const std::string kLabel = rdfs("label");
inline const std::string kSubClassOf = rdfs("subClassOf");
inline const std::string kOwlClass = owl("Class");
inline const std::string kOwlRestriction = owl("Restriction");
inline const std::string kOnProperty = owl("onProperty");
inline const std::string kSomeValuesFrom = owl("someValuesFrom");
inline const std::string kObjectProperty = owl("ObjectProperty");
inline const std::string kDatatypeProperty = owl("DatatypeProperty");
inline const std::string kAnnotationProperty = owl("AnnotationProperty");
inline const std::string kNamedIndividual = owl("NamedIndividual");
inline const std::string kOntology = owl("Ontology");
inline const std::string kXsdInteger = xsd("integer");
inline const std::string kXsdDecimal = xsd("decimal");
inline const std::string kXsdDouble = xsd("double");
inline const std::string kXsdBoolean = xsd("boolean");

}  // namespace pathont::rdf::vocab
