#include "pathont/service/stats.hpp"

#include <algorithm>

#include "json.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::service {

namespace {

std::size_t count_declared(const rdf::Graph& g, const std::string& type) {
  const auto subjects = g.subjects(rdf::Term::iri(rdf::vocab::kType), rdf::Term::iri(type));
  return static_cast<std::size_t>(
      std::count_if(subjects.begin(), subjects.end(), [](const rdf::Term& t) { return t.is_iri(); }));
}

}  // namespace

OntologyStats compute_stats(const rdf::Graph& g) {
  using namespace rdf::vocab;
  return {
      .class_count = count_declared(g, kOwlClass),
      .object_property_count = count_declared(g, kObjectProperty),
      .datatype_property_count = count_declared(g, kDatatypeProperty),
      .annotation_property_count = count_declared(g, kAnnotationProperty),
  };
}

std::string OntologyStats::to_json() const {
  nlohmann::ordered_json j;
  j["classes"] = class_count;
  j["object_properties"] = object_property_count;
  j["datatype_properties"] = datatype_property_count;
  j["annotation_properties"] = annotation_property_count;
  return j.dump(2) + "\n";
}

std::string OntologyStats::to_text() const {
  return "classes: " + std::to_string(class_count) + "\n" +
         "object_properties: " + std::to_string(object_property_count) + "\n" +
         "datatype_properties: " + std::to_string(datatype_property_count) + "\n" +
         "annotation_properties: " + std::to_string(annotation_property_count) + "\n";
}

}  // namespace pathont::service
