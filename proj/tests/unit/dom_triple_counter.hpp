#pragma once

// Independent triple counter for the RDF/XML fixture profile. Walks a DOM
// built by boost::property_tree (no RDF semantics involved) and counts
// the statements each element contributes:
//   node element  -> 1 type triple unless rdf:Description,
//                    plus 1 per property attribute
//   property elem -> 1 triple, plus whatever a nested node element adds

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <sstream>
#include <string>

namespace pathont::testutil {

namespace detail {

inline bool is_syntax_attribute(const std::string& name) {
  return name == "rdf:about" || name == "rdf:ID" || name == "rdf:nodeID" ||
         name == "rdf:resource" || name == "rdf:datatype" ||
         name.rfind("xml:", 0) == 0 || name.rfind("xmlns", 0) == 0;
}

inline std::size_t count_node(const std::string& tag, const boost::property_tree::ptree& node);

inline std::size_t count_property(const boost::property_tree::ptree& prop) {
  std::size_t n = 1;
  for (const auto& [child_tag, child] : prop) {
    if (child_tag == "<xmlattr>" || child_tag == "<xmlcomment>") continue;
    n += count_node(child_tag, child);
  }
  return n;
}

inline std::size_t count_node(const std::string& tag, const boost::property_tree::ptree& node) {
  std::size_t n = tag == "rdf:Description" ? 0 : 1;
  for (const auto& [child_tag, child] : node) {
    if (child_tag == "<xmlcomment>") continue;
    if (child_tag == "<xmlattr>") {
      for (const auto& [attr, value] : child) {
        if (!is_syntax_attribute(attr)) ++n;
      }
      continue;
    }
    n += count_property(child);
  }
  return n;
}

}  // namespace detail

inline std::size_t dom_walk_triple_count(const std::string& xml) {
  std::istringstream in(xml);
  boost::property_tree::ptree doc;
  boost::property_tree::read_xml(in, doc);
  std::size_t n = 0;
  for (const auto& [tag, root] : doc) {
    if (tag != "rdf:RDF") {
      n += detail::count_node(tag, root);
      continue;
    }
    for (const auto& [child_tag, child] : root) {
      if (child_tag == "<xmlattr>" || child_tag == "<xmlcomment>") continue;
      n += detail::count_node(child_tag, child);
    }
  }
  return n;
}

}  // namespace pathont::testutil
