#pragma once

#include <string>
#include <vector>

#include "pathont/biopax/reader.hpp"
#include "pathont/importer/importer.hpp"
#include "pathont/mapper/mapper.hpp"
#include "pathont/rdf/rdf_xml.hpp"
#include "pathont/rdf/turtle.hpp"
#include "test_util.hpp"

namespace pathont::testutil {

// convert -> import (taxonomy, GO CC, ChEBI fixtures) -> merge.
inline rdf::Graph merged_fixture(const std::string& fixture, mapper::IdRegistry& reg,
                                 std::string source_id = {}) {
  if (source_id.empty()) source_id = fixture.substr(0, fixture.find('.'));
  const auto doc = biopax::extract_document(rdf::parse_rdf_xml(read_file(data_path(fixture))));
  const auto c = mapper::convert(doc, reg, {.source_id = source_id});
  std::vector<importer::ImportModule> modules;
  for (const char* spec_name : {"taxonomy.import", "go_cc.import", "chebi.import"}) {
    const auto spec = importer::parse_spec_file(read_file(data_path(spec_name)), PATHONT_TEST_DATA);
    const auto seeds = importer::select_seeds(c.import_requests, spec.seed_prefix, spec.top);
    if (seeds.empty()) continue;
    modules.push_back(importer::extract_closure(rdf::parse_turtle(read_file(spec.source.string())),
                                                {.seeds = seeds, .top = spec.top, .policy = spec.policy}));
  }
  auto g = importer::merge(c.ontology.to_graph(), modules).graph;
  g.seal();
  return g;
}

// The TLR4 cascade under its Toll parent pathway, keyed so
// that Pathway1 keeps HINO_0022307.
inline rdf::Graph toll_graph() {
  auto reg = mapper::IdRegistry::from_tsv(read_file(data_path("mini_tlr4.registry.tsv")));
  return merged_fixture("toll_cascades.owl", reg, "mini_tlr4");
}

}  // namespace pathont::testutil
