#include <gtest/gtest.h>

#include <algorithm>
#include <regex>

#include "pathont/biopax/reader.hpp"
#include "pathont/error.hpp"
#include "pathont/mapper/known_iri.hpp"
#include "pathont/mapper/lint.hpp"
#include "pathont/mapper/mapper.hpp"
#include "pathont/rdf/rdf_xml.hpp"
#include "pathont/rdf/turtle.hpp"
#include "test_util.hpp"

namespace pathont::mapper {
namespace {

using rdf::Term;
using testutil::data_path;
using testutil::obo;
using testutil::read_file;
namespace vocab = rdf::vocab;

biopax::BioPaxDocument load_doc(const std::string& name) {
  return biopax::extract_document(rdf::parse_rdf_xml(read_file(data_path(name))));
}

Conversion convert_fixture(const std::string& name, IdRegistry& reg) {
  MapperOptions opts;
  opts.source_id = name.substr(0, name.find('.'));
  return convert(load_doc(name), reg, opts);
}

std::size_t count_axioms(const OntologyDocument& d, const Iri& subject, const std::string& prop) {
  return std::count_if(d.axioms.begin(), d.axioms.end(), [&](const ClassAxiom& a) {
    return a.subject == subject && a.property && a.property->str() == prop;
  });
}

TEST(IdRegistry, FirstMintIsOne) {
  IdRegistry reg;
  EXPECT_EQ(reg.mint("mini#Pathway1").str(), obo("HINO_0000001"));
}

TEST(IdRegistry, MintIsIdempotent) {
  IdRegistry reg;
  const Iri a = reg.mint("mini#Pathway1");
  EXPECT_EQ(reg.mint("mini#Pathway1"), a);
  EXPECT_EQ(reg.size(), 1u);
}

TEST(IdRegistry, BatchIsInsertionOrderIndependent) {
  IdRegistry r1;
  IdRegistry r2;
  r1.mint_batch({"b", "a"});
  r2.mint_batch({"a", "b"});
  EXPECT_EQ(r1.find("a")->str(), obo("HINO_0000001"));
  EXPECT_EQ(r1.find("b")->str(), obo("HINO_0000002"));
  EXPECT_EQ(r1.to_tsv(), r2.to_tsv());
}

TEST(IdRegistry, BatchMatchesSortThenAssignOracle) {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<std::string> keys;
    const int n = 1 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) keys.push_back("f#k" + std::to_string(rng() % 40));
    IdRegistry reg;
    reg.mint_batch(keys);
    auto sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    ASSERT_EQ(reg.size(), sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      EXPECT_EQ(*reg.counter_of(*reg.find(sorted[i])), i + 1);
    }
  }
}

TEST(IdRegistry, PersistedEntriesAreNeverReassigned) {
  auto reg = IdRegistry::from_tsv(read_file(data_path("mini_tlr4.registry.tsv")));
  EXPECT_EQ(reg.next_counter(), 22308u);
  reg.mint_batch({"mini_tlr4#Pathway1", "mini_tlr4#A", "mini_tlr4#Z"});
  EXPECT_EQ(reg.find("mini_tlr4#Pathway1")->str(), obo("HINO_0022307"));
  EXPECT_EQ(reg.find("mini_tlr4#A")->str(), obo("HINO_0022308"));
  EXPECT_EQ(reg.find("mini_tlr4#Z")->str(), obo("HINO_0022309"));
}

TEST(IdRegistry, TsvRoundTripIsSorted) {
  IdRegistry reg;
  reg.mint_batch({"z#1", "a#1", "m#1"});
  const std::string tsv = reg.to_tsv();
  EXPECT_EQ(tsv.substr(0, 4), "a#1\t");
  EXPECT_EQ(IdRegistry::from_tsv(tsv).to_tsv(), tsv);
}

TEST(IdRegistry, MintedIrisMatchPattern) {
  IdRegistry reg;
  for (int i = 0; i < 20; ++i) reg.mint("k" + std::to_string(i));
  const std::regex shape("http://purl\\.obolibrary\\.org/obo/HINO_[0-9]{7}");
  std::set<Iri> seen;
  for (const auto& [k, iri] : reg.entries()) {
    EXPECT_TRUE(std::regex_match(iri.str(), shape)) << iri.str();
    EXPECT_TRUE(seen.insert(iri).second);
  }
}

TEST(IdRegistry, CounterOverflow) {
  auto reg = IdRegistry::from_tsv("x\t" + obo("HINO_9999999") + "\n");
  try {
    reg.mint("y");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CounterOverflow);
  }
}

TEST(IdRegistry, ConflictsAreErrors) {
  EXPECT_THROW(IdRegistry::from_tsv("a\t" + obo("HINO_0000001") + "\nb\t" + obo("HINO_0000001") + "\n"),
               Error);
  EXPECT_THROW(IdRegistry::from_tsv("a\t" + obo("HINO_0000001") + "\na\t" + obo("HINO_0000002") + "\n"),
               Error);
  EXPECT_THROW(IdRegistry::from_tsv("a\thttp://ex.org/x\n"), Error);
  IdRegistry r1 = IdRegistry::from_tsv("a\t" + obo("HINO_0000001") + "\n");
  IdRegistry r2 = IdRegistry::from_tsv("b\t" + obo("HINO_0000001") + "\n");
  try {
    r1.merge(r2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegistryConflict);
  }
}

TEST(ClassMapper, TlrCascadeShape) {
  auto reg = IdRegistry::from_tsv(read_file(data_path("mini_tlr4.registry.tsv")));
  const auto c = convert_fixture("mini_tlr4.owl", reg);
  const Iri p(obo("HINO_0022307"));
  const auto& onto = c.ontology;
  EXPECT_EQ(onto.classes.at(p), "Toll Like Receptor 4 (TLR4) Cascade");
  EXPECT_EQ(count_axioms(onto, p, known::kPathwayOrder), 9u);
  EXPECT_EQ(count_axioms(onto, p, known::kHasPart), 9u);
  EXPECT_TRUE(onto.axioms.contains(
      ClassAxiom::some(p, Iri(known::kLocatedIn), Iri(obo("NCBITaxon_9606")))));
  EXPECT_TRUE(onto.axioms.contains(ClassAxiom::named(p, Iri(known::kHumanMolecularPathway))));

  // has_part across the steps the pathway orders.
  std::size_t step_parts = 0;
  for (const auto& ax : onto.axioms) {
    if (ax.subject == p && ax.property && ax.property->str() == known::kPathwayOrder) {
      step_parts += count_axioms(onto, ax.target, known::kHasPart);
      EXPECT_TRUE(onto.classes.at(ax.target).starts_with("PathwayStep"));
    }
  }
  EXPECT_GE(step_parts, 9u);
  EXPECT_TRUE(onto.annotations.at(p).contains({Iri(known::kCitation), "PMID:18023358"}));
}

TEST(ClassMapper, StepLabelsUseCounter) {
  IdRegistry reg;
  const auto c = convert_fixture("mini_tlr4.owl", reg);
  for (const auto& [key, iri] : reg.entries()) {
    if (key.find("#PathwayStep") == std::string::npos) continue;
    EXPECT_EQ(c.ontology.classes.at(iri), "PathwayStep" + std::to_string(*reg.counter_of(iri)));
  }
}

TEST(ClassMapper, EmptyDocument) {
  IdRegistry reg;
  const auto c = convert(biopax::BioPaxDocument{}, reg);
  EXPECT_TRUE(c.ontology.empty());
  EXPECT_TRUE(c.import_requests.empty());
  EXPECT_EQ(c.ontology.to_graph().size(), 0u);
  EXPECT_EQ(reg.size(), 0u);
}

TEST(ClassMapper, OnlyHumanPathwayUnderHumanAnchor) {
  IdRegistry reg;
  const auto c = convert_fixture("mtb_human.owl", reg);
  const auto g = c.ontology.to_graph();
  const auto subs = g.subjects(Term::iri(vocab::kSubClassOf), Term::iri(known::kHumanMolecularPathway));
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(c.ontology.classes.at(Iri(subs[0].value())),
            "Latent infection of Homo sapiens with Mycobacterium tuberculosis");
  ASSERT_EQ(c.report.mixed_organism_pathways.size(), 1u);
  EXPECT_EQ(c.report.mixed_organism_pathways[0], "mtb_human#Pathway1");
}

TEST(ClassMapper, RouteSuperclass) {
  const biopax::PathwayRec p{.id = Iri("http://ex.org/p")};
  EXPECT_EQ(route_superclass(p, 9606).str(), known::kHumanMolecularPathway);
  EXPECT_EQ(route_superclass(p, 1773).str(), known::kPathway);
  EXPECT_EQ(route_superclass(p, std::nullopt).str(), known::kPathway);

  biopax::BioPaxEntity sm{.id = Iri("http://ex.org/sm"), .kind = biopax::EntityKind::SmallMolecule};
  EXPECT_EQ(route_superclass(sm).str(), known::kChemicalEntity);
  sm.xrefs.push_back({"ChEBI", "CHEBI:29108", biopax::XrefKind::Unification});
  EXPECT_EQ(route_superclass(sm).str(), obo("CHEBI_29108"));

  biopax::BioPaxEntity pr{.id = Iri("http://ex.org/pr"), .kind = biopax::EntityKind::Protein};
  EXPECT_EQ(route_superclass(pr).str(), known::kProtein);
  biopax::BioPaxEntity rx{.id = Iri("http://ex.org/rx"),
                          .kind = biopax::EntityKind::BiochemicalReaction};
  EXPECT_EQ(route_superclass(rx).str(), known::kInteraction);
}

TEST(ClassMapper, MetalCationsUnderChebi) {
  IdRegistry reg;
  const auto c = convert_fixture("mtb_human.owl", reg);
  for (const char* id : {"CHEBI_29108", "CHEBI_29036", "CHEBI_18420", "CHEBI_29105"}) {
    EXPECT_TRUE(c.import_requests.contains(Iri(obo(id)))) << id;
  }
}

TEST(ClassMapper, MapSpecies) {
  IdRegistry reg;
  const Iri b("http://ex.org/t#BioSource1");
  EXPECT_EQ(map_species({b, "Homo sapiens", "9606"}, reg, "f").first.str(), obo("NCBITaxon_9606"));
  EXPECT_EQ(map_species({b, "HIV", "11676"}, reg, "f").first.str(), obo("NCBITaxon_11676"));
  const auto [iri, resolved] = map_species({b, "Unknown sp.", std::nullopt}, reg, "f");
  EXPECT_FALSE(resolved);
  EXPECT_EQ(iri, *reg.find("f#BioSource1"));
}

TEST(ClassMapper, UnresolvedOrganismIsReported) {
  IdRegistry reg;
  const auto c = convert_fixture("mtb_human.owl", reg);
  const auto it = std::find_if(c.report.fallbacks.begin(), c.report.fallbacks.end(),
                               [](const Fallback& f) { return f.kind == "organism"; });
  ASSERT_NE(it, c.report.fallbacks.end());
  const Iri org = *reg.find("mtb_human#BioSource4");
  EXPECT_EQ(c.ontology.classes.at(org), "Unknown sp.");
  EXPECT_TRUE(c.ontology.axioms.contains(ClassAxiom::named(org, Iri(known::kUnresolvedOrganism))));
}

TEST(ClassMapper, MapLocation) {
  IdRegistry reg;
  const Iri owner(obo("HINO_0000001"));
  const Iri loc("http://ex.org/t#L1");
  auto [ax, resolved] = map_location(owner, {loc, "cytoplasm", "0005737"}, reg, "f");
  EXPECT_TRUE(resolved);
  EXPECT_EQ(ax.target.str(), obo("GO_0005737"));
  EXPECT_TRUE(std::regex_match(ax.target.str(),
                               std::regex("http://purl\\.obolibrary\\.org/obo/GO_[0-9]{7}")));
  EXPECT_EQ(ax.property->str(), known::kLocatedIn);
  auto [minted, ok] = map_location(owner, {loc, "somewhere", std::nullopt}, reg, "f");
  EXPECT_FALSE(ok);
  EXPECT_EQ(minted.target, *reg.find("f#L1"));
}

TEST(ClassMapper, AntigenLocatedInPhagolysosome) {
  IdRegistry reg;
  const auto c = convert_fixture("mtb_human.owl", reg);
  const auto it = std::find_if(c.ontology.classes.begin(), c.ontology.classes.end(),
                               [](const auto& kv) { return kv.second == "Exogenous Particulate antigen (Ag)"; });
  ASSERT_NE(it, c.ontology.classes.end());
  EXPECT_TRUE(c.ontology.axioms.contains(
      ClassAxiom::some(it->first, Iri(known::kLocatedIn), Iri(obo("GO_0032010")))));
}

TEST(ClassMapper, EntityWithoutLocationHasNoLocatedIn) {
  IdRegistry reg;
  const auto doc = load_doc("mini_tlr4.owl");
  const auto c = convert(doc, reg, {.source_id = "mini_tlr4"});
  for (const auto& [id, e] : doc.physical_entities) {
    if (e.cellular_location) continue;
    EXPECT_EQ(count_axioms(c.ontology, *reg.find(source_key("mini_tlr4", id)), known::kLocatedIn), 0u);
  }
}

TEST(ClassMapper, SimplifyCitation) {
  using biopax::XrefKind;
  const auto [prop, text] = simplify_citation({"pubmed", "18023358", XrefKind::Publication});
  EXPECT_EQ(prop.str(), known::kCitation);
  EXPECT_EQ(text, "PMID:18023358");
  try {
    simplify_citation({"pubmed", "", XrefKind::Publication});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonNumericPmid);
  }
  try {
    simplify_citation({"Reactome", "R-HSA-1", XrefKind::Relationship});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolation);
  }
}

TEST(ClassMapper, ClassesOnlyAndFillerClosure) {
  for (const char* name : {"mini_tlr4.owl", "toll_cascades.owl", "mtb_human.owl"}) {
    IdRegistry reg;
    const auto c = convert_fixture(name, reg);
    const auto g = c.ontology.to_graph();
    EXPECT_TRUE(lint_classes_only(g).ok()) << name;
    EXPECT_TRUE(lint_filler_closure(g, c.import_requests).ok()) << name;
    const auto doc_lint = lint_document(c.ontology, c.import_requests);
    EXPECT_TRUE(doc_lint.ok()) << name << ": " << (doc_lint.ok() ? "" : doc_lint.violations[0]);
    // Every minted class has exactly one label.
    for (const auto& [key, iri] : reg.entries()) {
      EXPECT_EQ(g.objects(Term::iri(iri), Term::iri(vocab::kLabel)).size(), 1u) << iri.str();
    }
  }
}

TEST(ClassMapper, LintCatchesIndividuals) {
  rdf::Graph g;
  const Term cls = Term::iri(obo("HINO_0000001"));
  g.insert(cls, Term::iri(vocab::kType), Term::iri(vocab::kOwlClass));
  g.insert(Term::iri("http://ex.org/i"), Term::iri(vocab::kType), cls);
  EXPECT_FALSE(lint_classes_only(g).ok());
}

TEST(ClassMapper, AxiomConservation) {
  for (const char* name : {"mini_tlr4.owl", "toll_cascades.owl", "mtb_human.owl"}) {
    IdRegistry reg;
    const auto doc = load_doc(name);
    const std::string stem = std::string(name).substr(0, std::string(name).find('.'));
    const auto c = convert(doc, reg, {.source_id = stem});
    std::size_t step_refs = 0;
    std::size_t process_refs = 0;
    for (const auto& [id, p] : doc.pathways) step_refs += p.step_order.size();
    for (const auto& [id, s] : doc.steps) process_refs += s.step_processes.size();
    EXPECT_EQ(c.report.restrictions_by_property.contains("pathwayOrder")
                  ? c.report.restrictions_by_property.at("pathwayOrder")
                  : 0u,
              step_refs);
    EXPECT_GE(c.report.restrictions_by_property.at("has_part"), process_refs);
  }
}

TEST(ClassMapper, Deterministic) {
  IdRegistry r1;
  IdRegistry r2;
  const auto a = convert_fixture("toll_cascades.owl", r1);
  const auto b = convert_fixture("toll_cascades.owl", r2);
  EXPECT_EQ(rdf::serialize_turtle(a.ontology.to_graph()), rdf::serialize_turtle(b.ontology.to_graph()));
  EXPECT_EQ(a.report.to_json(), b.report.to_json());
  EXPECT_EQ(r1.to_tsv(), r2.to_tsv());
}

TEST(ClassMapper, RerunWithRegistryIsStable) {
  IdRegistry reg;
  const auto a = convert_fixture("mini_tlr4.owl", reg);
  const std::string before = reg.to_tsv();
  const auto b = convert_fixture("mini_tlr4.owl", reg);
  EXPECT_EQ(reg.to_tsv(), before);
  EXPECT_EQ(b.report.classes_minted, 0u);
  EXPECT_EQ(a.ontology.to_graph(), b.ontology.to_graph());
}

TEST(ClassMapper, TwoFixturesShareRegistryWithoutCollisions) {
  IdRegistry reg;
  convert_fixture("mini_tlr4.owl", reg);
  convert_fixture("mtb_human.owl", reg);
  std::set<Iri> seen;
  for (const auto& [k, iri] : reg.entries()) EXPECT_TRUE(seen.insert(iri).second);
}

TEST(ClassMapper, FailedConversionLeavesRegistryUntouched) {
  IdRegistry reg;
  auto doc = load_doc("mini_tlr4.owl");
  // Two resources that collapse onto one source key.
  auto p = doc.pathways.begin()->second;
  p.id = Iri("http://other.example/base#Pathway1");
  doc.pathways.emplace(p.id, p);
  try {
    convert(doc, reg, {.source_id = "mini_tlr4"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateSourceKey);
  }
  EXPECT_EQ(reg.size(), 0u);
}

TEST(ClassMapper, OccursInSwitch) {
  IdRegistry reg;
  const auto c = convert(load_doc("mini_tlr4.owl"), reg,
                         {.source_id = "mini_tlr4", .organism_occurs_in = true});
  EXPECT_EQ(c.report.restrictions_by_property.count("located_in"), 1u);  // from entity locations
  EXPECT_EQ(c.report.restrictions_by_property.at("occurs_in"), 1u);
}

TEST(ClassMapper, RestrictionLabelsAreStable) {
  const auto ax = ClassAxiom::some(Iri(obo("HINO_0000001")), Iri(known::kHasPart), Iri(obo("HINO_0000002")));
  EXPECT_EQ(restriction_label(ax), restriction_label(ax));
  const auto other = ClassAxiom::some(Iri(obo("HINO_0000002")), Iri(known::kHasPart), Iri(obo("HINO_0000002")));
  EXPECT_NE(restriction_label(ax), restriction_label(other));
  EXPECT_EQ(restriction_label(ax).size(), 18u);
}

TEST(ClassMapper, OutputRoundTripsThroughTurtle) {
  IdRegistry reg;
  const auto g = convert_fixture("toll_cascades.owl", reg).ontology.to_graph();
  const std::string ttl = rdf::serialize_turtle(g);
  EXPECT_EQ(rdf::parse_turtle(ttl), g);
}

TEST(ClassMapper, ReportJsonHasCounts) {
  IdRegistry reg;
  const auto c = convert_fixture("mini_tlr4.owl", reg);
  const std::string json = c.report.to_json();
  EXPECT_NE(json.find("\"classes_minted\""), std::string::npos);
  EXPECT_NE(json.find("\"pathwayOrder\": 9"), std::string::npos);
  EXPECT_EQ(import_requests_text(c.import_requests).back(), '\n');
}

}  // namespace
}  // namespace pathont::mapper
