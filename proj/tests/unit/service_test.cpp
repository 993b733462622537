#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "json.hpp"
#include "pathont/error.hpp"
#include "pathont/importer/importer.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/service/service.hpp"
#include "pathont/service/stats.hpp"
#include "pathont/service/term_page.hpp"
#include "pathont/sparql/query.hpp"
#include "pipeline_fixture.hpp"
#include "stats_oracle.hpp"
#include "test_util.hpp"

namespace pathont::service {
namespace {

using testutil::data_path;
using testutil::obo;
using testutil::read_file;
namespace vocab = rdf::vocab;
using json = nlohmann::json;

using testutil::linear_scan_stats;
using testutil::random_declarations;

Request get(std::string path, std::string accept = {}) {
  return {.method = "GET", .path = std::move(path), .accept = std::move(accept)};
}

const std::string kPathwayQuery =
    "select distinct ?s, ?l\n"
    "from <http://purl.obolibrary.org/obo/merged/HINO>\n"
    "where\n{\n  ?s rdfs:label ?l .\n"
    "  ?s rdfs:subClassOf <http://purl.obolibrary.org/obo/INO_0000021>\n}\n";

rdf::Graph pathway_graph() {
  auto g = rdf::parse_turtle(read_file(data_path("human_pathways.ttl")));
  g.seal();
  return g;
}

// --- stats -----------------------------------------------------------------

TEST(Stats, EmptyGraph) {
  EXPECT_EQ(compute_stats(rdf::Graph{}), OntologyStats{});
  EXPECT_EQ(json::parse(OntologyStats{}.to_json()),
            json::parse(R"({"classes":0,"object_properties":0,"datatype_properties":0,"annotation_properties":0})"));
}

TEST(Stats, MatchesLinearScanOnFixtures) {
  mapper::IdRegistry reg;
  std::vector<rdf::Graph> graphs;
  graphs.push_back(testutil::merged_fixture("mini_tlr4.owl", reg));
  graphs.push_back(testutil::merged_fixture("mtb_human.owl", reg));
  graphs.push_back(testutil::toll_graph());
  graphs.push_back(pathway_graph());
  for (const char* ttl : {"taxonomy.ttl", "go_cc.ttl", "chebi.ttl"})
    graphs.push_back(rdf::parse_turtle(read_file(data_path(ttl))));
  for (const auto& g : graphs) {
    EXPECT_EQ(compute_stats(g), linear_scan_stats(g));
    EXPECT_GT(compute_stats(g).class_count, 0u);
  }
  // has_part, located_in, pathwayOrder, precedes; xref and citation
  const auto s = compute_stats(graphs[0]);
  EXPECT_EQ(s.object_property_count, 4u);
  EXPECT_EQ(s.annotation_property_count, 2u);
}

TEST(Stats, MatchesLinearScanOnRandomGraphs) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto g = random_declarations(rng);
    ASSERT_EQ(compute_stats(g), linear_scan_stats(g)) << rdf::serialize_turtle(g);
  }
}

TEST(Stats, MergeConservation) {
  std::mt19937 rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_declarations(rng);
    const auto b = random_declarations(rng);
    const auto m = importer::merge(a, std::vector<rdf::Graph>{b}).graph;
    const auto ca = compute_stats(a).class_count;
    const auto cb = compute_stats(b).class_count;
    const auto cm = compute_stats(m).class_count;
    EXPECT_LE(cm, ca + cb);
    std::set<std::string> sa;
    for (const auto& s : a.subjects(Term::iri(vocab::kType), Term::iri(vocab::kOwlClass)))
      if (s.is_iri()) sa.insert(s.value());
    bool disjoint = true;
    for (const auto& s : b.subjects(Term::iri(vocab::kType), Term::iri(vocab::kOwlClass)))
      if (s.is_iri() && sa.contains(s.value())) disjoint = false;
    EXPECT_EQ(cm == ca + cb, disjoint);
  }
}

TEST(Stats, TextForm) {
  const OntologyStats s{38435, 57, 4, 69};
  EXPECT_EQ(s.to_text(), "classes: 38435\nobject_properties: 57\ndatatype_properties: 4\nannotation_properties: 69\n");
}

// --- term pages ------------------------------------------------------------

TEST(TermPage, TlrCascadePage) {
  const auto g = testutil::toll_graph();
  const auto page = build_term_page(g, Iri(obo("HINO_0022307")));
  EXPECT_EQ(page.label, "Toll Like Receptor 4 (TLR4) Cascade");
  const auto& ax = page.asserted_axioms;
  auto has = [&](const std::string& s) { return std::find(ax.begin(), ax.end(), s) != ax.end(); };
  EXPECT_TRUE(has("human_molecular_pathway"));
  EXPECT_TRUE(has("has_part some Activated TLR4 signalling"));
  EXPECT_TRUE(has("located_in some Homo sapiens"));
  EXPECT_EQ(std::count_if(ax.begin(), ax.end(),
                          [](const std::string& s) { return s.starts_with("pathwayOrder some PathwayStep"); }),
            9);
  EXPECT_EQ(ax.front(), "human_molecular_pathway");

  bool toll_parent = false;
  for (const auto& [user, axiom] : page.used_by) {
    if (page.labels.at(user) == "Toll Receptor Cascades") {
      EXPECT_EQ(axiom, "has_part some Toll Like Receptor 4 (TLR4) Cascade");
      toll_parent = true;
    }
  }
  EXPECT_TRUE(toll_parent);
  EXPECT_EQ(page.used_by.size(), 2u);  // the parent pathway and its step

  ASSERT_FALSE(page.hierarchy_path.empty());
  for (const auto& chain : page.hierarchy_path) {
    EXPECT_EQ(chain.front().str(), obo("BFO_0000001"));
    EXPECT_EQ(chain.back().str(), obo("HINO_0022307"));
  }
  std::vector<std::string> labels;
  for (const auto& i : page.hierarchy_path.front()) labels.push_back(page.labels.at(i));
  EXPECT_EQ(labels, (std::vector<std::string>{"entity", "occurrent", "processual_entity", "interaction_network",
                                              "pathway", "human_molecular_pathway",
                                              "Toll Like Receptor 4 (TLR4) Cascade"}));
  EXPECT_NE(std::find(page.citations.begin(), page.citations.end(), "PMID:18023358"), page.citations.end());
  EXPECT_FALSE(page.xrefs.empty());
}

TEST(TermPage, RootTerm) {
  const auto g = testutil::toll_graph();
  const auto page = build_term_page(g, Iri(obo("BFO_0000001")));
  ASSERT_EQ(page.hierarchy_path.size(), 1u);
  EXPECT_EQ(page.hierarchy_path[0], std::vector<Iri>{Iri(obo("BFO_0000001"))});
}

TEST(TermPage, NotFound) {
  const auto g = testutil::toll_graph();
  try {
    build_term_page(g, Iri(obo("HINO_9999999")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TermNotFound);
  }
}

TEST(TermPage, HierarchyAgainstBfsOracle) {
  std::mt19937 rng(11);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto node = [](std::size_t i) { return Iri("http://ex.org/c" + std::to_string(i)); };
  for (int round = 0; round < 100; ++round) {
    const std::size_t n = 2 + pick(25);
    rdf::Graph g;
    std::map<std::size_t, std::set<std::size_t>> parents;
    for (std::size_t i = 0; i < n; ++i) {
      g.insert(Term::iri(node(i)), Term::iri(vocab::kType), Term::iri(vocab::kOwlClass));
      for (std::size_t k = 0, m = i == 0 ? 0 : pick(4); k < m; ++k) {
        const std::size_t p = pick(i);
        parents[i].insert(p);
        g.insert(Term::iri(node(i)), Term::iri(vocab::kSubClassOf), Term::iri(node(p)));
      }
    }
    g.seal();
    const std::size_t t = pick(n);
    const auto page = build_term_page(g, node(t));

    std::set<std::size_t> ancestors{t};
    std::queue<std::size_t> q;
    q.push(t);
    while (!q.empty()) {
      const auto c = q.front();
      q.pop();
      for (auto p : parents[c])
        if (ancestors.insert(p).second) q.push(p);
    }
    // number of root-to-t paths, by memoized recursion over parents
    std::map<std::size_t, std::size_t> paths;
    std::function<std::size_t(std::size_t)> count = [&](std::size_t c) -> std::size_t {
      if (parents[c].empty()) return 1;
      if (auto it = paths.find(c); it != paths.end()) return it->second;
      std::size_t total = 0;
      for (auto p : parents[c]) total += count(p);
      return paths[c] = total;
    };
    const std::size_t expected = count(t);

    std::set<std::string> seen;
    std::set<std::vector<Iri>> distinct;
    for (const auto& chain : page.hierarchy_path) {
      ASSERT_FALSE(chain.empty());
      EXPECT_EQ(chain.back(), node(t));
      const auto root = std::stoul(chain.front().str().substr(15));
      EXPECT_TRUE(parents[root].empty());
      for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        const auto child = std::stoul(chain[i + 1].str().substr(15));
        const auto parent = std::stoul(chain[i].str().substr(15));
        EXPECT_TRUE(parents[child].contains(parent));
      }
      for (const auto& c : chain) {
        EXPECT_TRUE(ancestors.contains(std::stoul(c.str().substr(15))));
        seen.insert(c.str());
      }
      distinct.insert(chain);
    }
    EXPECT_EQ(distinct.size(), page.hierarchy_path.size());
    if (!page.hierarchy_truncated) {
      EXPECT_EQ(page.hierarchy_path.size(), expected);
      EXPECT_EQ(seen.size(), ancestors.size());
    } else {
      EXPECT_EQ(page.hierarchy_path.size(), TermPageOptions{}.max_paths);
    }
  }
}

TEST(TermPage, JsonAndTurtleDescribeSameTriples) {
  const auto g = testutil::toll_graph();
  for (const char* id : {"HINO_0022307", "BFO_0000001", "NCBITaxon_9606"}) {
    const auto page = build_term_page(g, Iri(obo(id)));
    const auto from_turtle = rdf::parse_turtle(to_turtle(page));
    std::string nt;
    const auto doc = json::parse(to_json(page));
    for (const auto& line : doc["triples"]) nt += line.get<std::string>() + "\n";
    EXPECT_EQ(rdf::parse_turtle(nt), from_turtle) << id;
    EXPECT_EQ(from_turtle, page.neighborhood);
  }
}

TEST(TermPage, NeighborhoodContents) {
  const auto g = testutil::toll_graph();
  const Term self = Term::iri(obo("HINO_0022307"));
  const auto n = term_neighborhood(g, Iri(self.value()));
  for (const auto& t : g.match(self, {}, {})) EXPECT_TRUE(n.contains(t));
  for (const auto& t : g.match({}, {}, self)) EXPECT_TRUE(n.contains(t));
  // every triple in it touches the term, a blank node, or is a label
  for (const auto& t : n.triples()) {
    EXPECT_TRUE(t.subject == self || t.object == self || t.subject.is_blank() || t.object.is_blank() ||
                t.predicate.value() == vocab::kLabel)
        << t.subject.to_string() << " " << t.predicate.to_string();
  }
}

// --- HTTP surface ------------------------------------------------------------

TEST(Negotiate, MediaRanges) {
  const std::vector<std::string> offered = {"application/json", "text/turtle"};
  EXPECT_EQ(negotiate("", offered), "application/json");
  EXPECT_EQ(negotiate("*/*", offered), "application/json");
  EXPECT_EQ(negotiate("text/turtle", offered), "text/turtle");
  EXPECT_EQ(negotiate("text/*", offered), "text/turtle");
  EXPECT_EQ(negotiate("text/turtle;q=0.5, application/json", offered), "application/json");
  EXPECT_EQ(negotiate("text/turtle, application/json;q=0.1", offered), "text/turtle");
  EXPECT_EQ(negotiate("application/json;q=0, */*", offered), "text/turtle");
  EXPECT_EQ(negotiate("text/html", offered), std::nullopt);
  EXPECT_EQ(negotiate("Text/Turtle", offered), "text/turtle");
}

TEST(Bind, Parsing) {
  EXPECT_EQ(parse_bind("0.0.0.0:9000").host, "0.0.0.0");
  EXPECT_EQ(parse_bind("0.0.0.0:9000").port, 9000);
  EXPECT_EQ(parse_bind(":81").host, "127.0.0.1");
  EXPECT_EQ(parse_bind("8081").port, 8081);
  EXPECT_THROW(parse_bind("host:"), Error);
  EXPECT_THROW(parse_bind("host:99999"), Error);
  EXPECT_THROW(parse_bind("host:8x"), Error);
}

TEST(ServiceRoutes, StatsOnEmptyStore) {
  const Service svc(rdf::Graph{});
  const auto r = svc.handle(get("/stats"));
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(json::parse(r.body), json::parse(OntologyStats{}.to_json()));
  EXPECT_EQ(svc.handle(get("/stats", "text/turtle")).status, 406);
  EXPECT_EQ(svc.handle({.method = "POST", .path = "/stats"}).status, 405);
}

TEST(ServiceRoutes, Health) {
  const Service svc(rdf::Graph{});
  const auto r = svc.handle(get("/health"));
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, "OK\n");
  EXPECT_EQ(svc.handle(get("/nowhere")).status, 404);
}

TEST(ServiceRoutes, SparqlPostMatchesLibrary) {
  const auto g = pathway_graph();
  const Service svc(g);
  const auto direct = sparql::evaluate(sparql::parse_query(kPathwayQuery), g);
  const auto r = svc.handle({.method = "POST", .path = "/sparql", .body = kPathwayQuery,
                             .content_type = "application/sparql-query",
                             .accept = "application/sparql-results+json"});
  ASSERT_EQ(r.status, 200) << r.body;
  EXPECT_EQ(r.content_type, "application/sparql-results+json");
  EXPECT_EQ(r.body, sparql::to_json(direct));
  EXPECT_EQ(json::parse(r.body)["results"]["bindings"].size(), 9u);

  // form-encoded and GET variants carry the text in the query parameter
  Request form{.method = "POST", .path = "/sparql", .params = {{"query", kPathwayQuery}}};
  EXPECT_EQ(svc.handle(form).body, r.body);
  Request tsv = get("/sparql", "text/tab-separated-values");
  tsv.params["query"] = kPathwayQuery;
  const auto t = svc.handle(tsv);
  EXPECT_EQ(t.status, 200);
  EXPECT_EQ(t.body, sparql::to_tsv(direct));
}

TEST(ServiceRoutes, SparqlErrors) {
  const Service svc(pathway_graph(), {.max_patterns = 3});
  auto post = [&](std::string q, std::string accept = {}) {
    return svc.handle({.method = "POST", .path = "/sparql", .body = std::move(q), .accept = std::move(accept)});
  };
  auto r = post("SELECT ?x WHERE { ?x ?p ?o OPTIONAL { ?x ?q ?r } }");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(json::parse(r.body)["error"], "UnsupportedFeature");
  EXPECT_NE(json::parse(r.body)["message"].get<std::string>().find("OPTIONAL"), std::string::npos);

  r = post("SELECT ?x WHERE { ?x ?p ?x");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(json::parse(r.body)["error"], "QuerySyntax");
  EXPECT_TRUE(json::parse(r.body).contains("line"));

  EXPECT_EQ(post("").status, 400);
  EXPECT_EQ(post(kPathwayQuery, "text/html").status, 406);
  EXPECT_EQ(post("SELECT ?x FROM <http://elsewhere/> WHERE { ?x a ?c }").status, 400);
  EXPECT_EQ(post("SELECT * WHERE { ?a ?b ?c . ?c ?d ?e . ?e ?f ?g . ?g ?h ?i }").status, 413);
  EXPECT_EQ(post("SELECT * WHERE { ?a ?b ?c . ?c ?d ?e . ?e ?f ?g }").status, 200);
}

TEST(ServiceRoutes, RowCapBoundsLimit) {
  const Service svc(pathway_graph(), {.row_cap = 5});
  const auto r = svc.handle({.method = "POST", .path = "/sparql", .body = kPathwayQuery + "LIMIT 100"});
  EXPECT_EQ(json::parse(r.body)["results"]["bindings"].size(), 5u);
}

TEST(ServiceRoutes, TermContentNegotiation) {
  const auto g = testutil::toll_graph();
  const Service svc(g);
  const auto ttl = svc.handle(get("/term/HINO_0022307", "text/turtle"));
  ASSERT_EQ(ttl.status, 200) << ttl.body;
  EXPECT_EQ(ttl.content_type, "text/turtle");
  const auto parsed = rdf::parse_turtle(ttl.body);
  EXPECT_TRUE(parsed.contains({Term::iri(obo("HINO_0022307")), Term::iri(vocab::kLabel),
                               Term::literal("Toll Like Receptor 4 (TLR4) Cascade")}));

  const auto js = svc.handle(get("/term/HINO_0022307", "application/json"));
  EXPECT_EQ(js.status, 200);
  EXPECT_EQ(json::parse(js.body)["label"], "Toll Like Receptor 4 (TLR4) Cascade");
  EXPECT_EQ(svc.handle(get("/term/HINO_0022307")).body, js.body);

  Request by_iri = get("/term");
  by_iri.params["iri"] = obo("HINO_0022307");
  EXPECT_EQ(svc.handle(by_iri).body, js.body);

  EXPECT_EQ(svc.handle(get("/term/HINO_9999999")).status, 404);
  EXPECT_EQ(svc.handle(get("/term/not-an-id")).status, 404);
  EXPECT_EQ(svc.handle(get("/term/HINO_0022307", "text/html")).status, 406);
  EXPECT_EQ(svc.handle(get("/term")).status, 400);
}

TEST(ServiceRoutes, PurityUnderPermutation) {
  const Service svc(testutil::toll_graph());
  std::vector<Request> reqs = {get("/stats"), get("/health"), get("/term/HINO_0022307", "text/turtle"),
                               get("/term/BFO_0000001"), get("/nowhere")};
  Request q = get("/sparql");
  q.params["query"] = "SELECT ?s ?l WHERE { ?s rdfs:label ?l }";
  reqs.push_back(q);
  const auto before = svc.graph();
  std::map<std::size_t, std::string> first;
  for (std::size_t i = 0; i < reqs.size(); ++i) first[i] = svc.handle(reqs[i]).body;
  std::vector<std::size_t> order(reqs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(3);
  for (int round = 0; round < 10; ++round) {
    std::shuffle(order.begin(), order.end(), rng);
    for (auto i : order) EXPECT_EQ(svc.handle(reqs[i]).body, first[i]);
  }
  EXPECT_EQ(svc.graph(), before);
}

}  // namespace
}  // namespace pathont::service
