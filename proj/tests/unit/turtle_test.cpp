#include <gtest/gtest.h>

#include "pathont/error.hpp"
#include "pathont/rdf/rdf_xml.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/rdf/vocab.hpp"
#include "test_util.hpp"

using namespace pathont;
using namespace pathont::rdf;
using pathont::testutil::obo;
using pathont::testutil::RandomGraphFactory;

TEST(ParseTurtle, MinimalStatement) {
  const Graph g = parse_turtle("<s> <p> <o> .");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.triples()[0].subject, Term::iri("file:///s"));
}

TEST(ParseTurtle, PrefixExpansionOfPathwayLabel) {
  const Graph g = parse_turtle(
      "@prefix obo: <http://purl.obolibrary.org/obo/> .\n"
      "@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n"
      "obo:HINO_0022307 rdfs:label \"Toll Like Receptor 4 (TLR4) Cascade\" .\n");
  ASSERT_EQ(g.size(), 1u);
  const Triple t = g.triples()[0];
  EXPECT_EQ(t.subject, Term::iri(obo("HINO_0022307")));
  EXPECT_EQ(t.predicate, Term::iri(vocab::kLabel));
  EXPECT_EQ(t.object, Term::literal("Toll Like Receptor 4 (TLR4) Cascade"));
}

TEST(ParseTurtle, PredicateAndObjectLists) {
  const Graph g = parse_turtle(
      "PREFIX ex: <http://ex.org/>\n"
      "ex:a a ex:C , ex:D ; ex:p \"x\"@en , 42 , 1.5 , 2e3 , true ;\n"
      "  ex:q \"\"\"multi\nline \"quoted\" \"\"\" ; .\n"
      "_:b1 ex:p ex:a.\n");
  EXPECT_EQ(g.size(), 9u);
  EXPECT_TRUE(g.contains({Term::iri("http://ex.org/a"), Term::iri("http://ex.org/p"),
                          Term::literal("42", vocab::kXsdInteger)}));
  EXPECT_TRUE(g.contains({Term::iri("http://ex.org/a"), Term::iri("http://ex.org/p"),
                          Term::literal("1.5", vocab::kXsdDecimal)}));
  EXPECT_TRUE(g.contains({Term::iri("http://ex.org/a"), Term::iri("http://ex.org/q"),
                          Term::literal("multi\nline \"quoted\" ")}));
  EXPECT_TRUE(g.contains({Term::blank("b1"), Term::iri("http://ex.org/p"),
                          Term::iri("http://ex.org/a")}));
}

TEST(ParseTurtle, EscapesAndDatatypes) {
  const Graph g = parse_turtle(
      "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
      "<http://s> <http://p> \"tab\\there \\u00e9\"^^xsd:string .\n");
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g.triples()[0].object, Term::literal("tab\there \xc3\xa9", vocab::xsd("string")));
}

TEST(ParseTurtle, BaseDirectiveResolvesRelativeReferences) {
  const Graph g = parse_turtle("@base <http://ex.org/dir/doc> .\n<#frag> <p> <other> .");
  EXPECT_TRUE(g.contains({Term::iri("http://ex.org/dir/doc#frag"), Term::iri("http://ex.org/dir/p"),
                          Term::iri("http://ex.org/dir/other")}));
}

TEST(ParseTurtle, UndefinedPrefixReportsPosition) {
  try {
    parse_turtle("<http://s> <http://p> <http://o> .\n  nope:x <http://p> <http://o> .");
    FAIL() << "expected UndefinedPrefix";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UndefinedPrefix);
    ASSERT_TRUE(e.position().has_value());
    EXPECT_EQ(e.position()->line, 2u);
    EXPECT_EQ(e.position()->column, 3u);
  }
}

TEST(ParseTurtle, SyntaxErrors) {
  auto code_of = [](const std::string& text) {
    try {
      parse_turtle(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code_of("<http://s> <http://p> <http://o>"), ErrorCode::TurtleSyntax);
  EXPECT_EQ(code_of("<http://s> <http://p> \"open ."), ErrorCode::TurtleSyntax);
  EXPECT_EQ(code_of("<http://s> <http://p> ( <http://a> ) ."), ErrorCode::TurtleSyntax);
  EXPECT_EQ(code_of("<http://s> <http://p> [ <http://q> <http://a> ] ."), ErrorCode::TurtleSyntax);
  EXPECT_EQ(code_of("@foo <http://x> ."), ErrorCode::TurtleSyntax);
}

TEST(SerializeTurtle, EmptyGraphIsPrefixHeaderOnly) {
  const std::string out = serialize_turtle(Graph{});
  std::string header;
  for (const auto& [name, ns] : canonical_prefixes()) {
    header += "@prefix " + name + ": <" + ns + "> .\n";
  }
  EXPECT_EQ(out, header);
}

TEST(SerializeTurtle, InsertionOrderDoesNotChangeBytes) {
  RandomGraphFactory f(1);
  const Graph g = f.graph(150);
  auto triples = g.triples();
  std::reverse(triples.begin(), triples.end());
  Graph h;
  for (const auto& t : triples) h.insert(t);
  EXPECT_EQ(serialize_turtle(g), serialize_turtle(h));
}

TEST(SerializeTurtle, UsesPrefixedNamesOnlyForSafeLocals) {
  Graph g;
  g.insert(Term::iri(obo("HINO_0022307")), Term::iri(vocab::kLabel), Term::literal("a \"b\"\n"));
  g.insert(Term::iri(obo("weird.local")), Term::iri(vocab::kType), Term::iri(vocab::kOwlClass));
  const std::string out = serialize_turtle(g);
  EXPECT_NE(out.find("obo:HINO_0022307\n    rdfs:label \"a \\\"b\\\"\\n\" ."), std::string::npos) << out;
  EXPECT_NE(out.find("<http://purl.obolibrary.org/obo/weird.local>"), std::string::npos) << out;
}

// Property: parse(serialize(G)) == G on random graphs of up to 200 triples,
// including blank nodes, language tags, datatypes and characters that need
// escaping.
TEST(TurtleRoundTrip, RandomGraphs) {
  RandomGraphFactory f(424242);
  const std::vector<std::string> awkward = {"", "quote\"d", "back\\slash", "new\nline",
                                            "tab\t", "caf\xc3\xa9", "ctl\x01"};
  for (int round = 0; round < 100; ++round) {
    Graph g = f.graph(190);
    for (std::size_t i = 0; i < f.pick(10); ++i) {
      g.insert(f.subject(), f.predicate(),
               Term::literal(awkward[f.pick(awkward.size())],
                             f.pick(2) ? vocab::kXsdInteger : std::string{}));
    }
    g.insert(Term::iri("http://ex.org/with space"), f.predicate(), f.object());
    const std::string text = serialize_turtle(g);
    const Graph back = parse_turtle(text);
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(serialize_turtle(back), text);
  }
}

TEST(TurtleRoundTrip, FixtureFixpoint) {
  for (const char* name : {"taxonomy.ttl", "go_cc.ttl", "chebi.ttl", "human_pathways.ttl"}) {
    const Graph g = parse_turtle(testutil::read_file(testutil::data_path(name)));
    const std::string once = serialize_turtle(g);
    EXPECT_EQ(serialize_turtle(parse_turtle(once)), once) << name;
  }
  for (const char* name : {"mini_tlr4.owl", "toll_cascades.owl", "mtb_human.owl"}) {
    const Graph g = parse_rdf_xml(testutil::read_file(testutil::data_path(name)));
    const std::string once = serialize_turtle(g);
    EXPECT_EQ(serialize_turtle(parse_turtle(once)), once) << name;
  }
}
