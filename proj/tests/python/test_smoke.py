import os
from pathlib import Path

import pytest

import pathont

DATA = Path(os.environ.get("PATHONT_TEST_DATA", Path(__file__).resolve().parents[1] / "data"))
OBO = "http://purl.obolibrary.org/obo/"

PATHWAY_QUERY = (
    "select distinct ?s, ?l from <http://purl.obolibrary.org/obo/merged/HINO> where { "
    "?s rdfs:label ?l . ?s rdfs:subClassOf <http://purl.obolibrary.org/obo/INO_0000021> }"
)


def read(name):
    return (DATA / name).read_text()


@pytest.fixture(scope="module")
def converted():
    return pathont.convert(
        read("mini_tlr4.owl"), registry_tsv=read("mini_tlr4.registry.tsv"), source_id="mini_tlr4"
    )


def test_convert_keeps_persisted_id(converted):
    assert f"mini_tlr4#Pathway1\t{OBO}HINO_0022307" in converted["registry_tsv"]
    assert converted["report"]["classes_minted"] == 24
    assert OBO + "NCBITaxon_9606" in converted["import_requests"]


def test_tlr_cascade_term_page(converted):
    page = pathont.term_page(converted["graph"], OBO + "HINO_0022307")
    assert page["label"] == "Toll Like Receptor 4 (TLR4) Cascade"
    assert sum(a.startswith("pathwayOrder some PathwayStep") for a in page["axioms"]) == 9


def test_pathway_list_query_rows():
    g = pathont.parse_turtle(read("human_pathways.ttl"))
    result = pathont.query(g, PATHWAY_QUERY)
    labels = [b["l"]["value"] for b in result["results"]["bindings"]]
    assert len(labels) == 9
    assert "Signaling by NODAL" in labels
    tsv = pathont.query(g, PATHWAY_QUERY, format="tsv")
    assert tsv.count("\n") == 10


def test_closure_and_merge(converted):
    source = pathont.parse_turtle(read("taxonomy.ttl"))
    module = pathont.extract_closure(source, [OBO + "NCBITaxon_9606"], OBO + "NCBITaxon_1")
    assert len(module) > 0
    merged = pathont.merge(converted["graph"], [module])
    assert pathont.merge(merged, [merged]) == merged
    assert pathont.stats(merged)["classes"] >= pathont.stats(converted["graph"])["classes"]
    assert not any("rdf:type" in v for v in pathont.lint(merged))


def test_turtle_round_trip(converted):
    text = converted["graph"].to_turtle()
    again = pathont.parse_turtle(text)
    assert again == converted["graph"]
    assert again.to_turtle() == text


def test_errors_carry_codes():
    g = pathont.parse_turtle(read("human_pathways.ttl"))
    with pytest.raises(pathont.PathontError) as info:
        pathont.query(g, "SELECT ?x WHERE { ?x ?p ?o OPTIONAL { ?x ?q ?r } }")
    assert info.value.code == "UnsupportedFeature"
    with pytest.raises(pathont.PathontError) as info:
        pathont.query(g, "SELECT ?x WHERE { ?x ?p ?x")
    assert info.value.code == "QuerySyntax"
    assert info.value.line == 1
    with pytest.raises(pathont.PathontError) as info:
        pathont.term_page(g, OBO + "HINO_9999999")
    assert info.value.code == "TermNotFound"


def test_empty_stats():
    assert pathont.stats(pathont.parse_turtle("")) == {
        "classes": 0,
        "object_properties": 0,
        "datatype_properties": 0,
        "annotation_properties": 0,
    }
