#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "json.hpp"
#include "pathont/biopax/reader.hpp"
#include "pathont/error.hpp"
#include "pathont/importer/importer.hpp"
#include "pathont/mapper/id_registry.hpp"
#include "pathont/mapper/lint.hpp"
#include "pathont/mapper/mapper.hpp"
#include "pathont/rdf/rdf_xml.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/service/stats.hpp"
#include "pathont/service/term_page.hpp"
#include "pathont/sparql/query.hpp"

namespace py = pybind11;
using namespace pathont;

namespace {

// JSON text -> Python objects, via the json module.
py::object loads(const std::string& text) { return py::module_::import("json").attr("loads")(text); }

rdf::Graph sealed(rdf::Graph g) {
  g.seal();
  return g;
}

}  // namespace

PYBIND11_MODULE(_pathont, m) {
  m.doc() = "BioPAX to classes-only OWL ontology pipeline";

  static PyObject* error_type = py::exception<Error>(m, "PathontError").inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(
          std::string(to_string(e.code())) + ": " + e.detail());
      inst.attr("code") = std::string(to_string(e.code()));
      if (e.position()) {
        inst.attr("line") = e.position()->line;
        inst.attr("column") = e.position()->column;
      }
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<rdf::Graph>(m, "Graph")
      .def("__len__", &rdf::Graph::size)
      .def("__eq__", [](const rdf::Graph& a, const rdf::Graph& b) { return a == b; })
      .def("triples",
           [](const rdf::Graph& g) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& t : g.triples())
               out.emplace_back(t.subject.to_string(), t.predicate.to_string(), t.object.to_string());
             return out;
           },
           "All triples as N-Triples term strings, sorted.")
      .def("to_turtle", [](const rdf::Graph& g) { return rdf::serialize_turtle(g); });

  m.def("parse_turtle", [](const std::string& text) { return sealed(rdf::parse_turtle(text)); },
        py::arg("text"));
  m.def("parse_rdf_xml",
        [](const std::string& text, const std::string& base, bool allow_parse_type) {
          return sealed(rdf::parse_rdf_xml(text, {.base = base, .allow_parse_type = allow_parse_type}));
        },
        py::arg("text"), py::arg("base") = "", py::arg("allow_parse_type") = false);

  m.def("convert",
        [](const std::string& biopax_xml, const std::string& registry_tsv, const std::string& source_id,
           const std::string& base) {
          const auto doc = biopax::extract_document(rdf::parse_rdf_xml(biopax_xml, {.base = base}));
          auto reg = registry_tsv.empty() ? mapper::IdRegistry{} : mapper::IdRegistry::from_tsv(registry_tsv);
          const auto c = mapper::convert(doc, reg, {.source_id = source_id});
          py::dict out;
          out["graph"] = sealed(c.ontology.to_graph());
          out["registry_tsv"] = reg.to_tsv();
          out["report"] = loads(c.report.to_json());
          std::vector<std::string> requests;
          for (const auto& r : c.import_requests) requests.push_back(r.str());
          out["import_requests"] = requests;
          return out;
        },
        py::arg("biopax_xml"), py::arg("registry_tsv") = "", py::arg("source_id") = "source",
        py::arg("base") = "",
        "Convert BioPAX RDF/XML text. Returns graph, updated registry TSV, report and import requests.");

  m.def("extract_closure",
        [](const rdf::Graph& source, const std::vector<std::string>& seeds, const std::string& top,
           bool intermediates) {
          importer::ImportSpec spec{.top = rdf::Iri(top),
                                    .policy = intermediates ? importer::IntermediatePolicy::AllIntermediates
                                                            : importer::IntermediatePolicy::NoIntermediates};
          for (const auto& s : seeds) spec.seeds.emplace(s);
          return sealed(importer::extract_closure(source, spec).graph);
        },
        py::arg("source"), py::arg("seeds"), py::arg("top"), py::arg("intermediates") = true);

  m.def("merge",
        [](const rdf::Graph& base, const std::vector<rdf::Graph>& others) {
          return sealed(importer::merge(base, others).graph);
        },
        py::arg("base"), py::arg("others"));

  m.def("lint",
        [](const rdf::Graph& g) {
          auto v = mapper::lint_classes_only(g).violations;
          const auto f = mapper::lint_filler_closure(g).violations;
          v.insert(v.end(), f.begin(), f.end());
          return v;
        },
        py::arg("graph"), "Classes-only and filler-closure violations; empty when clean.");

  m.def("stats", [](const rdf::Graph& g) { return loads(service::compute_stats(g).to_json()); },
        py::arg("graph"));

  m.def("query",
        [](const rdf::Graph& g, const std::string& text, const std::string& format) -> py::object {
          const auto table = sparql::evaluate(sparql::parse_query(text), g);
          if (format == "tsv") return py::str(sparql::to_tsv(table));
          if (format == "json") return loads(sparql::to_json(table));
          throw Error(ErrorCode::PreconditionViolation, "format must be 'json' or 'tsv'");
        },
        py::arg("graph"), py::arg("text"), py::arg("format") = "json");

  m.def("term_page",
        [](const rdf::Graph& g, const std::string& iri) {
          return loads(service::to_json(service::build_term_page(g, rdf::Iri(iri))));
        },
        py::arg("graph"), py::arg("iri"));
}
