#include "pathont/mapper/lint.hpp"

#include "pathont/rdf/vocab.hpp"

namespace pathont::mapper {

using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

bool is_declared_class(const rdf::Graph& g, const Term& t) {
  return g.contains({t, Term::iri(vocab::kType), Term::iri(vocab::kOwlClass)});
}

}  // namespace

LintReport lint_classes_only(const rdf::Graph& g) {
  LintReport r;
  const Term type = Term::iri(vocab::kType);
  for (const auto& t : g.match(std::nullopt, type, std::nullopt)) {
    if (t.object.value() == vocab::kNamedIndividual) {
      r.violations.push_back("individual declared: " + t.subject.to_string());
    } else if (is_declared_class(g, t.object)) {
      r.violations.push_back("individual membership: " + t.subject.to_string() + " a " +
                             t.object.to_string());
    }
  }
  for (const auto& p : g.subjects(type, Term::iri(vocab::kObjectProperty))) {
    for (const auto& t : g.match(std::nullopt, p, std::nullopt)) {
      r.violations.push_back("object property assertion: " + t.subject.to_string() + " " +
                             p.to_string() + " " + t.object.to_string());
    }
  }
  return r;
}

LintReport lint_filler_closure(const rdf::Graph& g, const std::set<Iri>& external) {
  LintReport r;
  for (const auto& t : g.match(std::nullopt, Term::iri(vocab::kSomeValuesFrom), std::nullopt)) {
    if (!t.object.is_iri()) continue;
    if (is_declared_class(g, t.object) || external.contains(Iri(t.object.value()))) continue;
    r.violations.push_back("undeclared filler " + t.object.to_string() + " in restriction " +
                           t.subject.to_string());
  }
  return r;
}

LintReport lint_document(const OntologyDocument& doc, const std::set<Iri>& external) {
  LintReport r;
  for (const auto& ax : doc.axioms) {
    if (!doc.classes.contains(ax.subject)) {
      r.violations.push_back("axiom on undeclared class " + ax.subject.str());
    }
    if (!doc.classes.contains(ax.target) && !external.contains(ax.target)) {
      r.violations.push_back("undeclared target " + ax.target.str() + " of " + ax.subject.str());
    }
    if ((ax.kind == AxiomKind::SubClassOfNamed) == ax.property.has_value()) {
      r.violations.push_back("malformed axiom on " + ax.subject.str());
    }
  }
  for (const auto& [iri, label] : doc.classes) {
    if (label.empty()) r.violations.push_back("empty label on " + iri.str());
  }
  return r;
}

}  // namespace pathont::mapper
