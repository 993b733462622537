#include "pathont/mapper/ontology.hpp"

#include <cstdint>
#include <cstdio>

#include "pathont/error.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::mapper {

using rdf::Term;
namespace vocab = rdf::vocab;

ClassAxiom ClassAxiom::named(Iri sub, Iri super) {
  return ClassAxiom{std::move(sub), AxiomKind::SubClassOfNamed, std::nullopt, std::move(super)};
}

ClassAxiom ClassAxiom::some(Iri sub, Iri property, Iri filler) {
  return ClassAxiom{std::move(sub), AxiomKind::SubClassOfSomeValuesFrom, std::move(property),
                    std::move(filler)};
}

std::string restriction_label(const ClassAxiom& axiom) {
  if (axiom.kind != AxiomKind::SubClassOfSomeValuesFrom || !axiom.property) {
    throw Error(ErrorCode::PreconditionViolation, "restriction_label needs a restriction axiom");
  }
  // FNV-1a, 64 bit.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(axiom.subject.str());
  feed(axiom.property->str());
  feed(axiom.target.str());
  char buf[24];
  std::snprintf(buf, sizeof buf, "ax%016llx", static_cast<unsigned long long>(h));
  return buf;
}

rdf::Graph OntologyDocument::to_graph() const {
  rdf::Graph g;
  const Term type = Term::iri(vocab::kType);
  const Term label = Term::iri(vocab::kLabel);
  const Term sub_class_of = Term::iri(vocab::kSubClassOf);

  for (const auto& [iri, text] : object_properties) {
    g.insert(Term::iri(iri), type, Term::iri(vocab::kObjectProperty));
    g.insert(Term::iri(iri), label, Term::literal(text));
  }
  for (const auto& [iri, text] : annotation_properties) {
    g.insert(Term::iri(iri), type, Term::iri(vocab::kAnnotationProperty));
    g.insert(Term::iri(iri), label, Term::literal(text));
  }
  for (const auto& [iri, text] : classes) {
    g.insert(Term::iri(iri), type, Term::iri(vocab::kOwlClass));
    g.insert(Term::iri(iri), label, Term::literal(text));
  }
  std::map<std::string, const ClassAxiom*> nodes;
  for (const auto& ax : axioms) {
    if (ax.kind == AxiomKind::SubClassOfNamed) {
      g.insert(Term::iri(ax.subject), sub_class_of, Term::iri(ax.target));
      continue;
    }
    const std::string id = restriction_label(ax);
    if (auto [it, fresh] = nodes.emplace(id, &ax); !fresh) {
      throw Error(ErrorCode::PreconditionViolation, "restriction label collision on _:" + id);
    }
    const Term node = Term::blank(id);
    g.insert(Term::iri(ax.subject), sub_class_of, node);
    g.insert(node, type, Term::iri(vocab::kOwlRestriction));
    g.insert(node, Term::iri(vocab::kOnProperty), Term::iri(*ax.property));
    g.insert(node, Term::iri(vocab::kSomeValuesFrom), Term::iri(ax.target));
  }
  for (const auto& [iri, list] : annotations) {
    for (const auto& a : list) g.insert(Term::iri(iri), Term::iri(a.property), Term::literal(a.value));
  }
  return g;
}

}  // namespace pathont::mapper
