#include "pathont/service/term_page.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "json.hpp"
#include "pathont/error.hpp"
#include "pathont/mapper/known_iri.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::service {

namespace {

namespace vocab = rdf::vocab;

const Term& type_p() {
  static const Term t = Term::iri(vocab::kType);
  return t;
}
const Term& subclass_p() {
  static const Term t = Term::iri(vocab::kSubClassOf);
  return t;
}
const Term& label_p() {
  static const Term t = Term::iri(vocab::kLabel);
  return t;
}

std::vector<Iri> named_parents(const rdf::Graph& g, const Iri& c) {
  std::vector<Iri> out;
  for (const auto& o : g.objects(Term::iri(c), subclass_p()))
    if (o.is_iri() && o.value() != c.str()) out.emplace_back(o.value());
  return out;
}

// "has_part some X", "has_part only X"; nullopt for anything else.
std::optional<std::string> render_restriction(const rdf::Graph& g, const Term& b) {
  const auto prop = g.first_object(b, Term::iri(vocab::kOnProperty));
  if (!prop) return std::nullopt;
  const std::pair<std::string, const char*> forms[] = {
      {vocab::kSomeValuesFrom, " some "},
      {vocab::owl("allValuesFrom"), " only "},
      {vocab::owl("hasValue"), " value "},
  };
  for (const auto& [p, word] : forms) {
    if (auto f = g.first_object(b, Term::iri(p))) {
      const std::string filler = f->is_blank() ? "(anonymous)" : display_label(g, *f);
      return display_label(g, *prop) + word + filler;
    }
  }
  return std::nullopt;
}

void collect_paths(const rdf::Graph& g, std::vector<Iri>& stack, TermPage& page,
                   std::size_t max_paths) {
  if (page.hierarchy_path.size() >= max_paths) {
    page.hierarchy_truncated = true;
    return;
  }
  std::vector<Iri> parents;
  for (auto& p : named_parents(g, stack.back()))
    if (std::find(stack.begin(), stack.end(), p) == stack.end()) parents.push_back(std::move(p));
  if (parents.empty()) {
    page.hierarchy_path.emplace_back(stack.rbegin(), stack.rend());
    return;
  }
  for (auto& p : parents) {
    stack.push_back(std::move(p));
    collect_paths(g, stack, page, max_paths);
    stack.pop_back();
  }
}

}  // namespace

bool is_declared(const rdf::Graph& g, const Iri& t) {
  const Term s = Term::iri(t);
  for (const auto* type : {&vocab::kOwlClass, &vocab::kObjectProperty, &vocab::kDatatypeProperty,
                           &vocab::kAnnotationProperty})
    if (g.contains({s, type_p(), Term::iri(*type)})) return true;
  return false;
}

std::string display_label(const rdf::Graph& g, const Term& t) {
  if (!t.is_iri()) return t.value();
  std::optional<std::string> best;
  for (const auto& o : g.objects(t, label_p()))
    if (o.is_literal() && (!best || o.value() < *best)) best = o.value();
  return best ? *best : rdf::local_name(t.value());
}

rdf::Graph term_neighborhood(const rdf::Graph& g, const Iri& t) {
  rdf::Graph out;
  std::set<Term> seen_blanks;
  std::function<void(const Term&)> blank_closure = [&](const Term& b) {
    if (!seen_blanks.insert(b).second) return;
    for (const auto& tr : g.match(b, {}, {})) {
      out.insert(tr);
      if (tr.object.is_blank()) blank_closure(tr.object);
    }
  };
  const Term self = Term::iri(t);
  for (const auto& tr : g.match(self, {}, {})) {
    out.insert(tr);
    if (tr.object.is_blank()) blank_closure(tr.object);
  }
  for (const auto& tr : g.match({}, {}, self)) {
    out.insert(tr);
    if (!tr.subject.is_blank()) continue;
    blank_closure(tr.subject);
    // the class asserting the restriction
    for (const auto& owner : g.match({}, {}, tr.subject)) out.insert(owner);
  }
  std::set<Term> named;
  for (const auto& tr : out.triples())
    for (const auto* x : {&tr.subject, &tr.predicate, &tr.object})
      if (x->is_iri()) named.insert(*x);
  for (const auto& n : named)
    for (const auto& tr : g.match(n, label_p(), {})) out.insert(tr);
  return out;
}

TermPage build_term_page(const rdf::Graph& g, const Iri& t, const TermPageOptions& opts) {
  if (!is_declared(g, t)) throw Error(ErrorCode::TermNotFound, "no declared term " + t.str());
  TermPage page{.iri = t};
  const Term self = Term::iri(t);
  page.label = display_label(g, self);

  std::vector<Iri> stack{t};
  collect_paths(g, stack, page, std::max<std::size_t>(opts.max_paths, 1));
  std::sort(page.hierarchy_path.begin(), page.hierarchy_path.end());

  std::vector<std::string> named;
  std::vector<std::string> restrictions;
  std::set<Term> mentioned{self};
  for (const auto& o : g.objects(self, subclass_p())) {
    if (o.is_iri()) {
      named.push_back(display_label(g, o));
      mentioned.insert(o);
    } else if (auto r = render_restriction(g, o)) {
      restrictions.push_back(*r);
      for (const auto& tr : g.match(o, {}, {}))
        if (tr.object.is_iri() && tr.predicate != type_p()) mentioned.insert(tr.object);
    }
  }
  std::sort(named.begin(), named.end());
  std::sort(restrictions.begin(), restrictions.end());
  page.asserted_axioms = std::move(named);
  page.asserted_axioms.insert(page.asserted_axioms.end(), restrictions.begin(), restrictions.end());

  for (const auto& b : g.subjects(Term::iri(vocab::kSomeValuesFrom), self)) {
    if (!b.is_blank()) continue;
    const auto rendered = render_restriction(g, b);
    if (!rendered) continue;
    for (const auto& user : g.subjects(subclass_p(), b)) {
      if (!user.is_iri()) continue;
      page.used_by.emplace_back(Iri(user.value()), *rendered);
      mentioned.insert(user);
    }
  }
  std::sort(page.used_by.begin(), page.used_by.end());

  for (const auto& o : g.objects(self, Term::iri(mapper::known::kHasDbXref)))
    if (o.is_literal()) page.xrefs.push_back(o.value());
  for (const auto& o : g.objects(self, Term::iri(mapper::known::kCitation)))
    if (o.is_literal()) page.citations.push_back(o.value());

  for (const auto& chain : page.hierarchy_path)
    for (const auto& c : chain) mentioned.insert(Term::iri(c));
  for (const auto& m : mentioned) page.labels.emplace(Iri(m.value()), display_label(g, m));

  page.neighborhood = term_neighborhood(g, t);
  return page;
}

std::string to_json(const TermPage& page) {
  using nlohmann::ordered_json;
  auto node = [&](const Iri& i) {
    const auto it = page.labels.find(i);
    return ordered_json{{"iri", i.str()}, {"label", it == page.labels.end() ? rdf::local_name(i.str()) : it->second}};
  };
  ordered_json j;
  j["iri"] = page.iri.str();
  j["label"] = page.label;
  auto& hierarchy = j["hierarchy"] = ordered_json::array();
  for (const auto& chain : page.hierarchy_path) {
    ordered_json c = ordered_json::array();
    for (const auto& i : chain) c.push_back(node(i));
    hierarchy.push_back(std::move(c));
  }
  j["hierarchy_truncated"] = page.hierarchy_truncated;
  j["axioms"] = page.asserted_axioms;
  auto& used = j["used_by"] = ordered_json::array();
  for (const auto& [user, axiom] : page.used_by) {
    auto u = node(user);
    u["axiom"] = axiom;
    used.push_back(std::move(u));
  }
  j["xrefs"] = page.xrefs;
  j["citations"] = page.citations;
  auto& labels = j["labels"] = ordered_json::object();
  for (const auto& [i, l] : page.labels) labels[i.str()] = l;
  auto& triples = j["triples"] = ordered_json::array();
  for (const auto& tr : page.neighborhood.triples())
    triples.push_back(tr.subject.to_string() + " " + tr.predicate.to_string() + " " +
                      tr.object.to_string() + " .");
  return j.dump(2) + "\n";
}

std::string to_turtle(const TermPage& page) { return rdf::serialize_turtle(page.neighborhood); }

}  // namespace pathont::service
