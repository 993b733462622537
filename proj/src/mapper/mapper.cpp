#include "pathont/mapper/mapper.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "json.hpp"
#include "pathont/error.hpp"
#include "pathont/mapper/known_iri.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::mapper {

using biopax::BioPaxDocument;
using biopax::BioPaxEntity;
using biopax::EntityKind;
using biopax::XrefKind;
using biopax::XrefRec;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

// "CHEBI:29108" or "29108" under a ChEBI database.
std::optional<std::string> accession_digits(const XrefRec& x, std::initializer_list<const char*> dbs,
                                            std::string_view curie_prefix) {
  const std::string db = lower(x.database);
  if (std::none_of(dbs.begin(), dbs.end(), [&](const char* d) { return db == d; })) {
    return std::nullopt;
  }
  std::string_view acc = x.accession;
  if (lower(acc).starts_with(lower(curie_prefix))) acc.remove_prefix(curie_prefix.size());
  if (!digits(acc)) return std::nullopt;
  return std::string(acc);
}

std::optional<Iri> chebi_class(const BioPaxEntity& e) {
  for (const auto& x : e.xrefs) {
    if (x.xref_kind != XrefKind::Unification) continue;
    if (auto n = accession_digits(x, {"chebi"}, "CHEBI:")) return Iri(known::kChebiPrefix + *n);
  }
  return std::nullopt;
}

std::optional<Iri> pr_class(const BioPaxEntity& e) {
  for (const auto& x : e.xrefs) {
    if (x.xref_kind != XrefKind::Unification) continue;
    auto n = accession_digits(x, {"pro", "pr", "protein ontology"}, "PR:");
    if (n && n->size() == 9) return Iri(known::kPrPrefix + *n);
  }
  return std::nullopt;
}

struct BackboneEntry {
  std::string label;
  std::optional<std::string> parent;
};

// Declared in the output whenever a converted class hangs below it.
const std::map<std::string, BackboneEntry>& backbone() {
  static const std::map<std::string, BackboneEntry> table = {
      {known::kEntity, {"entity", std::nullopt}},
      {known::kContinuant, {"continuant", known::kEntity}},
      {known::kIndependentContinuant, {"independent continuant", known::kContinuant}},
      {known::kMaterialEntity, {"material entity", known::kIndependentContinuant}},
      {known::kOccurrent, {"occurrent", known::kEntity}},
      {known::kProcess, {"processual_entity", known::kOccurrent}},
      {known::kInteraction, {"interaction", known::kProcess}},
      {known::kInteractionNetwork, {"interaction_network", known::kProcess}},
      {known::kPathway, {"pathway", known::kInteractionNetwork}},
      {known::kHumanMolecularPathway, {"human_molecular_pathway", known::kPathway}},
      {known::kPathwayStep, {"pathway step", known::kProcess}},
      {known::kProtein, {"protein", known::kMaterialEntity}},
      {known::kComplex, {"protein-containing complex", known::kMaterialEntity}},
      {known::kChemicalEntity, {"chemical entity", known::kMaterialEntity}},
      {known::kDna, {"deoxyribonucleic acid", known::kChemicalEntity}},
      {known::kRna, {"ribonucleic acid", known::kChemicalEntity}},
      {known::kCellularComponent, {"cellular_component", known::kMaterialEntity}},
      {known::kUnresolvedOrganism, {"organism (unresolved)", known::kMaterialEntity}},
  };
  return table;
}

const std::map<std::string, std::string>& property_labels() {
  static const std::map<std::string, std::string> table = {
      {known::kHasPart, "has_part"},
      {known::kLocatedIn, "located_in"},
      {known::kPathwayOrder, "pathwayOrder"},
      {known::kPrecedes, "precedes"},
      {known::kOccursIn, "occurs_in"},
  };
  return table;
}

std::string xref_text(const XrefRec& x) {
  if (x.accession.find(':') != std::string::npos) return x.accession;
  return x.database + ":" + x.accession;
}

class Converter {
 public:
  Converter(const BioPaxDocument& doc, IdRegistry& reg, const MapperOptions& opts)
      : doc_(doc), reg_(reg), opts_(opts) {}

  Conversion run() {
    out_.report.source_id = opts_.source_id;
    out_.report.skipped_types = doc_.skipped_types;
    out_.report.warnings = doc_.warnings;
    if (doc_.empty()) return std::move(out_);

    mint_all();
    for (const auto& [id, p] : doc_.pathways) convert_pathway(p);
    for (const auto& [id, s] : doc_.steps) convert_step(s);
    for (const auto& [id, e] : doc_.interactions) convert_interaction(e);
    for (const auto& [id, e] : doc_.physical_entities) convert_physical(e);
    finish();
    return std::move(out_);
  }

 private:
  std::string key(const Iri& id) const { return source_key(opts_.source_id, id); }

  void mint_all() {
    std::vector<std::string> keys;
    std::map<std::string, Iri> seen;
    auto want = [&](const Iri& id) {
      const std::string k = key(id);
      if (auto [it, fresh] = seen.emplace(k, id); !fresh && it->second != id) {
        throw Error(ErrorCode::DuplicateSourceKey,
                    "source key '" + k + "' is shared by " + it->second.str() + " and " + id.str());
      }
      keys.push_back(k);
    };
    for (const auto& [id, r] : doc_.pathways) {
      want(id);
      if (r.organism && !biopax::taxon_of(doc_.biosources.at(*r.organism))) want(*r.organism);
    }
    for (const auto& [id, r] : doc_.steps) want(id);
    for (const auto& [id, r] : doc_.interactions) want(id);
    for (const auto& [id, r] : doc_.physical_entities) {
      want(id);
      if (r.cellular_location && !doc_.locations.at(*r.cellular_location).go_xref) {
        want(*r.cellular_location);
      }
    }
    out_.report.classes_minted = reg_.mint_batch(std::move(keys));
  }

  Iri minted(const Iri& id) const {
    auto iri = reg_.find(key(id));
    if (!iri) throw Error(ErrorCode::PreconditionViolation, "no minted class for " + id.str());
    return *iri;
  }

  void declare(const Iri& cls, std::string label) {
    auto [it, fresh] = out_.ontology.classes.emplace(cls, std::move(label));
    if (!fresh) {
      throw Error(ErrorCode::PreconditionViolation, "class declared twice: " + cls.str());
    }
  }

  std::string label_or_fallback(const std::optional<std::string>& name, const Iri& source) {
    if (name && !name->empty()) return *name;
    const std::string local = rdf::local_name(source.str());
    out_.report.fallbacks.push_back({"label", source.str(), "no display name; using '" + local + "'"});
    return local;
  }

  void annotate(const Iri& cls, const std::string& property, std::string value) {
    out_.ontology.annotations[cls].insert({Iri(property), std::move(value)});
    used_annotation_props_.insert(property);
  }

  void annotate_xrefs(const Iri& cls, const Iri& source, const std::vector<XrefRec>& xrefs) {
    annotate(cls, known::kHasDbXref, source.str());
    for (const auto& x : xrefs) {
      if (x.xref_kind == XrefKind::Publication) {
        auto [prop, text] = simplify_citation(x);
        annotate(cls, prop.str(), std::move(text));
        ++out_.report.citations_simplified;
      } else if (!x.accession.empty()) {
        annotate(cls, known::kHasDbXref, xref_text(x));
      }
    }
  }

  void named(const Iri& sub, const Iri& super) {
    out_.ontology.axioms.insert(ClassAxiom::named(sub, super));
  }

  void some(const Iri& sub, const std::string& property, const Iri& filler) {
    out_.ontology.axioms.insert(ClassAxiom::some(sub, Iri(property), filler));
  }

  std::optional<long> taxon(const std::optional<Iri>& biosource) const {
    if (!biosource) return std::nullopt;
    return biopax::taxon_of(doc_.biosources.at(*biosource));
  }

  void convert_pathway(const biopax::PathwayRec& p) {
    const Iri cls = minted(p.id);
    if (p.display_name_fallback) {
      out_.report.fallbacks.push_back(
          {"label", p.id.str(), "no display name; using '" + p.display_name + "'"});
    }
    declare(cls, p.display_name);
    named(cls, route_superclass(p, taxon(p.organism)));
    for (const auto& c : p.components) some(cls, known::kHasPart, minted(c));
    for (const auto& s : p.step_order) some(cls, known::kPathwayOrder, minted(s));
    if (p.organism) {
      const auto& b = doc_.biosources.at(*p.organism);
      auto [org, resolved] = map_species(b, reg_, opts_.source_id);
      if (!resolved) declare_unresolved_organism(org, b);
      some(cls, opts_.organism_occurs_in ? known::kOccursIn : known::kLocatedIn, org);
      if (is_mixed(p)) out_.report.mixed_organism_pathways.push_back(key(p.id));
    }
    annotate_xrefs(cls, p.id, p.xrefs);
  }

  void declare_unresolved_organism(const Iri& org, const biopax::BioSourceRec& b) {
    if (out_.ontology.classes.contains(org)) return;
    declare(org, b.name);
    named(org, Iri(known::kUnresolvedOrganism));
    annotate(org, known::kHasDbXref, b.id.str());
    out_.report.fallbacks.push_back(
        {"organism", b.id.str(), "no taxonomy xref for '" + b.name + "'; minted " + org.str()});
  }

  // Participants (through complexes) whose organism differs from the pathway's.
  bool is_mixed(const biopax::PathwayRec& p) const {
    const auto own = taxon(p.organism);
    std::set<Iri> seen;
    std::function<bool(const Iri&)> differs = [&](const Iri& pe) {
      if (!seen.insert(pe).second) return false;
      const auto& e = doc_.physical_entities.at(pe);
      if (e.organism && (*e.organism != *p.organism) && taxon(e.organism) != own) return true;
      return std::any_of(e.components.begin(), e.components.end(), differs);
    };
    auto interaction_differs = [&](const Iri& i) {
      const auto it = doc_.interactions.find(i);
      if (it == doc_.interactions.end()) return false;
      return std::any_of(it->second.participants.begin(), it->second.participants.end(),
                         [&](const biopax::ParticipantLink& l) { return differs(l.entity); });
    };
    for (const auto& c : p.components) {
      if (interaction_differs(c)) return true;
    }
    for (const auto& s : p.step_order) {
      for (const auto& q : doc_.steps.at(s).step_processes) {
        if (interaction_differs(q)) return true;
      }
    }
    return false;
  }

  void convert_step(const biopax::PathwayStepRec& s) {
    const Iri cls = minted(s.id);
    const auto n = reg_.counter_of(cls);
    declare(cls, "PathwayStep" + std::to_string(n.value_or(0)));
    named(cls, Iri(known::kPathwayStep));
    for (const auto& q : s.step_processes) some(cls, known::kHasPart, minted(q));
    for (const auto& t : s.next_steps) some(cls, known::kPrecedes, minted(t));
    annotate(cls, known::kHasDbXref, s.id.str());
  }

  void convert_interaction(const BioPaxEntity& e) {
    const Iri cls = minted(e.id);
    declare(cls, label_or_fallback(e.display_name, e.id));
    named(cls, route_superclass(e));
    annotate_xrefs(cls, e.id, e.xrefs);
  }

  void convert_physical(const BioPaxEntity& e) {
    const Iri cls = minted(e.id);
    declare(cls, label_or_fallback(e.display_name, e.id));
    named(cls, route_superclass(e));
    for (const auto& c : e.components) some(cls, known::kHasPart, minted(c));
    if (e.cellular_location) {
      const auto& loc = doc_.locations.at(*e.cellular_location);
      auto [axiom, resolved] = map_location(cls, loc, reg_, opts_.source_id);
      if (!resolved && !out_.ontology.classes.contains(axiom.target)) {
        declare(axiom.target, loc.term);
        named(axiom.target, Iri(known::kCellularComponent));
        annotate(axiom.target, known::kHasDbXref, loc.id.str());
        out_.report.fallbacks.push_back(
            {"location", loc.id.str(), "no GO accession for '" + loc.term + "'"});
      }
      out_.ontology.axioms.insert(std::move(axiom));
    }
    annotate_xrefs(cls, e.id, e.xrefs);
  }

  void finish() {
    auto& onto = out_.ontology;
    // Pull in the backbone above every named superclass.
    std::vector<std::string> pending;
    for (const auto& ax : onto.axioms) {
      if (ax.kind == AxiomKind::SubClassOfNamed) pending.push_back(ax.target.str());
    }
    while (!pending.empty()) {
      const std::string iri = pending.back();
      pending.pop_back();
      const auto it = backbone().find(iri);
      if (it == backbone().end() || onto.classes.contains(Iri(iri))) continue;
      onto.classes.emplace(Iri(iri), it->second.label);
      if (it->second.parent) {
        onto.axioms.insert(ClassAxiom::named(Iri(iri), Iri(*it->second.parent)));
        pending.push_back(*it->second.parent);
      }
    }

    for (const auto& ax : onto.axioms) {
      if (!onto.classes.contains(ax.target)) out_.import_requests.insert(ax.target);
      if (ax.kind == AxiomKind::SubClassOfNamed) {
        ++out_.report.axioms_by_kind["SubClassOfNamed"];
      } else {
        ++out_.report.axioms_by_kind["SubClassOfSomeValuesFrom"];
        const std::string& prop = ax.property->str();
        onto.object_properties.emplace(*ax.property, property_labels().at(prop));
        ++out_.report.restrictions_by_property[property_labels().at(prop)];
      }
    }
    for (const auto& p : used_annotation_props_) {
      onto.annotation_properties.emplace(
          Iri(p), p == known::kCitation ? "bibliographic citation" : "database_cross_reference");
    }
    out_.report.classes_declared = onto.classes.size();
    out_.report.external_terms = out_.import_requests.size();
    std::sort(out_.report.fallbacks.begin(), out_.report.fallbacks.end());
  }

  const BioPaxDocument& doc_;
  IdRegistry& reg_;
  const MapperOptions& opts_;
  Conversion out_;
  std::set<std::string> used_annotation_props_;
};

}  // namespace

std::string source_key(std::string_view source_id, const Iri& id) {
  return std::string(source_id) + "#" + rdf::local_name(id.str());
}

Conversion convert(const BioPaxDocument& doc, IdRegistry& reg, const MapperOptions& opts) {
  if (opts.source_id.empty() || opts.source_id.find('#') != std::string::npos ||
      opts.source_id.find('\t') != std::string::npos) {
    throw Error(ErrorCode::PreconditionViolation, "invalid source id '" + opts.source_id + "'");
  }
  IdRegistry scratch = reg;
  Conversion result = Converter(doc, scratch, opts).run();
  reg = std::move(scratch);
  return result;
}

Iri route_superclass(const biopax::PathwayRec&, std::optional<long> organism_taxon) {
  return Iri(organism_taxon == 9606 ? known::kHumanMolecularPathway : known::kPathway);
}

Iri route_superclass(const BioPaxEntity& e) {
  switch (e.kind) {
    case EntityKind::Pathway: return Iri(known::kPathway);
    case EntityKind::BiochemicalReaction:
    case EntityKind::OtherInteraction: return Iri(known::kInteraction);
    case EntityKind::Protein: return pr_class(e).value_or(Iri(known::kProtein));
    case EntityKind::Complex: return Iri(known::kComplex);
    case EntityKind::SmallMolecule: return chebi_class(e).value_or(Iri(known::kChemicalEntity));
    case EntityKind::Dna: return Iri(known::kDna);
    case EntityKind::Rna: return Iri(known::kRna);
    case EntityKind::PhysicalEntityOther: return Iri(known::kMaterialEntity);
  }
  return Iri(known::kMaterialEntity);
}

std::pair<Iri, bool> map_species(const biopax::BioSourceRec& b, IdRegistry& reg,
                                 std::string_view source_id) {
  if (auto t = biopax::taxon_of(b)) {
    return {Iri(known::kNcbiTaxonPrefix + std::to_string(*t)), true};
  }
  return {reg.mint(source_key(source_id, b.id)), false};
}

std::pair<ClassAxiom, bool> map_location(const Iri& owner, const biopax::LocationRec& l,
                                         IdRegistry& reg, std::string_view source_id) {
  if (l.go_xref) {
    return {ClassAxiom::some(owner, Iri(known::kLocatedIn), Iri(known::kGoPrefix + *l.go_xref)),
            true};
  }
  return {ClassAxiom::some(owner, Iri(known::kLocatedIn), reg.mint(source_key(source_id, l.id))),
          false};
}

std::pair<Iri, std::string> simplify_citation(const XrefRec& x) {
  if (x.xref_kind != XrefKind::Publication) {
    throw Error(ErrorCode::PreconditionViolation,
                "simplify_citation needs a publication xref, got " + x.database + ":" + x.accession);
  }
  if (!digits(x.accession)) {
    throw Error(ErrorCode::NonNumericPmid, "PubMed id '" + x.accession + "' is not numeric");
  }
  return {Iri(known::kCitation), "PMID:" + x.accession};
}

std::string import_requests_text(const std::set<Iri>& requests) {
  std::string out;
  for (const auto& iri : requests) out += iri.str() + "\n";
  return out;
}

std::string ConversionReport::to_json() const {
  nlohmann::ordered_json j;
  j["source"] = source_id;
  j["classes_declared"] = classes_declared;
  j["classes_minted"] = classes_minted;
  j["axioms_by_kind"] = axioms_by_kind;
  j["restrictions_by_property"] = restrictions_by_property;
  j["external_terms_requested"] = external_terms;
  j["citations_simplified"] = citations_simplified;
  auto fb = nlohmann::ordered_json::array();
  for (const auto& f : fallbacks) {
    fb.push_back({{"kind", f.kind}, {"source", f.source}, {"detail", f.detail}});
  }
  j["fallbacks"] = fb;
  j["mixed_organism_pathways"] = mixed_organism_pathways;
  j["skipped_types"] = skipped_types;
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

}  // namespace pathont::mapper
