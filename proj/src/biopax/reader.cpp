#include "pathont/biopax/reader.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pathont/error.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::biopax {

using rdf::Term;

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::Pathway: return "Pathway";
    case EntityKind::BiochemicalReaction: return "BiochemicalReaction";
    case EntityKind::OtherInteraction: return "OtherInteraction";
    case EntityKind::Protein: return "Protein";
    case EntityKind::Complex: return "Complex";
    case EntityKind::SmallMolecule: return "SmallMolecule";
    case EntityKind::Dna: return "Dna";
    case EntityKind::Rna: return "Rna";
    case EntityKind::PhysicalEntityOther: return "PhysicalEntityOther";
  }
  return "?";
}

bool is_interaction(EntityKind kind) {
  return kind == EntityKind::BiochemicalReaction || kind == EntityKind::OtherInteraction;
}

bool is_physical(EntityKind kind) {
  return kind != EntityKind::Pathway && !is_interaction(kind);
}

std::size_t BioPaxDocument::registry_size() const {
  return pathways.size() + interactions.size() + physical_entities.size() + steps.size() +
         biosources.size() + locations.size() + xrefs.size() + entity_references.size() +
         stoichiometries.size() + sequence_features.size();
}

std::size_t BioPaxDocument::skipped_count() const {
  std::size_t n = 0;
  for (const auto& [type, count] : skipped_types) n += count;
  return n;
}

namespace {

enum class Category {
  Pathway,
  Interaction,
  Physical,
  Step,
  BioSource,
  Location,
  Xref,
  EntityReference,
  Stoichiometry,
  SequenceFeature,
};

struct TypeInfo {
  Category category;
  EntityKind kind = EntityKind::PhysicalEntityOther;
  XrefKind xref_kind = XrefKind::Unification;
};

const std::map<std::string, TypeInfo>& allowlist() {
  static const std::map<std::string, TypeInfo> table = [] {
    std::map<std::string, TypeInfo> t;
    t["Pathway"] = {Category::Pathway, EntityKind::Pathway};
    t["BiochemicalReaction"] = {Category::Interaction, EntityKind::BiochemicalReaction};
    for (const char* name :
         {"Interaction", "Conversion", "ComplexAssembly", "Transport",
          "TransportWithBiochemicalReaction", "Degradation", "TemplateReaction",
          "MolecularInteraction", "GeneticInteraction", "Control", "Catalysis", "Modulation",
          "TemplateReactionRegulation"}) {
      t[name] = {Category::Interaction, EntityKind::OtherInteraction};
    }
    t["Protein"] = {Category::Physical, EntityKind::Protein};
    t["Complex"] = {Category::Physical, EntityKind::Complex};
    t["SmallMolecule"] = {Category::Physical, EntityKind::SmallMolecule};
    t["Dna"] = {Category::Physical, EntityKind::Dna};
    t["Rna"] = {Category::Physical, EntityKind::Rna};
    for (const char* name : {"PhysicalEntity", "DnaRegion", "RnaRegion"}) {
      t[name] = {Category::Physical, EntityKind::PhysicalEntityOther};
    }
    t["PathwayStep"] = {Category::Step};
    t["BiochemicalPathwayStep"] = {Category::Step};
    t["BioSource"] = {Category::BioSource};
    t["CellularLocationVocabulary"] = {Category::Location};
    t["UnificationXref"] = {Category::Xref, {}, XrefKind::Unification};
    t["PublicationXref"] = {Category::Xref, {}, XrefKind::Publication};
    t["RelationshipXref"] = {Category::Xref, {}, XrefKind::Relationship};
    for (const char* name : {"EntityReference", "ProteinReference", "SmallMoleculeReference",
                             "DnaReference", "RnaReference", "DnaRegionReference",
                             "RnaRegionReference"}) {
      t[name] = {Category::EntityReference};
    }
    t["Stoichiometry"] = {Category::Stoichiometry};
    for (const char* name : {"SequenceSite", "SequenceInterval", "SequenceLocation"}) {
      t[name] = {Category::SequenceFeature};
    }
    return t;
  }();
  return table;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; });
}

// Accepts "GO:0005737" or "0005737"; returns the 7 digits.
std::optional<std::string> parse_go_accession(std::string_view text) {
  std::string_view s = text;
  if (s.size() > 3 && to_lower(s.substr(0, 3)) == "go:") s.remove_prefix(3);
  if (s.size() == 7 && all_digits(s)) return std::string(s);
  return std::nullopt;
}

class Extractor {
 public:
  explicit Extractor(const rdf::Graph& g) : g_(g) {}

  BioPaxDocument run() {
    classify();
    for (const auto& [iri, info] : types_) build(iri, info);
    return std::move(doc_);
  }

 private:
  Term bp(std::string_view local) const {
    return Term::iri(std::string(kNamespace) + std::string(local));
  }

  void classify() {
    const Term type = Term::iri(rdf::vocab::kType);
    for (const auto& t : g_.match(std::nullopt, type, std::nullopt)) {
      if (!t.object.is_iri()) continue;
      declared_.insert(t.subject);
      const std::string& cls = t.object.value();
      if (!cls.starts_with(kNamespace)) continue;
      if (!t.subject.is_iri()) {
        doc_.warnings.push_back("BioPAX resource without an IRI ignored: " + t.subject.to_string());
        continue;
      }
      const std::string local = cls.substr(kNamespace.size());
      const auto it = allowlist().find(local);
      if (it == allowlist().end()) {
        skipped_candidates_[t.subject].insert(cls);
        continue;
      }
      const Iri iri(t.subject.value());
      if (const auto prev = types_.find(iri); prev != types_.end()) {
        if (prev->second.second != local) {
          doc_.warnings.push_back("resource " + iri.str() + " has several BioPAX types; using " +
                                  prev->second.second);
        }
        continue;
      }
      types_.emplace(iri, std::make_pair(it->second, local));
    }
    for (const auto& [subject, classes] : skipped_candidates_) {
      if (subject.is_iri() && types_.contains(Iri(subject.value()))) continue;
      ++doc_.skipped_types[*classes.begin()];
      skipped_.insert(subject);
    }
  }

  std::vector<Term> values(const Iri& subject, std::string_view property) const {
    return g_.objects(Term::iri(subject), bp(property));
  }

  std::optional<std::string> text_of(const Iri& subject, std::string_view property) const {
    for (const auto& v : values(subject, property)) {
      if (v.is_literal()) return v.value();
    }
    return std::nullopt;
  }

  // Resolves a reference. Returns nullopt when the target was skipped.
  std::optional<Iri> ref(const Iri& from, std::string_view property, const Term& target,
                         std::initializer_list<Category> allowed) {
    const std::string triple = "<" + from.str() + "> bp:" + std::string(property) + " " +
                               target.to_string();
    if (!target.is_iri()) {
      if (skipped_.contains(target)) return std::nullopt;
      throw Error(ErrorCode::DanglingReference,
                  "reference to undeclared resource " + target.to_string() + " from " +
                      from.str() + " in triple " + triple);
    }
    const Iri to(target.value());
    const auto it = types_.find(to);
    if (it == types_.end()) {
      if (skipped_.contains(target)) {
        doc_.warnings.push_back("dropped reference to skipped resource in " + triple);
        return std::nullopt;
      }
      if (!declared_.contains(target)) {
        throw Error(ErrorCode::DanglingReference,
                    "reference to undeclared resource " + to.str() + " from " + from.str() +
                        " in triple " + triple);
      }
      throw Error(ErrorCode::ReferenceKindMismatch,
                  "reference to non-BioPAX resource in " + triple);
    }
    if (std::find(allowed.begin(), allowed.end(), it->second.first.category) == allowed.end()) {
      throw Error(ErrorCode::ReferenceKindMismatch,
                  "unexpected target type bp:" + it->second.second + " in " + triple);
    }
    return to;
  }

  std::vector<Iri> refs(const Iri& from, std::string_view property,
                        std::initializer_list<Category> allowed) {
    std::vector<Iri> out;
    for (const auto& v : values(from, property)) {
      if (auto r = ref(from, property, v, allowed)) out.push_back(*r);
    }
    return out;
  }

  std::optional<Iri> single_ref(const Iri& from, std::string_view property,
                                std::initializer_list<Category> allowed) {
    auto all = refs(from, property, allowed);
    if (all.empty()) return std::nullopt;
    if (all.size() > 1) {
      doc_.warnings.push_back(from.str() + " has several bp:" + std::string(property) +
                              " values; using " + all.front().str());
    }
    return all.front();
  }

  XrefRec xref_record(const Iri& id) {
    XrefRec x;
    x.database = text_of(id, "db").value_or("");
    x.accession = text_of(id, "id").value_or("");
    x.xref_kind = types_.at(id).first.xref_kind;
    return x;
  }

  // Xrefs attached to a record. Publication xrefs survive only as PubMed
  // references with an all-digit accession.
  std::vector<XrefRec> xref_list(const Iri& owner) {
    std::vector<XrefRec> out;
    for (const auto& id : refs(owner, "xref", {Category::Xref})) {
      XrefRec x = xref_record(id);
      if (x.xref_kind == XrefKind::Publication &&
          (to_lower(x.database) != "pubmed" || !all_digits(x.accession))) {
        doc_.warnings.push_back("dropped publication xref " + id.str() + " (db '" + x.database +
                                "', id '" + x.accession + "'): not a numeric PubMed id");
        continue;
      }
      out.push_back(std::move(x));
    }
    return out;
  }

  std::optional<std::string> display_name(const Iri& id) const {
    if (auto n = text_of(id, "displayName")) return n;
    if (auto n = text_of(id, "standardName")) return n;
    return text_of(id, "name");
  }

  void build(const Iri& id, const std::pair<TypeInfo, std::string>& typed) {
    const auto& [info, local] = typed;
    switch (info.category) {
      case Category::Pathway: build_pathway(id); break;
      case Category::Interaction: build_interaction(id, info.kind, local); break;
      case Category::Physical: build_physical(id, info.kind, local); break;
      case Category::Step: build_step(id); break;
      case Category::BioSource: build_biosource(id); break;
      case Category::Location: build_location(id); break;
      case Category::Xref: doc_.xrefs.emplace(id, xref_record(id)); break;
      case Category::EntityReference: build_entity_reference(id, local); break;
      case Category::Stoichiometry: build_stoichiometry(id); break;
      case Category::SequenceFeature: doc_.sequence_features.emplace(id, local); break;
    }
  }

  void build_pathway(const Iri& id) {
    PathwayRec p{.id = id, .display_name = {}};
    if (auto name = display_name(id)) {
      p.display_name = *name;
    } else {
      p.display_name = rdf::local_name(id.str());
      p.display_name_fallback = true;
      doc_.warnings.push_back("MissingDisplayName: pathway " + id.str() +
                              " has no display name; using '" + p.display_name + "'");
    }
    p.organism = single_ref(id, "organism", {Category::BioSource});
    p.step_order = refs(id, "pathwayOrder", {Category::Step});
    p.components = refs(id, "pathwayComponent", {Category::Pathway, Category::Interaction});
    p.xrefs = xref_list(id);
    doc_.pathways.emplace(id, std::move(p));
  }

  void build_interaction(const Iri& id, EntityKind kind, const std::string& local) {
    BioPaxEntity e{.id = id, .kind = kind, .type_name = local};
    e.display_name = display_name(id);
    e.xrefs = xref_list(id);
    e.organism = single_ref(id, "organism", {Category::BioSource});

    std::map<Iri, std::string> coefficients;
    for (const auto& s : refs(id, "participantStoichiometry", {Category::Stoichiometry})) {
      const auto pe = single_ref(s, "physicalEntity", {Category::Physical});
      const auto coef = text_of(s, "stoichiometricCoefficient");
      if (pe && coef) coefficients[*pe] = *coef;
    }
    const std::pair<const char*, ParticipantRole> roles[] = {
        {"left", ParticipantRole::Left},           {"right", ParticipantRole::Right},
        {"participant", ParticipantRole::Participant}, {"cofactor", ParticipantRole::Cofactor},
        {"product", ParticipantRole::Product},     {"template", ParticipantRole::Template},
    };
    for (const auto& [prop, role] : roles) {
      for (const auto& pe : refs(id, prop, {Category::Physical})) {
        ParticipantLink link{.entity = pe, .role = role};
        if (const auto c = coefficients.find(pe); c != coefficients.end()) {
          link.stoichiometry = c->second;
        }
        e.participants.push_back(std::move(link));
      }
    }
    for (const auto& c : refs(id, "controller", {Category::Physical, Category::Pathway})) {
      if (types_.at(c).first.category == Category::Physical) {
        e.participants.push_back({.entity = c, .role = ParticipantRole::Controller});
      } else {
        e.controlled.push_back(c);
      }
    }
    for (const auto& c : refs(id, "controlled", {Category::Interaction, Category::Pathway})) {
      e.controlled.push_back(c);
    }
    doc_.interactions.emplace(id, std::move(e));
  }

  void build_physical(const Iri& id, EntityKind kind, const std::string& local) {
    BioPaxEntity e{.id = id, .kind = kind, .type_name = local};
    e.display_name = display_name(id);
    e.cellular_location = single_ref(id, "cellularLocation", {Category::Location});
    e.xrefs = xref_list(id);
    e.components = refs(id, "component", {Category::Physical});
    if (std::find(e.components.begin(), e.components.end(), id) != e.components.end()) {
      throw Error(ErrorCode::ReferenceKindMismatch, "complex " + id.str() + " contains itself");
    }
    // Entity references are flattened into the owning entity.
    for (const auto& er : refs(id, "entityReference", {Category::EntityReference})) {
      for (auto& x : xref_list(er)) e.xrefs.push_back(std::move(x));
      if (!e.organism) e.organism = single_ref(er, "organism", {Category::BioSource});
    }
    std::sort(e.xrefs.begin(), e.xrefs.end());
    e.xrefs.erase(std::unique(e.xrefs.begin(), e.xrefs.end()), e.xrefs.end());
    doc_.physical_entities.emplace(id, std::move(e));
  }

  void build_step(const Iri& id) {
    PathwayStepRec s{.id = id};
    s.step_processes = refs(id, "stepProcess", {Category::Pathway, Category::Interaction});
    for (const auto& next : refs(id, "nextStep", {Category::Step})) {
      if (next == id) {
        doc_.warnings.push_back("dropped self-referencing nextStep on " + id.str());
        continue;
      }
      s.next_steps.push_back(next);
    }
    doc_.steps.emplace(id, std::move(s));
  }

  void build_biosource(const Iri& id) {
    BioSourceRec b{.id = id, .name = display_name(id).value_or(rdf::local_name(id.str()))};
    for (const auto& x : refs(id, "xref", {Category::Xref})) {
      const XrefRec rec = xref_record(x);
      const std::string db = to_lower(rec.database);
      if (db.find("taxonomy") == std::string::npos && db != "ncbi_taxon" && db != "ncbitaxon") {
        continue;
      }
      std::string acc = rec.accession;
      if (to_lower(acc).starts_with("ncbitaxon:")) acc = acc.substr(10);
      if (all_digits(acc)) {
        b.taxon_xref = acc;
        break;
      }
      doc_.warnings.push_back("ignored non-numeric taxonomy id '" + rec.accession + "' on " + id.str());
    }
    doc_.biosources.emplace(id, std::move(b));
  }

  void build_location(const Iri& id) {
    LocationRec l{.id = id, .term = text_of(id, "term").value_or(rdf::local_name(id.str()))};
    for (const auto& x : refs(id, "xref", {Category::Xref})) {
      const XrefRec rec = xref_record(x);
      const std::string db = to_lower(rec.database);
      if (db != "gene ontology" && db != "go") continue;
      if (auto go = parse_go_accession(rec.accession)) {
        l.go_xref = go;
        break;
      }
      doc_.warnings.push_back("ignored malformed GO accession '" + rec.accession + "' on " + id.str());
    }
    // Fall back to a GO accession written as the term text.
    if (!l.go_xref) l.go_xref = parse_go_accession(l.term);
    doc_.locations.emplace(id, std::move(l));
  }

  void build_entity_reference(const Iri& id, const std::string& local) {
    EntityReferenceRec r{.id = id, .type_name = local};
    r.name = display_name(id);
    r.organism = single_ref(id, "organism", {Category::BioSource});
    r.xrefs = xref_list(id);
    doc_.entity_references.emplace(id, std::move(r));
  }

  void build_stoichiometry(const Iri& id) {
    StoichiometryRec s{.id = id};
    s.physical_entity = single_ref(id, "physicalEntity", {Category::Physical});
    s.coefficient = text_of(id, "stoichiometricCoefficient").value_or("");
    doc_.stoichiometries.emplace(id, std::move(s));
  }

  const rdf::Graph& g_;
  BioPaxDocument doc_;
  std::map<Iri, std::pair<TypeInfo, std::string>> types_;
  std::map<Term, std::set<std::string>> skipped_candidates_;
  std::set<Term> skipped_;
  std::set<Term> declared_;
};

}  // namespace

BioPaxDocument extract_document(const rdf::Graph& g) { return Extractor(g).run(); }

std::optional<long> taxon_of(const BioSourceRec& rec) {
  if (!rec.taxon_xref || !all_digits(*rec.taxon_xref)) return std::nullopt;
  return std::stol(*rec.taxon_xref);
}

std::string skipped_report_tsv(const BioPaxDocument& doc) {
  std::string out;
  for (const auto& [type, count] : doc.skipped_types) {
    out += type + "\t" + std::to_string(count) + "\n";
  }
  return out;
}

}  // namespace pathont::biopax
