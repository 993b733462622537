#include "pathont/rdf/rdf_xml.hpp"

#include <expat.h>

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "pathont/error.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::rdf {

namespace {

// Expat joins namespace URI and local name with this separator.
constexpr char kNsSep = ' ';

std::string expand_name(const XML_Char* raw) {
  std::string name(raw);
  if (const auto sep = name.find(kNsSep); sep != std::string::npos) {
    name.erase(sep, 1);
    return name;
  }
  return name;
}

bool has_namespace(const XML_Char* raw) {
  return std::string_view(raw).find(kNsSep) != std::string_view::npos;
}

bool is_blank_text(std::string_view s) {
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

enum class FrameKind { Root, Node, Property, ResourceProperty, Collection };

struct Frame {
  FrameKind kind = FrameKind::Root;
  std::string base;
  std::string lang;
  // Node and ResourceProperty: the described resource.
  // Property and Collection: the subject the property hangs off.
  Term subject;
  std::string predicate;
  std::string datatype;
  std::string text;
  std::optional<Term> object;
  std::vector<Term> items;
  std::size_t line = 0;
};

class RdfXmlReader {
 public:
  explicit RdfXmlReader(const RdfXmlOptions& options) : options_(options) {}

  Graph run(std::string_view input) {
    std::unique_ptr<XML_ParserStruct, decltype(&XML_ParserFree)> parser(
        XML_ParserCreateNS("UTF-8", kNsSep), &XML_ParserFree);
    if (!parser) throw Error(ErrorCode::XmlSyntax, "cannot allocate XML parser");
    parser_ = parser.get();
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &RdfXmlReader::on_start, &RdfXmlReader::on_end);
    XML_SetCharacterDataHandler(parser_, &RdfXmlReader::on_text);

    const auto status = XML_Parse(parser_, input.data(),
                                  static_cast<int>(input.size()), XML_TRUE);
    if (error_) throw *error_;
    if (status != XML_STATUS_OK) {
      throw Error(ErrorCode::XmlSyntax,
                  XML_ErrorString(XML_GetErrorCode(parser_)),
                  SourcePos{static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_)),
                            static_cast<std::size_t>(XML_GetCurrentColumnNumber(parser_)) + 1});
    }
    return std::move(graph_);
  }

 private:
  static void on_start(void* self, const XML_Char* name, const XML_Char** atts) {
    auto* r = static_cast<RdfXmlReader*>(self);
    if (r->error_) return;
    try {
      r->start(name, atts);
    } catch (const Error& e) {
      r->abort(e);
    }
  }
  static void on_end(void* self, const XML_Char* name) {
    auto* r = static_cast<RdfXmlReader*>(self);
    if (r->error_) return;
    try {
      r->end(name);
    } catch (const Error& e) {
      r->abort(e);
    }
  }
  static void on_text(void* self, const XML_Char* s, int len) {
    auto* r = static_cast<RdfXmlReader*>(self);
    if (r->error_ || r->stack_.empty()) return;
    try {
      r->text(std::string_view(s, static_cast<std::size_t>(len)));
    } catch (const Error& e) {
      r->abort(e);
    }
  }

  void abort(const Error& e) {
    error_ = e;
    XML_StopParser(parser_, XML_FALSE);
  }

  std::size_t line() const {
    return static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
  }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw Error(ErrorCode::UnsupportedRdfConstruct, what, SourcePos{line(), 0});
  }

  Term fresh_blank() {
    return Term::blank(options_.blank_prefix + std::to_string(++blank_counter_));
  }

  Term node_id(const std::string& id) {
    auto it = node_ids_.find(id);
    if (it == node_ids_.end()) it = node_ids_.emplace(id, fresh_blank()).first;
    return it->second;
  }

  std::string resolve(const std::string& base, const std::string& ref) const {
    if (Iri::has_scheme(ref)) return ref;
    if (base.empty()) {
      throw Error(ErrorCode::UnresolvableBase,
                  "relative reference '" + ref + "' with no xml:base", SourcePos{line(), 0});
    }
    return resolve_iri(base, ref);
  }

  void start(const XML_Char* raw_name, const XML_Char** atts) {
    const std::string name = expand_name(raw_name);
    Frame frame;
    if (!stack_.empty()) {
      frame.base = stack_.back().base;
      frame.lang = stack_.back().lang;
    } else {
      frame.base = options_.base;
    }
    frame.line = line();

    static const std::string xml_base = std::string(vocab::kXml) + "base";
    static const std::string xml_lang = std::string(vocab::kXml) + "lang";
    for (auto a = atts; *a; a += 2) {
      const std::string an = expand_name(a[0]);
      if (an == xml_base) frame.base = resolve_iri(frame.base, a[1]);
      if (an == xml_lang) frame.lang = a[1];
    }

    if (stack_.empty()) {
      if (name == vocab::rdf("RDF")) {
        frame.kind = FrameKind::Root;
        stack_.push_back(std::move(frame));
        return;
      }
      Frame root;
      root.base = frame.base;
      root.lang = frame.lang;
      stack_.push_back(std::move(root));
    }

    switch (stack_.back().kind) {
      case FrameKind::Root:
      case FrameKind::Property:
      case FrameKind::Collection:
        start_node(name, atts, std::move(frame));
        break;
      case FrameKind::Node:
      case FrameKind::ResourceProperty:
        start_property(raw_name, name, atts, std::move(frame));
        break;
    }
  }

  void start_node(const std::string& name, const XML_Char** atts, Frame frame) {
    Frame& parent = stack_.back();
    if (parent.kind == FrameKind::Property &&
        (parent.object || !is_blank_text(parent.text))) {
      unsupported("property element with more than one object");
    }

    std::optional<Term> subject;
    for (auto a = atts; *a; a += 2) {
      const std::string an = expand_name(a[0]);
      if (an == vocab::rdf("about")) {
        subject = Term::iri(resolve(frame.base, a[1]));
      } else if (an == vocab::rdf("ID")) {
        if (frame.base.empty()) {
          throw Error(ErrorCode::UnresolvableBase,
                      std::string("rdf:ID=\"") + a[1] + "\" with no xml:base",
                      SourcePos{line(), 0});
        }
        subject = Term::iri(resolve_iri(frame.base, std::string("#") + a[1]));
      } else if (an == vocab::rdf("nodeID")) {
        subject = node_id(a[1]);
      }
    }
    if (!subject) subject = fresh_blank();
    frame.kind = FrameKind::Node;
    frame.subject = *subject;

    if (name != vocab::rdf("Description")) {
      graph_.insert(frame.subject, Term::iri(vocab::kType), Term::iri(name));
    }
    property_attributes(frame.subject, atts, frame, /*on_property=*/false);

    if (parent.kind == FrameKind::Property) {
      parent.object = frame.subject;
    } else if (parent.kind == FrameKind::Collection) {
      parent.items.push_back(frame.subject);
    }
    stack_.push_back(std::move(frame));
  }

  // Emits one literal triple per property attribute. Returns whether any was
  // found. Syntax attributes are skipped; unknown rdf: attributes are fatal.
  bool property_attributes(const Term& subject, const XML_Char** atts,
                           const Frame& frame, bool on_property) {
    bool any = false;
    for (auto a = atts; *a; a += 2) {
      const std::string an = expand_name(a[0]);
      if (an.starts_with(vocab::kXml)) continue;
      if (!has_namespace(a[0])) {
        unsupported("unqualified attribute '" + an + "'");
      }
      if (an.starts_with(vocab::kRdf)) {
        const std::string local = an.substr(vocab::kRdf.size());
        static const std::vector<std::string> node_syntax = {"about", "ID", "nodeID"};
        static const std::vector<std::string> prop_syntax = {"resource", "nodeID", "datatype",
                                                             "parseType"};
        const auto& syntax = on_property ? prop_syntax : node_syntax;
        if (std::find(syntax.begin(), syntax.end(), local) != syntax.end()) continue;
        if (local == "type") {
          graph_.insert(subject, Term::iri(vocab::kType), Term::iri(resolve(frame.base, a[1])));
          any = true;
          continue;
        }
        if (on_property && local == "ID") {
          unsupported("rdf:ID on a property element (reification)");
        }
        unsupported("attribute rdf:" + local);
      }
      graph_.insert(subject, Term::iri(an), Term::literal(a[1], {}, frame.lang));
      any = true;
    }
    return any;
  }

  void start_property(const XML_Char* raw_name, const std::string& name,
                      const XML_Char** atts, Frame frame) {
    const Frame& parent = stack_.back();
    if (!has_namespace(raw_name)) unsupported("unqualified property element '" + name + "'");
    if (name == vocab::rdf("li")) unsupported("rdf:li container membership");
    if (name.starts_with(vocab::kRdf) && name.size() > vocab::kRdf.size() + 1 &&
        name[vocab::kRdf.size()] == '_') {
      unsupported("container membership property " + name);
    }

    frame.kind = FrameKind::Property;
    frame.subject = parent.subject;
    frame.predicate = name;

    std::optional<std::string> parse_type;
    for (auto a = atts; *a; a += 2) {
      const std::string an = expand_name(a[0]);
      if (an == vocab::rdf("resource")) {
        frame.object = Term::iri(resolve(frame.base, a[1]));
      } else if (an == vocab::rdf("nodeID")) {
        frame.object = node_id(a[1]);
      } else if (an == vocab::rdf("datatype")) {
        frame.datatype = resolve(frame.base, a[1]);
      } else if (an == vocab::rdf("parseType")) {
        parse_type = a[1];
      }
    }

    if (parse_type) {
      if (!options_.allow_parse_type) {
        unsupported("rdf:parseType=\"" + *parse_type + "\"");
      }
      if (*parse_type == "Resource") {
        const Term b = fresh_blank();
        graph_.insert(frame.subject, Term::iri(frame.predicate), b);
        frame.kind = FrameKind::ResourceProperty;
        frame.subject = b;
      } else if (*parse_type == "Collection") {
        frame.kind = FrameKind::Collection;
      } else {
        unsupported("rdf:parseType=\"" + *parse_type + "\"");
      }
      stack_.push_back(std::move(frame));
      return;
    }

    // Property attributes on a property element describe the object.
    bool has_prop_attrs = false;
    for (auto a = atts; *a; a += 2) {
      const std::string an = expand_name(a[0]);
      if (has_namespace(a[0]) && !an.starts_with(vocab::kXml) && !an.starts_with(vocab::kRdf)) {
        has_prop_attrs = true;
      } else if (an == vocab::rdf("type") || an == vocab::rdf("ID")) {
        has_prop_attrs = true;
      }
    }
    if (has_prop_attrs) {
      if (!frame.object) frame.object = fresh_blank();
      property_attributes(*frame.object, atts, frame, /*on_property=*/true);
    }
    stack_.push_back(std::move(frame));
  }

  void text(std::string_view s) {
    Frame& top = stack_.back();
    if (top.kind == FrameKind::Property) {
      top.text.append(s);
    } else if (!is_blank_text(s)) {
      unsupported("character data outside a property element");
    }
  }

  void end(const XML_Char*) {
    Frame frame = std::move(stack_.back());
    stack_.pop_back();
    switch (frame.kind) {
      case FrameKind::Root:
      case FrameKind::Node:
      case FrameKind::ResourceProperty:
        break;
      case FrameKind::Property: {
        if (frame.object) {
          if (!is_blank_text(frame.text)) {
            unsupported("property element with both an object and text content");
          }
          graph_.insert(frame.subject, Term::iri(frame.predicate), *frame.object);
        } else if (!frame.datatype.empty()) {
          graph_.insert(frame.subject, Term::iri(frame.predicate),
                        Term::literal(frame.text, frame.datatype));
        } else {
          graph_.insert(frame.subject, Term::iri(frame.predicate),
                        Term::literal(frame.text, {}, frame.lang));
        }
        break;
      }
      case FrameKind::Collection: {
        Term head = Term::iri(vocab::kNil);
        std::vector<Term> cells;
        for (std::size_t i = 0; i < frame.items.size(); ++i) cells.push_back(fresh_blank());
        for (std::size_t i = 0; i < frame.items.size(); ++i) {
          graph_.insert(cells[i], Term::iri(vocab::kFirst), frame.items[i]);
          graph_.insert(cells[i], Term::iri(vocab::kRest),
                        i + 1 < cells.size() ? cells[i + 1] : Term::iri(vocab::kNil));
        }
        if (!cells.empty()) head = cells.front();
        graph_.insert(frame.subject, Term::iri(frame.predicate), head);
        break;
      }
    }
  }

  const RdfXmlOptions& options_;
  XML_Parser parser_ = nullptr;
  std::vector<Frame> stack_;
  std::map<std::string, Term> node_ids_;
  std::size_t blank_counter_ = 0;
  std::optional<Error> error_;
  Graph graph_;
};

}  // namespace

Graph parse_rdf_xml(std::string_view input, const RdfXmlOptions& options) {
  return RdfXmlReader(options).run(input);
}

}  // namespace pathont::rdf
