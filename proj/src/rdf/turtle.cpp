#include "pathont/rdf/turtle.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>

#include "pathont/error.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::rdf {

namespace {

bool is_pn_prefix_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80;
}

bool is_pn_local_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == ':' ||
         c == '%' || c >= 0x80;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

class TurtleParser {
 public:
  TurtleParser(std::string_view input, const TurtleOptions& options)
      : in_(input), base_(options.base) {}

  Graph run() {
    skip_ws();
    while (!at_end()) {
      statement();
      skip_ws();
    }
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::TurtleSyntax, msg, SourcePos{line_, col_});
  }

  bool at_end() const { return pos_ >= in_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < in_.size() ? in_[pos_ + ahead] : '\0';
  }
  char get() {
    const char c = in_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void expect(char c) {
    if (at_end() || peek() != c) {
      fail(std::string("expected '") + c + "'");
    }
    get();
  }

  void skip_ws() {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') get();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        get();
      } else {
        break;
      }
    }
  }

  // Case-insensitive keyword followed by whitespace.
  bool at_keyword(std::string_view kw) const {
    if (pos_ + kw.size() >= in_.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::toupper(static_cast<unsigned char>(in_[pos_ + i])) != kw[i]) {
        return false;
      }
    }
    return std::isspace(static_cast<unsigned char>(in_[pos_ + kw.size()])) ||
           in_[pos_ + kw.size()] == '<';
  }

  void statement() {
    if (peek() == '@') {
      get();
      const std::string word = read_word();
      skip_ws();
      if (word == "prefix") {
        prefix_body();
      } else if (word == "base") {
        base_ = read_iri_ref();
      } else {
        fail("unknown directive @" + word);
      }
      skip_ws();
      expect('.');
      return;
    }
    if (at_keyword("PREFIX")) {
      for (int i = 0; i < 6; ++i) get();
      skip_ws();
      prefix_body();
      return;
    }
    if (at_keyword("BASE")) {
      for (int i = 0; i < 4; ++i) get();
      skip_ws();
      base_ = read_iri_ref();
      return;
    }
    const Term subject = read_subject();
    skip_ws();
    predicate_object_list(subject);
    skip_ws();
    expect('.');
  }

  std::string read_word() {
    std::string w;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) {
      w += get();
    }
    return w;
  }

  void prefix_body() {
    std::string name;
    while (!at_end() && peek() != ':') {
      const auto c = static_cast<unsigned char>(peek());
      if (!is_pn_prefix_char(c)) fail("invalid prefix name");
      name += get();
    }
    expect(':');
    skip_ws();
    prefixes_[name] = read_iri_ref();
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      const Term predicate = read_predicate();
      skip_ws();
      for (;;) {
        const Term object = read_object();
        graph_.insert(subject, predicate, object);
        skip_ws();
        if (peek() != ',') break;
        get();
        skip_ws();
      }
      if (peek() != ';') return;
      while (peek() == ';') {
        get();
        skip_ws();
      }
      // Trailing ';' before the terminating '.'.
      if (peek() == '.' || peek() == ']') return;
    }
  }

  Term read_subject() {
    const char c = peek();
    if (c == '<') return Term::iri(read_iri_ref());
    if (c == '_' && peek(1) == ':') return read_blank();
    if (c == '[' || c == '(') fail("anonymous blank nodes and collections are not supported");
    return Term::iri(read_pname());
  }

  Term read_predicate() {
    const char c = peek();
    if (c == 'a') {
      const char n = peek(1);
      if (std::isspace(static_cast<unsigned char>(n)) || n == '<' || n == '"') {
        get();
        return Term::iri(vocab::kType);
      }
    }
    if (c == '<') return Term::iri(read_iri_ref());
    return Term::iri(read_pname());
  }

  Term read_object() {
    const char c = peek();
    if (c == '<') return Term::iri(read_iri_ref());
    if (c == '_' && peek(1) == ':') return read_blank();
    if (c == '"' || c == '\'') return read_literal();
    if (c == '[' || c == '(') fail("anonymous blank nodes and collections are not supported");
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '+' || c == '-' ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      return read_number();
    }
    if (starts_with_word("true")) {
      for (int i = 0; i < 4; ++i) get();
      return Term::literal("true", vocab::kXsdBoolean);
    }
    if (starts_with_word("false")) {
      for (int i = 0; i < 5; ++i) get();
      return Term::literal("false", vocab::kXsdBoolean);
    }
    return Term::iri(read_pname());
  }

  bool starts_with_word(std::string_view w) const {
    if (in_.substr(pos_, w.size()) != w) return false;
    const char n = peek(w.size());
    return !(is_pn_local_char(static_cast<unsigned char>(n)));
  }

  std::string read_iri_ref() {
    if (peek() != '<') fail("expected IRI reference");
    get();
    std::string iri;
    for (;;) {
      if (at_end()) fail("unterminated IRI");
      const char c = get();
      if (c == '>') break;
      if (c == '\n' || c == ' ' || c == '<' || c == '"') fail("invalid character in IRI");
      if (c == '\\') {
        const char e = at_end() ? '\0' : get();
        if (e == 'u') {
          append_utf8(iri, read_hex(4));
        } else if (e == 'U') {
          append_utf8(iri, read_hex(8));
        } else {
          fail("invalid escape in IRI");
        }
        continue;
      }
      iri += c;
    }
    return resolve_iri(base_, iri);
  }

  std::uint32_t read_hex(int digits) {
    std::uint32_t cp = 0;
    for (int i = 0; i < digits; ++i) {
      if (at_end()) fail("truncated unicode escape");
      const char h = get();
      cp <<= 4;
      if (h >= '0' && h <= '9') cp |= static_cast<std::uint32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    return cp;
  }

  std::string read_pname() {
    const SourcePos start{line_, col_};
    std::string prefix;
    while (!at_end() && peek() != ':' &&
           is_pn_prefix_char(static_cast<unsigned char>(peek()))) {
      prefix += get();
    }
    if (peek() != ':') {
      if (prefix.empty()) fail(std::string("unexpected character '") + peek() + "'");
      fail("expected ':' in prefixed name '" + prefix + "'");
    }
    get();
    std::string local;
    while (!at_end()) {
      const auto c = static_cast<unsigned char>(peek());
      if (c == '\\') {
        get();
        if (at_end()) fail("truncated escape in prefixed name");
        local += get();
        continue;
      }
      if (!is_pn_local_char(c)) break;
      local += get();
    }
    // A trailing '.' terminates the statement rather than the name.
    while (!local.empty() && local.back() == '.') {
      local.pop_back();
      --pos_;
      --col_;
    }
    const auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) {
      throw Error(ErrorCode::UndefinedPrefix, "undefined prefix '" + prefix + ":'", start);
    }
    return it->second + local;
  }

  Term read_blank() {
    get();
    get();
    std::string label;
    while (!at_end() && is_pn_prefix_char(static_cast<unsigned char>(peek()))) {
      label += get();
    }
    while (!label.empty() && label.back() == '.') {
      label.pop_back();
      --pos_;
      --col_;
    }
    if (label.empty()) fail("empty blank node label");
    return Term::blank(label);
  }

  Term read_literal() {
    const char quote = get();
    const bool long_form = peek() == quote && peek(1) == quote;
    if (long_form) {
      get();
      get();
    } else if (peek() == quote) {
      // Empty short string.
      get();
      return literal_suffix({});
    }
    std::string text;
    for (;;) {
      if (at_end()) fail("unterminated string literal");
      const char c = get();
      if (c == quote) {
        if (!long_form) break;
        if (peek() == quote && peek(1) == quote) {
          get();
          get();
          // Quotes adjacent to the closing delimiter belong to the body.
          while (peek() == quote) {
            text += quote;
            get();
          }
          break;
        }
        text += c;
        continue;
      }
      if (!long_form && (c == '\n' || c == '\r')) fail("newline in short string literal");
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = get();
        switch (e) {
          case 't': text += '\t'; break;
          case 'b': text += '\b'; break;
          case 'n': text += '\n'; break;
          case 'r': text += '\r'; break;
          case 'f': text += '\f'; break;
          case '"': text += '"'; break;
          case '\'': text += '\''; break;
          case '\\': text += '\\'; break;
          case 'u': append_utf8(text, read_hex(4)); break;
          case 'U': append_utf8(text, read_hex(8)); break;
          default: fail(std::string("invalid escape '\\") + e + "'");
        }
        continue;
      }
      text += c;
    }
    return literal_suffix(std::move(text));
  }

  Term literal_suffix(std::string text) {
    if (peek() == '@') {
      get();
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-')) {
        lang += get();
      }
      if (lang.empty()) fail("empty language tag");
      return Term::literal(std::move(text), {}, std::move(lang));
    }
    if (peek() == '^' && peek(1) == '^') {
      get();
      get();
      std::string dt = peek() == '<' ? read_iri_ref() : read_pname();
      return Term::literal(std::move(text), std::move(dt));
    }
    return Term::literal(std::move(text));
  }

  Term read_number() {
    std::string text;
    if (peek() == '+' || peek() == '-') text += get();
    auto digits = [&] {
      std::size_t n = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        text += get();
        ++n;
      }
      return n;
    };
    const std::size_t whole = digits();
    bool decimal = false;
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      text += get();
      digits();
      decimal = true;
    }
    if (peek() == 'e' || peek() == 'E') {
      text += get();
      if (peek() == '+' || peek() == '-') text += get();
      if (digits() == 0) fail("malformed exponent");
      return Term::literal(std::move(text), vocab::kXsdDouble);
    }
    if (whole == 0 && !decimal) fail("malformed number");
    return Term::literal(std::move(text), decimal ? vocab::kXsdDecimal : vocab::kXsdInteger);
  }

  std::string_view in_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  Graph graph_;
};

bool is_safe_local(std::string_view local) {
  if (local.empty()) return false;
  const auto first = static_cast<unsigned char>(local.front());
  if (!std::isalnum(first) && first != '_') return false;
  return std::all_of(local.begin(), local.end(), [](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

std::string write_iri(const std::string& iri) {
  const auto& prefixes = canonical_prefixes();
  const std::pair<std::string, std::string>* best = nullptr;
  for (const auto& entry : prefixes) {
    if (iri.size() > entry.second.size() && iri.starts_with(entry.second) &&
        (!best || entry.second.size() > best->second.size())) {
      best = &entry;
    }
  }
  if (best) {
    const std::string_view local = std::string_view(iri).substr(best->second.size());
    if (is_safe_local(local)) return best->first + ":" + std::string(local);
  }
  std::string out = "<";
  for (const char ch : iri) {
    const auto c = static_cast<unsigned char>(ch);
    if (c <= 0x20 || ch == '<' || ch == '>' || ch == '"' || ch == '{' || ch == '}' ||
        ch == '|' || ch == '^' || ch == '`' || ch == '\\') {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", static_cast<unsigned>(c));
      out += buf;
    } else {
      out += ch;
    }
  }
  out += ">";
  return out;
}

std::string write_term(const Term& t) {
  switch (t.kind()) {
    case TermKind::Iri: return write_iri(t.value());
    case TermKind::Blank: return "_:" + t.value();
    case TermKind::Literal: {
      std::string out = "\"" + escape_literal(t.value()) + "\"";
      if (!t.language().empty()) out += "@" + t.language();
      if (!t.datatype().empty()) out += "^^" + write_iri(t.datatype());
      return out;
    }
  }
  return {};
}

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view ref) {
  if (Iri::has_scheme(ref)) return std::string(ref);
  std::string_view stem = base.substr(0, base.find('#'));
  if (ref.empty()) return std::string(stem);
  if (ref.front() == '#') return std::string(stem) + std::string(ref);
  const auto scheme_end = stem.find(':');
  if (ref.starts_with("//")) {
    return std::string(stem.substr(0, scheme_end + 1)) + std::string(ref);
  }
  if (ref.front() == '/') {
    const auto auth = stem.find("//");
    if (auth != std::string_view::npos) {
      const auto path = stem.find('/', auth + 2);
      return std::string(stem.substr(0, path)) + std::string(ref);
    }
    return std::string(stem.substr(0, scheme_end + 1)) + std::string(ref);
  }
  const auto slash = stem.rfind('/');
  if (slash == std::string_view::npos) return std::string(stem) + std::string(ref);
  return std::string(stem.substr(0, slash + 1)) + std::string(ref);
}

Graph parse_turtle(std::string_view input, const TurtleOptions& options) {
  return TurtleParser(input, options).run();
}

const std::vector<std::pair<std::string, std::string>>& canonical_prefixes() {
  static const std::vector<std::pair<std::string, std::string>> prefixes = {
      {"dcterms", std::string(vocab::kDcTerms)},
      {"obo", std::string(vocab::kObo)},
      {"oboInOwl", std::string(vocab::kOboInOwl)},
      {"owl", std::string(vocab::kOwl)},
      {"pathont", std::string(vocab::kPathont)},
      {"rdf", std::string(vocab::kRdf)},
      {"rdfs", std::string(vocab::kRdfs)},
      {"xsd", std::string(vocab::kXsd)},
  };
  return prefixes;
}

std::string serialize_turtle(const Graph& g) {
  std::string out;
  for (const auto& [name, ns] : canonical_prefixes()) {
    out += "@prefix " + name + ": <" + ns + "> .\n";
  }
  // Term ordering is kind-then-text, which is the canonical order for all
  // three positions.
  const auto triples = g.triples();
  std::size_t i = 0;
  while (i < triples.size()) {
    const Term& subject = triples[i].subject;
    out += "\n" + write_term(subject) + "\n";
    while (i < triples.size() && triples[i].subject == subject) {
      const Term& predicate = triples[i].predicate;
      out += "    " + write_term(predicate) + " ";
      bool first = true;
      while (i < triples.size() && triples[i].subject == subject &&
             triples[i].predicate == predicate) {
        if (!first) out += " , ";
        out += write_term(triples[i].object);
        first = false;
        ++i;
      }
      const bool more = i < triples.size() && triples[i].subject == subject;
      out += more ? " ;\n" : " .\n";
    }
  }
  return out;
}

}  // namespace pathont::rdf
