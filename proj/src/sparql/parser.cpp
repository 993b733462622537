#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "pathont/error.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/rdf/vocab.hpp"
#include "pathont/sparql/query.hpp"

namespace pathont::sparql {

namespace vocab = rdf::vocab;

const std::map<std::string, std::string>& default_prefixes() {
  static const std::map<std::string, std::string> table = {
      {"rdf", std::string(vocab::kRdf)},   {"rdfs", std::string(vocab::kRdfs)},
      {"owl", std::string(vocab::kOwl)},   {"xsd", std::string(vocab::kXsd)},
      {"obo", std::string(vocab::kObo)},
  };
  return table;
}

namespace {

enum class Tok { End, IriRef, PName, Var, Blank, String, Number, Word, Punct };

struct Token {
  Tok kind = Tok::End;
  std::string text;   // IRI body, pname, var name, string value, word, punct
  std::string extra;  // language tag or datatype text for strings
  bool extra_is_lang = false;
  bool extra_is_pname = false;
  SourcePos pos;
};

bool name_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool name_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '-' || c >= 0x80; }

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  Token next() {
    skip_space();
    Token t;
    t.pos = {line_, col_};
    if (i_ >= s_.size()) return t;
    const char c = s_[i_];
    if (c == '<') {
      // IRI unless it looks like a comparison.
      const auto close = s_.find_first_of(">\n {}\"", i_ + 1);
      if (close != std::string_view::npos && s_[close] == '>') {
        t.kind = Tok::IriRef;
        t.text = std::string(s_.substr(i_ + 1, close - i_ - 1));
        advance(close + 1 - i_);
        return t;
      }
    }
    if ((c == '?' || c == '$') && i_ + 1 < s_.size() && name_char(s_[i_ + 1])) {
      advance(1);
      t.kind = Tok::Var;
      t.text = take_name();
      return t;
    }
    if (c == '_' && i_ + 1 < s_.size() && s_[i_ + 1] == ':') {
      advance(2);
      t.kind = Tok::Blank;
      t.text = take_name();
      if (t.text.empty()) fail("empty blank node label", t.pos);
      return t;
    }
    if (c == '"' || c == '\'') return string_token(t);
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        ((c == '+' || c == '-' || c == '.') && i_ + 1 < s_.size() &&
         std::isdigit(static_cast<unsigned char>(s_[i_ + 1])))) {
      return number_token(t);
    }
    if (name_start(static_cast<unsigned char>(c)) || c == ':') {
      std::string word = take_name();
      if (i_ < s_.size() && s_[i_] == ':') {
        advance(1);
        std::string local = take_local();
        t.kind = Tok::PName;
        t.text = word + ":" + local;
        return t;
      }
      t.kind = Tok::Word;
      t.text = word;
      return t;
    }
    t.kind = Tok::Punct;
    if (c == '^' && i_ + 1 < s_.size() && s_[i_ + 1] == '^') {
      t.text = "^^";
      advance(2);
      return t;
    }
    t.text = std::string(1, c);
    advance(1);
    return t;
  }

  [[noreturn]] void fail(const std::string& msg, SourcePos pos) const {
    throw Error(ErrorCode::QuerySyntax, msg, pos);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && i_ < s_.size(); ++k, ++i_) {
      if (s_[i_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void skip_space() {
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string take_name() {
    const std::size_t start = i_;
    while (i_ < s_.size() && name_char(static_cast<unsigned char>(s_[i_]))) advance(1);
    return std::string(s_.substr(start, i_ - start));
  }

  // Local part of a prefixed name; a trailing '.' ends the triple instead.
  std::string take_local() {
    const std::size_t start = i_;
    while (i_ < s_.size()) {
      const unsigned char c = static_cast<unsigned char>(s_[i_]);
      if (name_char(c) || c == ':' || c == '%') {
        advance(1);
      } else if (c == '.' && i_ + 1 < s_.size() &&
                 name_char(static_cast<unsigned char>(s_[i_ + 1]))) {
        advance(1);
      } else {
        break;
      }
    }
    return std::string(s_.substr(start, i_ - start));
  }

  Token& string_token(Token& t) {
    const char q = s_[i_];
    const bool long_form = s_.substr(i_, 3) == std::string(3, q);
    advance(long_form ? 3 : 1);
    std::string out;
    while (true) {
      if (i_ >= s_.size()) fail("unterminated string", t.pos);
      const char c = s_[i_];
      if (long_form && s_.substr(i_, 3) == std::string(3, q)) {
        advance(3);
        break;
      }
      if (!long_form && c == q) {
        advance(1);
        break;
      }
      if (!long_form && c == '\n') fail("newline in string", t.pos);
      if (c == '\\') {
        if (i_ + 1 >= s_.size()) fail("dangling escape", t.pos);
        const char e = s_[i_ + 1];
        switch (e) {
          case 't': out += '\t'; break;
          case 'n': out += '\n'; break;
          case 'r': out += '\r'; break;
          case 'b': out += '\b'; break;
          case 'f': out += '\f'; break;
          case '"': out += '"'; break;
          case '\'': out += '\''; break;
          case '\\': out += '\\'; break;
          case 'u':
          case 'U': {
            const std::size_t n = e == 'u' ? 4 : 8;
            if (i_ + 2 + n > s_.size()) fail("short unicode escape", {line_, col_});
            const std::string hex(s_.substr(i_ + 2, n));
            if (hex.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
              fail("bad unicode escape", {line_, col_});
            }
            append_utf8(out, static_cast<char32_t>(std::stoul(hex, nullptr, 16)));
            advance(n);
            break;
          }
          default: fail(std::string("unknown escape \\") + e, {line_, col_});
        }
        advance(2);
        continue;
      }
      out += c;
      advance(1);
    }
    t.kind = Tok::String;
    t.text = std::move(out);
    if (i_ < s_.size() && s_[i_] == '@') {
      advance(1);
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
        advance(1);
      }
      t.extra = std::string(s_.substr(start, i_ - start));
      if (t.extra.empty()) fail("empty language tag", t.pos);
      t.extra_is_lang = true;
    } else if (s_.substr(i_, 2) == "^^") {
      advance(2);
      Token dt = next();
      if (dt.kind == Tok::IriRef) {
        t.extra = dt.text;
      } else if (dt.kind == Tok::PName) {
        t.extra = dt.text;
        t.extra_is_pname = true;
      } else {
        fail("expected datatype IRI after ^^", dt.pos);
      }
    }
    return t;
  }

  static void append_utf8(std::string& out, char32_t cp) {
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

  Token& number_token(Token& t) {
    const std::size_t start = i_;
    if (s_[i_] == '+' || s_[i_] == '-') advance(1);
    bool dot = false;
    bool exp = false;
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        advance(1);
      } else if (c == '.' && !dot && !exp && i_ + 1 < s_.size() &&
                 std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
        dot = true;
        advance(1);
      } else if ((c == 'e' || c == 'E') && !exp) {
        exp = true;
        advance(1);
        if (i_ < s_.size() && (s_[i_] == '+' || s_[i_] == '-')) advance(1);
      } else {
        break;
      }
    }
    t.kind = Tok::Number;
    t.text = std::string(s_.substr(start, i_ - start));
    t.extra = exp ? vocab::kXsdDouble : dot ? vocab::kXsdDecimal : vocab::kXsdInteger;
    return t;
  }

  std::string_view s_;
  std::size_t i_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

const std::set<std::string>& unsupported_words() {
  static const std::set<std::string> words = {
      "OPTIONAL", "FILTER", "UNION", "MINUS", "BIND",   "VALUES", "GRAPH",  "SERVICE",
      "ORDER",    "GROUP",  "HAVING", "OFFSET", "REDUCED", "CONSTRUCT", "ASK", "DESCRIBE",
      "NAMED",    "INSERT", "DELETE", "LOAD",   "CLEAR",  "DROP",   "CREATE", "WITH"};
  return words;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {
    q_.prefixes = default_prefixes();
    cur_ = lex_.next();
  }

  QueryAst run() {
    prologue();
    expect_word("SELECT");
    select_clause();
    while (is_word("FROM")) from_clause();
    if (is_word("WHERE")) bump();
    group();
    modifiers();
    if (cur_.kind != Tok::End) syntax("unexpected '" + cur_.text + "' after query");
    validate();
    return std::move(q_);
  }

 private:
  void bump() { cur_ = lex_.next(); }

  bool is_word(std::string_view w) const {
    return cur_.kind == Tok::Word && upper(cur_.text) == w;
  }
  bool is_punct(char c) const { return cur_.kind == Tok::Punct && cur_.text.size() == 1 && cur_.text[0] == c; }

  [[noreturn]] void syntax(const std::string& msg) const { lex_.fail(msg, cur_.pos); }

  [[noreturn]] void unsupported(const std::string& what) const {
    throw Error(ErrorCode::UnsupportedFeature, what + " is not supported", cur_.pos);
  }

  void check_unsupported() const {
    if (cur_.kind == Tok::Word) {
      const std::string w = upper(cur_.text);
      if (unsupported_words().contains(w)) unsupported(w == "ORDER" ? "ORDER BY" : w == "GROUP" ? "GROUP BY" : w);
    }
  }

  void expect_word(std::string_view w) {
    check_unsupported();
    if (!is_word(w)) syntax("expected " + std::string(w));
    bump();
  }

  void expect_punct(char c) {
    if (!is_punct(c)) {
      syntax(std::string("expected '") + c + "'" +
             (cur_.kind == Tok::End ? " before end of query" : ", found '" + cur_.text + "'"));
    }
    bump();
  }

  std::string iri_text(const Token& t) {
    if (t.kind == Tok::IriRef) {
      if (!base_.empty() && !Iri::has_scheme(t.text)) return rdf::resolve_iri(base_, t.text);
      return t.text;
    }
    const auto colon = t.text.find(':');
    const std::string pfx = t.text.substr(0, colon);
    const auto it = q_.prefixes.find(pfx);
    if (it == q_.prefixes.end()) {
      throw Error(ErrorCode::QuerySyntax, "undefined prefix '" + pfx + ":'", t.pos);
    }
    return it->second + t.text.substr(colon + 1);
  }

  Term make_iri(const Token& t) {
    try {
      return Term::iri(iri_text(t));
    } catch (const Error& e) {
      throw Error(ErrorCode::QuerySyntax, e.what(), t.pos);
    }
  }

  void prologue() {
    while (true) {
      if (is_word("PREFIX")) {
        bump();
        if (cur_.kind != Tok::PName || cur_.text.back() != ':') syntax("expected 'name:' after PREFIX");
        const std::string name = cur_.text.substr(0, cur_.text.size() - 1);
        bump();
        if (cur_.kind != Tok::IriRef) syntax("expected <iri> in PREFIX");
        q_.prefixes[name] = make_iri(cur_).value();
        bump();
      } else if (is_word("BASE")) {
        bump();
        if (cur_.kind != Tok::IriRef) syntax("expected <iri> after BASE");
        base_ = cur_.text;
        bump();
      } else {
        return;
      }
    }
  }

  void select_clause() {
    check_unsupported();
    if (is_word("DISTINCT")) {
      q_.distinct = true;
      bump();
    }
    check_unsupported();
    if (is_punct('*')) {
      star_ = true;
      bump();
      return;
    }
    while (true) {
      if (cur_.kind == Tok::Var) {
        if (std::find(q_.select_vars.begin(), q_.select_vars.end(), cur_.text) != q_.select_vars.end()) {
          syntax("variable ?" + cur_.text + " selected twice");
        }
        q_.select_vars.push_back(cur_.text);
        bump();
        if (is_punct(',')) bump();
        continue;
      }
      if (is_punct('(')) unsupported("expressions in SELECT");
      break;
    }
    if (q_.select_vars.empty()) syntax("expected variables or '*' after SELECT");
  }

  void from_clause() {
    bump();
    check_unsupported();
    if (q_.from_graph) unsupported("more than one FROM");
    if (cur_.kind != Tok::IriRef && cur_.kind != Tok::PName) syntax("expected graph IRI after FROM");
    q_.from_graph = Iri(make_iri(cur_).value());
    bump();
  }

  Slot slot(bool predicate) {
    switch (cur_.kind) {
      case Tok::Var: {
        Slot s = Var{cur_.text};
        bump();
        return s;
      }
      case Tok::Blank: {
        if (predicate) syntax("blank node in predicate position");
        Slot s = Var{"_:" + cur_.text};
        bump();
        return s;
      }
      case Tok::IriRef:
      case Tok::PName: {
        Slot s = make_iri(cur_);
        bump();
        return s;
      }
      case Tok::String: {
        if (predicate) syntax("literal in predicate position");
        Term lit = cur_.extra_is_lang ? Term::literal(cur_.text, {}, cur_.extra)
                   : cur_.extra.empty()
                       ? Term::literal(cur_.text)
                       : Term::literal(cur_.text, cur_.extra_is_pname
                                                      ? iri_text(Token{Tok::PName, cur_.extra, {}, false, false, cur_.pos})
                                                      : cur_.extra);
        bump();
        return lit;
      }
      case Tok::Number: {
        if (predicate) syntax("literal in predicate position");
        Slot s = Term::literal(cur_.text, cur_.extra);
        bump();
        return s;
      }
      case Tok::Word: {
        if (predicate && cur_.text == "a") {
          bump();
          return Term::iri(vocab::kType);
        }
        if (!predicate && (cur_.text == "true" || cur_.text == "false")) {
          Slot s = Term::literal(cur_.text, vocab::kXsdBoolean);
          bump();
          return s;
        }
        check_unsupported();
        syntax("unexpected '" + cur_.text + "'");
      }
      case Tok::Punct:
        if (is_punct('[')) unsupported("blank node property lists");
        if (is_punct('(')) unsupported("RDF collections");
        if (is_punct('{')) unsupported("nested group patterns");
        if (predicate && (is_punct('^') || is_punct('!'))) unsupported("property paths");
        syntax("unexpected '" + cur_.text + "'");
      case Tok::End: syntax("unexpected end of query");
    }
    syntax("unexpected token");
  }

  void check_path() const {
    if (cur_.kind == Tok::Punct && cur_.text.size() == 1 &&
        std::string_view("/|*+?").find(cur_.text[0]) != std::string_view::npos) {
      unsupported("property paths");
    }
  }

  void group() {
    expect_punct('{');
    while (true) {
      check_unsupported();
      if (is_punct('}')) break;
      if (cur_.kind == Tok::End) syntax("expected '}' before end of query");
      Slot s = slot(false);
      while (true) {
        Slot p = slot(true);
        check_path();
        while (true) {
          q_.patterns.push_back({s, p, slot(false)});
          if (!is_punct(',')) break;
          bump();
        }
        if (!is_punct(';')) break;
        bump();
        if (is_punct('.') || is_punct('}')) break;
      }
      check_unsupported();
      if (is_punct('.')) {
        bump();
        continue;
      }
      if (!is_punct('}')) {
        syntax(cur_.kind == Tok::End ? "expected '}' before end of query"
                                     : "expected '.' or '}', found '" + cur_.text + "'");
      }
    }
    expect_punct('}');
  }

  void modifiers() {
    while (cur_.kind != Tok::End) {
      check_unsupported();
      if (is_word("LIMIT")) {
        bump();
        if (cur_.kind != Tok::Number || cur_.extra != vocab::kXsdInteger || cur_.text[0] == '-' ||
            cur_.text[0] == '+') {
          syntax("LIMIT needs a positive integer");
        }
        if (q_.limit) syntax("LIMIT given twice");
        std::size_t n = 0;
        try {
          n = std::stoull(cur_.text);
        } catch (const std::exception&) {
          syntax("LIMIT out of range");
        }
        if (n == 0) syntax("LIMIT needs a positive integer");
        q_.limit = n;
        bump();
        continue;
      }
      return;
    }
  }

  void validate() {
    std::vector<std::string> seen;
    std::map<std::string, int> uses;
    bool any_ground = false;
    for (const auto& tp : q_.patterns) {
      for (const Slot* s : {&tp.subject, &tp.predicate, &tp.object}) {
        if (const auto* v = std::get_if<Var>(s)) {
          if (uses[v->name]++ == 0) seen.push_back(v->name);
        } else {
          any_ground = true;
        }
      }
    }
    if (q_.patterns.empty()) {
      throw Error(ErrorCode::QuerySyntax, "empty graph pattern");
    }
    if (star_) {
      for (const auto& v : seen) {
        if (!v.starts_with("_:")) q_.select_vars.push_back(v);
      }
      if (q_.select_vars.empty()) throw Error(ErrorCode::QuerySyntax, "SELECT * with no variables");
    }
    for (const auto& v : q_.select_vars) {
      if (!uses.contains(v)) {
        throw Error(ErrorCode::QuerySyntax, "selected variable ?" + v + " does not occur in the pattern");
      }
    }
    const bool shared = std::any_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second > 1; });
    if (!any_ground && !shared) {
      throw Error(ErrorCode::CostGuard,
                  "every pattern position is an unshared variable; the query would enumerate the whole "
                  "store (cross product of " + std::to_string(q_.patterns.size()) + " full scans)");
    }
  }

  Lexer lex_;
  Token cur_;
  QueryAst q_;
  std::string base_;
  bool star_ = false;
};

}  // namespace

QueryAst parse_query(std::string_view text) { return Parser(text).run(); }

}  // namespace pathont::sparql
