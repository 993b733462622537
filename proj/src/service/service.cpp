#include "pathont/service/service.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "pathont/error.hpp"
#include "pathont/service/term_page.hpp"
#include "pathont/sparql/query.hpp"

namespace pathont::service {

namespace {

const std::vector<std::string> kSparqlTypes = {"application/sparql-results+json", "application/json",
                                               "text/tab-separated-values"};
const std::vector<std::string> kTermTypes = {"application/json", "text/turtle", "application/x-turtle"};
const std::vector<std::string> kJsonOnly = {"application/json"};

Response json_error(int status, std::string_view code, const std::string& message,
                    const std::optional<SourcePos>& pos = std::nullopt) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  if (pos) {
    j["line"] = pos->line;
    j["column"] = pos->column;
  }
  return {status, "application/json", j.dump(2) + "\n"};
}

Response from_error(int status, const Error& e) {
  return json_error(status, to_string(e.code()), e.detail(), e.position());
}

Response not_acceptable(const std::vector<std::string>& offered) {
  std::string body = "406 Not Acceptable; available:";
  for (const auto& t : offered) body += " " + t;
  return {406, "text/plain", body + "\n"};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

std::optional<std::string> negotiate(const std::string& accept, const std::vector<std::string>& offered) {
  if (offered.empty()) return std::nullopt;
  if (trim(accept).empty()) return offered.front();

  struct Range {
    std::string type;
    double q;
  };
  std::vector<Range> ranges;
  std::stringstream in(accept);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::stringstream parts(item);
    std::string type;
    std::getline(parts, type, ';');
    Range r{lower(trim(type)), 1.0};
    std::string param;
    while (std::getline(parts, param, ';')) {
      param = trim(param);
      if (param.size() > 2 && (param[0] == 'q' || param[0] == 'Q') && param[1] == '=') {
        try {
          r.q = std::stod(param.substr(2));
        } catch (const std::exception&) {
          r.q = 0;
        }
      }
    }
    if (!r.type.empty()) ranges.push_back(std::move(r));
  }

  std::optional<std::string> best;
  double best_q = 0;
  for (const auto& o : offered) {
    // most specific matching range decides the quality
    int spec = -1;
    double q = 0;
    const auto slash = o.find('/');
    for (const auto& r : ranges) {
      int s = -1;
      if (r.type == o) s = 2;
      else if (r.type == o.substr(0, slash) + "/*") s = 1;
      else if (r.type == "*/*") s = 0;
      if (s > spec) {
        spec = s;
        q = r.q;
      }
    }
    if (spec >= 0 && q > best_q) {
      best_q = q;
      best = o;
    }
  }
  return best;
}

Service::Service(rdf::Graph g, ServiceConfig cfg) : g_(std::move(g)), cfg_(std::move(cfg)) {
  g_.seal();
  stats_ = compute_stats(g_);
}

Response Service::handle(const Request& req) const {
  const bool get = req.method == "GET" || req.method == "HEAD";
  try {
    if (req.path == "/health") {
      if (!get) return json_error(405, "MethodNotAllowed", "use GET");
      return {200, "text/plain", "OK\n"};
    }
    if (req.path == "/stats") {
      if (!get) return json_error(405, "MethodNotAllowed", "use GET");
      if (!negotiate(req.accept, kJsonOnly)) return not_acceptable(kJsonOnly);
      return {200, "application/json", stats_.to_json()};
    }
    if (req.path == "/sparql") {
      if (!get && req.method != "POST") return json_error(405, "MethodNotAllowed", "use GET or POST");
      return sparql(req);
    }
    if (req.path == "/term" || req.path.rfind("/term/", 0) == 0) {
      if (!get) return json_error(405, "MethodNotAllowed", "use GET");
      return term(req, req.path.size() > 6 ? req.path.substr(6) : std::string());
    }
    return json_error(404, "NotFound", "no route for " + req.path);
  } catch (const Error& e) {
    return from_error(500, e);
  } catch (const std::exception& e) {
    return json_error(500, "Internal", e.what());
  }
}

Response Service::sparql(const Request& req) const {
  std::string text;
  if (auto it = req.params.find("query"); it != req.params.end()) text = it->second;
  else if (req.method == "POST") text = req.body;
  if (trim(text).empty()) return json_error(400, "QuerySyntax", "missing query");

  const auto type = negotiate(req.accept, kSparqlTypes);
  if (!type) return not_acceptable(kSparqlTypes);

  sparql::QueryAst q;
  try {
    q = sparql::parse_query(text);
  } catch (const Error& e) {
    return from_error(400, e);
  }
  if (q.patterns.size() > cfg_.max_patterns)
    return json_error(413, "TooManyPatterns",
                      "query has " + std::to_string(q.patterns.size()) + " triple patterns; the limit is " +
                          std::to_string(cfg_.max_patterns));
  sparql::ResultTable table;
  try {
    table = sparql::evaluate(q, g_, {.graph_iri = cfg_.graph_iri, .row_cap = cfg_.row_cap});
  } catch (const Error& e) {
    if (e.code() == ErrorCode::GraphMismatch) return from_error(400, e);
    throw;
  }
  if (*type == "text/tab-separated-values") return {200, *type, sparql::to_tsv(table)};
  return {200, *type, sparql::to_json(table)};
}

Response Service::term(const Request& req, const std::string& id) const {
  std::string iri;
  if (!id.empty()) {
    static const std::regex kId("[A-Za-z][A-Za-z0-9]*_[0-9]+");
    if (!std::regex_match(id, kId)) return json_error(404, "TermNotFound", "not a term id: " + id);
    iri = cfg_.purl_prefix + id;
  } else if (auto it = req.params.find("iri"); it != req.params.end()) {
    iri = it->second;
  } else {
    return json_error(400, "PreconditionViolation", "expected /term/{id} or /term?iri=...");
  }
  const auto type = negotiate(req.accept, kTermTypes);
  if (!type) return not_acceptable(kTermTypes);
  std::optional<TermPage> page;
  try {
    page.emplace(build_term_page(g_, Iri(iri)));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TermNotFound || e.code() == ErrorCode::InvalidIri) return from_error(404, e);
    throw;
  }
  if (*type == "application/json") return {200, *type, to_json(*page)};
  return {200, "text/turtle", to_turtle(*page)};
}

BindAddress parse_bind(const std::string& text) {
  BindAddress out;
  std::string port = text;
  if (const auto colon = text.rfind(':'); colon != std::string::npos) {
    if (colon > 0) out.host = text.substr(0, colon);
    port = text.substr(colon + 1);
  }
  int value = 0;
  const auto [end, ec] = std::from_chars(port.data(), port.data() + port.size(), value);
  if (port.empty() || ec != std::errc() || end != port.data() + port.size() || value < 0 || value > 65535)
    throw Error(ErrorCode::PreconditionViolation, "bad bind address '" + text + "'");
  out.port = value;
  return out;
}

void serve(const Service& svc, const BindAddress& bind, const std::optional<std::filesystem::path>& ui_dir) {
  httplib::Server server;
  if (ui_dir) {
    if (!server.set_mount_point("/ui", ui_dir->string()))
      throw Error(ErrorCode::Io, "cannot serve UI directory " + ui_dir->string());
    server.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_redirect("/ui/"); });
  }
  auto forward = [&svc](const httplib::Request& in, httplib::Response& out) {
    Request req{.method = in.method,
                .path = in.path,
                .body = in.body,
                .content_type = in.get_header_value("Content-Type"),
                .accept = in.get_header_value("Accept")};
    for (const auto& [k, v] : in.params) req.params.emplace(k, v);
    const Response r = svc.handle(req);
    out.status = r.status;
    out.set_header("Access-Control-Allow-Origin", "*");
    out.set_content(r.body, r.content_type);
  };
  server.Get(".*", forward);
  server.Post(".*", forward);
  if (!server.listen(bind.host, bind.port))
    throw Error(ErrorCode::Io, "cannot listen on " + bind.host + ":" + std::to_string(bind.port));
}

}  // namespace pathont::service
