#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathont/rdf/graph.hpp"
#include "pathont/service/stats.hpp"
#include "pathont/sparql/query.hpp"

namespace pathont::service {

struct ServiceConfig {
  // Term ids such as HINO_0022307 are expanded against this prefix.
  std::string purl_prefix = "http://purl.obolibrary.org/obo/";
  std::string graph_iri = std::string(sparql::kDefaultGraphIri);
  std::size_t row_cap = 10000;
  std::size_t max_patterns = 32;
};

struct Request {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> params;
  std::string body;
  std::string content_type;
  std::string accept;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// HTTP surface over one immutable graph. `handle` is const and touches no
/// shared mutable state, so the server calls it from many threads.
class Service {
 public:
  explicit Service(rdf::Graph g, ServiceConfig cfg = {});

  Response handle(const Request& req) const;

  const rdf::Graph& graph() const noexcept { return g_; }
  const OntologyStats& stats() const noexcept { return stats_; }
  const ServiceConfig& config() const noexcept { return cfg_; }

 private:
  Response sparql(const Request& req) const;
  Response term(const Request& req, const std::string& id) const;

  rdf::Graph g_;
  ServiceConfig cfg_;
  OntologyStats stats_;
};

// Picks the best offered media type for an Accept header ("" = anything).
// Returns nullopt when nothing offered is acceptable.
std::optional<std::string> negotiate(const std::string& accept,
                                     const std::vector<std::string>& offered);

struct BindAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};
// "host:port", ":port" or "port". Throws PreconditionViolation.
BindAddress parse_bind(const std::string& text);

// Blocks serving `svc`; static files under `ui_dir` are mounted at /ui.
void serve(const Service& svc, const BindAddress& bind,
           const std::optional<std::filesystem::path>& ui_dir = std::nullopt);

}  // namespace pathont::service
