// pathont: BioPAX -> classes-only ontology pipeline.
//
//   pathont convert in.owl... --registry reg.tsv --out out.ttl --report r.json --import-requests req.txt
//   pathont import --spec go_cc.import --seeds req.txt --out go_cc_module.ttl
//   pathont merge a.ttl b.ttl... --out merged.ttl
//   pathont stats merged.ttl
//   pathont query merged.ttl --query '...' --format tsv
//   pathont serve merged.ttl --bind 127.0.0.1:8080 --ui-dir web/dist
//
// Exit codes: 0 ok, 1 data error, 2 usage.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathont/biopax/reader.hpp"
#include "pathont/error.hpp"
#include "pathont/importer/importer.hpp"
#include "pathont/mapper/id_registry.hpp"
#include "pathont/mapper/mapper.hpp"
#include "pathont/rdf/rdf_xml.hpp"
#include "pathont/rdf/turtle.hpp"
#include "pathont/service/service.hpp"
#include "pathont/service/stats.hpp"
#include "pathont/sparql/query.hpp"

namespace fs = std::filesystem;
using namespace pathont;

namespace {

constexpr int kDataError = 1;
constexpr int kUsage = 2;

// Error raised while reading a particular file; carries it for the message.
struct FileError {
  fs::path path;
  Error error;
};

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Outputs are written through a temporary and renamed, so a failed run
// never leaves half a file behind.
void write_text(const fs::path& p, const std::string& text) {
  const fs::path tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::Io, "cannot write " + p.string());
  }
  fs::rename(tmp, p);
}

std::string file_base(const fs::path& p) { return "file://" + fs::absolute(p).lexically_normal().string(); }

bool is_xml(const fs::path& p) {
  const auto ext = p.extension().string();
  return ext == ".owl" || ext == ".rdf" || ext == ".xml";
}

// OWL serializers emit rdf:parseType; BioPAX exporters never do.
rdf::Graph load_graph(const fs::path& p, bool allow_parse_type = true) {
  try {
    const std::string text = read_text(p);
    if (is_xml(p))
      return rdf::parse_rdf_xml(text, {.base = file_base(p), .allow_parse_type = allow_parse_type});
    return rdf::parse_turtle(text, {.base = file_base(p)});
  } catch (const Error& e) {
    throw FileError{p, e};
  }
}

void report(const fs::path& path, const Error& e) {
  std::cerr << "pathont: error: ";
  if (!path.empty()) {
    std::cerr << path.string();
    if (e.position()) std::cerr << ":" << e.position()->line << ":" << e.position()->column;
    std::cerr << ": ";
  }
  std::cerr << to_string(e.code()) << ": " << e.detail() << "\n";
}

// Output locations must sit in an existing directory.
const CLI::Validator kWritable(
    [](std::string& p) -> std::string {
      const auto parent = fs::absolute(p).parent_path();
      if (!fs::is_directory(parent)) return "directory does not exist: " + parent.string();
      if (fs::is_directory(p)) return "is a directory: " + p;
      return {};
    },
    "WRITABLE");

struct ConvertArgs {
  std::vector<std::string> inputs;
  std::string registry;
  std::string out;
  std::string report;
  std::string import_requests;
  std::string skipped_report;
  bool occurs_in = false;
};

int cmd_convert(const ConvertArgs& a) {
  mapper::IdRegistry reg;
  if (!a.registry.empty() && fs::exists(a.registry)) {
    try {
      reg = mapper::IdRegistry::from_tsv(read_text(a.registry));
    } catch (const Error& e) {
      throw FileError{a.registry, e};
    }
  }
  rdf::Graph out;
  std::set<rdf::Iri> requests;
  auto reports = nlohmann::ordered_json::array();
  std::string skipped;
  for (const auto& in : a.inputs) {
    const fs::path p(in);
    const auto source = load_graph(p, false);
    try {
      const auto doc = biopax::extract_document(source);
      const auto c = mapper::convert(doc, reg, {.source_id = p.stem().string(), .organism_occurs_in = a.occurs_in});
      out.insert_all(c.ontology.to_graph());
      requests.insert(c.import_requests.begin(), c.import_requests.end());
      reports.push_back(nlohmann::ordered_json::parse(c.report.to_json()));
      std::istringstream lines(biopax::skipped_report_tsv(doc));
      for (std::string line; std::getline(lines, line);) skipped += p.stem().string() + "\t" + line + "\n";
      for (const auto& w : c.report.warnings) std::cerr << "pathont: warning: " << in << ": " << w << "\n";
    } catch (const Error& e) {
      throw FileError{p, e};
    }
  }
  write_text(a.out, rdf::serialize_turtle(out));
  if (!a.report.empty()) write_text(a.report, reports.dump(2) + "\n");
  if (!a.import_requests.empty()) write_text(a.import_requests, mapper::import_requests_text(requests));
  if (!a.skipped_report.empty()) write_text(a.skipped_report, skipped);
  if (!a.registry.empty()) write_text(a.registry, reg.to_tsv());
  return 0;
}

int cmd_import(const std::string& spec_path, const std::string& seeds_path, const std::string& out) {
  importer::ImportSpecFile spec = [&] {
    try {
      return importer::parse_spec_file(read_text(spec_path), fs::absolute(spec_path).parent_path());
    } catch (const Error& e) {
      throw FileError{spec_path, e};
    }
  }();
  std::set<rdf::Iri> requested;
  try {
    requested = importer::parse_seed_list(read_text(seeds_path));
  } catch (const Error& e) {
    throw FileError{seeds_path, e};
  }
  const auto seeds = importer::select_seeds(requested, spec.seed_prefix, spec.top);
  if (seeds.empty()) {
    std::cerr << "pathont: warning: no seeds for " << spec_path << "; writing an empty module\n";
    write_text(out, rdf::serialize_turtle(rdf::Graph{}));
    return 0;
  }
  const auto source = load_graph(spec.source);
  try {
    const auto module = importer::extract_closure(
        source, {.seeds = seeds, .top = spec.top, .policy = spec.policy,
                 .annotation_properties = spec.annotation_properties});
    for (const auto& w : module.warnings) std::cerr << "pathont: warning: " << w << "\n";
    write_text(out, rdf::serialize_turtle(module.graph));
  } catch (const Error& e) {
    throw FileError{spec.source, e};
  }
  return 0;
}

int cmd_merge(const std::vector<std::string>& inputs, const std::string& out) {
  std::vector<rdf::Graph> graphs;
  for (const auto& in : inputs) graphs.push_back(load_graph(in));
  const rdf::Graph base = std::move(graphs.front());
  graphs.erase(graphs.begin());
  const auto merged = importer::merge(base, graphs);
  for (const auto& w : merged.warnings) std::cerr << "pathont: warning: " << w << "\n";
  write_text(out, rdf::serialize_turtle(merged.graph));
  return 0;
}

int cmd_stats(const std::string& input) {
  auto g = load_graph(input);
  g.seal();
  std::cout << service::compute_stats(g).to_text();
  return 0;
}

int cmd_query(const std::string& input, std::string text, const std::string& query_file,
              const std::string& format, const std::string& graph_iri) {
  if (!query_file.empty()) text = read_text(query_file);
  sparql::QueryAst q;
  try {
    q = sparql::parse_query(text);
  } catch (const Error& e) {
    throw FileError{query_file.empty() ? fs::path("<query>") : fs::path(query_file), e};
  }
  auto g = load_graph(input);
  g.seal();
  const auto table = sparql::evaluate(q, g, {.graph_iri = graph_iri});
  std::cout << (format == "json" ? sparql::to_json(table) : sparql::to_tsv(table));
  return 0;
}

int cmd_serve(const std::string& input, std::string bind, const std::string& ui_dir,
              const service::ServiceConfig& cfg) {
  if (bind.empty()) {
    const char* env = std::getenv("PATHONT_BIND");
    bind = env && *env ? env : "127.0.0.1:8080";
  }
  const auto addr = service::parse_bind(bind);
  const service::Service svc(load_graph(input), cfg);
  std::cerr << "pathont: serving " << input << " (" << svc.stats().class_count << " classes) on http://"
            << addr.host << ":" << addr.port << "\n";
  std::optional<fs::path> ui;
  if (!ui_dir.empty()) ui = ui_dir;
  service::serve(svc, addr, ui);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BioPAX to classes-only OWL ontology pipeline"};
  app.require_subcommand(1);

  ConvertArgs conv;
  auto* convert = app.add_subcommand("convert", "Convert BioPAX RDF/XML files to an OWL class hierarchy");
  convert->add_option("inputs", conv.inputs, "BioPAX files")->required()->check(CLI::ExistingFile);
  convert->add_option("--registry", conv.registry, "Minted-id registry TSV (read if present, then updated)")
      ->check(kWritable);
  convert->add_option("--out", conv.out, "Output Turtle")->required()->check(kWritable);
  convert->add_option("--report", conv.report, "Conversion report JSON")->check(kWritable);
  convert->add_option("--import-requests", conv.import_requests, "External IRIs to import, one per line")
      ->check(kWritable);
  convert->add_option("--skipped-report", conv.skipped_report, "TSV of skipped BioPAX types")->check(kWritable);
  convert->add_flag("--occurs-in", conv.occurs_in, "Link pathways to organisms with occurs_in");

  std::string spec, seeds, import_out;
  auto* import = app.add_subcommand("import", "Extract a hierarchy-closure module from a source ontology");
  import->add_option("--spec", spec, "Import specification")->required()->check(CLI::ExistingFile);
  import->add_option("--seeds", seeds, "Seed IRIs, one per line")->required()->check(CLI::ExistingFile);
  import->add_option("--out", import_out, "Output Turtle")->required()->check(kWritable);

  std::vector<std::string> merge_inputs;
  std::string merge_out;
  auto* merge = app.add_subcommand("merge", "Merge ontologies (first file wins label conflicts)");
  merge->add_option("inputs", merge_inputs, "Turtle or RDF/XML files")->required()->check(CLI::ExistingFile);
  merge->add_option("--out", merge_out, "Output Turtle")->required()->check(kWritable);

  std::string stats_input;
  auto* stats = app.add_subcommand("stats", "Print class and property counts");
  stats->add_option("file", stats_input, "Turtle or RDF/XML file")->required()->check(CLI::ExistingFile);

  std::string query_input, query_text, query_file, format = "tsv", graph_iri = sparql::kDefaultGraphIri;
  auto* query = app.add_subcommand("query", "Run a SPARQL basic graph pattern query");
  query->add_option("file", query_input, "Turtle or RDF/XML file")->required()->check(CLI::ExistingFile);
  auto* qtext = query->add_option("--query", query_text, "Query text");
  auto* qfile = query->add_option("--query-file", query_file, "File holding the query")->check(CLI::ExistingFile);
  qtext->excludes(qfile);
  query->add_option("--format", format, "Result format")->check(CLI::IsMember({"tsv", "json"}));
  query->add_option("--graph-iri", graph_iri, "IRI a FROM clause must name");

  std::string serve_input, bind, ui_dir;
  service::ServiceConfig cfg;
  auto* serve = app.add_subcommand("serve", "Serve SPARQL, term pages and stats over HTTP");
  serve->add_option("file", serve_input, "Turtle or RDF/XML file")->required()->check(CLI::ExistingFile);
  serve->add_option("--bind", bind, "host:port (default $PATHONT_BIND, then 127.0.0.1:8080)");
  serve->add_option("--ui-dir", ui_dir, "Static files served under /ui")->check(CLI::ExistingDirectory);
  serve->add_option("--row-cap", cfg.row_cap, "Maximum rows per query")->check(CLI::PositiveNumber);
  serve->add_option("--max-patterns", cfg.max_patterns, "Maximum triple patterns per query")
      ->check(CLI::PositiveNumber);
  serve->add_option("--purl-prefix", cfg.purl_prefix, "Prefix for /term/{id}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*convert) return cmd_convert(conv);
    if (*import) return cmd_import(spec, seeds, import_out);
    if (*merge) return cmd_merge(merge_inputs, merge_out);
    if (*stats) return cmd_stats(stats_input);
    if (*query) {
      if (query_text.empty() && query_file.empty()) {
        std::cerr << "pathont: error: query needs --query or --query-file\n";
        return kUsage;
      }
      return cmd_query(query_input, query_text, query_file, format, graph_iri);
    }
    if (*serve) return cmd_serve(serve_input, bind, ui_dir, cfg);
  } catch (const FileError& e) {
    report(e.path, e.error);
    return kDataError;
  } catch (const Error& e) {
    report({}, e);
    return e.code() == ErrorCode::PreconditionViolation && *serve ? kUsage : kDataError;
  } catch (const std::exception& e) {
    std::cerr << "pathont: error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}
