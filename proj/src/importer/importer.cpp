#include "pathont/importer/importer.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "pathont/error.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::importer {

using rdf::Term;
namespace vocab = rdf::vocab;

namespace {

using Adjacency = std::map<Iri, std::set<Iri>>;

// Named parents of `node`; reflexive edges are ignored.
std::set<Iri> parents_of(const rdf::Graph& g, const Iri& node) {
  std::set<Iri> out;
  for (const auto& o : g.objects(Term::iri(node), Term::iri(vocab::kSubClassOf))) {
    if (o.is_iri() && o.value() != node.str()) out.insert(Iri(o.value()));
  }
  return out;
}

// Upward subgraph reachable from the seeds.
Adjacency upward(const rdf::Graph& g, const std::set<Iri>& seeds) {
  Adjacency adj;
  std::deque<Iri> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    Iri n = queue.front();
    queue.pop_front();
    if (adj.contains(n)) continue;
    auto ps = parents_of(g, n);
    for (const auto& p : ps) {
      if (!adj.contains(p)) queue.push_back(p);
    }
    adj.emplace(std::move(n), std::move(ps));
  }
  return adj;
}

void check_acyclic(const Adjacency& adj) {
  enum class Mark { White, Grey, Black };
  std::map<Iri, Mark> mark;
  for (const auto& [n, ps] : adj) mark.emplace(n, Mark::White);
  std::vector<Iri> path;

  // Iterative DFS so deep hierarchies cannot blow the stack.
  for (const auto& [root, unused] : adj) {
    if (mark[root] != Mark::White) continue;
    std::vector<std::pair<Iri, std::set<Iri>::const_iterator>> stack;
    mark[root] = Mark::Grey;
    stack.emplace_back(root, adj.at(root).begin());
    while (!stack.empty()) {
      auto& [node, it] = stack.back();
      if (it == adj.at(node).end()) {
        mark[node] = Mark::Black;
        stack.pop_back();
        continue;
      }
      const Iri next = *it++;
      if (mark[next] == Mark::Grey) {
        std::string cycle;
        bool on = false;
        for (const auto& [n, i] : stack) {
          if (n == next) on = true;
          if (on) cycle += n.str() + " -> ";
        }
        throw Error(ErrorCode::CycleDetected, "subClassOf cycle: " + cycle + next.str());
      }
      if (mark[next] == Mark::White) {
        mark[next] = Mark::Grey;
        stack.emplace_back(next, adj.at(next).begin());
      }
    }
  }
}

// Nodes of `adj` with a path to `top` (top included).
std::set<Iri> reaching(const Adjacency& adj, const Iri& top) {
  Adjacency down;
  for (const auto& [n, ps] : adj) {
    for (const auto& p : ps) down[p].insert(n);
  }
  std::set<Iri> out{top};
  std::deque<Iri> queue{top};
  while (!queue.empty()) {
    const Iri n = queue.front();
    queue.pop_front();
    const auto it = down.find(n);
    if (it == down.end()) continue;
    for (const auto& c : it->second) {
      if (out.insert(c).second) queue.push_back(c);
    }
  }
  return out;
}

// Proper ancestors of `n` within `adj`.
std::set<Iri> ancestors(const Adjacency& adj, const Iri& n) {
  std::set<Iri> out;
  std::deque<Iri> queue(adj.at(n).begin(), adj.at(n).end());
  while (!queue.empty()) {
    const Iri x = queue.front();
    queue.pop_front();
    if (!out.insert(x).second) continue;
    for (const auto& p : adj.at(x)) queue.push_back(p);
  }
  return out;
}

}  // namespace

ImportModule extract_closure(const rdf::Graph& source, const ImportSpec& spec) {
  if (spec.seeds.empty()) throw Error(ErrorCode::InvalidImportSpec, "no seed terms given");
  if (spec.seeds.contains(spec.top)) {
    throw Error(ErrorCode::InvalidImportSpec, "top term " + spec.top.str() + " is also a seed");
  }
  std::vector<std::string> missing;
  for (const auto& s : spec.seeds) {
    if (!source.mentions(Term::iri(s))) missing.push_back(s.str());
  }
  if (!source.mentions(Term::iri(spec.top))) missing.push_back(spec.top.str() + " (top)");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::SeedNotFound, "terms not found in source: " + list);
  }

  const Adjacency adj = upward(source, spec.seeds);
  check_acyclic(adj);
  const std::set<Iri> to_top = reaching(adj, spec.top);
  std::vector<std::string> stranded;
  for (const auto& s : spec.seeds) {
    if (!to_top.contains(s)) stranded.push_back(s.str());
  }
  if (!stranded.empty()) {
    std::string list;
    for (const auto& m : stranded) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::TopUnreachable, "no subClassOf path to " + spec.top.str() + " from " + list);
  }

  ImportModule m;
  std::vector<std::pair<Iri, Iri>> edges;
  if (spec.policy == IntermediatePolicy::AllIntermediates) {
    // Upward closure of the seeds intersected with everything below top.
    for (const auto& [n, ps] : adj) {
      if (to_top.contains(n)) m.included_terms.insert(n);
    }
    for (const auto& n : m.included_terms) {
      for (const auto& p : adj.at(n)) {
        if (m.included_terms.contains(p)) edges.emplace_back(n, p);
      }
    }
  } else {
    m.included_terms = spec.seeds;
    m.included_terms.insert(spec.top);
    std::map<Iri, std::set<Iri>> above;
    for (const auto& s : spec.seeds) {
      for (const auto& a : ancestors(adj, s)) {
        if (m.included_terms.contains(a)) above[s].insert(a);
      }
    }
    // Keep (s, t) unless some other kept ancestor u of s sits below t.
    for (const auto& [s, ts] : above) {
      for (const auto& t : ts) {
        const bool redundant = std::any_of(ts.begin(), ts.end(), [&](const Iri& u) {
          return u != t && above.contains(u) && above.at(u).contains(t);
        });
        if (!redundant) edges.emplace_back(s, t);
      }
    }
  }

  const Term type = Term::iri(vocab::kType);
  const Term cls = Term::iri(vocab::kOwlClass);
  const Term sub = Term::iri(vocab::kSubClassOf);
  std::vector<Iri> props = spec.annotation_properties;
  if (props.empty()) props.emplace_back(vocab::kLabel);
  for (const auto& n : m.included_terms) {
    const Term t = Term::iri(n);
    m.graph.insert(t, type, cls);
    for (const auto& p : props) {
      for (const auto& v : source.objects(t, Term::iri(p))) m.graph.insert(t, Term::iri(p), v);
    }
    if (source.objects(t, Term::iri(vocab::kLabel)).empty()) {
      m.warnings.push_back("no label for imported term " + n.str());
    }
  }
  for (const auto& [a, b] : edges) m.graph.insert(Term::iri(a), sub, Term::iri(b));
  return m;
}

MergeResult merge(const rdf::Graph& base, const std::vector<rdf::Graph>& graphs) {
  MergeResult r;
  r.graph.insert_all(base);
  const Term label = Term::iri(vocab::kLabel);
  for (const auto& g : graphs) {
    for (const auto& t : g.triples()) {
      if (t.predicate == label) {
        const auto existing = r.graph.objects(t.subject, label);
        if (!existing.empty() &&
            std::find(existing.begin(), existing.end(), t.object) == existing.end()) {
          r.warnings.push_back("label conflict on " + t.subject.to_string() + ": kept " +
                               existing.front().to_string() + ", dropped " + t.object.to_string());
          continue;
        }
      }
      r.graph.insert(t);
    }
  }
  return r;
}

MergeResult merge(const rdf::Graph& base, const std::vector<ImportModule>& modules) {
  std::vector<rdf::Graph> graphs;
  graphs.reserve(modules.size());
  for (const auto& m : modules) graphs.push_back(m.graph);
  return merge(base, graphs);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    fn(line, line_no);
  }
}

}  // namespace

ImportSpecFile parse_spec_file(std::string_view text, const std::filesystem::path& base_dir) {
  std::optional<std::string> source;
  std::optional<std::string> top;
  ImportSpecFile spec{.source = {}, .top = Iri("urn:unset")};
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidImportSpec, "expected key = value", SourcePos{line_no, 1});
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    try {
      if (key == "source") {
        source = value;
      } else if (key == "top") {
        top = value;
      } else if (key == "policy") {
        if (value == "all") {
          spec.policy = IntermediatePolicy::AllIntermediates;
        } else if (value == "none") {
          spec.policy = IntermediatePolicy::NoIntermediates;
        } else {
          throw Error(ErrorCode::InvalidImportSpec, "policy must be 'all' or 'none', got '" + value + "'",
                      SourcePos{line_no, eq + 2});
        }
      } else if (key == "seed_prefix") {
        spec.seed_prefix = value;
      } else if (key == "annotation") {
        spec.annotation_properties.emplace_back(value);
      } else {
        throw Error(ErrorCode::InvalidImportSpec, "unknown key '" + key + "'", SourcePos{line_no, 1});
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidIri) {
        throw Error(ErrorCode::InvalidImportSpec, "bad IRI for '" + key + "': " + value,
                    SourcePos{line_no, eq + 2});
      }
      throw;
    }
  });
  if (!source) throw Error(ErrorCode::InvalidImportSpec, "missing 'source'");
  if (!top) throw Error(ErrorCode::InvalidImportSpec, "missing 'top'");
  spec.source = std::filesystem::path(*source);
  if (spec.source.is_relative()) spec.source = base_dir / spec.source;
  try {
    spec.top = Iri(*top);
  } catch (const Error&) {
    throw Error(ErrorCode::InvalidImportSpec, "bad IRI for 'top': " + *top);
  }
  return spec;
}

std::set<Iri> parse_seed_list(std::string_view text) {
  std::set<Iri> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    std::string_view s = line;
    if (s.size() >= 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
    try {
      out.emplace(std::string(s));
    } catch (const Error&) {
      throw Error(ErrorCode::InvalidImportSpec, "not an IRI: " + std::string(line), SourcePos{line_no, 1});
    }
  });
  return out;
}

std::set<Iri> select_seeds(const std::set<Iri>& requested, const std::optional<std::string>& prefix,
                           const Iri& top) {
  std::set<Iri> out;
  for (const auto& r : requested) {
    if (r == top) continue;
    if (prefix && !r.str().starts_with(*prefix)) continue;
    out.insert(r);
  }
  return out;
}

}  // namespace pathont::importer
