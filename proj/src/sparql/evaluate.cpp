#include <algorithm>
#include <map>

#include "json.hpp"
#include "pathont/error.hpp"
#include "pathont/sparql/query.hpp"

namespace pathont::sparql {

namespace {

// Variables are numbered in order of first use.
struct Compiled {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;

  std::size_t id(const std::string& name) {
    auto [it, fresh] = index.emplace(name, names.size());
    if (fresh) names.push_back(name);
    return it->second;
  }
};

struct SlotRef {
  std::optional<Term> ground;
  std::size_t var = 0;
};

struct CompiledPattern {
  SlotRef s, p, o;
};

SlotRef compile_slot(const Slot& slot, Compiled& c) {
  if (const auto* v = std::get_if<Var>(&slot)) return {std::nullopt, c.id(v->name)};
  return {std::get<Term>(slot), 0};
}

using Binding = std::vector<std::optional<Term>>;

rdf::Graph::Pattern resolve(const SlotRef& r, const Binding& b) {
  if (r.ground) return r.ground;
  return b[r.var];
}

// Binds an unbound variable, or checks agreement with an earlier binding in
// the same pattern (?x ?p ?x).
bool bind(const SlotRef& r, const Term& value, Binding& b, std::vector<std::size_t>& touched) {
  if (r.ground) return true;
  if (b[r.var]) return *b[r.var] == value;
  b[r.var] = value;
  touched.push_back(r.var);
  return true;
}

}  // namespace

std::vector<std::size_t> plan(const QueryAst& q, const rdf::Graph& g) {
  std::vector<std::size_t> order;
  std::vector<bool> used(q.patterns.size(), false);
  std::set<std::string> bound;
  auto ground = [](const Slot& s) -> rdf::Graph::Pattern {
    if (const auto* t = std::get_if<Term>(&s)) return *t;
    return std::nullopt;
  };
  auto is_bound = [&](const Slot& s) {
    const auto* v = std::get_if<Var>(&s);
    return v == nullptr || bound.contains(v->name);
  };
  for (std::size_t step = 0; step < q.patterns.size(); ++step) {
    std::size_t best = q.patterns.size();
    int best_bound = -1;
    std::size_t best_count = 0;
    for (std::size_t i = 0; i < q.patterns.size(); ++i) {
      if (used[i]) continue;
      const auto& tp = q.patterns[i];
      const int nb = is_bound(tp.subject) + is_bound(tp.predicate) + is_bound(tp.object);
      // Cardinality probe on the ground positions only.
      const std::size_t count = g.count(ground(tp.subject), ground(tp.predicate), ground(tp.object));
      if (nb > best_bound || (nb == best_bound && count < best_count)) {
        best = i;
        best_bound = nb;
        best_count = count;
      }
    }
    used[best] = true;
    order.push_back(best);
    for (const Slot* s : {&q.patterns[best].subject, &q.patterns[best].predicate, &q.patterns[best].object}) {
      if (const auto* v = std::get_if<Var>(s)) bound.insert(v->name);
    }
  }
  return order;
}

bool row_less(const std::vector<Term>& a, const std::vector<Term>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].value() != b[i].value()) return a[i].value() < b[i].value();
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return a.size() < b.size();
}

ResultTable evaluate(const QueryAst& q, const rdf::Graph& g, const EvalOptions& opts) {
  if (!g.sealed()) throw Error(ErrorCode::PreconditionViolation, "evaluate needs a sealed graph");
  if (q.from_graph && q.from_graph->str() != opts.graph_iri) {
    throw Error(ErrorCode::GraphMismatch,
                "FROM <" + q.from_graph->str() + "> does not name this store's graph <" +
                    opts.graph_iri + ">");
  }

  Compiled c;
  std::vector<CompiledPattern> patterns;
  for (const auto i : plan(q, g)) {
    const auto& tp = q.patterns[i];
    patterns.push_back({compile_slot(tp.subject, c), compile_slot(tp.predicate, c),
                        compile_slot(tp.object, c)});
  }
  std::vector<std::size_t> projection;
  for (const auto& v : q.select_vars) {
    const auto it = c.index.find(v);
    if (it == c.index.end()) {
      throw Error(ErrorCode::QuerySyntax, "selected variable ?" + v + " does not occur in the pattern");
    }
    projection.push_back(it->second);
  }

  ResultTable out;
  out.header = q.select_vars;
  Binding b(c.names.size());

  // Nested index join in plan order.
  auto solve = [&](auto&& self, std::size_t depth) -> void {
    if (depth == patterns.size()) {
      std::vector<Term> row;
      row.reserve(projection.size());
      for (auto v : projection) row.push_back(*b[v]);
      out.rows.push_back(std::move(row));
      return;
    }
    const auto& cp = patterns[depth];
    for (const auto& t : g.match(resolve(cp.s, b), resolve(cp.p, b), resolve(cp.o, b))) {
      std::vector<std::size_t> touched;
      if (bind(cp.s, t.subject, b, touched) && bind(cp.p, t.predicate, b, touched) &&
          bind(cp.o, t.object, b, touched)) {
        self(self, depth + 1);
      }
      for (auto v : touched) b[v].reset();
    }
  };
  solve(solve, 0);

  std::sort(out.rows.begin(), out.rows.end(), row_less);
  if (q.distinct) out.rows.erase(std::unique(out.rows.begin(), out.rows.end()), out.rows.end());
  std::optional<std::size_t> limit = q.limit;
  if (opts.row_cap) limit = std::min(limit.value_or(*opts.row_cap), *opts.row_cap);
  if (limit && out.rows.size() > *limit) out.rows.resize(*limit);
  return out;
}

std::string to_json(const ResultTable& t) {
  nlohmann::ordered_json j;
  j["head"]["vars"] = t.header;
  auto bindings = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Term& term = row[i];
      nlohmann::ordered_json cell;
      switch (term.kind()) {
        case rdf::TermKind::Iri: cell["type"] = "uri"; break;
        case rdf::TermKind::Blank: cell["type"] = "bnode"; break;
        case rdf::TermKind::Literal: cell["type"] = "literal"; break;
      }
      cell["value"] = term.value();
      if (!term.language().empty()) cell["xml:lang"] = term.language();
      if (!term.datatype().empty()) cell["datatype"] = term.datatype();
      b[t.header[i]] = std::move(cell);
    }
    bindings.push_back(std::move(b));
  }
  j["results"]["bindings"] = std::move(bindings);
  return j.dump(2) + "\n";
}

std::string to_tsv(const ResultTable& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "\t?" : "?") + t.header[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += "\t";
      out += row[i].to_string();
    }
    out += "\n";
  }
  return out;
}

}  // namespace pathont::sparql
