#include "pathont/rdf/graph.hpp"

#include <algorithm>
#include <limits>

#include "pathont/error.hpp"

namespace pathont::rdf {

namespace {

constexpr std::uint32_t kMaxId = std::numeric_limits<std::uint32_t>::max();

}  // namespace

std::optional<Graph::Id> Graph::lookup(const Term& t) const {
  const auto it = ids_.find(t);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Graph::Id Graph::intern(const Term& t) {
  if (auto id = lookup(t)) return *id;
  const auto id = static_cast<Id>(terms_.size());
  terms_.push_back(t);
  ids_.emplace(t, id);
  return id;
}

bool Graph::insert(const Triple& t) {
  if (sealed_) throw Error(ErrorCode::GraphSealed, "insert into sealed graph");
  if (!t.predicate.is_iri()) {
    throw Error(ErrorCode::PreconditionViolation,
                "predicate must be an IRI: " + t.predicate.to_string());
  }
  if (t.subject.is_literal()) {
    throw Error(ErrorCode::PreconditionViolation,
                "subject cannot be a literal: " + t.subject.to_string());
  }
  const Id s = intern(t.subject);
  const Id p = intern(t.predicate);
  const Id o = intern(t.object);
  if (!spo_.insert({s, p, o}).second) return false;
  pos_.insert({p, o, s});
  osp_.insert({o, s, p});
  return true;
}

void Graph::insert_all(const Graph& other) {
  for (const auto& [s, p, o] : other.spo_) {
    insert(Triple{other.terms_[s], other.terms_[p], other.terms_[o]});
  }
}

bool Graph::contains(const Triple& t) const {
  const auto s = lookup(t.subject);
  const auto p = lookup(t.predicate);
  const auto o = lookup(t.object);
  if (!s || !p || !o) return false;
  return spo_.contains({*s, *p, *o});
}

template <typename Fn>
void Graph::scan(const Pattern& s, const Pattern& p, const Pattern& o,
                 Fn&& fn) const {
  std::optional<Id> sid, pid, oid;
  if (s && !(sid = lookup(*s))) return;
  if (p && !(pid = lookup(*p))) return;
  if (o && !(oid = lookup(*o))) return;

  // Walks the keys of `index` whose first `bound` components equal `prefix`.
  auto range = [](const Index& index, Key prefix, int bound, auto&& emit) {
    Key lo = prefix;
    for (int i = bound; i < 3; ++i) lo[i] = 0;
    for (auto it = index.lower_bound(lo); it != index.end(); ++it) {
      bool same = true;
      for (int i = 0; i < bound; ++i) {
        if ((*it)[i] != prefix[i]) {
          same = false;
          break;
        }
      }
      if (!same) break;
      emit(*it);
    }
  };

  if (sid && pid && oid) {
    if (spo_.contains({*sid, *pid, *oid})) fn(*sid, *pid, *oid);
  } else if (sid && pid) {
    range(spo_, {*sid, *pid, 0}, 2, [&](const Key& k) { fn(k[0], k[1], k[2]); });
  } else if (pid && oid) {
    range(pos_, {*pid, *oid, 0}, 2, [&](const Key& k) { fn(k[2], k[0], k[1]); });
  } else if (sid && oid) {
    range(osp_, {*oid, *sid, 0}, 2, [&](const Key& k) { fn(k[1], k[2], k[0]); });
  } else if (sid) {
    range(spo_, {*sid, 0, 0}, 1, [&](const Key& k) { fn(k[0], k[1], k[2]); });
  } else if (pid) {
    range(pos_, {*pid, 0, 0}, 1, [&](const Key& k) { fn(k[2], k[0], k[1]); });
  } else if (oid) {
    range(osp_, {*oid, 0, 0}, 1, [&](const Key& k) { fn(k[1], k[2], k[0]); });
  } else {
    for (const auto& k : spo_) fn(k[0], k[1], k[2]);
  }
}

std::vector<Triple> Graph::match(const Pattern& s, const Pattern& p,
                                 const Pattern& o) const {
  std::vector<Triple> out;
  scan(s, p, o, [&](Id si, Id pi, Id oi) {
    out.push_back(Triple{terms_[si], terms_[pi], terms_[oi]});
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Graph::count(const Pattern& s, const Pattern& p,
                         const Pattern& o) const {
  if (!s && !p && !o) return size();
  std::size_t n = 0;
  scan(s, p, o, [&n](Id, Id, Id) { ++n; });
  return n;
}

std::vector<Term> Graph::objects(const Term& s, const Term& p) const {
  std::vector<Term> out;
  scan(s, p, std::nullopt, [&](Id, Id, Id oi) { out.push_back(terms_[oi]); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Term> Graph::subjects(const Term& p, const Term& o) const {
  std::vector<Term> out;
  scan(std::nullopt, p, o, [&](Id si, Id, Id) { out.push_back(terms_[si]); });
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Term> Graph::first_object(const Term& s, const Term& p) const {
  auto objs = objects(s, p);
  if (objs.empty()) return std::nullopt;
  return objs.front();
}

bool Graph::has_subject(const Term& s) const {
  return count(s, std::nullopt, std::nullopt) > 0;
}

bool Graph::mentions(const Term& t) const {
  return count(t, std::nullopt, std::nullopt) > 0 ||
         count(std::nullopt, t, std::nullopt) > 0 ||
         count(std::nullopt, std::nullopt, t) > 0;
}

bool operator==(const Graph& a, const Graph& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [s, p, o] : a.spo_) {
    if (!b.contains(Triple{a.terms_[s], a.terms_[p], a.terms_[o]})) return false;
  }
  return true;
}

}  // namespace pathont::rdf
