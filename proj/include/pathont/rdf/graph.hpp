#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "pathont/rdf/term.hpp"

namespace pathont::rdf {

/// Set of triples with three access paths: SPO, POS and OSP.
///
/// Terms are dictionary-encoded; every stored triple is present in all three
/// indexes. A graph is mutable until `seal()`; afterwards inserts throw and
/// the object may be shared across reader threads.
class Graph {
 public:
  using Pattern = std::optional<Term>;

  // Returns false when the triple was already present.
  bool insert(const Triple& t);
  bool insert(const Term& s, const Term& p, const Term& o) {
    return insert(Triple{s, p, o});
  }
  // Inserts every triple of `other`.
  void insert_all(const Graph& other);

  bool contains(const Triple& t) const;
  std::size_t size() const noexcept { return spo_.size(); }
  bool empty() const noexcept { return spo_.empty(); }

  void seal() noexcept { sealed_ = true; }
  bool sealed() const noexcept { return sealed_; }

  // Triples agreeing with every bound position, sorted by (s, p, o).
  std::vector<Triple> match(const Pattern& s, const Pattern& p,
                            const Pattern& o) const;
  // Number of matches, answered from the index without materializing.
  std::size_t count(const Pattern& s, const Pattern& p, const Pattern& o) const;

  // All triples, sorted.
  std::vector<Triple> triples() const { return match({}, {}, {}); }

  // Convenience lookups used throughout the pipeline.
  std::vector<Term> objects(const Term& s, const Term& p) const;
  std::vector<Term> subjects(const Term& p, const Term& o) const;
  std::optional<Term> first_object(const Term& s, const Term& p) const;
  bool has_subject(const Term& s) const;
  // True when the term occurs in any position of any triple.
  bool mentions(const Term& t) const;

  // Set equality of the triples.
  friend bool operator==(const Graph& a, const Graph& b);

 private:
  using Id = std::uint32_t;
  using Key = std::array<Id, 3>;
  using Index = std::set<Key>;

  std::optional<Id> lookup(const Term& t) const;
  Id intern(const Term& t);

  // Calls `fn(s, p, o)` for every matching id triple; unsorted.
  template <typename Fn>
  void scan(const Pattern& s, const Pattern& p, const Pattern& o, Fn&& fn) const;

  std::vector<Term> terms_;
  std::unordered_map<Term, Id, TermHash> ids_;
  Index spo_;
  Index pos_;
  Index osp_;
  bool sealed_ = false;
};

}  // namespace pathont::rdf
