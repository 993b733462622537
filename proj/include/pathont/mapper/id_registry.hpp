#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathont/rdf/term.hpp"

namespace pathont::mapper {

using rdf::Iri;

/// Source-key to minted-IRI ledger. Keys look like "mini_tlr4#Pathway1";
/// minted IRIs are prefix + 7 zero-padded digits.
class IdRegistry {
 public:
  static constexpr std::uint32_t kMaxCounter = 9'999'999;

  IdRegistry();
  explicit IdRegistry(std::string prefix);

  std::optional<Iri> find(const std::string& key) const;
  bool contains(const std::string& key) const { return entries_.contains(key); }

  // Existing mapping or a fresh one.
  Iri mint(const std::string& key);

  // Assigns fresh ids in byte order of the keys; returns how many were new.
  std::size_t mint_batch(std::vector<std::string> keys);

  // Adds another registry's entries. Same key with a different IRI, or one
  // IRI claimed by two keys, raises RegistryConflict.
  void merge(const IdRegistry& other);

  const std::map<std::string, Iri>& entries() const noexcept { return entries_; }
  std::uint32_t next_counter() const noexcept { return next_counter_; }
  const std::string& prefix() const noexcept { return prefix_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Two columns, sorted by key.
  std::string to_tsv() const;
  static IdRegistry from_tsv(std::string_view text, std::string prefix);
  static IdRegistry from_tsv(std::string_view text);

  // The numeric part of a minted IRI, if it has this registry's shape.
  std::optional<std::uint32_t> counter_of(const Iri& iri) const;

 private:
  void insert(const std::string& key, const Iri& iri);

  std::string prefix_;
  std::map<std::string, Iri> entries_;
  std::map<Iri, std::string> owners_;
  std::uint32_t next_counter_ = 1;
};

std::string format_counter(std::uint32_t n);

}  // namespace pathont::mapper
