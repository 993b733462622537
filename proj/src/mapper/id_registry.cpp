#include "pathont/mapper/id_registry.hpp"

#include <algorithm>
#include <cstdio>

#include "pathont/error.hpp"
#include "pathont/mapper/known_iri.hpp"

namespace pathont::mapper {

std::string format_counter(std::uint32_t n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%07u", static_cast<unsigned>(n));
  return buf;
}

IdRegistry::IdRegistry() : IdRegistry(known::kHinoPrefix) {}

IdRegistry::IdRegistry(std::string prefix) : prefix_(std::move(prefix)) {}

std::optional<Iri> IdRegistry::find(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> IdRegistry::counter_of(const Iri& iri) const {
  const std::string& s = iri.str();
  if (s.size() != prefix_.size() + 7 || !s.starts_with(prefix_)) return std::nullopt;
  std::uint32_t n = 0;
  for (std::size_t i = prefix_.size(); i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint32_t>(s[i] - '0');
  }
  return n;
}

void IdRegistry::insert(const std::string& key, const Iri& iri) {
  const auto n = counter_of(iri);
  if (!n || *n == 0) {
    throw Error(ErrorCode::RegistryConflict,
                "registry entry for '" + key + "' is not of the form " + prefix_ + "NNNNNNN: " +
                    iri.str());
  }
  if (const auto it = owners_.find(iri); it != owners_.end() && it->second != key) {
    throw Error(ErrorCode::RegistryConflict,
                iri.str() + " is claimed by both '" + it->second + "' and '" + key + "'");
  }
  entries_.emplace(key, iri);
  owners_.emplace(iri, key);
  next_counter_ = std::max(next_counter_, *n + 1);
}

Iri IdRegistry::mint(const std::string& key) {
  if (auto existing = find(key)) return *existing;
  if (next_counter_ > kMaxCounter) {
    throw Error(ErrorCode::CounterOverflow,
                "cannot mint '" + key + "': counter exhausted past " + format_counter(kMaxCounter));
  }
  Iri iri(prefix_ + format_counter(next_counter_));
  insert(key, iri);
  return iri;
}

std::size_t IdRegistry::mint_batch(std::vector<std::string> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::size_t fresh = 0;
  for (const auto& k : keys) {
    if (contains(k)) continue;
    mint(k);
    ++fresh;
  }
  return fresh;
}

void IdRegistry::merge(const IdRegistry& other) {
  if (other.prefix_ != prefix_) {
    throw Error(ErrorCode::RegistryConflict,
                "registries use different prefixes: " + prefix_ + " vs " + other.prefix_);
  }
  for (const auto& [key, iri] : other.entries_) {
    if (const auto mine = find(key); mine && *mine != iri) {
      throw Error(ErrorCode::RegistryConflict,
                  "'" + key + "' maps to " + mine->str() + " and " + iri.str());
    }
  }
  for (const auto& [key, iri] : other.entries_) insert(key, iri);
}

std::string IdRegistry::to_tsv() const {
  std::string out;
  for (const auto& [key, iri] : entries_) out += key + "\t" + iri.str() + "\n";
  return out;
}

IdRegistry IdRegistry::from_tsv(std::string_view text) {
  return from_tsv(text, known::kHinoPrefix);
}

IdRegistry IdRegistry::from_tsv(std::string_view text, std::string prefix) {
  IdRegistry reg(std::move(prefix));
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw Error(ErrorCode::RegistryConflict,
                  "malformed registry line " + std::to_string(line_no) + ": expected two columns",
                  SourcePos{line_no, 1});
    }
    const std::string key(line.substr(0, tab));
    if (reg.contains(key)) {
      throw Error(ErrorCode::DuplicateSourceKey, "duplicate registry key '" + key + "'",
                  SourcePos{line_no, 1});
    }
    reg.insert(key, Iri(std::string(line.substr(tab + 1))));
  }
  return reg;
}

}  // namespace pathont::mapper
