#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pathont/rdf/graph.hpp"
#include "pathont/rdf/vocab.hpp"

namespace pathont::testutil {

inline std::string data_path(const std::string& name) {
  return std::string(PATHONT_TEST_DATA) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string obo(const std::string& local) {
  return std::string(rdf::vocab::kObo) + local;
}

// Small term universe so random patterns hit often.
struct RandomGraphFactory {
  explicit RandomGraphFactory(unsigned seed) : rng(seed) {}

  rdf::Term subject() {
    if (pick(6) == 0) return rdf::Term::blank("b" + std::to_string(pick(3)));
    return rdf::Term::iri("http://ex.org/n" + std::to_string(pick(8)));
  }
  rdf::Term predicate() {
    return rdf::Term::iri("http://ex.org/p" + std::to_string(pick(4)));
  }
  rdf::Term object() {
    switch (pick(6)) {
      case 0: return rdf::Term::literal("v" + std::to_string(pick(3)));
      case 1: return rdf::Term::literal("v" + std::to_string(pick(2)), {}, "en");
      case 2: return rdf::Term::blank("b" + std::to_string(pick(3)));
      default: return rdf::Term::iri("http://ex.org/n" + std::to_string(pick(8)));
    }
  }
  rdf::Graph graph(std::size_t max_triples) {
    rdf::Graph g;
    const std::size_t n = pick(max_triples + 1);
    for (std::size_t i = 0; i < n; ++i) g.insert(subject(), predicate(), object());
    return g;
  }
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  }

  std::mt19937 rng;
};

}  // namespace pathont::testutil
