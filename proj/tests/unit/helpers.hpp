#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nanopub/model.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

namespace testing_helpers {

namespace fs = std::filesystem;
using nanopub::rdf::Quad;
using nanopub::rdf::QuadDocument;
using nanopub::rdf::Term;

inline fs::path fixtures() { return fs::path(NANOPUB_FIXTURES); }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
}

struct ManifestRow {
  std::string kind, name, uri, base, expect;
};

inline std::vector<ManifestRow> manifest() {
  std::vector<ManifestRow> rows;
  std::istringstream in(read_file(fixtures() / "manifest.tsv"));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ManifestRow r;
    std::istringstream f(line);
    std::getline(f, r.kind, '\t');
    std::getline(f, r.name, '\t');
    std::getline(f, r.uri, '\t');
    std::getline(f, r.base, '\t');
    std::getline(f, r.expect, '\t');
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Term iri(const std::string& v) { return Term::iri(v); }

/// Unminted four-graph document under `base` with `n` assertion triples.
inline QuadDocument draft(const std::string& base, int n, const std::string& salt = "") {
  namespace v = nanopub::vocab;
  const std::string sep = base.back() == '#' ? "_" : "#";
  const Term self = iri(base), head = iri(base + sep + "Head"), a = iri(base + sep + "assertion"),
             p = iri(base + sep + "provenance"), i = iri(base + sep + "pubinfo");
  QuadDocument d;
  d.quads.emplace_back(self, iri(std::string(v::kRdfType)), iri(std::string(v::kNanopublication)), head);
  d.quads.emplace_back(self, iri(std::string(v::kHasAssertion)), a, head);
  d.quads.emplace_back(self, iri(std::string(v::kHasProvenance)), p, head);
  d.quads.emplace_back(self, iri(std::string(v::kHasPublicationInfo)), i, head);
  for (int k = 0; k < n; ++k) {
    d.quads.emplace_back(iri("http://example.org/s" + std::to_string(k)),
                         iri("http://example.org/p"),
                         Term::literal("value " + std::to_string(k) + salt), a);
  }
  d.quads.emplace_back(a, iri(std::string(v::kProvWasDerivedFrom)), iri("http://example.org/source"), p);
  d.quads.emplace_back(self, iri(std::string(v::kDctCreator)), iri("http://orcid.org/0000-0002-1825-0097"), i);
  return d;
}

/// Minted and assembled.
inline nanopub::Nanopublication minted(const std::string& base, int n, const std::string& salt = "") {
  auto m = nanopub::trusty::mint(draft(base, n, salt), base);
  return nanopub::assemble(m.document, m.uri.str());
}

}  // namespace testing_helpers
