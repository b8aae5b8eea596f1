#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nanopub/rdf.hpp"

namespace nanopub::rdf {

/// Parses the TriG subset used for nanopublications: prefix directives
/// (`@prefix` and `PREFIX`), named graph blocks with an optional `GRAPH`
/// keyword, IRIs, prefixed names, `a`, and literals (strings, numbers,
/// booleans) with optional datatype or language tag.
///
/// Rejected with nanopub::ParseError: blank nodes (`_:x`, `[]`), relative
/// IRIs, statements outside a graph block, collections, quoted triples and
/// `@base`.
QuadDocument parse_trig(std::string_view input);

/// Writes the prefix table followed by one block per graph. Graphs appear in
/// first-appearance order, quads in insertion order, and every term is
/// written in full (prefixes are never relied on).
std::string serialize_trig(const QuadDocument& doc);

/// One named graph block as it appeared in the input.
struct GraphBlock {
  Term graph;
  std::vector<Quad> quads;
};

/// Reads a TriG stream block by block without holding the whole input in
/// memory. Prefix declarations carry over between blocks.
class TrigStreamReader {
 public:
  explicit TrigStreamReader(std::istream& in);
  ~TrigStreamReader();
  TrigStreamReader(const TrigStreamReader&) = delete;
  TrigStreamReader& operator=(const TrigStreamReader&) = delete;

  /// Next graph block, or nullopt at end of input.
  std::optional<GraphBlock> next();

  const std::vector<std::pair<std::string, std::string>>& prefixes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nanopub::rdf
