#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "nanopub/model.hpp"

namespace nanopub::index {

inline constexpr std::size_t kDefaultCapacity = 1000;
inline constexpr std::string_view kDefaultBase = "http://purl.org/np/";

struct IndexMetadata {
  std::string base{kDefaultBase};
  std::optional<std::string> title;
  std::vector<std::string> creators;
  /// xsd:dateTime lexical form.
  std::optional<std::string> created;
  std::size_t capacity = kDefaultCapacity;
};

/// A nanopublication index: a set defined by direct elements, sub-indexes
/// and an optional predecessor in an append chain.
struct IndexRecord {
  std::string uri;
  std::optional<std::string> title;
  std::optional<std::string> created;
  std::vector<std::string> elements;
  std::vector<std::string> sub_indexes;
  std::optional<std::string> appends;
  bool is_incomplete = false;
  std::vector<std::string> creators;
  Nanopublication nanopub;
};

using UriSet = std::unordered_set<std::string>;

/// Looks up a stored index by URI; nullptr if unknown.
using Resolver = std::function<const IndexRecord*(std::string_view uri)>;

/// True if the assertion types the nanopublication as npx:NanopubIndex.
bool is_index(const Nanopublication& np);

/// Reads the membership statements back out of an index nanopublication.
/// Returns nullopt for non-index nanopublications and throws
/// Error("invalid-index") for malformed ones.
std::optional<IndexRecord> read_index(const Nanopublication& np);

/// Emits a minted append chain. Each link holds at most `capacity`
/// elements; non-final links are marked incomplete; the final link carries
/// the title and the sub-index references.
std::vector<IndexRecord> build_index(std::span<const std::string> elements,
                                     std::span<const std::string> sub_indexes,
                                     const IndexMetadata& metadata);

/// Union of own elements, the append chain's elements, and the expansion of
/// every sub-index. Throws Error("unresolved-index") or Error("index-cycle").
UriSet expand(const IndexRecord& index, const Resolver& resolver);

/// Direct elements of the record and its append chain (oldest link first),
/// without recursing into sub-indexes.
std::vector<std::string> direct_elements(const IndexRecord& index, const Resolver& resolver);

/// New version of `previous` equal to (expand(previous) - removed) + added.
/// Leading incomplete links untouched by the removal are reused by appending
/// to them; the rest is re-emitted. Sub-indexes untouched by the removal
/// are kept by reference, touched ones are flattened into elements.
std::vector<IndexRecord> build_incremental(const IndexRecord& previous,
                                           std::span<const std::string> added,
                                           const UriSet& removed,
                                           const IndexMetadata& metadata,
                                           const Resolver& resolver);

/// One row of an index listing.
struct IndexSummary {
  std::size_t number = 0;
  std::string uri;
  std::string title;
  std::string date;
  std::size_t sub_count = 0;
  /// Contained nanopublications, sub-indexes included.
  std::size_t size = 0;
};

/// Complete index heads (not incomplete, not appended by another record),
/// sorted by creation date then artifact code, numbered from 1.
std::vector<IndexSummary> list_indexes(std::span<const IndexRecord* const> records,
                                       const Resolver& resolver);

/// A simple in-memory resolver over a set of records.
class IndexCatalog {
 public:
  void add(IndexRecord record);
  void add(std::span<const IndexRecord> records);
  const IndexRecord* find(std::string_view uri) const;
  Resolver resolver() const;
  std::vector<const IndexRecord*> records() const;
  std::size_t size() const noexcept { return records_.size(); }

 private:
  std::map<std::string, IndexRecord, std::less<>> records_;
};

}  // namespace nanopub::index
