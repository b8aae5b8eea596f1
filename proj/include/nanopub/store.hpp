#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nanopub/index.hpp"
#include "nanopub/model.hpp"
#include "nanopub/rdf.hpp"
#include "nanopub/timestamp.hpp"
#include "nanopub/trusty.hpp"

namespace nanopub::store {

using trusty::ArtifactCode;

struct StoredNanopub {
  ArtifactCode code;
  Nanopublication nanopub;
  std::optional<Timestamp> created;
  std::uint64_t ingested_at = 0;
};

struct JournalEntry {
  std::uint64_t seq = 0;
  ArtifactCode code;
};

/// dct:created of the nanopublication in its pubinfo, falling back to
/// pav:createdOn.
std::optional<Timestamp> creation_time(const Nanopublication& np);

/// Quad store over verified nanopublications. Optionally file-backed: one
/// `<code>.trig` per nanopublication plus `journal.log` with lines
/// `<seq> <code>` in ingest order.
///
/// Thread-safe: concurrent readers, serialized writers.
class Store {
 public:
  Store();
  /// Opens (creating if needed) a store directory and loads its journal.
  explicit Store(std::filesystem::path directory);
  ~Store();

  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  /// Validates, verifies and stores. Idempotent by code. Throws
  /// ValidationError, Error("not-trusty"), Error("verification-failed") or
  /// Error("integrity-fault") on a code collision with different content.
  ArtifactCode put(const Nanopublication& np);

  std::optional<Nanopublication> get(const ArtifactCode& code) const;
  std::shared_ptr<const StoredNanopub> get_stored(const ArtifactCode& code) const;
  bool contains(const ArtifactCode& code) const;
  std::size_t size() const;

  /// Codes of nanopublications with at least one quad matching `pattern`.
  /// With `latest`, newest first (undated last), ties by code; otherwise
  /// ingest order.
  std::vector<ArtifactCode> find_by_pattern(const rdf::QuadPattern& pattern, bool latest) const;

  /// Codes of nanopublications using `uri` as an IRI term in any position.
  std::vector<ArtifactCode> find_by_uri(std::string_view uri, bool latest) const;

  /// Up to `limit` journal entries with seq >= from_seq.
  std::vector<JournalEntry> journal(std::uint64_t from_seq, std::size_t limit) const;
  std::uint64_t next_seq() const;

  /// Every stored nanopublication in ingest order.
  std::vector<std::shared_ptr<const StoredNanopub>> all() const;

  /// Index records among the stored nanopublications. Pointers stay valid
  /// for the lifetime of the store.
  std::vector<const index::IndexRecord*> index_records() const;
  const index::IndexRecord* find_index(std::string_view uri) const;
  index::Resolver index_resolver() const;

  const std::optional<std::filesystem::path>& directory() const noexcept { return dir_; }

 private:
  using Slot = std::uint32_t;
  using Postings = std::unordered_map<rdf::Term, std::vector<Slot>, rdf::TermHash>;

  void insert_locked(std::shared_ptr<const StoredNanopub> entry,
                     std::optional<index::IndexRecord> record);
  void persist(const StoredNanopub& entry) const;
  void load();
  std::vector<ArtifactCode> ordered(std::vector<Slot> slots, bool latest) const;

  mutable std::shared_mutex mutex_;
  std::optional<std::filesystem::path> dir_;
  std::vector<std::shared_ptr<const StoredNanopub>> slots_;
  std::unordered_map<std::string, Slot> by_code_;
  Postings by_subject_, by_predicate_, by_object_, by_graph_;
  Postings mentions_;
  std::unordered_map<std::string, std::unique_ptr<index::IndexRecord>> indexes_;
};

}  // namespace nanopub::store
