#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nanopub/index.hpp"
#include "nanopub/rdf.hpp"
#include "nanopub/store.hpp"

// The seven query methods over a store, plus their HTTP binding at
// `/api/<method>`.
namespace nanopub::api {

inline constexpr std::size_t kDefaultPageSize = 1000;
inline constexpr std::size_t kMaxPageSize = 10000;

/// Pages are numbered from 1. Throws Error("invalid-page") for page 0 or a
/// page size outside 1..kMaxPageSize.
struct PageRequest {
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;
};

template <class T>
struct Page {
  std::vector<T> items;
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;
  /// Size of the unpaged result.
  std::size_t total = 0;
};

/// Unset positions are wildcards.
struct TriplePattern {
  std::optional<rdf::Term> subject;
  std::optional<rdf::Term> predicate;
  std::optional<rdf::Term> object;
};

class ApiService {
 public:
  explicit ApiService(const store::Store& store) : store_(store) {}

  /// Artifact codes, newest first.
  Page<std::string> find_latest_nanopubs_with_pattern(const TriplePattern& pattern,
                                                      PageRequest page = {}) const;
  /// Same set in ingest order.
  Page<std::string> find_nanopubs_with_pattern(const TriplePattern& pattern,
                                               PageRequest page = {}) const;
  Page<std::string> find_latest_nanopubs_with_uri(std::string_view uri, PageRequest page = {}) const;
  Page<std::string> find_nanopubs_with_uri(std::string_view uri, PageRequest page = {}) const;
  Page<index::IndexSummary> get_all_indexes(PageRequest page = {}) const;
  /// Direct elements of the index and its append chain, oldest link first.
  /// Throws Error("not-found") for an unknown index.
  Page<std::string> get_index_elements(std::string_view index_uri, PageRequest page = {}) const;
  /// TriG of the nanopublication named by its URI or bare artifact code.
  /// Throws Error("not-found").
  std::string get_nanopub(std::string_view uri) const;

 private:
  const store::Store& store_;
};

struct ApiResponse {
  int status = 200;
  std::string content_type = "text/plain";
  std::string body;
  std::optional<std::size_t> total;
};

/// Transport-independent request handling. `method` is one of the seven
/// method names; parameters are subj, pred, obj, objtype (iri|literal),
/// objlang, objdatatype, uri, index_uri, page and page_size. Lists come back
/// one item per line (index rows tab-separated); errors as
/// `ERROR <status> <message>`.
ApiResponse dispatch(const ApiService& service, std::string_view method,
                     const std::map<std::string, std::string>& params);

/// Names of the seven methods, in the order they are documented.
const std::vector<std::string>& method_names();

/// HTTP front: GET /api/<method>?<params>.
class ApiServer {
 public:
  explicit ApiServer(const ApiService& service);
  ~ApiServer();
  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  /// Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Ephemeral port, served from a background thread.
  int start_background(const std::string& host);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nanopub::api
