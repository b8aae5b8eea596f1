#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nanopub/model.hpp"
#include "nanopub/store.hpp"

// Server network: request/response protocol, server nodes with pull-based
// journal replication, and client retrieval across nodes.
namespace nanopub::net {

using trusty::ArtifactCode;

inline constexpr std::size_t kDefaultPageSize = 100;

// Requests.
struct Publish {
  rdf::QuadDocument document;
};
struct Get {
  ArtifactCode code;
};
struct GetJournal {
  std::uint64_t from_seq = 0;
  std::size_t page_size = kDefaultPageSize;
};
struct PeersRequest {};

using Request = std::variant<Publish, Get, GetJournal, PeersRequest>;

// Responses.
struct Ok {
  ArtifactCode code;
};
struct NanopubDoc {
  rdf::QuadDocument document;
};
struct JournalPage {
  std::vector<store::JournalEntry> entries;
  std::uint64_t next_seq = 0;
};
struct PeerList {
  std::vector<std::string> ids;
};
struct NotFound {};
struct Rejected {
  std::string reason;
};

using Response = std::variant<Ok, NanopubDoc, JournalPage, PeerList, NotFound, Rejected>;

std::string_view kind_name(const Request& r);
std::string_view kind_name(const Response& r);

/// Line-oriented wire form: `KIND <kind>` then kind-specific header lines,
/// then (for PUBLISH and NANOPUB) a blank line and a TriG body.
std::string encode(const Request& r);
std::string encode(const Response& r);
/// Throw Error("malformed") on anything that does not decode.
Request decode_request(std::string_view text);
Response decode_response(std::string_view text);

/// A server in the network. Messages are handled one at a time.
class ServerNode {
 public:
  explicit ServerNode(std::string id, std::vector<std::string> peers = {});
  ServerNode(std::string id, std::filesystem::path store_dir, std::vector<std::string> peers);

  /// PUBLISH verifies and stores; GET returns NANOPUB or NOT_FOUND;
  /// GET_JOURNAL returns up to page_size entries; PEERS_REQUEST lists peers.
  Response handle(const Request& request);
  /// Decodes, handles and encodes; undecodable input yields REJECTED.
  std::string handle_wire(std::string_view message);

  const std::string& id() const noexcept { return id_; }
  store::Store& store() noexcept { return *store_; }
  const store::Store& store() const noexcept { return *store_; }
  const std::vector<std::string>& peers() const noexcept { return peers_; }
  void set_peers(std::vector<std::string> peers);

  std::uint64_t cursor(const std::string& peer) const;
  /// Cursors never move backwards; smaller values are ignored.
  void advance_cursor(const std::string& peer, std::uint64_t seq);

 private:
  std::string id_;
  std::unique_ptr<store::Store> store_;
  std::vector<std::string> peers_;
  std::map<std::string, std::uint64_t> cursors_;
  mutable std::mutex mutex_;
};

/// Delivers a request to a node by id. nullopt means the node was
/// unreachable.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual std::optional<Response> send(const std::string& to, const Request& request) = 0;
};

struct SyncStats {
  std::size_t fetched = 0;
  std::size_t unreachable_peers = 0;
  std::size_t rejected = 0;
};

/// One anti-entropy pass: page through each reachable peer's journal from
/// the stored cursor, fetch and verify unknown codes, advance the cursor.
SyncStats sync_round_stats(ServerNode& node, Transport& transport,
                           std::size_t page_size = kDefaultPageSize);

/// Number of nanopublications fetched by `sync_round_stats`.
std::size_t sync_round(ServerNode& node, Transport& transport,
                       std::size_t page_size = kDefaultPageSize);

/// Asks `known_nodes` in the given order, then any further nodes named in
/// their peer lists in node-id order, and returns the first copy that
/// passes trusty verification. Throws Error("not-found") or
/// Error("unreachable") when no reachable node answers.
Nanopublication client_retrieve(const ArtifactCode& code,
                                std::span<const std::string> known_nodes,
                                Transport& transport);

/// Transport over HTTP: each message is POSTed to `http://<id>/np-node`,
/// so node ids are `host:port` addresses.
class HttpTransport : public Transport {
 public:
  explicit HttpTransport(double timeout_seconds = 5.0) : timeout_(timeout_seconds) {}
  std::optional<Response> send(const std::string& to, const Request& request) override;

 private:
  double timeout_;
};

/// Serves a node over HTTP on `host:port` until `stop()` is
/// called; a background thread runs a sync round every `sync_interval`
/// seconds (0 disables syncing).
class NodeServer {
 public:
  NodeServer(ServerNode& node, double sync_interval_seconds);
  ~NodeServer();
  NodeServer(const NodeServer&) = delete;
  NodeServer& operator=(const NodeServer&) = delete;

  /// Binds and blocks until stop() is called.
  bool listen(const std::string& host, int port);
  /// Binds to an ephemeral port and serves in a background thread.
  int start_background(const std::string& host);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nanopub::net
