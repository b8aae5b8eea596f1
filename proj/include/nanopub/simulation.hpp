#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nanopub/net.hpp"

// Deterministic discrete-event simulation of a server network. All traffic
// goes through the wire encoding, delivered in-process.
namespace nanopub::net {

enum class Topology { Complete, Ring, Random };

/// Node `node` is down for simulated times in [start_ms, end_ms).
struct FailureWindow {
  std::size_t node = 0;
  std::uint64_t start_ms = 0;
  std::uint64_t end_ms = 0;
};

/// Text form: one `key = value` per line, `#` starts a comment. Keys are the
/// field names; `topology` is complete, ring or random; each `failure` line
/// is `<node> <start_ms> <end_ms>`.
struct SimConfig {
  std::size_t node_count = 15;
  Topology topology = Topology::Complete;
  double edge_probability = 0.5;  // random topology only
  std::uint64_t latency_min_ms = 5;
  std::uint64_t latency_max_ms = 50;
  std::uint64_t sync_interval_ms = 1000;
  std::uint64_t duration_ms = 60000;
  std::size_t page_size = kDefaultPageSize;
  std::uint64_t seed = 0;
  /// Extra failures drawn from the seed: distinct nodes, each down from a
  /// random point in the run, some until after the end.
  std::size_t random_failures = 0;
  std::vector<FailureWindow> failures;
  /// Workload used by `generate_workload`.
  std::size_t publishes = 100;
  std::uint64_t publish_window_ms = 10000;

  static SimConfig parse(std::string_view text);
  std::string to_text() const;
  /// Throws Error("invalid-config").
  void check() const;
};

struct PublishEvent {
  std::uint64_t time_ms = 0;
  std::size_t node = 0;
  rdf::QuadDocument document;
};

/// `config.publishes` fresh nanopublications at seeded times within the
/// publish window, sent round-robin to the nodes.
std::vector<PublishEvent> generate_workload(const SimConfig& config);

struct NodeReport {
  std::string id;
  std::size_t size = 0;
  bool live_at_end = true;
};

struct CodeReport {
  std::string code;
  std::string origin;
  /// One character per node: '1' if it holds the code at the end.
  std::string holders;
  bool retrievable = false;
};

struct SimReport {
  std::size_t nodes = 0;
  std::size_t published = 0;
  std::size_t accepted = 0;
  std::size_t lost = 0;
  std::size_t messages = 0;
  std::size_t events = 0;
  /// Every node live at the end holds every accepted code.
  bool converged = false;
  /// Over (code, node) pairs that replicated the code from elsewhere.
  double lag_mean_ms = 0;
  std::uint64_t lag_max_ms = 0;
  std::vector<NodeReport> node_reports;
  /// Sorted by code.
  std::vector<CodeReport> codes;

  /// Deterministic text rendering; identical reports give identical bytes.
  std::string to_text() const;
};

/// Node ids `n00`, `n01`, ... so that id order is index order.
std::string node_id(std::size_t index, std::size_t node_count);

/// Adjacency for the configured topology (seeded for random).
std::vector<std::vector<std::size_t>> build_topology(const SimConfig& config);

/// A set of in-process nodes wired by a topology, with a transport that
/// routes messages through the wire codec and can mark nodes down.
class SimNetwork {
 public:
  explicit SimNetwork(const SimConfig& config);
  ~SimNetwork();

  std::size_t size() const noexcept { return nodes_.size(); }
  ServerNode& node(std::size_t i) { return *nodes_[i]; }
  const ServerNode& node(std::size_t i) const { return *nodes_[i]; }
  Transport& transport();
  std::size_t messages() const noexcept;

  void set_live(std::size_t i, bool live);
  bool live(std::size_t i) const { return live_[i]; }

  /// One sync round on every live node, in node order. Returns the number
  /// of nanopublications fetched.
  std::size_t global_sync_round();
  /// Publishes through the transport; false if the node is down or rejects.
  bool publish(std::size_t i, const rdf::QuadDocument& doc);
  /// client_retrieve with every node known, in id order.
  std::optional<Nanopublication> retrieve(const ArtifactCode& code);

 private:
  class Wire;
  friend SimReport run_simulation(const SimConfig&, const std::vector<PublishEvent>&);
  SimConfig config_;
  std::vector<std::unique_ptr<ServerNode>> nodes_;
  std::vector<bool> live_;
  std::unique_ptr<Wire> wire_;
};

/// Runs the event loop: publishes at their times, periodic sync rounds on
/// every live node, failures per schedule. Pure function of its inputs.
SimReport run_simulation(const SimConfig& config, const std::vector<PublishEvent>& workload);

}  // namespace nanopub::net
