#include "nanopub/simulation.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "nanopub/corpus.hpp"
#include "nanopub/error.hpp"

namespace nanopub::net {

namespace {

// Independent streams so that, e.g., changing the failure count does not
// reshuffle latencies.
enum Stream : std::uint64_t { kTopology = 1, kLatency = 2, kFailures = 3, kWorkload = 4, kTicks = 5 };

std::mt19937_64 stream(std::uint64_t seed, Stream s) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(s)};
  return std::mt19937_64(seq);
}

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

[[noreturn]] void invalid(const std::string& why) { throw Error("invalid-config", why); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  std::size_t used = 0;
  try {
    out = std::stoull(std::string(v), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v.front() == '-') {
    invalid(std::string(key) + ": expected a non-negative integer, got '" + std::string(v) + "'");
  }
  return out;
}

// Failure windows after adding the seeded random ones.
std::vector<FailureWindow> failure_schedule(const SimConfig& c) {
  std::vector<FailureWindow> out = c.failures;
  if (c.random_failures == 0) return out;
  auto rng = stream(c.seed, kFailures);
  std::vector<std::size_t> order(c.node_count);
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < c.random_failures; ++i) {
    std::size_t j = i + rng() % (order.size() - i);
    std::swap(order[i], order[j]);
    const std::uint64_t quarter = c.duration_ms / 4;
    const std::uint64_t start = quarter + rng() % std::max<std::uint64_t>(1, c.duration_ms - quarter);
    const std::uint64_t end = start + 1 + rng() % std::max<std::uint64_t>(1, c.duration_ms);
    out.push_back({order[i], start, end});
  }
  return out;
}

}  // namespace

SimConfig SimConfig::parse(std::string_view text) {
  SimConfig c;
  std::size_t line_no = 0;
  while (!text.empty()) {
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      invalid("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string_view key = trim(line.substr(0, eq));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "node_count") c.node_count = to_u64(key, value);
    else if (key == "topology") {
      if (value == "complete") c.topology = Topology::Complete;
      else if (value == "ring") c.topology = Topology::Ring;
      else if (value == "random") c.topology = Topology::Random;
      else invalid("unknown topology '" + std::string(value) + "'");
    } else if (key == "edge_probability") {
      try {
        c.edge_probability = std::stod(std::string(value));
      } catch (const std::exception&) {
        invalid("edge_probability: not a number");
      }
    } else if (key == "latency_min_ms") c.latency_min_ms = to_u64(key, value);
    else if (key == "latency_max_ms") c.latency_max_ms = to_u64(key, value);
    else if (key == "sync_interval_ms") c.sync_interval_ms = to_u64(key, value);
    else if (key == "duration_ms") c.duration_ms = to_u64(key, value);
    else if (key == "page_size") c.page_size = to_u64(key, value);
    else if (key == "seed") c.seed = to_u64(key, value);
    else if (key == "random_failures") c.random_failures = to_u64(key, value);
    else if (key == "publishes") c.publishes = to_u64(key, value);
    else if (key == "publish_window_ms") c.publish_window_ms = to_u64(key, value);
    else if (key == "failure") {
      std::istringstream in{std::string(value)};
      FailureWindow w;
      std::string rest;
      if (!(in >> w.node >> w.start_ms >> w.end_ms) || (in >> rest)) {
        invalid("failure: expected '<node> <start_ms> <end_ms>'");
      }
      c.failures.push_back(w);
    } else {
      invalid("unknown key '" + std::string(key) + "'");
    }
  }
  c.check();
  return c;
}

std::string SimConfig::to_text() const {
  std::ostringstream out;
  const char* topo = topology == Topology::Complete ? "complete"
                     : topology == Topology::Ring   ? "ring"
                                                    : "random";
  char prob[32];
  std::snprintf(prob, sizeof prob, "%.17g", edge_probability);
  out << "node_count = " << node_count << '\n'
      << "topology = " << topo << '\n'
      << "edge_probability = " << prob << '\n'
      << "latency_min_ms = " << latency_min_ms << '\n'
      << "latency_max_ms = " << latency_max_ms << '\n'
      << "sync_interval_ms = " << sync_interval_ms << '\n'
      << "duration_ms = " << duration_ms << '\n'
      << "page_size = " << page_size << '\n'
      << "seed = " << seed << '\n'
      << "random_failures = " << random_failures << '\n'
      << "publishes = " << publishes << '\n'
      << "publish_window_ms = " << publish_window_ms << '\n';
  for (const auto& f : failures) {
    out << "failure = " << f.node << ' ' << f.start_ms << ' ' << f.end_ms << '\n';
  }
  return out.str();
}

void SimConfig::check() const {
  if (node_count == 0) invalid("node_count must be at least 1");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    invalid("edge_probability must lie in [0, 1]");
  }
  if (latency_min_ms > latency_max_ms) invalid("latency_min_ms exceeds latency_max_ms");
  if (sync_interval_ms == 0) invalid("sync_interval_ms must be positive");
  if (page_size == 0) invalid("page_size must be positive");
  if (random_failures > node_count) invalid("random_failures exceeds node_count");
  if (publish_window_ms > duration_ms) invalid("publish_window_ms exceeds duration_ms");
  for (const auto& f : failures) {
    if (f.node >= node_count) invalid("failure names node " + std::to_string(f.node));
    if (f.start_ms >= f.end_ms) invalid("failure window must have start < end");
  }
}

std::string node_id(std::size_t index, std::size_t node_count) {
  std::size_t width = std::to_string(node_count > 0 ? node_count - 1 : 0).size();
  width = std::max<std::size_t>(width, 2);
  std::string digits = std::to_string(index);
  return "n" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

std::vector<std::vector<std::size_t>> build_topology(const SimConfig& config) {
  config.check();
  const std::size_t n = config.node_count;
  std::vector<std::set<std::size_t>> adj(n);
  auto link = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    adj[a].insert(b);
    adj[b].insert(a);
  };
  switch (config.topology) {
    case Topology::Complete:
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) link(a, b);
      }
      break;
    case Topology::Ring:
      for (std::size_t a = 0; a < n; ++a) link(a, (a + 1) % n);
      break;
    case Topology::Random: {
      auto rng = stream(config.seed, kTopology);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (unit(rng) < config.edge_probability) link(a, b);
        }
      }
      break;
    }
  }
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i].assign(adj[i].begin(), adj[i].end());
  return out;
}

std::vector<PublishEvent> generate_workload(const SimConfig& config) {
  config.check();
  corpus::CorpusOptions options;
  options.count = config.publishes;
  options.seed = config.seed;
  auto nps = corpus::generate(options);
  auto rng = stream(config.seed, kWorkload);
  std::vector<PublishEvent> out;
  out.reserve(nps.size());
  for (std::size_t i = 0; i < nps.size(); ++i) {
    std::uint64_t t = config.publish_window_ms == 0 ? 0 : rng() % config.publish_window_ms;
    out.push_back({t, i % config.node_count, nps[i].to_document()});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const PublishEvent& a, const PublishEvent& b) { return a.time_ms < b.time_ms; });
  return out;
}

// In-process transport: every request and response is encoded to the wire
// form and decoded again, so the simulation exercises the real codec.
class SimNetwork::Wire : public Transport {
 public:
  Wire(SimNetwork& net, std::uint64_t seed) : net_(net), latency_rng_(stream(seed, kLatency)) {}

  std::optional<Response> send(const std::string& to, const Request& request) override {
    auto it = index_.find(to);
    if (it == index_.end() || !net_.live_[it->second]) return std::nullopt;
    const std::string reply = net_.nodes_[it->second]->handle_wire(encode(request));
    messages_ += 2;
    elapsed_ms_ += latency() + latency();
    Response response = decode_response(reply);
    if (sender_ && std::holds_alternative<NanopubDoc>(response)) {
      if (const auto* get = std::get_if<Get>(&request)) {
        arrivals_.emplace(std::make_pair(*sender_, get->code.str()), now_ms_ + elapsed_ms_);
      }
    }
    return response;
  }

  std::uint64_t latency() {
    const auto& c = net_.config_;
    return c.latency_min_ms + latency_rng_() % (c.latency_max_ms - c.latency_min_ms + 1);
  }

  // Starts a batch of requests issued by `sender` at simulated time `now`.
  void begin(std::optional<std::size_t> sender, std::uint64_t now) {
    sender_ = sender;
    now_ms_ = now;
    elapsed_ms_ = 0;
  }

  SimNetwork& net_;
  std::map<std::string, std::size_t> index_;
  std::mt19937_64 latency_rng_;
  std::size_t messages_ = 0;
  std::optional<std::size_t> sender_;
  std::uint64_t now_ms_ = 0;
  std::uint64_t elapsed_ms_ = 0;
  // First time each (node, code) arrived by replication.
  std::map<std::pair<std::size_t, std::string>, std::uint64_t> arrivals_;
};

SimNetwork::SimNetwork(const SimConfig& config) : config_(config) {
  const auto adjacency = build_topology(config);
  wire_ = std::make_unique<Wire>(*this, config.seed);
  for (std::size_t i = 0; i < config.node_count; ++i) {
    std::vector<std::string> peers;
    for (std::size_t j : adjacency[i]) peers.push_back(node_id(j, config.node_count));
    nodes_.push_back(std::make_unique<ServerNode>(node_id(i, config.node_count), std::move(peers)));
    wire_->index_.emplace(nodes_.back()->id(), i);
  }
  live_.assign(config.node_count, true);
}

SimNetwork::~SimNetwork() = default;

Transport& SimNetwork::transport() { return *wire_; }

std::size_t SimNetwork::messages() const noexcept { return wire_->messages_; }

void SimNetwork::set_live(std::size_t i, bool live) { live_[i] = live; }

std::size_t SimNetwork::global_sync_round() {
  std::size_t fetched = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!live_[i]) continue;
    wire_->begin(i, wire_->now_ms_);
    fetched += sync_round(*nodes_[i], *wire_, config_.page_size);
  }
  return fetched;
}

bool SimNetwork::publish(std::size_t i, const rdf::QuadDocument& doc) {
  wire_->begin(std::nullopt, wire_->now_ms_);
  auto reply = wire_->send(nodes_[i]->id(), Publish{doc});
  return reply && std::holds_alternative<Ok>(*reply);
}

std::optional<Nanopublication> SimNetwork::retrieve(const ArtifactCode& code) {
  std::vector<std::string> known;
  for (const auto& n : nodes_) known.push_back(n->id());
  wire_->begin(std::nullopt, wire_->now_ms_);
  try {
    return client_retrieve(code, known, *wire_);
  } catch (const Error&) {
    return std::nullopt;
  }
}

SimReport run_simulation(const SimConfig& config, const std::vector<PublishEvent>& workload) {
  config.check();
  SimNetwork net(config);
  auto& wire = static_cast<SimNetwork::Wire&>(net.transport());

  enum class Kind { FailStart, FailEnd, Publish, Sync };
  struct Event {
    std::uint64_t time;
    std::uint64_t seq;
    Kind kind;
    std::size_t node;
    std::size_t payload;
    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, std::greater<>> queue;
  std::uint64_t seq = 0;
  for (const auto& f : failure_schedule(config)) {
    queue.push({f.start_ms, seq++, Kind::FailStart, f.node, 0});
    queue.push({f.end_ms, seq++, Kind::FailEnd, f.node, 0});
  }
  for (std::size_t i = 0; i < workload.size(); ++i) {
    if (workload[i].node >= config.node_count) invalid("workload names an unknown node");
    queue.push({workload[i].time_ms, seq++, Kind::Publish, workload[i].node, i});
  }
  auto tick_rng = stream(config.seed, kTicks);
  for (std::size_t i = 0; i < config.node_count; ++i) {
    queue.push({tick_rng() % config.sync_interval_ms, seq++, Kind::Sync, i, 0});
  }

  SimReport report;
  report.nodes = config.node_count;
  report.published = workload.size();
  std::vector<int> down(config.node_count, 0);
  std::map<std::string, std::pair<std::uint64_t, std::size_t>> accepted;  // code -> (time, origin)

  while (!queue.empty() && queue.top().time <= config.duration_ms) {
    Event e = queue.top();
    queue.pop();
    ++report.events;
    switch (e.kind) {
      case Kind::FailStart:
        if (down[e.node]++ == 0) net.set_live(e.node, false);
        break;
      case Kind::FailEnd:
        if (--down[e.node] == 0) net.set_live(e.node, true);
        break;
      case Kind::Publish: {
        const auto& doc = workload[e.payload].document;
        wire.begin(std::nullopt, e.time);
        auto reply = wire.send(net.node(e.node).id(), Publish{doc});
        if (reply) {
          if (const auto* ok = std::get_if<Ok>(&*reply)) {
            accepted.emplace(ok->code.str(), std::make_pair(e.time, e.node));
          }
        }
        break;
      }
      case Kind::Sync:
        if (net.live(e.node)) {
          wire.begin(e.node, e.time);
          sync_round(net.node(e.node), wire, config.page_size);
        }
        queue.push({e.time + config.sync_interval_ms, seq++, Kind::Sync, e.node, 0});
        break;
    }
  }
  report.accepted = accepted.size();
  report.lost = report.published - report.accepted;
  report.messages = net.messages();

  std::uint64_t lag_sum = 0;
  std::size_t lag_count = 0;
  for (const auto& [key, when] : wire.arrivals_) {
    auto it = accepted.find(key.second);
    if (it == accepted.end()) continue;
    const std::uint64_t lag = when - std::min(when, it->second.first);
    lag_sum += lag;
    ++lag_count;
    report.lag_max_ms = std::max(report.lag_max_ms, lag);
  }
  report.lag_mean_ms = lag_count ? static_cast<double>(lag_sum) / static_cast<double>(lag_count) : 0.0;

  report.converged = true;
  for (std::size_t i = 0; i < net.size(); ++i) {
    report.node_reports.push_back({net.node(i).id(), net.node(i).store().size(), net.live(i)});
  }
  for (const auto& [code_text, origin] : accepted) {
    const auto code = *ArtifactCode::parse(code_text);
    CodeReport cr;
    cr.code = code_text;
    cr.origin = net.node(origin.second).id();
    for (std::size_t i = 0; i < net.size(); ++i) {
      const bool holds = net.node(i).store().contains(code);
      cr.holders += holds ? '1' : '0';
      if (net.live(i) && !holds) report.converged = false;
    }
    cr.retrievable = net.retrieve(code).has_value();
    report.codes.push_back(std::move(cr));
  }
  return report;
}

std::string SimReport::to_text() const {
  std::ostringstream out;
  char lag[64];
  std::snprintf(lag, sizeof lag, "%.3f", lag_mean_ms);
  out << "nodes " << nodes << '\n'
      << "published " << published << '\n'
      << "accepted " << accepted << '\n'
      << "lost " << lost << '\n'
      << "events " << events << '\n'
      << "messages " << messages << '\n'
      << "converged " << (converged ? "true" : "false") << '\n'
      << "lag_mean_ms " << lag << '\n'
      << "lag_max_ms " << lag_max_ms << '\n';
  for (const auto& n : node_reports) {
    out << "node " << n.id << " size " << n.size << " live " << (n.live_at_end ? 1 : 0) << '\n';
  }
  for (const auto& c : codes) {
    out << "code " << c.code << " origin " << c.origin << " holders " << c.holders
        << " retrievable " << (c.retrievable ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace nanopub::net
