#include <algorithm>
#include <set>

#include "nanopub/error.hpp"
#include "nanopub/net.hpp"

namespace nanopub::net {

namespace {

// Assembles and verifies a document claimed to carry `expected` (if given).
std::optional<Nanopublication> admit(const rdf::QuadDocument& doc,
                                     const std::optional<ArtifactCode>& expected,
                                     std::string& reason) {
  auto uri = find_nanopub_uri(doc);
  if (!uri) {
    reason = "no nanopublication URI";
    return std::nullopt;
  }
  auto trusty_uri = trusty::TrustyUri::parse(*uri);
  if (!trusty_uri) {
    reason = "not a trusty URI: " + *uri;
    return std::nullopt;
  }
  if (expected && trusty_uri->code != *expected) {
    reason = "served code " + trusty_uri->code.str() + " differs from requested";
    return std::nullopt;
  }
  auto report = validate(doc, *uri);
  if (!report.valid()) {
    reason = "invalid: " + report.violations.front().rule;
    return std::nullopt;
  }
  if (auto v = trusty::verify(doc, *trusty_uri); !v) {
    reason = "verification: " + v.reason;
    return std::nullopt;
  }
  return assemble(doc, *uri);
}

}  // namespace

ServerNode::ServerNode(std::string id, std::vector<std::string> peers)
    : id_(std::move(id)), store_(std::make_unique<store::Store>()), peers_(std::move(peers)) {}

ServerNode::ServerNode(std::string id, std::filesystem::path store_dir,
                       std::vector<std::string> peers)
    : id_(std::move(id)),
      store_(std::make_unique<store::Store>(std::move(store_dir))),
      peers_(std::move(peers)) {}

Response ServerNode::handle(const Request& request) {
  std::lock_guard lock(mutex_);
  if (const auto* p = std::get_if<Publish>(&request)) {
    std::string reason;
    auto np = admit(p->document, std::nullopt, reason);
    if (!np) return Rejected{reason};
    try {
      return Ok{store_->put(*np)};
    } catch (const Error& e) {
      return Rejected{e.code() + ": " + e.what()};
    }
  }
  if (const auto* g = std::get_if<Get>(&request)) {
    auto np = store_->get(g->code);
    if (!np) return NotFound{};
    return NanopubDoc{np->to_document()};
  }
  if (const auto* j = std::get_if<GetJournal>(&request)) {
    if (j->page_size == 0) return Rejected{"page size must be positive"};
    JournalPage page;
    page.entries = store_->journal(j->from_seq, j->page_size);
    page.next_seq = page.entries.empty() ? j->from_seq : page.entries.back().seq + 1;
    return page;
  }
  return PeerList{peers_};
}

std::string ServerNode::handle_wire(std::string_view message) {
  Request request;
  try {
    request = decode_request(message);
  } catch (const Error& e) {
    return encode(Response{Rejected{std::string("malformed: ") + e.what()}});
  }
  return encode(handle(request));
}

void ServerNode::set_peers(std::vector<std::string> peers) {
  std::lock_guard lock(mutex_);
  peers_ = std::move(peers);
}

std::uint64_t ServerNode::cursor(const std::string& peer) const {
  std::lock_guard lock(mutex_);
  auto it = cursors_.find(peer);
  return it == cursors_.end() ? 0 : it->second;
}

void ServerNode::advance_cursor(const std::string& peer, std::uint64_t seq) {
  std::lock_guard lock(mutex_);
  auto& c = cursors_[peer];
  c = std::max(c, seq);
}

SyncStats sync_round_stats(ServerNode& node, Transport& transport, std::size_t page_size) {
  SyncStats stats;
  std::vector<std::string> peers;
  {
    auto reply = node.handle(PeersRequest{});
    peers = std::get<PeerList>(reply).ids;
  }
  for (const auto& peer : peers) {
    if (peer == node.id()) continue;
    bool reachable = true;
    while (reachable) {
      const std::uint64_t from = node.cursor(peer);
      auto reply = transport.send(peer, GetJournal{from, page_size});
      if (!reply) {
        reachable = false;
        break;
      }
      const auto* page = std::get_if<JournalPage>(&*reply);
      if (!page) break;
      for (const auto& entry : page->entries) {
        if (!node.store().contains(entry.code)) {
          auto got = transport.send(peer, Get{entry.code});
          if (!got) {
            reachable = false;
            break;
          }
          if (const auto* doc = std::get_if<NanopubDoc>(&*got)) {
            std::string reason;
            auto np = admit(doc->document, entry.code, reason);
            if (np) {
              node.store().put(*np);
              ++stats.fetched;
            } else {
              ++stats.rejected;
            }
          }
        }
        node.advance_cursor(peer, entry.seq + 1);
      }
      if (!reachable || page->entries.size() < page_size) break;
    }
    if (!reachable) ++stats.unreachable_peers;
  }
  return stats;
}

std::size_t sync_round(ServerNode& node, Transport& transport, std::size_t page_size) {
  return sync_round_stats(node, transport, page_size).fetched;
}

Nanopublication client_retrieve(const ArtifactCode& code,
                                std::span<const std::string> known_nodes,
                                Transport& transport) {
  if (known_nodes.empty()) throw Error("usage", "client_retrieve needs at least one known node");
  std::vector<std::string> order;
  std::set<std::string> queued;
  for (const auto& n : known_nodes) {
    if (queued.insert(n).second) order.push_back(n);
  }
  bool any_reachable = false;
  bool discovered = false;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto reply = transport.send(order[i], Get{code});
    if (reply) {
      any_reachable = true;
      if (const auto* doc = std::get_if<NanopubDoc>(&*reply)) {
        std::string reason;
        if (auto np = admit(doc->document, code, reason)) return std::move(*np);
      }
    }
    if (i + 1 == order.size() && !discovered) {
      // Known nodes exhausted: widen the search with their peer lists.
      discovered = true;
      std::set<std::string> found;
      for (const auto& n : std::vector<std::string>(order)) {
        auto peers = transport.send(n, PeersRequest{});
        if (!peers) continue;
        if (const auto* list = std::get_if<PeerList>(&*peers)) {
          for (const auto& id : list->ids) {
            if (!queued.contains(id)) found.insert(id);
          }
        }
      }
      for (const auto& id : found) {
        queued.insert(id);
        order.push_back(id);
      }
    }
  }
  if (!any_reachable) throw Error("unreachable", "no node could be reached");
  throw Error("not-found", "no reachable node holds " + code.str());
}

}  // namespace nanopub::net
