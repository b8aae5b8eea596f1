#include <atomic>
#include <condition_variable>
#include <thread>

#include <httplib.h>

#include "nanopub/error.hpp"
#include "nanopub/net.hpp"

namespace nanopub::net {

namespace {

constexpr const char* kRoute = "/np-node";

std::pair<std::string, int> split_address(const std::string& id) {
  const auto colon = id.rfind(':');
  if (colon == std::string::npos) return {id, 80};
  try {
    return {id.substr(0, colon), std::stoi(id.substr(colon + 1))};
  } catch (const std::exception&) {
    return {id, 80};
  }
}

}  // namespace

std::optional<Response> HttpTransport::send(const std::string& to, const Request& request) {
  auto [host, port] = split_address(to);
  httplib::Client client(host, port);
  const auto secs = static_cast<time_t>(timeout_);
  const auto usecs = static_cast<time_t>((timeout_ - static_cast<double>(secs)) * 1e6);
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);
  auto res = client.Post(kRoute, encode(request), "text/plain");
  if (!res || res->status != 200) return std::nullopt;
  try {
    return decode_response(res->body);
  } catch (const Error&) {
    return std::nullopt;
  }
}

struct NodeServer::Impl {
  ServerNode& node;
  double sync_interval;
  httplib::Server server;
  std::thread listener;
  std::thread syncer;
  std::mutex mutex;
  std::condition_variable wake;
  bool stopping = false;

  Impl(ServerNode& n, double interval) : node(n), sync_interval(interval) {
    server.Post(kRoute, [this](const httplib::Request& req, httplib::Response& res) {
      res.set_content(node.handle_wire(req.body), "text/plain");
    });
  }

  void start_sync() {
    if (sync_interval <= 0) return;
    syncer = std::thread([this] {
      HttpTransport transport;
      std::unique_lock lock(mutex);
      const auto period = std::chrono::duration<double>(sync_interval);
      while (!wake.wait_for(lock, period, [this] { return stopping; })) {
        lock.unlock();
        sync_round(node, transport);
        lock.lock();
      }
    });
  }

  void stop() {
    {
      std::lock_guard lock(mutex);
      stopping = true;
    }
    wake.notify_all();
    server.stop();
    if (listener.joinable()) listener.join();
    if (syncer.joinable()) syncer.join();
  }
};

NodeServer::NodeServer(ServerNode& node, double sync_interval_seconds)
    : impl_(std::make_unique<Impl>(node, sync_interval_seconds)) {}

NodeServer::~NodeServer() { stop(); }

bool NodeServer::listen(const std::string& host, int port) {
  impl_->start_sync();
  return impl_->server.listen(host, port);
}

int NodeServer::start_background(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error("io", "cannot bind to " + host);
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  impl_->start_sync();
  return port;
}

void NodeServer::stop() {
  if (impl_) impl_->stop();
}

}  // namespace nanopub::net
