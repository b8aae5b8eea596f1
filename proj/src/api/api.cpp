#include "nanopub/api.hpp"

#include <charconv>
#include <thread>

#include <httplib.h>

#include "nanopub/error.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::api {

namespace {

void check(const PageRequest& p) {
  if (p.page == 0) throw Error("invalid-page", "pages are numbered from 1");
  if (p.page_size == 0 || p.page_size > kMaxPageSize) {
    throw Error("invalid-page", "page_size must be between 1 and " + std::to_string(kMaxPageSize));
  }
}

template <class T>
Page<T> slice(std::vector<T> all, const PageRequest& p) {
  check(p);
  Page<T> out;
  out.page = p.page;
  out.page_size = p.page_size;
  out.total = all.size();
  // (page - 1) * page_size without overflow for absurd page numbers.
  if (p.page - 1 < all.size() / p.page_size + 1) {
    const std::size_t begin = (p.page - 1) * p.page_size;
    if (begin < all.size()) {
      const std::size_t end = std::min(all.size(), begin + p.page_size);
      out.items.assign(std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(begin)),
                       std::make_move_iterator(all.begin() + static_cast<std::ptrdiff_t>(end)));
    }
  }
  return out;
}

std::vector<std::string> codes(const std::vector<trusty::ArtifactCode>& in) {
  std::vector<std::string> out;
  out.reserve(in.size());
  for (const auto& c : in) out.push_back(c.str());
  return out;
}

rdf::QuadPattern to_quad_pattern(const TriplePattern& t) {
  rdf::QuadPattern q;
  q.subject = t.subject;
  q.predicate = t.predicate;
  q.object = t.object;
  return q;
}

}  // namespace

Page<std::string> ApiService::find_latest_nanopubs_with_pattern(const TriplePattern& pattern,
                                                                PageRequest page) const {
  check(page);
  return slice(codes(store_.find_by_pattern(to_quad_pattern(pattern), true)), page);
}

Page<std::string> ApiService::find_nanopubs_with_pattern(const TriplePattern& pattern,
                                                         PageRequest page) const {
  check(page);
  return slice(codes(store_.find_by_pattern(to_quad_pattern(pattern), false)), page);
}

Page<std::string> ApiService::find_latest_nanopubs_with_uri(std::string_view uri,
                                                            PageRequest page) const {
  check(page);
  return slice(codes(store_.find_by_uri(uri, true)), page);
}

Page<std::string> ApiService::find_nanopubs_with_uri(std::string_view uri, PageRequest page) const {
  check(page);
  return slice(codes(store_.find_by_uri(uri, false)), page);
}

Page<index::IndexSummary> ApiService::get_all_indexes(PageRequest page) const {
  check(page);
  const auto records = store_.index_records();
  return slice(index::list_indexes(records, store_.index_resolver()), page);
}

Page<std::string> ApiService::get_index_elements(std::string_view index_uri,
                                                 PageRequest page) const {
  check(page);
  const index::IndexRecord* record = store_.find_index(index_uri);
  if (!record) throw Error("not-found", "no index <" + std::string(index_uri) + ">");
  return slice(index::direct_elements(*record, store_.index_resolver()), page);
}

std::string ApiService::get_nanopub(std::string_view uri) const {
  std::optional<trusty::ArtifactCode> code = trusty::ArtifactCode::parse(uri);
  const bool bare = code.has_value();
  if (!bare) code = trusty::extract_artifact_code(uri);
  if (!code) throw Error("not-found", "<" + std::string(uri) + "> carries no artifact code");
  auto np = store_.get(*code);
  if (!np || (!bare && np->uri != uri)) {
    throw Error("not-found", "no nanopublication <" + std::string(uri) + ">");
  }
  rdf::QuadDocument doc = np->to_document();
  doc.add_prefix("np", std::string(vocab::kNp));
  return rdf::serialize_trig(doc);
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {
      "find_latest_nanopubs_with_pattern", "find_nanopubs_with_pattern",
      "find_latest_nanopubs_with_uri",     "find_nanopubs_with_uri",
      "get_all_indexes",                   "get_index_elements",
      "get_nanopub"};
  return names;
}

namespace {

struct BadRequest : Error {
  explicit BadRequest(const std::string& msg) : Error("bad-request", msg) {}
};

const std::string* param(const std::map<std::string, std::string>& params, const char* key) {
  auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

const std::string& required(const std::map<std::string, std::string>& params, const char* key) {
  const std::string* v = param(params, key);
  if (!v || v->empty()) throw BadRequest(std::string("missing parameter '") + key + "'");
  return *v;
}

std::size_t number(const std::map<std::string, std::string>& params, const char* key,
                   std::size_t fallback) {
  const std::string* v = param(params, key);
  if (!v) return fallback;
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
  if (ec != std::errc() || ptr != v->data() + v->size()) {
    throw BadRequest(std::string("parameter '") + key + "' must be a non-negative integer");
  }
  return out;
}

rdf::Term iri_param(const std::string& value, const char* key) {
  if (!rdf::is_absolute_iri(value)) {
    throw BadRequest(std::string("parameter '") + key + "' must be an absolute IRI");
  }
  return rdf::Term::iri(value);
}

TriplePattern pattern_from(const std::map<std::string, std::string>& params) {
  TriplePattern t;
  if (const auto* s = param(params, "subj"); s && !s->empty()) t.subject = iri_param(*s, "subj");
  if (const auto* p = param(params, "pred"); p && !p->empty()) t.predicate = iri_param(*p, "pred");
  const std::string* type = param(params, "objtype");
  const bool literal = type && *type == "literal";
  if (type && !literal && *type != "iri") throw BadRequest("objtype must be 'iri' or 'literal'");
  const std::string* lang = param(params, "objlang");
  const std::string* datatype = param(params, "objdatatype");
  if (!literal && (lang || datatype)) {
    throw BadRequest("objlang and objdatatype need objtype=literal");
  }
  if (const auto* o = param(params, "obj")) {
    if (literal) {
      if (lang && datatype) throw BadRequest("objlang and objdatatype are exclusive");
      if (datatype && !rdf::is_absolute_iri(*datatype)) {
        throw BadRequest("objdatatype must be an absolute IRI");
      }
      t.object = rdf::Term::literal(*o, datatype ? *datatype : std::string(),
                                    lang ? *lang : std::string());
    } else if (!o->empty()) {
      t.object = iri_param(*o, "obj");
    }
  }
  return t;
}

void allow_only(const std::map<std::string, std::string>& params,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : params) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw BadRequest("unknown parameter '" + key + "'");
  }
}

template <class T>
ApiResponse lines(const Page<T>& page) {
  ApiResponse r;
  r.total = page.total;
  for (const auto& item : page.items) {
    if constexpr (std::is_same_v<T, index::IndexSummary>) {
      r.body += std::to_string(item.number) + '\t' + item.uri + '\t' + item.title + '\t' + item.date +
                '\t' + std::to_string(item.sub_count) + '\t' + std::to_string(item.size) + '\n';
    } else {
      r.body += item + '\n';
    }
  }
  return r;
}

ApiResponse error(int status, const std::string& message) {
  ApiResponse r;
  r.status = status;
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  r.body = "ERROR " + std::to_string(status) + " " + flat + "\n";
  return r;
}

}  // namespace

ApiResponse dispatch(const ApiService& service, std::string_view method,
                     const std::map<std::string, std::string>& params) {
  try {
    auto paging = [&] {
      return PageRequest{number(params, "page", 1), number(params, "page_size", kDefaultPageSize)};
    };
    const std::initializer_list<std::string_view> pattern_keys = {
        "subj", "pred", "obj", "objtype", "objlang", "objdatatype", "page", "page_size"};
    if (method == "find_latest_nanopubs_with_pattern") {
      allow_only(params, pattern_keys);
      return lines(service.find_latest_nanopubs_with_pattern(pattern_from(params), paging()));
    }
    if (method == "find_nanopubs_with_pattern") {
      allow_only(params, pattern_keys);
      return lines(service.find_nanopubs_with_pattern(pattern_from(params), paging()));
    }
    if (method == "find_latest_nanopubs_with_uri") {
      allow_only(params, {"uri", "page", "page_size"});
      return lines(service.find_latest_nanopubs_with_uri(required(params, "uri"), paging()));
    }
    if (method == "find_nanopubs_with_uri") {
      allow_only(params, {"uri", "page", "page_size"});
      return lines(service.find_nanopubs_with_uri(required(params, "uri"), paging()));
    }
    if (method == "get_all_indexes") {
      allow_only(params, {"page", "page_size"});
      return lines(service.get_all_indexes(paging()));
    }
    if (method == "get_index_elements") {
      allow_only(params, {"index_uri", "page", "page_size"});
      return lines(service.get_index_elements(required(params, "index_uri"), paging()));
    }
    if (method == "get_nanopub") {
      allow_only(params, {"uri"});
      ApiResponse r;
      r.content_type = "application/trig";
      r.body = service.get_nanopub(required(params, "uri"));
      return r;
    }
    return error(404, "unknown method '" + std::string(method) + "'");
  } catch (const Error& e) {
    if (e.code() == "not-found") return error(404, e.what());
    if (e.code() == "bad-request" || e.code() == "invalid-page" || e.code() == "relative-iri" ||
        e.code() == "invalid-iri") {
      return error(400, e.what());
    }
    return error(500, e.what());
  }
}

struct ApiServer::Impl {
  const ApiService& service;
  httplib::Server server;
  std::thread listener;

  explicit Impl(const ApiService& s) : service(s) {
    server.Get(R"(/api/([A-Za-z_]+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> params;
      for (const auto& [k, v] : req.params) {
        if (params.contains(k)) {
          auto r = error(400, "repeated parameter '" + k + "'");
          res.status = r.status;
          res.set_content(r.body, r.content_type);
          return;
        }
        params.emplace(k, v);
      }
      ApiResponse r = dispatch(service, req.matches[1].str(), params);
      res.status = r.status;
      if (r.total) res.set_header("X-Total-Count", std::to_string(*r.total));
      res.set_content(r.body, r.content_type);
    });
  }
};

ApiServer::ApiServer(const ApiService& service) : impl_(std::make_unique<Impl>(service)) {}

ApiServer::~ApiServer() { stop(); }

bool ApiServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int ApiServer::start_background(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) throw Error("io", "cannot bind to " + host);
  impl_->listener = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void ApiServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->listener.joinable()) impl_->listener.join();
}

}  // namespace nanopub::api
