#include <charconv>

#include "nanopub/error.hpp"
#include "nanopub/net.hpp"
#include "nanopub/trig.hpp"

namespace nanopub::net {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void malformed(const std::string& why) { throw Error("malformed", why); }

struct Message {
  std::string kind;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string_view body;

  const std::string* field(std::string_view key) const {
    for (const auto& [k, v] : headers) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const std::string& required(std::string_view key) const {
    const std::string* v = field(key);
    if (!v) malformed(kind + " is missing " + std::string(key));
    return *v;
  }
};

Message split(std::string_view text) {
  Message m;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      m.body = text.substr(pos);
      break;
    }
    std::size_t space = line.find(' ');
    std::string key(line.substr(0, space));
    std::string value(space == std::string_view::npos ? "" : line.substr(space + 1));
    if (first) {
      if (key != "KIND" || value.empty()) malformed("message must start with 'KIND <kind>'");
      m.kind = std::move(value);
      first = false;
    } else {
      m.headers.emplace_back(std::move(key), std::move(value));
    }
  }
  if (first) malformed("empty message");
  return m;
}

std::uint64_t to_u64(const std::string& text) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) malformed("bad number '" + text + "'");
  return v;
}

ArtifactCode to_code(const std::string& text) {
  auto code = ArtifactCode::parse(text);
  if (!code) malformed("bad artifact code '" + text + "'");
  return *code;
}

rdf::QuadDocument to_doc(std::string_view body) {
  try {
    return rdf::parse_trig(body);
  } catch (const Error& e) {
    malformed(std::string("body is not valid TriG: ") + e.what());
  }
}

}  // namespace

std::string_view kind_name(const Request& r) {
  return std::visit(overloaded{[](const Publish&) { return "PUBLISH"; },
                               [](const Get&) { return "GET"; },
                               [](const GetJournal&) { return "GET_JOURNAL"; },
                               [](const PeersRequest&) { return "PEERS_REQUEST"; }},
                    r);
}

std::string_view kind_name(const Response& r) {
  return std::visit(overloaded{[](const Ok&) { return "OK"; },
                               [](const NanopubDoc&) { return "NANOPUB"; },
                               [](const JournalPage&) { return "JOURNAL_PAGE"; },
                               [](const PeerList&) { return "PEER_LIST"; },
                               [](const NotFound&) { return "NOT_FOUND"; },
                               [](const Rejected&) { return "REJECTED"; }},
                    r);
}

std::string encode(const Request& r) {
  std::string out = "KIND " + std::string(kind_name(r)) + "\n";
  std::visit(overloaded{[&](const Publish& p) { out += "\n" + rdf::serialize_trig(p.document); },
                        [&](const Get& g) { out += "CODE " + g.code.str() + "\n"; },
                        [&](const GetJournal& j) {
                          out += "FROM " + std::to_string(j.from_seq) + "\n";
                          out += "PAGE-SIZE " + std::to_string(j.page_size) + "\n";
                        },
                        [](const PeersRequest&) {}},
             r);
  return out;
}

std::string encode(const Response& r) {
  std::string out = "KIND " + std::string(kind_name(r)) + "\n";
  std::visit(overloaded{[&](const Ok& ok) { out += "CODE " + ok.code.str() + "\n"; },
                        [&](const NanopubDoc& d) { out += "\n" + rdf::serialize_trig(d.document); },
                        [&](const JournalPage& page) {
                          out += "NEXT " + std::to_string(page.next_seq) + "\n";
                          for (const auto& e : page.entries) {
                            out += "ENTRY " + std::to_string(e.seq) + " " + e.code.str() + "\n";
                          }
                        },
                        [&](const PeerList& peers) {
                          for (const auto& id : peers.ids) out += "PEER " + id + "\n";
                        },
                        [](const NotFound&) {},
                        [&](const Rejected& rej) {
                          std::string reason = rej.reason;
                          for (char& c : reason) {
                            if (c == '\n' || c == '\r') c = ' ';
                          }
                          out += "REASON " + reason + "\n";
                        }},
             r);
  return out;
}

Request decode_request(std::string_view text) {
  Message m = split(text);
  if (m.kind == "PUBLISH") return Publish{to_doc(m.body)};
  if (m.kind == "GET") return Get{to_code(m.required("CODE"))};
  if (m.kind == "GET_JOURNAL") {
    GetJournal j{to_u64(m.required("FROM")), static_cast<std::size_t>(to_u64(m.required("PAGE-SIZE")))};
    if (j.page_size == 0) malformed("PAGE-SIZE must be positive");
    return j;
  }
  if (m.kind == "PEERS_REQUEST") return PeersRequest{};
  malformed("unknown request kind '" + m.kind + "'");
}

Response decode_response(std::string_view text) {
  Message m = split(text);
  if (m.kind == "OK") return Ok{to_code(m.required("CODE"))};
  if (m.kind == "NANOPUB") return NanopubDoc{to_doc(m.body)};
  if (m.kind == "JOURNAL_PAGE") {
    JournalPage page;
    page.next_seq = to_u64(m.required("NEXT"));
    for (const auto& [k, v] : m.headers) {
      if (k != "ENTRY") continue;
      std::size_t space = v.find(' ');
      if (space == std::string::npos) malformed("ENTRY needs '<seq> <code>'");
      page.entries.push_back({to_u64(v.substr(0, space)), to_code(v.substr(space + 1))});
    }
    return page;
  }
  if (m.kind == "PEER_LIST") {
    PeerList peers;
    for (const auto& [k, v] : m.headers) {
      if (k == "PEER") peers.ids.push_back(v);
    }
    return peers;
  }
  if (m.kind == "NOT_FOUND") return NotFound{};
  if (m.kind == "REJECTED") {
    const std::string* reason = m.field("REASON");
    return Rejected{reason ? *reason : std::string()};
  }
  malformed("unknown response kind '" + m.kind + "'");
}

}  // namespace nanopub::net
