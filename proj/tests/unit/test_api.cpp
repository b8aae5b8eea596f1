#include <gtest/gtest.h>

#include <httplib.h>

#include "brute.hpp"
#include "helpers.hpp"
#include "index_fixtures.hpp"
#include "nanopub/api.hpp"
#include "nanopub/error.hpp"
#include "nanopub/index.hpp"

using namespace nanopub;
using namespace nanopub::api;
using rdf::Term;
using testing_helpers::iri;

namespace {

std::string err(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

// The committed fixtures plus a few dated drafts and a two-link index.
struct Fixture {
  store::Store store;
  std::vector<index::IndexRecord> chain;

  Fixture() {
    for (const auto& row : testing_helpers::manifest()) {
      if (row.kind != "valid") continue;
      auto doc = rdf::parse_trig(
          testing_helpers::read_file(testing_helpers::fixtures() / "valid" / (row.name + ".trig")));
      store.put(assemble(doc, row.uri));
    }
    const char* dates[] = {"2014-02-01T00:00:00Z", "2016-07-12T08:30:00+02:00", "",
                           "2016-07-12T06:30:00Z"};
    for (int k = 0; k < 4; ++k) {
      auto d = testing_helpers::draft("http://example.org/np/", 3, "d" + std::to_string(k));
      if (*dates[k]) {
        d.quads.emplace_back(iri("http://example.org/np/"), iri(std::string(vocab::kDctCreated)),
                             Term::literal(dates[k], std::string(vocab::kXsdDateTime)),
                             iri("http://example.org/np/#pubinfo"));
      }
      auto m = trusty::mint(d, "http://example.org/np/");
      store.put(assemble(m.document, m.uri.str()));
    }
    index::IndexMetadata meta;
    meta.capacity = 4;
    meta.title = "Six things";
    meta.created = "2017-01-01T00:00:00Z";
    chain = index::build_index(testing_helpers::synthetic_elements("api", 6), {}, meta);
    for (const auto& link : chain) store.put(link.nanopub);
  }
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

std::vector<TriplePattern> patterns() {
  std::vector<TriplePattern> out;
  out.push_back({});
  out.push_back({std::nullopt, iri(std::string(vocab::kDctCreator)), std::nullopt});
  out.push_back({std::nullopt, iri("http://example.org/p"), std::nullopt});
  out.push_back({std::nullopt, std::nullopt, iri("http://orcid.org/0000-0002-1825-0097")});
  out.push_back({std::nullopt, iri(std::string(vocab::kRdfType)), iri(std::string(vocab::kNanopublication))});
  out.push_back({iri("http://example.org/s1"), std::nullopt, std::nullopt});
  out.push_back({std::nullopt, std::nullopt, Term::literal("value 2d1")});
  out.push_back({std::nullopt, std::nullopt, Term::literal("value 2d1", "", "en")});
  out.push_back({std::nullopt, iri("http://example.org/none"), std::nullopt});
  return out;
}

}  // namespace

TEST(Paging, SlicesAndBounds) {
  ApiService api(fixture().store);
  TriplePattern all;
  auto full = api.find_nanopubs_with_pattern(all, {1, kMaxPageSize});
  const std::size_t n = full.total;
  ASSERT_GT(n, 20u);
  EXPECT_EQ(full.items.size(), n);

  auto p2 = api.find_nanopubs_with_pattern(all, {2, 7});
  EXPECT_EQ(p2.total, n);
  EXPECT_EQ(p2.page, 2u);
  ASSERT_EQ(p2.items.size(), 7u);
  EXPECT_EQ(p2.items.front(), full.items[7]);

  const std::size_t last = (n + 6) / 7;
  EXPECT_EQ(api.find_nanopubs_with_pattern(all, {last, 7}).items.size(), n - 7 * (last - 1));
  EXPECT_TRUE(api.find_nanopubs_with_pattern(all, {last + 1, 7}).items.empty());
  EXPECT_TRUE(api.find_nanopubs_with_pattern(all, {SIZE_MAX, 7}).items.empty());
  EXPECT_TRUE(api.find_nanopubs_with_pattern(all, {SIZE_MAX / 2, kMaxPageSize}).items.empty());

  EXPECT_EQ(err([&] { api.find_nanopubs_with_pattern(all, {0, 7}); }), "invalid-page");
  EXPECT_EQ(err([&] { api.find_nanopubs_with_pattern(all, {1, 0}); }), "invalid-page");
  EXPECT_EQ(err([&] { api.find_nanopubs_with_pattern(all, {1, kMaxPageSize + 1}); }), "invalid-page");
  EXPECT_EQ(err([&] { api.get_all_indexes({0, 1}); }), "invalid-page");
}

TEST(Paging, PagesPartitionTheResult) {
  ApiService api(fixture().store);
  for (const auto& p : patterns()) {
    for (bool latest : {false, true}) {
      auto fetch = [&](PageRequest r) {
        return latest ? api.find_latest_nanopubs_with_pattern(p, r) : api.find_nanopubs_with_pattern(p, r);
      };
      auto whole = fetch({1, kMaxPageSize}).items;
      for (std::size_t size : {1u, 2u, 3u, 10u}) {
        EXPECT_EQ(brute::all_pages(fetch, size), whole) << size;
      }
    }
  }
}

TEST(Queries, PatternMatchesLinearScan) {
  const auto& s = fixture().store;
  ApiService api(s);
  for (const auto& p : patterns()) {
    EXPECT_EQ(api.find_nanopubs_with_pattern(p, {1, kMaxPageSize}).items, brute::pattern(s, p, false));
    EXPECT_EQ(api.find_latest_nanopubs_with_pattern(p, {1, kMaxPageSize}).items,
              brute::pattern(s, p, true));
  }
  // Only d1 carries this literal; a language tag makes it a different term.
  EXPECT_EQ(api.find_nanopubs_with_pattern(patterns()[6]).total, 1u);
  EXPECT_EQ(api.find_nanopubs_with_pattern(patterns()[7]).total, 0u);
  EXPECT_EQ(api.find_nanopubs_with_pattern(patterns()[8]).total, 0u);
}

TEST(Queries, UriMatchesLinearScan) {
  const auto& s = fixture().store;
  ApiService api(s);
  std::vector<std::string> uris = {"http://orcid.org/0000-0002-1825-0097", std::string(vocab::kDctCreator),
                                   "http://example.org/source", "http://example.org/none",
                                   std::string(vocab::kNanopublication)};
  for (const auto& e : s.all()) uris.push_back(e->nanopub.uri);
  for (const auto& u : uris) {
    EXPECT_EQ(api.find_nanopubs_with_uri(u, {1, kMaxPageSize}).items, brute::uri(s, u, false)) << u;
    EXPECT_EQ(api.find_latest_nanopubs_with_uri(u, {1, kMaxPageSize}).items, brute::uri(s, u, true)) << u;
  }
  EXPECT_EQ(api.find_nanopubs_with_uri("not an iri").total, 0u);
}

TEST(Queries, LatestOrdersByCreationTime) {
  const auto& s = fixture().store;
  ApiService api(s);
  TriplePattern p{std::nullopt, iri("http://example.org/p"), std::nullopt};
  auto latest = api.find_latest_nanopubs_with_pattern(p).items;
  ASSERT_EQ(latest.size(), 4u);
  // d1 (06:30Z) and d3 (06:30Z) tie on the instant and fall back to the code.
  auto code_of = [&](int k) {
    for (const auto& e : s.all()) {
      for (const auto& q : e->nanopub.assertion.quads) {
        if (q.object.value() == "value 0d" + std::to_string(k)) return e->code.str();
      }
    }
    return std::string();
  };
  const std::string d1 = code_of(1), d3 = code_of(3);
  EXPECT_EQ(std::vector<std::string>({latest[0], latest[1]}),
            (std::vector<std::string>{std::min(d1, d3), std::max(d1, d3)}));
  EXPECT_EQ(latest[2], code_of(0));
  EXPECT_EQ(latest[3], code_of(2));
}

TEST(Indexes, ListingAndElements) {
  const auto& f = fixture();
  ApiService api(f.store);
  auto listing = api.get_all_indexes();
  std::vector<std::string> heads;
  for (const auto& row : listing.items) heads.push_back(row.uri);
  ASSERT_NE(std::find(heads.begin(), heads.end(), f.chain.back().uri), heads.end());
  for (const auto& row : listing.items) {
    if (row.uri != f.chain.back().uri) continue;
    EXPECT_EQ(row.title, "Six things");
    EXPECT_EQ(row.size, 6u);
    EXPECT_EQ(row.sub_count, 0u);
    EXPECT_EQ(row.date, "2017-01-01");
  }
  auto elements = api.get_index_elements(f.chain.back().uri);
  EXPECT_EQ(elements.items, testing_helpers::synthetic_elements("api", 6));
  EXPECT_EQ(brute::all_pages([&](PageRequest r) { return api.get_index_elements(f.chain.back().uri, r); }, 4),
            elements.items);
  EXPECT_EQ(err([&] { api.get_index_elements("http://example.org/none"); }), "not-found");
}

TEST(GetNanopub, ByUriOrCode) {
  const auto& s = fixture().store;
  ApiService api(s);
  auto entry = s.all().front();
  auto trig = api.get_nanopub(entry->nanopub.uri);
  EXPECT_EQ(assemble(rdf::parse_trig(trig), entry->nanopub.uri).to_document(),
            entry->nanopub.to_document());
  EXPECT_EQ(api.get_nanopub(entry->code.str()), trig);
  // Right code, wrong prefix.
  EXPECT_EQ(err([&] { api.get_nanopub("http://elsewhere.org/" + entry->code.str()); }), "not-found");
  EXPECT_EQ(err([&] { api.get_nanopub("http://example.org/plain"); }), "not-found");
  EXPECT_EQ(err([&] { api.get_nanopub("RA" + std::string(43, 'A')); }), "not-found");
}

TEST(Dispatch, StatusCodes) {
  const auto& s = fixture().store;
  ApiService api(s);
  auto r = dispatch(api, "find_nanopubs_with_pattern",
                    {{"pred", "http://example.org/p"}, {"page_size", "2"}, {"page", "2"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.total, 4u);
  EXPECT_EQ(std::count(r.body.begin(), r.body.end(), '\n'), 2);

  auto lit = dispatch(api, "find_nanopubs_with_pattern", {{"obj", "value 2d1"}, {"objtype", "literal"}});
  EXPECT_EQ(lit.status, 200);
  EXPECT_EQ(lit.total, 1u);
  auto tagged = dispatch(api, "find_nanopubs_with_pattern",
                         {{"obj", "value 2d1"}, {"objtype", "literal"}, {"objlang", "en"}});
  EXPECT_EQ(tagged.total, 0u);

  auto status = [&](std::string_view m, std::map<std::string, std::string> p) {
    return dispatch(api, m, p).status;
  };
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"bogus", "1"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"subj", "relative"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"page", "0"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"page", "x"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"page_size", "10001"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"objlang", "en"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_pattern", {{"objtype", "blank"}}), 400);
  EXPECT_EQ(status("find_nanopubs_with_uri", {}), 400);
  EXPECT_EQ(status("get_nanopub", {{"uri", "http://example.org/plain"}}), 404);
  EXPECT_EQ(status("get_index_elements", {{"index_uri", "http://example.org/none"}}), 404);
  EXPECT_EQ(status("no_such_method", {}), 404);

  auto e = dispatch(api, "no_such_method", {});
  EXPECT_EQ(e.body.rfind("ERROR 404 ", 0), 0u);

  auto np = dispatch(api, "get_nanopub", {{"uri", s.all().front()->nanopub.uri}});
  EXPECT_EQ(np.status, 200);
  EXPECT_EQ(np.content_type, "application/trig");

  auto idx = dispatch(api, "get_all_indexes", {});
  EXPECT_EQ(idx.status, 200);
  EXPECT_NE(idx.body.find("\tSix things\t2017-01-01\t0\t6\n"), std::string::npos);
  EXPECT_EQ(method_names().size(), 7u);
}

TEST(ApiServer, ServesOverHttp) {
  ApiService api(fixture().store);
  ApiServer server(api);
  const int port = server.start_background("127.0.0.1");
  ASSERT_GT(port, 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Get("/api/find_nanopubs_with_pattern?pred=http%3A%2F%2Fexample.org%2Fp");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(std::count(res->body.begin(), res->body.end(), '\n'), 4);
  auto missing = client.Get("/api/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  server.stop();
}
