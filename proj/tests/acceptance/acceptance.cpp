// Acceptance run: one PASS/FAIL line per criterion, with its wall-clock
// time and limit. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../unit/brute.hpp"
#include "../unit/helpers.hpp"
#include "../unit/index_fixtures.hpp"
#include "nanopub/analysis.hpp"
#include "nanopub/api.hpp"
#include "nanopub/corpus.hpp"
#include "nanopub/error.hpp"
#include "nanopub/index.hpp"
#include "nanopub/model.hpp"
#include "nanopub/simulation.hpp"
#include "nanopub/store.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

using namespace nanopub;
namespace fs = std::filesystem;
using rdf::Quad;
using rdf::QuadDocument;
using rdf::Term;
using testing_helpers::fixtures;
using testing_helpers::read_file;

namespace {

// Runtime limits, in seconds.
constexpr double kLimit1 = 1.0;
constexpr double kLimit2 = 30.0;
constexpr double kLimit3 = 60.0;
constexpr double kLimit4 = 120.0;
constexpr double kLimit5 = 120.0;
constexpr double kLimit6 = 60.0;

// Fixed sizes and seeds.
constexpr std::size_t kTamperFixtures = 50;
constexpr std::uint64_t kTamperSeed = 2;
constexpr int kMintRuns = 3;
constexpr std::size_t kSmallCorpus = 2033;
constexpr std::size_t kLargeCorpus = 48674;
constexpr std::size_t kCombined = 50707;
constexpr std::size_t kDisgenetSizes[] = {940, 1019, 1415, 1470};
constexpr std::size_t kDisgenetRemovals[] = {0, 0, 20, 30};
constexpr std::size_t kSimNodes = 15;
constexpr std::size_t kSimPublishes = 1000;
constexpr std::size_t kSimFailures = 7;
constexpr int kSimRuns = 3;
constexpr std::size_t kCorpusSize = 10000;
constexpr std::size_t kQueries = 200;
constexpr std::uint64_t kQuerySeed = 5;

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> problems;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 10) problems.push_back(what);
    }
  }
};

bool run(int number, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.problems.push_back(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit;
  const bool pass = o.ok && in_time;
  std::printf("criterion %d: %s (%.2f s, limit %.0f s) %s\n", number, pass ? "PASS" : "FAIL", secs, limit,
              o.detail.c_str());
  if (!in_time) std::printf("  over the time limit\n");
  for (const auto& p : o.problems) std::printf("  %s\n", p.c_str());
  std::fflush(stdout);
  return pass;
}

std::string hex(const std::array<std::uint8_t, 32>& d) {
  std::string out;
  char buf[3];
  for (auto b : d) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    out += buf;
  }
  return out;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == ' ')) s.pop_back();
  return s;
}

// ---------------------------------------------------------------------------

void format_suite(Outcome& o) {
  std::size_t valid = 0, invalid = 0;
  std::set<std::string> rules;
  for (const auto& row : testing_helpers::manifest()) {
    if (row.kind == "valid") {
      ++valid;
      auto doc = rdf::parse_trig(read_file(fixtures() / "valid" / (row.name + ".trig")));
      auto report = validate(doc, row.uri);
      o.expect(report.valid(), row.name + ": expected valid");
      auto uri = trusty::TrustyUri::parse(row.uri);
      o.expect(uri && uri->code.str() == row.expect && trusty::verify(doc, *uri).ok,
               row.name + ": expected verified code " + row.expect);
    } else if (row.kind == "invalid") {
      ++invalid;
      rules.insert(row.expect);
      auto doc = rdf::parse_trig(read_file(fixtures() / "invalid" / (row.name + ".trig")));
      auto report = validate(doc, row.uri);
      o.expect(!report.valid() && report.has(row.expect), row.name + ": expected " + row.expect);
    }
  }
  o.expect(valid >= 20, "fewer than 20 valid fixtures");
  o.expect(invalid >= 15, "fewer than 15 invalid fixtures");
  for (auto rule : rules::kAll) o.expect(rules.count(std::string(rule)) == 1, "no mutant for " + std::string(rule));
  o.detail = std::to_string(valid) + " valid, " + std::to_string(invalid) + " invalid, " +
             std::to_string(rules.size()) + " rules";
}

// ---------------------------------------------------------------------------

Term changed(const Term& t) {
  if (t.is_literal()) return Term::literal(t.value() + "x", t.datatype(), t.language());
  return Term::iri(t.value() + "x");
}

void tamper_suite(Outcome& o) {
  std::vector<Nanopublication> nps;
  std::map<std::string, std::string> unminted_of;  // uri -> committed unminted file
  for (const auto& row : testing_helpers::manifest()) {
    if (row.kind != "valid") continue;
    auto doc = rdf::parse_trig(read_file(fixtures() / "valid" / (row.name + ".trig")));
    nps.push_back(assemble(doc, row.uri));
    unminted_of[row.uri] = row.name;
  }
  corpus::CorpusOptions gen;
  gen.count = kTamperFixtures - nps.size();
  gen.seed = kTamperSeed;
  for (auto& np : corpus::generate(gen)) nps.push_back(std::move(np));
  o.expect(nps.size() == kTamperFixtures, "fixture count " + std::to_string(nps.size()));

  std::size_t mutations = 0, survived = 0;
  for (const auto& np : nps) {
    const QuadDocument doc = np.to_document();
    const auto uri = *trusty::TrustyUri::parse(np.uri);
    o.expect(trusty::verify(doc, uri).ok, np.uri + ": does not verify untouched");

    auto check = [&](const QuadDocument& mutant, const std::string& what) {
      ++mutations;
      if (trusty::verify(mutant, uri).ok) {
        ++survived;
        o.expect(false, np.uri + ": survived " + what);
      }
    };
    for (std::size_t i = 0; i < doc.quads.size(); ++i) {
      for (int pos = 0; pos < 4; ++pos) {
        QuadDocument m = doc;
        Quad& t = m.quads[i];
        Term* slot[] = {&t.subject, &t.predicate, &t.object, &t.graph};
        *slot[pos] = changed(*slot[pos]);
        check(m, "term change at quad " + std::to_string(i) + " position " + std::to_string(pos));
      }
      QuadDocument del = doc;
      del.quads.erase(del.quads.begin() + static_cast<std::ptrdiff_t>(i));
      check(del, "deletion of quad " + std::to_string(i));
    }
    for (const auto* g : {&np.head, &np.assertion, &np.provenance, &np.pubinfo}) {
      QuadDocument add = doc;
      add.quads.emplace_back(Term::iri(np.uri), Term::iri("http://example.org/added"),
                             Term::literal("added"), Term::iri(g->iri));
      check(add, "addition to " + g->iri);
    }

    // Mint determinism from the unminted form.
    const QuadDocument stripped = trusty::strip_code(doc, uri);
    std::string first;
    for (int r = 0; r < kMintRuns; ++r) {
      auto m = trusty::mint(stripped, uri.base);
      const std::string text = rdf::serialize_trig(m.document);
      if (r == 0) first = text;
      o.expect(m.uri.str() == np.uri, np.uri + ": re-mint gives " + m.uri.str());
      o.expect(text == first, np.uri + ": mint run " + std::to_string(r) + " differs");
    }
    if (auto it = unminted_of.find(np.uri); it != unminted_of.end()) {
      auto committed = rdf::parse_trig(read_file(fixtures() / "unminted" / (it->second + ".trig")));
      o.expect(trusty::mint(committed, uri.base).uri.str() == np.uri,
               it->second + ": committed draft mints to a different code");
    }
  }
  o.detail = std::to_string(nps.size()) + " fixtures, " + std::to_string(mutations) + " mutations, " +
             std::to_string(survived) + " survived";
}

// ---------------------------------------------------------------------------

index::IndexMetadata meta(std::size_t capacity, const std::string& title, const std::string& created) {
  index::IndexMetadata m;
  m.capacity = capacity;
  m.title = title;
  m.created = created;
  m.creators = {"http://orcid.org/0000-0002-1825-0097"};
  return m;
}

bool verifies(const index::IndexRecord& r) {
  auto uri = trusty::TrustyUri::parse(r.uri);
  return uri && validate(r.nanopub.to_document(), r.uri).valid() &&
         trusty::verify(r.nanopub.to_document(), *uri).ok;
}

void index_suite(Outcome& o) {
  index::IndexCatalog catalog;
  auto small_elems = testing_helpers::synthetic_elements("openbel-small", kSmallCorpus);
  auto large_elems = testing_helpers::synthetic_elements("openbel-large", kLargeCorpus);
  auto small = index::build_index(small_elems, {}, meta(1000, "OpenBEL's Small Corpus 1.0", "2015-01-01T00:00:00Z"));
  auto large = index::build_index(large_elems, {}, meta(1000, "OpenBEL's Large Corpus 1.0", "2015-01-01T00:00:00Z"));
  std::vector<std::string> subs = {small.back().uri, large.back().uri};
  auto both = index::build_index({}, subs, meta(1000, "OpenBEL's Small and Large Corpus 1.0", "2015-01-02T00:00:00Z"));
  catalog.add(small);
  catalog.add(large);
  catalog.add(both);

  auto members = index::expand(both.back(), catalog.resolver());
  std::set<std::string> oracle(small_elems.begin(), small_elems.end());
  oracle.insert(large_elems.begin(), large_elems.end());
  o.expect(members.size() == kCombined, "expand(index 6) = " + std::to_string(members.size()));
  o.expect(oracle.size() == kCombined, "oracle union = " + std::to_string(oracle.size()));
  o.expect(std::set<std::string>(members.begin(), members.end()) == oracle, "expand(index 6) != union");
  for (const auto* chain : {&small, &large, &both}) {
    for (const auto& r : *chain) o.expect(verifies(r), r.uri + ": emitted record does not verify");
  }
  std::size_t listed = 0;
  for (const auto& row : index::list_indexes(catalog.records(), catalog.resolver())) {
    ++listed;
    if (row.uri == both.back().uri) {
      o.expect(row.size == kCombined && row.sub_count == 2, "listing row for index 6");
    }
  }
  o.expect(listed == 3, "listing has " + std::to_string(listed) + " rows");

  // DisGeNET v2.1 -> v3 -> v4 -> v5 at 1/1000 scale.
  std::mt19937_64 rng(7);
  std::set<std::string> truth;
  std::vector<index::IndexRecord> previous;
  std::size_t fresh = 0;
  std::string sizes;
  for (std::size_t v = 0; v < std::size(kDisgenetSizes); ++v) {
    std::vector<std::string> pool(truth.begin(), truth.end());
    std::shuffle(pool.begin(), pool.end(), rng);
    index::UriSet removed(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(kDisgenetRemovals[v]));
    for (const auto& r : removed) truth.erase(r);
    const std::size_t add = kDisgenetSizes[v] - truth.size();
    auto added = testing_helpers::synthetic_elements("disgenet", add, fresh);
    fresh += add;
    truth.insert(added.begin(), added.end());

    const auto m = meta(100, "DisGeNET v" + std::to_string(v + 2), "2017-05-09T00:00:00Z");
    std::vector<index::IndexRecord> chain =
        v == 0 ? index::build_index(added, {}, m)
               : index::build_incremental(previous.back(), added, removed, m, catalog.resolver());
    catalog.add(chain);
    for (const auto& r : chain) o.expect(verifies(r), r.uri + ": emitted record does not verify");
    auto got = index::expand(chain.back(), catalog.resolver());
    o.expect(std::set<std::string>(got.begin(), got.end()) == truth,
             "version " + std::to_string(v) + " differs from set algebra");
    o.expect(got.size() == kDisgenetSizes[v], "version " + std::to_string(v) + " size " + std::to_string(got.size()));
    sizes += (v ? " -> " : "") + std::to_string(got.size());
    previous = std::move(chain);
  }
  o.detail = "expand(index 6) = " + std::to_string(members.size()) + ", DisGeNET/1000 " + sizes;
}

// ---------------------------------------------------------------------------

// Runs `c` kSimRuns times and checks retrievability against live holders.
std::string simulate(const net::SimConfig& c, Outcome& o, const std::string& label) {
  std::string first;
  net::SimReport report;
  for (int r = 0; r < kSimRuns; ++r) {
    report = net::run_simulation(c, net::generate_workload(c));
    const std::string text = report.to_text();
    if (r == 0) first = text;
    o.expect(text == first, label + ": run " + std::to_string(r) + " is not byte-identical");
  }
  std::size_t down = 0, stranded = 0, retrievable = 0;
  for (const auto& n : report.node_reports) down += n.live_at_end ? 0 : 1;
  for (const auto& code : report.codes) {
    bool live_holder = false;
    for (std::size_t i = 0; i < code.holders.size(); ++i) {
      live_holder = live_holder || (code.holders[i] == '1' && report.node_reports[i].live_at_end);
    }
    stranded += !live_holder;
    retrievable += code.retrievable;
    o.expect(code.retrievable == live_holder, label + ": " + code.code + " retrievable=" +
                                                  std::to_string(code.retrievable) + " live holder=" +
                                                  std::to_string(live_holder));
  }
  o.expect(report.published == kSimPublishes, label + ": published " + std::to_string(report.published));
  o.expect(report.accepted + report.lost == kSimPublishes, label + ": accepted + lost != publishes");
  o.expect(report.codes.size() == report.accepted, label + ": code rows != accepted");
  return label + ": " + std::to_string(report.accepted) + " accepted, " + std::to_string(down) +
         " down at end, " + std::to_string(retrievable) + " retrievable, " + std::to_string(stranded) +
         " held only by down nodes";
}

void network_suite(Outcome& o) {
  net::SimConfig c;
  c.node_count = kSimNodes;
  c.topology = net::Topology::Complete;
  c.publishes = kSimPublishes;
  c.random_failures = kSimFailures;
  c.seed = 0;
  const std::string early = simulate(c, o, "early publishes");
  // Publishing through the whole run with slower sync leaves some codes
  // only on nodes that go down.
  c.publish_window_ms = c.duration_ms;
  c.sync_interval_ms = 5000;
  const std::string late = simulate(c, o, "late publishes");
  o.detail = early + "; " + late;
}

// ---------------------------------------------------------------------------

// Elements per index record as written in the assertions, plus append links.
struct BruteIndexes {
  std::map<std::string, std::vector<std::string>> elements;
  std::map<std::string, std::string> appends;

  explicit BruteIndexes(const store::Store& s) {
    for (const auto& e : s.all()) {
      const auto& np = e->nanopub;
      bool is_index = false;
      for (const auto& q : np.assertion.quads) {
        if (q.subject.value() != np.uri) continue;
        if (q.predicate.value() == vocab::kIncludesElement) {
          elements[np.uri].push_back(q.object.value());
          is_index = true;
        } else if (q.predicate.value() == vocab::kAppendsIndex) {
          appends[np.uri] = q.object.value();
        } else if (q.predicate.value() == vocab::kIncludesSubindex ||
                   (q.predicate.value() == vocab::kRdfType && q.object.value() == vocab::kNanopubIndex)) {
          is_index = true;
        }
      }
      if (is_index) elements[np.uri];
    }
  }

  std::vector<std::string> direct(const std::string& uri) const {
    std::vector<std::string> out;
    for (std::string at = uri;;) {
      auto it = elements.find(at);
      if (it != elements.end()) out.insert(out.end(), it->second.begin(), it->second.end());
      auto next = appends.find(at);
      if (next == appends.end()) break;
      at = next->second;
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

void api_suite(Outcome& o) {
  corpus::CorpusOptions gen;
  gen.count = kCorpusSize;
  gen.seed = 0;
  auto corpus = corpus::generate(gen);

  store::Store s;
  for (const auto& np : corpus) s.put(np);
  // An append chain, a sub-index and an index over both.
  std::vector<std::string> uris;
  for (const auto& np : corpus) uris.push_back(np.uri);
  auto chain = index::build_index(std::span(uris).subspan(0, 2500), {},
                                  meta(1000, "Chained", "2018-01-01T00:00:00Z"));
  auto sub = index::build_index(std::span(uris).subspan(2500, 700), {},
                                meta(1000, "Sub", "2018-01-02T00:00:00Z"));
  std::vector<std::string> subs = {sub.back().uri, chain.back().uri};
  auto top = index::build_index(std::span(uris).subspan(3200, 300), subs,
                                meta(1000, "Top", "2018-01-03T00:00:00Z"));
  for (const auto* c : {&chain, &sub, &top}) {
    for (const auto& r : *c) s.put(r.nanopub);
  }

  api::ApiService service(s);
  const auto entries = s.all();
  const BruteIndexes brute_indexes(s);
  std::vector<std::string> index_uris;
  for (const auto& [uri, elems] : brute_indexes.elements) index_uris.push_back(uri);
  o.expect(s.index_records().size() == index_uris.size(), "index record count differs from brute scan");

  std::mt19937_64 rng(kQuerySeed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto random_quad = [&]() -> const Quad& {
    const auto& np = entries[pick(entries.size())]->nanopub;
    const NamedGraph* graphs[] = {&np.head, &np.assertion, &np.provenance, &np.pubinfo};
    const NamedGraph* g = graphs[pick(4)];
    return g->quads[pick(g->quads.size())];
  };

  std::size_t pages_checked = 0, hits = 0;
  std::size_t per_method[5] = {};
  // Every page of a random size concatenates to the unpaged result; the page after the last is empty.
  auto partition = [&](auto fetch, const std::vector<std::string>& whole, const std::string& label) {
    const std::size_t total = whole.size();
    const std::size_t lo = std::max<std::size_t>(1, total / 50);
    const std::size_t size = std::min(api::kMaxPageSize, lo + pick(total + 2));
    std::vector<std::string> joined;
    std::size_t page = 1;
    for (;; ++page) {
      auto p = fetch(api::PageRequest{page, size});
      ++pages_checked;
      o.expect(p.total == total, label + ": page total differs");
      if (p.items.empty()) break;
      joined.insert(joined.end(), p.items.begin(), p.items.end());
    }
    o.expect(page == (total + size - 1) / size + 1, label + ": wrong number of pages");
    o.expect(joined == whole, label + ": pages do not partition the result");
  };

  for (std::size_t k = 0; k < kQueries; ++k) {
    const std::size_t method = k % 5;
    ++per_method[method];
    const std::string label = "query " + std::to_string(k);
    const api::PageRequest all{1, api::kMaxPageSize};
    if (method <= 1) {
      const Quad& q = random_quad();
      api::TriplePattern p;
      const unsigned mask = static_cast<unsigned>(pick(8));
      if (mask & 1) p.subject = q.subject;
      if (mask & 2) p.predicate = q.predicate;
      if (mask & 4) p.object = q.object;
      const bool latest = method == 1;
      auto fetch = [&](api::PageRequest r) {
        return latest ? service.find_latest_nanopubs_with_pattern(p, r) : service.find_nanopubs_with_pattern(p, r);
      };
      const auto expect = brute::pattern(s, p, latest);
      // Results beyond one maximal page are compared through the partition.
      std::vector<std::string> joined;
      for (std::size_t page = 1; joined.size() < expect.size(); ++page) {
        auto got = fetch({page, api::kMaxPageSize}).items;
        if (got.empty()) break;
        joined.insert(joined.end(), got.begin(), got.end());
      }
      o.expect(joined == expect, label + ": pattern result differs from brute force");
      hits += expect.size();
      partition(fetch, expect, label);
    } else if (method <= 3) {
      std::string uri;
      if (pick(10) == 0) {
        uri = "http://example.org/absent/" + std::to_string(k);
      } else {
        const Quad& q = random_quad();
        std::vector<const Term*> iris = {&q.subject, &q.predicate, &q.graph};
        if (q.object.is_iri()) iris.push_back(&q.object);
        uri = iris[pick(iris.size())]->value();
      }
      const bool latest = method == 3;
      auto fetch = [&](api::PageRequest r) {
        return latest ? service.find_latest_nanopubs_with_uri(uri, r) : service.find_nanopubs_with_uri(uri, r);
      };
      const auto expect = brute::uri(s, uri, latest);
      std::vector<std::string> joined;
      for (std::size_t page = 1; joined.size() < expect.size(); ++page) {
        auto got = fetch({page, api::kMaxPageSize}).items;
        if (got.empty()) break;
        joined.insert(joined.end(), got.begin(), got.end());
      }
      o.expect(joined == expect, label + ": uri result differs from brute force for " + uri);
      hits += expect.size();
      partition(fetch, expect, label);
    } else {
      const std::string& uri = index_uris[pick(index_uris.size())];
      auto fetch = [&](api::PageRequest r) { return service.get_index_elements(uri, r); };
      auto got = fetch(all).items;
      auto sorted = got;
      std::sort(sorted.begin(), sorted.end());
      o.expect(sorted == brute_indexes.direct(uri), label + ": index elements differ for " + uri);
      hits += got.size();
      partition(fetch, got, label);
    }
  }
  o.detail = std::to_string(kQueries) + " queries (" + std::to_string(per_method[0]) + " pattern, " +
             std::to_string(per_method[1]) + " latest pattern, " + std::to_string(per_method[2]) + " uri, " +
             std::to_string(per_method[3]) + " latest uri, " + std::to_string(per_method[4]) +
             " index elements), " + std::to_string(hits) + " hits, " + std::to_string(pages_checked) +
             " pages";
}

// ---------------------------------------------------------------------------

void analysis_suite(Outcome& o) {
  const fs::path frozen = fixtures() / "analysis-10k";
  const fs::path dir = fs::temp_directory_path() / "nanopub-acceptance-analysis";
  fs::remove_all(dir);
  fs::create_directories(dir);

  corpus::CorpusOptions gen;
  gen.count = kCorpusSize;
  gen.seed = 0;
  auto corpus = corpus::generate(gen);
  corpus::write_corpus(dir / "corpus.trig", corpus);
  const std::string digest = hex(trusty::sha256(read_file(dir / "corpus.trig")));
  o.expect(digest == trim(read_file(frozen / "corpus.sha256")), "corpus sha256 " + digest);

  std::size_t invalid = 0;
  auto streamed = analysis::analyze_path(dir / "corpus.trig", {}, &invalid);
  o.expect(invalid == 0, std::to_string(invalid) + " invalid nanopublications in the corpus");
  const std::pair<const char*, std::string (*)(const analysis::AnalysisReport&)> reports[] = {
      {"totals.tsv", analysis::totals_tsv},       {"creators.tsv", analysis::creators_tsv},
      {"licenses.tsv", analysis::licenses_tsv},   {"namespaces.tsv", analysis::namespaces_tsv},
      {"types.tsv", analysis::types_tsv}};
  for (const auto& [name, render] : reports) {
    o.expect(render(streamed) == read_file(frozen / name), std::string(name) + " differs from the oracle");
  }
  auto serial = analysis::analyze_serial(corpus);
  auto parallel = analysis::analyze_parallel(corpus);
  for (const auto& [name, render] : reports) {
    o.expect(render(serial) == render(parallel), std::string(name) + ": serial != parallel");
    o.expect(render(serial) == render(streamed), std::string(name) + ": in-memory != streamed");
  }
  fs::remove_all(dir);
  o.detail = std::to_string(streamed.totals.nanopubs) + " nanopubs, " + std::to_string(streamed.totals.total()) +
             " triples, 5 reports equal the oracle";
}

// ---------------------------------------------------------------------------

// Exact full-dataset counts, checked only when a dump is supplied.
void dump_check(const fs::path& dump, Outcome& o) {
  auto r = analysis::analyze_path(dump);
  auto eq = [&](std::uint64_t got, std::uint64_t want, const std::string& what) {
    o.expect(got == want, what + ": " + std::to_string(got) + " != " + std::to_string(want));
  };
  eq(r.totals.nanopubs, 10803231, "nanopublications");
  eq(r.totals.total(), 378654287, "triples");
  eq(r.totals.triples[1], 61184484, "assertion triples");
  eq(r.totals.triples[2], 122229003, "provenance triples");
  eq(r.totals.triples[3], 136738995, "pubinfo triples");
  eq(r.creators.total, 47579235, "creator mentions");
  eq(r.creators.unique, 41, "unique creators");
  eq(r.creators.rows[0].total, 40964679, "ORCID mentions");
  eq(r.totals.type_assignments, 50384007, "type assignments");
  eq(r.totals.unique_types, 14941, "unique types");
  std::map<std::string, std::uint64_t> lic(r.licenses.licenses.begin(), r.licenses.licenses.end());
  eq(lic["http://creativecommons.org/licenses/by/3.0/"], 5539268, "CC BY 3.0");
  eq(lic["http://opendatacommons.org/licenses/odbl/1.0/"], 4843212, "ODbL 1.0");
  eq(lic["http://creativecommons.org/publicdomain/zero/1.0/"], 6240, "CC0 1.0");
  eq(r.licenses.unspecified, 14801, "unspecified license");
  o.detail = "full dump " + dump.string();
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, kLimit1, format_suite);
  ok &= run(2, kLimit2, tamper_suite);
  ok &= run(3, kLimit3, index_suite);
  ok &= run(4, kLimit4, network_suite);
  ok &= run(5, kLimit5, api_suite);
  ok &= run(6, kLimit6, analysis_suite);

  const char* dump = std::getenv("NANOPUB_DUMP");
  if (dump && *dump) {
    ok &= run(7, 24 * 3600.0, [&](Outcome& o) { dump_check(dump, o); });
  } else {
    std::printf("criterion 7: SKIP full dataset dump not present (set NANOPUB_DUMP to a dump to check "
                "the published totals); acceptance rests on criteria 1-6\n");
  }
  std::printf("%s\n", ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return ok ? 0 : 1;
}
