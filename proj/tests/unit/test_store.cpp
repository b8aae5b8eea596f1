#include <gtest/gtest.h>

#include "helpers.hpp"
#include "nanopub/error.hpp"
#include "nanopub/index.hpp"
#include "nanopub/store.hpp"
#include "index_fixtures.hpp"

using namespace nanopub;
using namespace nanopub::store;
using rdf::Term;

namespace {

// Minted nanopub with an optional dct:created literal.
Nanopublication dated(const std::string& salt, const std::string& created,
                      const std::string& predicate = std::string(vocab::kDctCreated)) {
  auto d = testing_helpers::draft("http://example.org/np/", 2, salt);
  if (!created.empty()) {
    d.quads.emplace_back(Term::iri("http://example.org/np/"), Term::iri(predicate),
                         Term::literal(created, std::string(vocab::kXsdDateTime)),
                         Term::iri("http://example.org/np/#pubinfo"));
  }
  auto m = trusty::mint(d, "http://example.org/np/");
  return assemble(m.document, m.uri.str());
}

std::string err(auto f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nanopub-store-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST(Store, PutIsIdempotentAndVerifies) {
  Store s;
  auto np = dated("a", "");
  auto code = s.put(np);
  EXPECT_EQ(s.put(np), code);
  EXPECT_EQ(s.size(), 1u);
  EXPECT_TRUE(s.contains(code));
  EXPECT_EQ(s.get(code)->to_document(), np.to_document());

  auto unminted = assemble(testing_helpers::draft("http://example.org/np/", 1), "http://example.org/np/");
  EXPECT_EQ(err([&] { s.put(unminted); }), "not-trusty");

  auto forged = np;
  forged.assertion.quads[0] = rdf::Quad(forged.assertion.quads[0].subject, forged.assertion.quads[0].predicate,
                                        Term::literal("forged"), forged.assertion.quads[0].graph);
  EXPECT_EQ(err([&] { s.put(forged); }), "verification-failed");
  EXPECT_EQ(s.size(), 1u);
}

TEST(Store, JournalPagesInIngestOrder) {
  Store s;
  std::vector<trusty::ArtifactCode> codes;
  for (int i = 0; i < 7; ++i) codes.push_back(s.put(dated(std::to_string(i), "")));
  EXPECT_EQ(s.next_seq(), 7u);
  auto page = s.journal(2, 3);
  ASSERT_EQ(page.size(), 3u);
  EXPECT_EQ(page[0].seq, 2u);
  EXPECT_EQ(page[0].code, codes[2]);
  EXPECT_EQ(page[2].code, codes[4]);
  EXPECT_TRUE(s.journal(7, 10).empty());
}

TEST(Store, PatternAndUriQueries) {
  Store s;
  auto a = s.put(dated("a", "2016-01-01T00:00:00Z"));
  auto b = s.put(dated("b", "2018-01-01T00:00:00Z"));
  auto c = s.put(dated("c", ""));
  auto d = s.put(dated("d", "2017-01-01T00:00:00Z", std::string(vocab::kPavCreatedOn)));

  rdf::QuadPattern p;
  p.predicate = Term::iri("http://example.org/p");
  EXPECT_EQ(s.find_by_pattern(p, false), (std::vector<trusty::ArtifactCode>{a, b, c, d}));
  EXPECT_EQ(s.find_by_pattern(p, true), (std::vector<trusty::ArtifactCode>{b, d, a, c}));
  p.object = Term::literal("value 1b");
  EXPECT_EQ(s.find_by_pattern(p, false), (std::vector<trusty::ArtifactCode>{b}));

  EXPECT_EQ(s.find_by_uri("http://example.org/source", false).size(), 4u);
  EXPECT_EQ(s.find_by_uri("http://example.org/nothing", false).size(), 0u);
  EXPECT_EQ(s.find_by_uri(s.get(a)->uri, false), (std::vector<trusty::ArtifactCode>{a}));
  EXPECT_EQ(creation_time(*s.get(d)), parse_datetime("2017-01-01T00:00:00Z"));
  EXPECT_FALSE(creation_time(*s.get(c)));
}

TEST(Store, PersistsAndReloads) {
  TempDir dir;
  std::vector<trusty::ArtifactCode> codes;
  {
    Store s(dir.path);
    for (int i = 0; i < 4; ++i) codes.push_back(s.put(dated(std::to_string(i), "")));
  }
  EXPECT_TRUE(std::filesystem::exists(dir.path / "journal.log"));
  EXPECT_TRUE(std::filesystem::exists(dir.path / (codes[0].str() + ".trig")));
  Store again(dir.path);
  EXPECT_EQ(again.size(), 4u);
  EXPECT_EQ(again.journal(0, 10)[3].code, codes[3]);
  EXPECT_EQ(again.next_seq(), 4u);

  // A tampered file is detected on load.
  auto file = dir.path / (codes[1].str() + ".trig");
  auto text = testing_helpers::read_file(file);
  auto pos = text.find("value 0");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 7, "value 9");
  testing_helpers::write_file(file, text);
  EXPECT_EQ(err([&] { Store broken(dir.path); }), "corrupt-store");
}

TEST(Store, IndexesAreRecognised) {
  Store s;
  index::IndexMetadata m;
  m.capacity = 4;
  m.title = "tiny";
  auto chain = index::build_index(testing_helpers::synthetic_elements("e", 9), {}, m);
  for (const auto& r : chain) s.put(r.nanopub);
  s.put(dated("plain", ""));
  EXPECT_EQ(s.index_records().size(), 3u);
  const auto* head = s.find_index(chain.back().uri);
  ASSERT_NE(head, nullptr);
  EXPECT_EQ(index::expand(*head, s.index_resolver()).size(), 9u);
  EXPECT_EQ(s.find_index("http://example.org/none"), nullptr);
}
