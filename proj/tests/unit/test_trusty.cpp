#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "nanopub/error.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"

using namespace nanopub;
using namespace nanopub::trusty;
using testing_helpers::fixtures;
using testing_helpers::read_file;

namespace {

std::string encoded(std::string_view text) {
  auto d = sha256(text);
  return encode_digest(d);
}

}  // namespace

// Values from tests/oracles/trusty_oracle.py.
TEST(Encoding, MatchesOracle) {
  EXPECT_EQ(encoded(""), "OOwxEKY_BwUmvv0yJlvuSQnrkHkZJuTTKSVmRt4UrhV");
  EXPECT_EQ(encoded("abc"), "Lp4Fr-PAc_qQUFA3l2uIiOwA2Gjlhd6nLQQ_2HyABWt");
  EXPECT_EQ(encoded("nanopub"), "PBk1BggMRGXAVRLa4JYbSyJLGqhVlS4vNZfmay8Y0we");
  std::array<std::uint8_t, 32> ones;
  ones.fill(0xff);
  EXPECT_EQ(encode_digest(ones), "P__________________________________________");
  std::array<std::uint8_t, 32> zeros{};
  EXPECT_EQ(encode_digest(zeros), std::string(43, 'A'));
}

TEST(ArtifactCodes, WellFormedness) {
  const std::string good = "RA" + std::string(43, 'x');
  EXPECT_TRUE(ArtifactCode::is_well_formed(good));
  EXPECT_FALSE(ArtifactCode::is_well_formed("RB" + std::string(43, 'x')));
  EXPECT_FALSE(ArtifactCode::is_well_formed(good + "x"));
  EXPECT_FALSE(ArtifactCode::is_well_formed("RA" + std::string(42, 'x') + "="));
  auto uri = TrustyUri::parse("http://purl.org/np/" + good);
  ASSERT_TRUE(uri);
  EXPECT_EQ(uri->base, "http://purl.org/np/");
  EXPECT_FALSE(TrustyUri::parse("http://purl.org/np" + good));
  EXPECT_FALSE(TrustyUri::parse(good));
  EXPECT_EQ(extract_artifact_code("http://x.org/a#" + good)->str(), good);
  EXPECT_TRUE(is_valid_base("http://x.org/np."));
  EXPECT_FALSE(is_valid_base("http://x.org/np"));
}

TEST(Canonical, FixturesMatchOracleByteForByte) {
  for (const auto& row : testing_helpers::manifest()) {
    if (row.kind != "valid") continue;
    auto doc = rdf::parse_trig(read_file(fixtures() / "valid" / (row.name + ".trig")));
    auto code = ArtifactCode::parse(row.expect);
    EXPECT_EQ(canonical_form(doc, row.base, code),
              read_file(fixtures() / "canonical" / (row.name + ".nq")))
        << row.name;
  }
}

TEST(Mint, ReproducesFrozenCodes) {
  for (const auto& row : testing_helpers::manifest()) {
    if (row.kind != "valid") continue;
    auto draft = rdf::parse_trig(read_file(fixtures() / "unminted" / (row.name + ".trig")));
    auto m = mint(draft, row.base);
    EXPECT_EQ(m.uri.code.str(), row.expect) << row.name;
    EXPECT_EQ(m.uri.str(), row.uri);
    auto stored = rdf::parse_trig(read_file(fixtures() / "valid" / (row.name + ".trig")));
    EXPECT_EQ(m.document, stored) << row.name;
    EXPECT_TRUE(verify(stored, m.uri)) << row.name;
    EXPECT_EQ(strip_code(stored, m.uri), draft) << row.name;
  }
}

TEST(Mint, InvariantUnderQuadOrderAndPrefixes) {
  auto d = testing_helpers::draft("http://example.org/np/", 6);
  auto shuffled = d;
  std::mt19937 rng(7);
  std::shuffle(shuffled.quads.begin(), shuffled.quads.end(), rng);
  shuffled.add_prefix("ex", "http://example.org/");
  EXPECT_EQ(canonical_form(d, "http://example.org/np/"),
            canonical_form(shuffled, "http://example.org/np/"));
  EXPECT_EQ(mint(d, "http://example.org/np/").uri.code, mint(shuffled, "http://example.org/np/").uri.code);
}

TEST(Mint, CanonicalFormWithoutSelfReferencesIsSortedLines) {
  rdf::QuadDocument d;
  auto t = [](const char* v) { return rdf::Term::iri(v); };
  d.quads.emplace_back(t("http://b/s"), t("http://b/p"), rdf::Term::literal("1"), t("http://g/"));
  d.quads.emplace_back(t("http://a/s"), t("http://a/p"), t("http://a/o"), t("http://g/"));
  EXPECT_EQ(canonical_form(d, "http://unused.org/"),
            "<http://a/s> <http://a/p> <http://a/o> <http://g/> .\n"
            "<http://b/s> <http://b/p> \"1\" <http://g/> .\n");
}

TEST(Mint, RejectsBadBase) {
  auto d = testing_helpers::draft("http://example.org/np/", 1);
  try {
    mint(d, "http://example.org/np");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "invalid-base");
  }
}

TEST(Verify, DetectsTampering) {
  auto m = mint(testing_helpers::draft("http://example.org/np/", 3), "http://example.org/np/");
  EXPECT_TRUE(verify(m.document, m.uri));

  auto changed = m.document;
  changed.quads[5] = rdf::Quad(changed.quads[5].subject, changed.quads[5].predicate,
                               rdf::Term::literal("forged"), changed.quads[5].graph);
  auto v = verify(changed, m.uri);
  EXPECT_FALSE(v);
  EXPECT_NE(v.reason.find("does not match"), std::string::npos);

  auto unminted = m.document;
  unminted.quads.emplace_back(rdf::Term::iri("http://example.org/np/#new"), rdf::Term::iri("http://p/"),
                              rdf::Term::literal("x"), m.document.quads[5].graph);
  EXPECT_FALSE(verify(unminted, m.uri));

  // Lexical forms hash as written, with no datatype normalisation.
  auto a = testing_helpers::draft("http://example.org/np/", 1);
  auto b = a;
  b.quads[4] = rdf::Quad(b.quads[4].subject, b.quads[4].predicate, rdf::Term::literal("value 00"), b.quads[4].graph);
  EXPECT_NE(mint(a, "http://example.org/np/").uri.code, mint(b, "http://example.org/np/").uri.code);
}

TEST(Verify, MintIsIdempotentOnMintedDocuments) {
  auto m = mint(testing_helpers::draft("http://example.org/np/", 2), "http://example.org/np/");
  auto again = mint(m.document, "http://example.org/np/");
  EXPECT_EQ(again.document, m.document);
}

TEST(Verify, BatchAgreesWithSingle) {
  std::vector<rdf::QuadDocument> docs;
  std::vector<TrustyUri> uris;
  for (int i = 0; i < 40; ++i) {
    auto m = mint(testing_helpers::draft("http://example.org/np/", 1 + i % 5, std::to_string(i)),
                  "http://example.org/np/");
    if (i % 3 == 0) m.document.quads.pop_back();
    docs.push_back(m.document);
    uris.push_back(m.uri);
  }
  auto batch = verify_all(docs, uris);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(batch[i].ok, verify(docs[i], uris[i]).ok) << i;
    EXPECT_EQ(batch[i].ok, i % 3 != 0);
  }
}
