#include <algorithm>
#include <fstream>
#include <random>

#include "nanopub/corpus.hpp"
#include "nanopub/error.hpp"
#include "nanopub/timestamp.hpp"
#include "nanopub/trig.hpp"
#include "nanopub/trusty.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::corpus {

namespace fs = std::filesystem;
using rdf::Quad;
using rdf::QuadDocument;
using rdf::Term;

namespace {

enum class CreatorKind { Orcid, Literal, Tool };

struct Profile {
  const char* name;
  unsigned weight;
  const char* subject_ns;
  std::vector<const char*> types;
  std::vector<const char*> predicates;
  std::vector<const char*> object_ns;
  const char* evidence_ns;
  const char* license;  // nullptr: the dataset declares none
  CreatorKind creator;
};

// Dataset shapes loosely after the published collections: namespaces and
// licenses match, sizes are scaled down.
const std::vector<Profile>& profiles() {
  static const std::vector<Profile> p = {
      {"disgenet", 30, "http://rdf.disgenet.org/resource/gda/DGN",
       {"http://semanticscience.org/resource/SIO_001121",
        "http://semanticscience.org/resource/SIO_001122",
        "http://semanticscience.org/resource/SIO_001119"},
       {"http://semanticscience.org/resource/SIO_000628",
        "http://semanticscience.org/resource/SIO_000216"},
       {"http://identifiers.org/ncbigene/", "http://linkedlifedata.com/resource/umls/id/C"},
       "http://rdf.disgenet.org/v5.0.0/void/",
       "http://opendatacommons.org/licenses/odbl/1.0/", CreatorKind::Orcid},
      {"wikipathways", 18, "http://identifiers.org/wikipathways/WP",
       {"http://vocabularies.wikipathways.org/wp#GeneProduct",
        "http://vocabularies.wikipathways.org/wp#Metabolite",
        "http://vocabularies.wikipathways.org/wp#Protein",
        "http://vocabularies.wikipathways.org/wp#Interaction"},
       {"http://purl.org/dc/terms/isPartOf", "http://vocabularies.wikipathways.org/wp#participants"},
       {"http://identifiers.org/ncbigene/", "http://identifiers.org/chebi/CHEBI:"},
       "http://identifiers.org/pubmed/",
       "http://creativecommons.org/licenses/by/3.0/", CreatorKind::Orcid},
      {"nextprot", 16, "http://www.nextprot.org/db/search#NX_",
       {"http://purl.obolibrary.org/obo/eco.owl#ECO_0000218",
        "http://www.nextprot.org/nanopubs#TissueExpression",
        "http://www.nextprot.org/nanopubs#PTM"},
       {"http://purl.obolibrary.org/obo/RO_0002206", "http://www.nextprot.org/nanopubs#quality"},
       {"http://www.nextprot.org/db/term/TS-", "http://www.nextprot.org/help/quality_criteria/"},
       "http://www.nextprot.org/nanopubs#evidence",
       "http://creativecommons.org/licenses/by/3.0/", CreatorKind::Literal},
      {"openbel", 10, "http://www.tkuhn.ch/bel2nanopub/",
       {"http://purl.obolibrary.org/obo/eco.owl#ECO_0000218",
        "http://www.w3.org/2002/07/owl#Thing"},
       {"http://purl.org/obo/owl/OBO_REL#has_participant",
        "http://purl.obolibrary.org/obo/RO_0002211"},
       {"http://purl.obolibrary.org/obo/", "http://identifiers.org/ncbigene/"},
       "http://identifiers.org/pubmed/",
       "http://creativecommons.org/licenses/by-nc-sa/3.0/", CreatorKind::Orcid},
      {"hpa", 10, "http://www.proteinatlas.org/search/ENSG",
       {"http://ontology.neuinfo.org/NIF/Backend/NIF-Quality.owl#nlx_qual_1010003",
        "http://purl.obolibrary.org/obo/eco.owl#ECO_0000218"},
       {"http://purl.obolibrary.org/obo/RO_0002206", "http://www.proteinatlas.org/about/nanopubs/level"},
       {"http://purl.obolibrary.org/obo/caloha.obo#TS-"},
       "http://www.proteinatlas.org/about/nanopubs/",
       "http://creativecommons.org/licenses/by/3.0/", CreatorKind::Literal},
      {"drugbank", 8, "http://bio2rdf.org/drugbank:DB",
       {"http://bio2rdf.org/drugbank_vocabulary:Drug-Drug-Interaction",
        "http://bio2rdf.org/drugbank_vocabulary:Drug-Target-Interaction",
        "http://bio2rdf.org/drugbank_vocabulary:Food-Interaction"},
       {"http://bio2rdf.org/drugbank_vocabulary:target", "http://www.w3.org/2000/01/rdf-schema#label"},
       {"http://bio2rdf.org/drugbank:BE"},
       "http://bio2rdf.org/drugbank_resource:",
       "http://creativecommons.org/licenses/by-nc/4.0/", CreatorKind::Orcid},
      {"globi", 6, "https://www.inaturalist.org/observations/",
       {"http://purl.obolibrary.org/obo/GO_0044419", "http://purl.obolibrary.org/obo/OBI_0000070"},
       {"http://purl.obolibrary.org/obo/RO_0000057", "http://purl.obolibrary.org/obo/RO_0002470"},
       {"https://www.inaturalist.org/taxa/", "http://purl.obolibrary.org/obo/ENVO_0"},
       "https://doi.org/10.1016/",
       "http://creativecommons.org/licenses/by/4.0/", CreatorKind::Tool},
      {"liddi", 2, "http://liddi.stanford.edu/LIDDI_resource:",
       {"http://liddi.stanford.edu/LIDDI#DDI", "http://semanticscience.org/resource/SIO_000897"},
       {"http://liddi.stanford.edu/LIDDI#hasDrug", "http://liddi.stanford.edu/LIDDI#hasAdverseEvent"},
       {"http://bio2rdf.org/drugbank:DB", "http://linkedlifedata.com/resource/umls/id/C"},
       "http://liddi.stanford.edu/LIDDI#source",
       "http://creativecommons.org/publicdomain/zero/1.0/", CreatorKind::Orcid},
  };
  return p;
}

const std::vector<const char*> kOrcids = {
    "http://orcid.org/0000-0003-0169-8159", "http://orcid.org/0000-0002-1267-0234",
    "http://orcid.org/0000-0001-6818-334X", "http://orcid.org/0000-0003-1219-2137",
    "http://orcid.org/0000-0002-7198-6294", "https://orcid.org/0000-0001-8888-635X",
};
const std::vector<const char*> kLiterals = {"CALIPHO project", "Human Protein Atlas team",
                                            "DisGeNET curators"};
const char* const kTool = "https://doi.org/10.5281/zenodo.1212599";
const std::vector<const char*> kScholars = {
    "https://scholar.google.it/citations?user=9aI21r8AAAAJ&hl=en",
    "https://scholar.google.com/citations?user=Kq3tN0AAAAJ"};
const std::vector<const char*> kResearcherIds = {"http://www.researcherid.com/rid/B-6035-2012",
                                                 "http://www.researcherid.com/rid/A-1234-2010"};
const std::vector<const char*> kOtherCreators = {"http://sorry.vse.cz/~xhudj19",
                                                 "http://example.org/people/curator"};
const std::vector<std::string_view> kCreatorPredicates = {
    vocab::kDctCreator, vocab::kPavCreatedBy, vocab::kPavAuthoredBy, vocab::kProvWasAttributedTo,
    vocab::kDceCreator};

class Draft {
 public:
  Draft(std::mt19937_64& rng, const std::string& base)
      : self_(iri(base)),
        head_(iri(base + sep(base) + "Head")),
        assertion_(iri(base + sep(base) + "assertion")),
        provenance_(iri(base + sep(base) + "provenance")),
        pubinfo_(iri(base + sep(base) + "pubinfo")),
        local_(base + sep(base)),
        rng_(rng) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }
  bool per_mille(unsigned rate) { return below(1000) < rate; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }
  // Skewed towards the front of `v`.
  template <class T>
  const T& pick_skewed(const std::vector<T>& v) {
    return v[std::min(below(v.size()), below(v.size()))];
  }

  static Term iri(std::string_view v) { return Term::iri(std::string(v)); }

  void add(const Term& g, Term s, std::string_view p, Term o) {
    doc.quads.emplace_back(std::move(s), iri(p), std::move(o), g);
  }

  QuadDocument doc;
  const Term self_, head_, assertion_, provenance_, pubinfo_;
  const std::string local_;

 private:
  static std::string sep(const std::string& base) { return base.back() == '#' ? "_" : "#"; }
  std::mt19937_64& rng_;
};

Term creator_term(Draft& d, const Profile& p, const CorpusOptions& o) {
  if (d.per_mille(o.scholar_creator_rate)) return Draft::iri(d.pick(kScholars));
  if (d.per_mille(o.researcherid_creator_rate)) return Draft::iri(d.pick(kResearcherIds));
  if (d.per_mille(o.other_creator_rate)) return Draft::iri(d.pick(kOtherCreators));
  switch (p.creator) {
    case CreatorKind::Literal:
      return Term::literal(d.pick(kLiterals));
    case CreatorKind::Tool:
      return Draft::iri(kTool);
    case CreatorKind::Orcid:
      break;
  }
  return Draft::iri(d.pick_skewed(kOrcids));
}

QuadDocument draft(std::mt19937_64& rng, const CorpusOptions& o, std::size_t serial) {
  unsigned total = 0;
  for (const auto& p : profiles()) total += p.weight;
  unsigned roll = static_cast<unsigned>(rng() % total);
  const Profile* profile = &profiles().front();
  for (const auto& p : profiles()) {
    if (roll < p.weight) {
      profile = &p;
      break;
    }
    roll -= p.weight;
  }
  const Profile& p = *profile;

  Draft d(rng, o.base);
  d.doc.add_prefix("np", std::string(vocab::kNp));
  d.doc.add_prefix("rdf", std::string(vocab::kRdf));
  d.doc.add_prefix("prov", std::string(vocab::kProv));
  d.doc.add_prefix("dct", std::string(vocab::kDct));
  d.doc.add_prefix("pav", std::string(vocab::kPav));

  d.add(d.head_, d.self_, vocab::kRdfType, Draft::iri(vocab::kNanopublication));
  d.add(d.head_, d.self_, vocab::kHasAssertion, d.assertion_);
  d.add(d.head_, d.self_, vocab::kHasProvenance, d.provenance_);
  d.add(d.head_, d.self_, vocab::kHasPublicationInfo, d.pubinfo_);

  // Assertion: one typed subject with a few links out, sometimes a second
  // local resource.
  const std::string id = std::to_string(100000 + serial);
  const Term subject = Draft::iri(std::string(p.subject_ns) + id);
  d.add(d.assertion_, subject, vocab::kRdfType, Draft::iri(d.pick_skewed(p.types)));
  if (d.per_mille(300)) d.add(d.assertion_, subject, vocab::kRdfType, Draft::iri(d.pick(p.types)));
  const std::size_t links = 1 + d.below(4);
  for (std::size_t i = 0; i < links; ++i) {
    std::string object = std::string(d.pick(p.object_ns)) + std::to_string(d.below(500));
    d.add(d.assertion_, subject, d.pick(p.predicates), Draft::iri(object));
  }
  if (d.per_mille(250)) {
    const Term local = Draft::iri(d.local_ + "context");
    d.add(d.assertion_, subject, "http://semanticscience.org/resource/SIO_000253", local);
    d.add(d.assertion_, local, vocab::kRdfType, Draft::iri(d.pick(p.types)));
    d.add(d.assertion_, local, "http://www.w3.org/2000/01/rdf-schema#label",
          Term::literal("context of " + id, {}, "en"));
  }

  // Provenance.
  const Term evidence = Draft::iri(std::string(p.evidence_ns) + std::to_string(d.below(2000)));
  d.add(d.provenance_, d.assertion_, vocab::kProvWasDerivedFrom, evidence);
  const std::size_t extra = d.below(8);
  for (std::size_t i = 0; i < extra; ++i) {
    switch (d.below(4)) {
      case 0:
        d.add(d.provenance_, evidence, "http://purl.org/ontology/wi/core#evidence",
              Term::literal(std::to_string(d.below(100)), std::string(vocab::kXsdInteger)));
        break;
      case 1:
        d.add(d.provenance_, d.assertion_, "http://www.w3.org/ns/prov#wasGeneratedBy",
              Draft::iri(std::string(p.evidence_ns) + "activity" + std::to_string(i)));
        break;
      case 2:
        // Creator-like statement outside pubinfo.
        d.add(d.provenance_, d.assertion_, vocab::kProvWasAttributedTo, Draft::iri(d.pick(kOrcids)));
        break;
      default:
        d.add(d.provenance_, evidence, vocab::kRdfType, Draft::iri(vocab::kProvEntity));
        break;
    }
  }

  // Publication info: creators, date, license.
  const std::size_t creators = 1 + d.below(3);
  for (std::size_t i = 0; i < creators; ++i) {
    const std::string_view predicate = d.pick(kCreatorPredicates);
    d.add(d.pubinfo_, d.self_, predicate, creator_term(d, p, o));
  }
  if (d.per_mille(100)) {
    // Attribution of a related resource, still in pubinfo.
    d.add(d.pubinfo_, Draft::iri(std::string("https://github.com/") + p.name + "/releases"),
          vocab::kProvWasAttributedTo, Draft::iri(d.pick(kOrcids)));
  }
  if (!d.per_mille(o.undated_rate)) {
    // 2015-01-01 to 2018-12-31.
    const std::int64_t start = 1420070400;
    const std::int64_t secs = start + static_cast<std::int64_t>(d.below(4 * 365 * 86400));
    Term when = Term::literal(format_datetime(Timestamp{secs * 1'000'000}),
                              std::string(vocab::kXsdDateTime));
    d.add(d.pubinfo_, d.self_, d.per_mille(o.pav_date_rate) ? vocab::kPavCreatedOn : vocab::kDctCreated,
          std::move(when));
  }
  if (p.license && !d.per_mille(o.unlicensed_rate)) {
    d.add(d.pubinfo_, d.self_, vocab::kDctLicense, Draft::iri(p.license));
    if (d.per_mille(o.second_license_rate)) {
      d.add(d.pubinfo_, d.self_, vocab::kDctRights,
            Draft::iri("http://creativecommons.org/licenses/by/4.0/"));
    }
  }
  if (d.per_mille(20)) {
    d.add(d.pubinfo_, d.self_, vocab::kDctRights, Term::literal("All rights reserved"));
  }
  return std::move(d.doc);
}

}  // namespace

std::vector<Nanopublication> generate(const CorpusOptions& options) {
  if (!trusty::is_valid_base(options.base)) {
    throw Error("invalid-base", "corpus base must end in '/', '#' or '.'");
  }
  std::mt19937_64 rng(options.seed);
  std::vector<Nanopublication> out;
  out.reserve(options.count);
  for (std::size_t i = 0; i < options.count; ++i) {
    auto minted = trusty::mint(draft(rng, options, i), options.base);
    out.push_back(assemble(minted.document, minted.uri.str()));
  }
  return out;
}

void write_corpus(const fs::path& file, std::span<const Nanopublication> nps) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("io", "cannot write " + file.string());
  QuadDocument prefixes;
  prefixes.add_prefix("np", std::string(vocab::kNp));
  out << rdf::serialize_trig(prefixes);
  for (const auto& np : nps) {
    QuadDocument doc = np.to_document();
    out << '\n' << rdf::serialize_trig(doc);
  }
  if (!out) throw Error("io", "failed writing " + file.string());
}

std::size_t for_each_nanopub(const fs::path& path,
                             const std::function<void(Nanopublication&&)>& visit) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".trig") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    if (!fs::exists(path)) throw Error("io", "no such corpus: " + path.string());
    files.push_back(path);
  }
  NanopubSplitter splitter;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + file.string());
    rdf::TrigStreamReader reader(in);
    while (auto block = reader.next()) {
      for (auto& np : splitter.add_graph(block->graph.value(), std::move(block->quads))) {
        visit(std::move(np));
      }
    }
  }
  return splitter.invalid_count();
}

std::vector<Nanopublication> read_corpus(const fs::path& path) {
  std::vector<Nanopublication> out;
  for_each_nanopub(path, [&](Nanopublication&& np) { out.push_back(std::move(np)); });
  return out;
}

}  // namespace nanopub::corpus
