#include <algorithm>
#include <set>

#include "nanopub/analysis.hpp"
#include "nanopub/error.hpp"
#include "nanopub/vocab.hpp"

namespace nanopub::analysis {

namespace {

constexpr std::string_view kCreatorPredicates[] = {vocab::kDctCreator, vocab::kDceCreator,
                                                   vocab::kPavCreatedBy, vocab::kPavAuthoredBy,
                                                   vocab::kProvWasAttributedTo};

bool is_creator_predicate(std::string_view p) {
  return std::find(std::begin(kCreatorPredicates), std::end(kCreatorPredicates), p) !=
         std::end(kCreatorPredicates);
}

std::size_t cell(Part part, Position pos) {
  return static_cast<std::size_t>(part) * 3 + static_cast<std::size_t>(pos);
}

std::string_view host_of(std::string_view iri) {
  auto scheme_end = iri.find("://");
  if (scheme_end == std::string_view::npos) return {};
  iri.remove_prefix(scheme_end + 3);
  auto end = iri.find_first_of("/?#:");
  return iri.substr(0, end);
}

bool starts_with_either(std::string_view iri, std::string_view rest) {
  return (iri.starts_with("http://") && iri.substr(7).starts_with(rest)) ||
         (iri.starts_with("https://") && iri.substr(8).starts_with(rest));
}

template <class Map>
void add_counts(Map& into, const Map& from) {
  for (const auto& [k, v] : from) into[k] += v;
}

// Sorted by count descending, then key.
std::vector<std::pair<std::string, std::uint64_t>> ranked(
    const std::unordered_map<std::string, std::uint64_t>& counts) {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(), counts.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return out;
}

}  // namespace

std::string_view part_name(Part p) {
  switch (p) {
    case Part::Head: return "head";
    case Part::Assertion: return "assertion";
    case Part::Provenance: return "provenance";
    case Part::Pubinfo: return "pubinfo";
  }
  return "?";
}

std::string_view position_name(Position p) {
  switch (p) {
    case Position::Subject: return "subject";
    case Position::Predicate: return "predicate";
    case Position::Object: return "object";
  }
  return "?";
}

std::string_view creator_type_name(CreatorType t) {
  switch (t) {
    case CreatorType::Orcid: return "ORCID";
    case CreatorType::Literal: return "Literal string";
    case CreatorType::Tool: return "Tool URI";
    case CreatorType::GoogleScholar: return "Google Scholar URI";
    case CreatorType::ResearcherId: return "ResearcherID";
    case CreatorType::OtherUri: return "Other URI";
  }
  return "?";
}

std::string namespace_of(std::string_view iri) {
  auto cut = iri.rfind('#');
  if (cut == std::string_view::npos) cut = iri.rfind('/');
  if (cut == std::string_view::npos) return std::string(iri);
  return std::string(iri.substr(0, cut + 1));
}

CreatorType classify_creator(const rdf::Term& object, std::span<const std::string> tool_uris) {
  if (object.is_literal()) return CreatorType::Literal;
  const std::string& iri = object.value();
  if (std::find(tool_uris.begin(), tool_uris.end(), iri) != tool_uris.end()) return CreatorType::Tool;
  if (starts_with_either(iri, "orcid.org/")) return CreatorType::Orcid;
  if (starts_with_either(iri, "www.researcherid.com/rid/")) return CreatorType::ResearcherId;
  if (host_of(iri).starts_with("scholar.google.")) return CreatorType::GoogleScholar;
  return CreatorType::OtherUri;
}

std::string identifier(const rdf::Term& term) {
  return term.is_iri() ? term.value() : rdf::to_ntriples(term);
}

std::optional<double> CorpusTotals::mean_triples() const {
  if (nanopubs == 0) return std::nullopt;
  return static_cast<double>(total()) / static_cast<double>(nanopubs);
}

std::optional<double> CorpusTotals::mean_provenance_triples() const {
  if (nanopubs == 0) return std::nullopt;
  return static_cast<double>(triples[2]) / static_cast<double>(nanopubs);
}

CorpusAccumulator::CorpusAccumulator(AnalysisOptions options)
    : options_(std::move(options)) {}

void CorpusAccumulator::add(const Nanopublication& np) {
  ++nanopubs_;
  const NamedGraph* parts[] = {&np.head, &np.assertion, &np.provenance, &np.pubinfo};
  // Namespaces count once per nanopublication and cell.
  std::array<std::set<std::string>, kCells> seen;
  for (std::size_t p = 0; p < 4; ++p) {
    triples_[p] += parts[p]->quads.size();
    for (const rdf::Quad& q : parts[p]->quads) {
      const Part part = static_cast<Part>(p);
      seen[cell(part, Position::Subject)].insert(namespace_of(q.subject.value()));
      seen[cell(part, Position::Predicate)].insert(namespace_of(q.predicate.value()));
      if (q.object.is_iri()) seen[cell(part, Position::Object)].insert(namespace_of(q.object.value()));
    }
  }
  for (std::size_t c = 0; c < kCells; ++c) {
    for (const auto& ns : seen[c]) ++namespaces_[c][ns];
  }

  std::set<std::string> licenses;
  for (const rdf::Quad& q : np.pubinfo.quads) {
    const std::string& p = q.predicate.value();
    if (is_creator_predicate(p)) {
      const auto type = classify_creator(q.object, options_.tool_uris);
      ++creators_[static_cast<std::size_t>(type)][identifier(q.object)];
    } else if ((p == vocab::kDctLicense || p == vocab::kDctRights) && q.object.is_iri()) {
      licenses.insert(q.object.value());
    }
  }
  if (licenses.empty()) ++unspecified_;
  for (const auto& l : licenses) ++licenses_[l];

  for (const rdf::Quad& q : np.assertion.quads) {
    if (q.predicate.value() == vocab::kRdfType) ++types_[identifier(q.object)];
  }
}

void CorpusAccumulator::merge(const CorpusAccumulator& other) {
  nanopubs_ += other.nanopubs_;
  for (std::size_t p = 0; p < 4; ++p) triples_[p] += other.triples_[p];
  for (std::size_t t = 0; t < kCreatorTypes; ++t) add_counts(creators_[t], other.creators_[t]);
  add_counts(licenses_, other.licenses_);
  unspecified_ += other.unspecified_;
  for (std::size_t c = 0; c < kCells; ++c) add_counts(namespaces_[c], other.namespaces_[c]);
  add_counts(types_, other.types_);
}

AnalysisReport CorpusAccumulator::report() const {
  if (options_.top_k == 0) throw Error("invalid-k", "top_k must be at least 1");
  AnalysisReport r;
  r.totals.nanopubs = nanopubs_;
  r.totals.triples = triples_;

  for (std::size_t t = 0; t < kCreatorTypes; ++t) {
    CreatorRow& row = r.creators.rows[t];
    row.type = static_cast<CreatorType>(t);
    row.unique = creators_[t].size();
    for (const auto& [id, n] : creators_[t]) row.total += n;
    if (!creators_[t].empty()) {
      auto top = ranked(creators_[t]).front();
      row.example = top.first;
      row.example_count = top.second;
    }
    r.creators.total += row.total;
    r.creators.unique += row.unique;
  }

  r.licenses.licenses = ranked(licenses_);
  r.licenses.unspecified = unspecified_;

  for (std::size_t c = 0; c < kCells; ++c) {
    NamespaceCell& out = r.namespaces[c];
    out.part = static_cast<Part>(c / 3);
    out.position = static_cast<Position>(c % 3);
    auto all = ranked(namespaces_[c]);
    if (all.size() > options_.top_k) all.resize(options_.top_k);
    for (auto& [ns, n] : all) {
      out.top.push_back({std::move(ns), n,
                         100.0 * static_cast<double>(n) / static_cast<double>(nanopubs_)});
    }
  }

  r.types.ranked = ranked(types_);
  for (const auto& [type, n] : r.types.ranked) r.types.total += n;
  r.totals.type_assignments = r.types.total;
  r.totals.unique_types = r.types.ranked.size();
  return r;
}

}  // namespace nanopub::analysis
