#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nanopub/model.hpp"

// Corpus statistics: triple totals, creators, licenses, namespace usage per
// graph and position, and rdf:type frequencies.
namespace nanopub::analysis {

inline constexpr std::string_view kDefaultToolUri = "https://doi.org/10.5281/zenodo.1212599";

enum class Part : std::uint8_t { Head, Assertion, Provenance, Pubinfo };
enum class Position : std::uint8_t { Subject, Predicate, Object };
inline constexpr std::size_t kCells = 12;

/// Rows of the creator table, in report order.
enum class CreatorType : std::uint8_t { Orcid, Literal, Tool, GoogleScholar, ResearcherId, OtherUri };
inline constexpr std::size_t kCreatorTypes = 6;

std::string_view part_name(Part p);
std::string_view position_name(Position p);
std::string_view creator_type_name(CreatorType t);

struct AnalysisOptions {
  std::vector<std::string> tool_uris{std::string(kDefaultToolUri)};
  std::size_t top_k = 10;
};

/// Up to and including the last '#', else the last '/', else the whole IRI.
/// A bare host such as `http://nextprot.org` thus falls under `http://`.
std::string namespace_of(std::string_view iri);

CreatorType classify_creator(const rdf::Term& object, std::span<const std::string> tool_uris);

/// Identifier text used for counting: the IRI itself, or the N-Triples form
/// of a literal.
std::string identifier(const rdf::Term& term);

struct CorpusTotals {
  std::uint64_t nanopubs = 0;
  std::array<std::uint64_t, 4> triples{};  // by Part
  std::uint64_t type_assignments = 0;
  std::uint64_t unique_types = 0;

  std::uint64_t total() const noexcept { return triples[0] + triples[1] + triples[2] + triples[3]; }
  /// nullopt for an empty corpus.
  std::optional<double> mean_triples() const;
  std::optional<double> mean_provenance_triples() const;
};

struct CreatorRow {
  CreatorType type = CreatorType::Orcid;
  std::uint64_t total = 0;
  std::uint64_t unique = 0;
  /// Most frequent identifier, ties broken by identifier text.
  std::string example;
  std::uint64_t example_count = 0;
};

struct CreatorReport {
  std::array<CreatorRow, kCreatorTypes> rows;
  std::uint64_t total = 0;
  std::uint64_t unique = 0;
};

struct LicenseReport {
  /// Sorted by count descending, then IRI.
  std::vector<std::pair<std::string, std::uint64_t>> licenses;
  std::uint64_t unspecified = 0;
};

struct NamespaceEntry {
  std::string ns;
  std::uint64_t nanopubs = 0;
  double percent = 0;
};

struct NamespaceCell {
  Part part = Part::Head;
  Position position = Position::Subject;
  /// Top k by nanopublication count, ties by namespace text.
  std::vector<NamespaceEntry> top;
};

struct TypeReport {
  std::uint64_t total = 0;
  /// (type, count) sorted by count descending, then type.
  std::vector<std::pair<std::string, std::uint64_t>> ranked;
};

struct AnalysisReport {
  CorpusTotals totals;
  CreatorReport creators;
  LicenseReport licenses;
  std::array<NamespaceCell, kCells> namespaces;
  TypeReport types;
};

/// Streaming counters over nanopublications. Two accumulators over disjoint
/// parts of a corpus merge into exactly the counts of one pass over all of it.
class CorpusAccumulator {
 public:
  explicit CorpusAccumulator(AnalysisOptions options = {});

  void add(const Nanopublication& np);
  void merge(const CorpusAccumulator& other);
  /// Throws Error("invalid-k") if top_k is 0.
  AnalysisReport report() const;
  std::uint64_t nanopubs() const noexcept { return nanopubs_; }

 private:
  using Counts = std::unordered_map<std::string, std::uint64_t>;

  AnalysisOptions options_;
  std::uint64_t nanopubs_ = 0;
  std::array<std::uint64_t, 4> triples_{};
  std::array<Counts, kCreatorTypes> creators_;
  Counts licenses_;
  std::uint64_t unspecified_ = 0;
  std::array<Counts, kCells> namespaces_;
  Counts types_;
};

/// Single-threaded reference.
AnalysisReport analyze_serial(std::span<const Nanopublication> corpus, const AnalysisOptions& options = {});
/// OpenMP sharded pass with per-thread accumulators; identical output to
/// analyze_serial.
AnalysisReport analyze_parallel(std::span<const Nanopublication> corpus,
                                const AnalysisOptions& options = {});
/// Streams a corpus file or directory in batches analysed in parallel.
/// `invalid` receives the number of dropped candidates.
AnalysisReport analyze_path(const std::filesystem::path& path, const AnalysisOptions& options = {},
                            std::size_t* invalid = nullptr);

/// Report files: totals.tsv, creators.tsv, licenses.tsv, namespaces.tsv,
/// types.tsv, plus summary.txt (key: value).
void write_reports(const AnalysisReport& report, const std::filesystem::path& dir);
std::string totals_tsv(const AnalysisReport& report);
std::string creators_tsv(const AnalysisReport& report);
std::string licenses_tsv(const AnalysisReport& report);
std::string namespaces_tsv(const AnalysisReport& report);
std::string types_tsv(const AnalysisReport& report);
std::string summary_text(const AnalysisReport& report);

}  // namespace nanopub::analysis
