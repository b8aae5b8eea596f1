#include <cstdio>
#include <fstream>

#include "nanopub/analysis.hpp"
#include "nanopub/error.hpp"

namespace nanopub::analysis {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string mean(const std::optional<double>& v) { return v ? fixed(*v, 6) : "undefined"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("io", "cannot write " + path.string());
}

}  // namespace

std::string totals_tsv(const AnalysisReport& r) {
  const auto& t = r.totals;
  std::string out = "metric\tvalue\n";
  out += "nanopublications\t" + std::to_string(t.nanopubs) + '\n';
  for (std::size_t p = 0; p < 4; ++p) {
    out += std::string(part_name(static_cast<Part>(p))) + "_triples\t" +
           std::to_string(t.triples[p]) + '\n';
  }
  out += "total_triples\t" + std::to_string(t.total()) + '\n';
  out += "mean_triples\t" + mean(t.mean_triples()) + '\n';
  out += "mean_provenance_triples\t" + mean(t.mean_provenance_triples()) + '\n';
  out += "type_assignments\t" + std::to_string(t.type_assignments) + '\n';
  out += "unique_types\t" + std::to_string(t.unique_types) + '\n';
  return out;
}

std::string creators_tsv(const AnalysisReport& r) {
  std::string out = "type\ttotal\tunique\texample\texample_count\n";
  for (const auto& row : r.creators.rows) {
    out += std::string(creator_type_name(row.type)) + '\t' + std::to_string(row.total) + '\t' +
           std::to_string(row.unique) + '\t' + row.example + '\t' +
           std::to_string(row.example_count) + '\n';
  }
  out += "Total\t" + std::to_string(r.creators.total) + '\t' + std::to_string(r.creators.unique) +
         "\t\t\n";
  return out;
}

std::string licenses_tsv(const AnalysisReport& r) {
  std::string out = "license\tnanopublications\n";
  for (const auto& [iri, n] : r.licenses.licenses) out += iri + '\t' + std::to_string(n) + '\n';
  out += "unspecified\t" + std::to_string(r.licenses.unspecified) + '\n';
  return out;
}

std::string namespaces_tsv(const AnalysisReport& r) {
  std::string out = "graph\tposition\trank\tnamespace\tnanopublications\tpercent\n";
  for (const auto& cell : r.namespaces) {
    std::size_t rank = 0;
    for (const auto& e : cell.top) {
      out += std::string(part_name(cell.part)) + '\t' + std::string(position_name(cell.position)) +
             '\t' + std::to_string(++rank) + '\t' + e.ns + '\t' + std::to_string(e.nanopubs) + '\t' +
             fixed(e.percent, 2) + '\n';
    }
  }
  return out;
}

std::string types_tsv(const AnalysisReport& r) {
  std::string out = "rank\ttype\tcount\n";
  std::size_t rank = 0;
  for (const auto& [type, n] : r.types.ranked) {
    out += std::to_string(++rank) + '\t' + type + '\t' + std::to_string(n) + '\n';
  }
  return out;
}

std::string summary_text(const AnalysisReport& r) {
  const auto& t = r.totals;
  std::string out;
  out += "nanopublications: " + std::to_string(t.nanopubs) + '\n';
  out += "triples: " + std::to_string(t.total()) + '\n';
  for (std::size_t p = 0; p < 4; ++p) {
    out += std::string(part_name(static_cast<Part>(p))) + "_triples: " +
           std::to_string(t.triples[p]) + '\n';
  }
  out += "mean_triples: " + (t.mean_triples() ? fixed(*t.mean_triples(), 1) : "undefined") + '\n';
  out += "mean_provenance_triples: " +
         (t.mean_provenance_triples() ? fixed(*t.mean_provenance_triples(), 1) : "undefined") + '\n';
  out += "creator_mentions: " + std::to_string(r.creators.total) + '\n';
  out += "unique_creators: " + std::to_string(r.creators.unique) + '\n';
  out += "licensed_kinds: " + std::to_string(r.licenses.licenses.size()) + '\n';
  out += "unspecified_license: " + std::to_string(r.licenses.unspecified) + '\n';
  out += "type_assignments: " + std::to_string(t.type_assignments) + '\n';
  out += "unique_types: " + std::to_string(t.unique_types) + '\n';
  if (!r.types.ranked.empty()) {
    out += "most_frequent_type: " + r.types.ranked.front().first + ' ' +
           std::to_string(r.types.ranked.front().second) + '\n';
  }
  return out;
}

void write_reports(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "totals.tsv", totals_tsv(report));
  write_file(dir / "creators.tsv", creators_tsv(report));
  write_file(dir / "licenses.tsv", licenses_tsv(report));
  write_file(dir / "namespaces.tsv", namespaces_tsv(report));
  write_file(dir / "types.tsv", types_tsv(report));
  write_file(dir / "summary.txt", summary_text(report));
}

}  // namespace nanopub::analysis
