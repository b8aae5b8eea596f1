#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nanopub/model.hpp"

// Seeded synthetic corpora shaped after the large life-science datasets, and
// streaming readers for corpora on disk.
namespace nanopub::corpus {

/// Rates are per mille of generated nanopublications.
struct CorpusOptions {
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::string base = "http://purl.org/np/";
  unsigned scholar_creator_rate = 2;
  unsigned researcherid_creator_rate = 2;
  unsigned other_creator_rate = 3;
  unsigned unlicensed_rate = 15;
  unsigned second_license_rate = 10;
  unsigned undated_rate = 20;
  unsigned pav_date_rate = 100;
};

/// Minted, valid nanopublications. Identical options give identical output.
std::vector<Nanopublication> generate(const CorpusOptions& options);

/// All nanopublications as one TriG document.
void write_corpus(const std::filesystem::path& file, std::span<const Nanopublication> nps);

/// Streams every nanopublication found in `path`: a single TriG file, or a
/// directory whose `.trig` files are read in file-name order. Returns the
/// number of candidate nanopublications dropped as invalid.
std::size_t for_each_nanopub(const std::filesystem::path& path,
                             const std::function<void(Nanopublication&&)>& visit);

/// Collects `for_each_nanopub` into a vector.
std::vector<Nanopublication> read_corpus(const std::filesystem::path& path);

}  // namespace nanopub::corpus
