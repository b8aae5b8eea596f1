#include <omp.h>

#include "nanopub/analysis.hpp"
#include "nanopub/corpus.hpp"

namespace nanopub::analysis {

namespace {

constexpr std::size_t kBatch = 4096;

// Adds `batch` into per-thread accumulators. Counts are sums, so the shard
// assignment does not affect the merged result.
void add_sharded(std::span<const Nanopublication> batch, std::vector<CorpusAccumulator>& shards) {
  const auto n = static_cast<std::ptrdiff_t>(batch.size());
#pragma omp parallel num_threads(static_cast<int>(shards.size()))
  {
    CorpusAccumulator& mine = shards[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) mine.add(batch[static_cast<std::size_t>(i)]);
  }
}

AnalysisReport merged(std::vector<CorpusAccumulator>& shards) {
  for (std::size_t i = 1; i < shards.size(); ++i) shards[0].merge(shards[i]);
  return shards[0].report();
}

}  // namespace

AnalysisReport analyze_parallel(std::span<const Nanopublication> corpus,
                                const AnalysisOptions& options) {
  std::vector<CorpusAccumulator> shards(static_cast<std::size_t>(omp_get_max_threads()),
                                        CorpusAccumulator(options));
  add_sharded(corpus, shards);
  return merged(shards);
}

AnalysisReport analyze_path(const std::filesystem::path& path, const AnalysisOptions& options,
                            std::size_t* invalid) {
  std::vector<CorpusAccumulator> shards(static_cast<std::size_t>(omp_get_max_threads()),
                                        CorpusAccumulator(options));
  std::vector<Nanopublication> batch;
  batch.reserve(kBatch);
  const std::size_t dropped = corpus::for_each_nanopub(path, [&](Nanopublication&& np) {
    batch.push_back(std::move(np));
    if (batch.size() == kBatch) {
      add_sharded(batch, shards);
      batch.clear();
    }
  });
  add_sharded(batch, shards);
  if (invalid) *invalid = dropped;
  return merged(shards);
}

}  // namespace nanopub::analysis
