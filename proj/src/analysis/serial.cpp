#include "nanopub/analysis.hpp"

namespace nanopub::analysis {

AnalysisReport analyze_serial(std::span<const Nanopublication> corpus, const AnalysisOptions& options) {
  CorpusAccumulator acc(options);
  for (const auto& np : corpus) acc.add(np);
  return acc.report();
}

}  // namespace nanopub::analysis
